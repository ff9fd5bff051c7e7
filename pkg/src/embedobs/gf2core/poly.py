"""Sparse truncated polynomials over a small coefficient domain.

A ring is presented by generators ``(name, degree, truncation)``; a
generator with truncation ``n`` satisfies ``g**n = 0``.  Truncation ``None``
means the generator is a free polynomial variable (used for the equivariant
``t`` in ``H^*(M)[t]``).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Mapping, Sequence

from .domains import GF2_DOMAIN, Domain

Monomial = tuple[int, ...]


class PresentationMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int = 1
    truncation: int | None = None


class PolyRing:
    def __init__(self, domain: Domain, generators: Sequence[Generator | tuple]):
        gens = tuple(g if isinstance(g, Generator) else Generator(*g) for g in generators)
        names = [g.name for g in gens]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for g in gens:
            if g.truncation is not None and g.truncation < 1:
                raise ValueError(f"generator {g.name} has truncation {g.truncation}")
        self.domain = domain
        self.generators = gens
        self._index = {g.name: i for i, g in enumerate(gens)}

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PolyRing)
            and self.domain == other.domain
            and self.generators == other.generators
        )

    def __hash__(self) -> int:
        return hash((self.domain, self.generators))

    def __repr__(self) -> str:
        parts = []
        for g in self.generators:
            parts.append(g.name if g.truncation is None else f"{g.name}^{g.truncation}=0")
        return f"PolyRing({self.domain!r}; {', '.join(parts)})"

    @property
    def ngens(self) -> int:
        return len(self.generators)

    def gen_index(self, name: str) -> int:
        return self._index[name]

    def monomial_degree(self, mono: Monomial) -> int:
        return sum(e * g.degree for e, g in zip(mono, self.generators))

    def is_truncated_away(self, mono: Monomial) -> bool:
        return any(
            g.truncation is not None and e >= g.truncation
            for e, g in zip(mono, self.generators)
        )

    def zero(self) -> "TruncatedPoly":
        return TruncatedPoly(self, {})

    def one(self) -> "TruncatedPoly":
        return self.const(self.domain.one)

    def const(self, c: Any) -> "TruncatedPoly":
        return TruncatedPoly(self, {(0,) * self.ngens: c})

    def gen(self, name: str) -> "TruncatedPoly":
        mono = [0] * self.ngens
        mono[self._index[name]] = 1
        return TruncatedPoly(self, {tuple(mono): self.domain.one})

    def monomial(self, exps: Mapping[str, int] | Sequence[int], coeff: Any = None) -> "TruncatedPoly":
        if isinstance(exps, Mapping):
            mono = [0] * self.ngens
            for name, e in exps.items():
                mono[self._index[name]] = e
        else:
            mono = list(exps)
        c = self.domain.one if coeff is None else coeff
        return TruncatedPoly(self, {tuple(mono): c})

    def from_terms(self, terms: Iterable[tuple[Sequence[int], Any]]) -> "TruncatedPoly":
        acc: dict[Monomial, Any] = {}
        for mono, c in terms:
            key = tuple(mono)
            if len(key) != self.ngens:
                raise PresentationMismatch(f"monomial {key} has wrong length for {self!r}")
            acc[key] = acc[key] + c if key in acc else c
        return TruncatedPoly(self, acc)

    def univariate(self, coeffs: Sequence[Any]) -> "TruncatedPoly":
        """Build ``sum coeffs[i] g**i`` in a single-generator ring."""
        if self.ngens != 1:
            raise PresentationMismatch("univariate() needs a single-generator ring")
        return TruncatedPoly(self, {(i,): c for i, c in enumerate(coeffs)})

    def with_extra_generator(self, gen: Generator) -> "PolyRing":
        return PolyRing(self.domain, self.generators + (gen,))


class TruncatedPoly:
    __slots__ = ("ring", "_terms")

    def __init__(self, ring: PolyRing, terms: Mapping[Monomial, Any]):
        self.ring = ring
        dom = ring.domain
        clean: dict[Monomial, Any] = {}
        for mono, c in terms.items():
            if len(mono) != ring.ngens:
                raise PresentationMismatch(f"monomial {mono} has wrong length")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            if ring.is_truncated_away(mono):
                continue
            c = dom.coerce(c)
            if not dom.is_zero(c):
                clean[mono] = c
        self._terms = dict(sorted(clean.items()))

    # -- inspection -----------------------------------------------------

    @property
    def terms(self) -> dict[Monomial, Any]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[Monomial, Any]]:
        return iter(self._terms.items())

    def coefficient(self, mono: Sequence[int]) -> Any:
        return self._terms.get(tuple(mono), self.ring.domain.zero)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def constant_term(self) -> Any:
        return self.coefficient((0,) * self.ring.ngens)

    def degrees(self) -> set[int]:
        return {self.ring.monomial_degree(m) for m in self._terms}

    def is_homogeneous(self, degree: int) -> bool:
        return all(self.ring.monomial_degree(m) == degree for m in self._terms)

    def component(self, degree: int) -> "TruncatedPoly":
        """The homogeneous part of the given degree."""
        return TruncatedPoly(
            self.ring,
            {m: c for m, c in self._terms.items() if self.ring.monomial_degree(m) == degree},
        )

    def max_degree(self) -> int:
        return max(self.degrees(), default=-1)

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "TruncatedPoly") -> None:
        if self.ring != other.ring:
            raise PresentationMismatch(f"{self.ring!r} vs {other.ring!r}")

    def _wrap(self, other: Any) -> "TruncatedPoly":
        if isinstance(other, TruncatedPoly):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other: Any) -> "TruncatedPoly":
        o = self._wrap(other)
        acc = dict(self._terms)
        for m, c in o._terms.items():
            acc[m] = acc[m] + c if m in acc else c
        return TruncatedPoly(self.ring, acc)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedPoly":
        return TruncatedPoly(self.ring, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Any) -> "TruncatedPoly":
        return self + (-self._wrap(other))

    def __rsub__(self, other: Any) -> "TruncatedPoly":
        return self._wrap(other) - self

    def __mul__(self, other: Any) -> "TruncatedPoly":
        if not isinstance(other, TruncatedPoly):
            return TruncatedPoly(self.ring, {m: c * other for m, c in self._terms.items()})
        return poly_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "TruncatedPoly":
        if n < 0:
            return series_invert(self) ** (-n)
        out = self.ring.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        if isinstance(other, TruncatedPoly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, int):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, tuple(self._terms.items())))

    def __repr__(self) -> str:
        return f"TruncatedPoly({self})"

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        names = [g.name for g in self.ring.generators]
        parts = []
        for mono, c in self._terms.items():
            factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, mono) if e]
            body = "*".join(factors)
            if not body:
                parts.append(str(c))
            elif c == 1 or c == self.ring.domain.one:
                parts.append(body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts)

    def substitute(self, name: str, value: "TruncatedPoly") -> "TruncatedPoly":
        """Replace one generator by ``value`` (same ring), via Horner in that generator."""
        self._check(value)
        idx = self.ring.gen_index(name)
        by_power: dict[int, dict[Monomial, Any]] = {}
        for m, c in self._terms.items():
            rest = m[:idx] + (0,) + m[idx + 1 :]
            by_power.setdefault(m[idx], {})[rest] = c
        out = self.ring.zero()
        for e in range(max(by_power, default=-1), -1, -1):
            out = out * value + TruncatedPoly(self.ring, by_power.get(e, {}))
        return out


def poly_mul(a: TruncatedPoly, b: TruncatedPoly) -> TruncatedPoly:
    """Product in the common ring with truncation applied."""
    if a.ring != b.ring:
        raise PresentationMismatch(f"{a.ring!r} vs {b.ring!r}")
    ring = a.ring
    acc: dict[Monomial, Any] = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            if ring.is_truncated_away(m):
                continue
            p = ca * cb
            acc[m] = acc[m] + p if m in acc else p
    return TruncatedPoly(ring, acc)


def series_invert(u: TruncatedPoly) -> TruncatedPoly:
    """Inverse of ``u`` in the truncated ring.

    ``u = c (1 + n)`` with ``c`` a unit and ``n`` nilpotent, so the inverse is
    the finite geometric series ``c^{-1} sum (-n)^k``.
    """
    ring = u.ring
    dom = ring.domain
    c = u.constant_term()
    if not dom.is_unit(c):
        raise ZeroDivisionError(f"constant term {c} is not a unit in {dom!r}")
    for mono, _ in u.items():
        if any(e and g.truncation is None for e, g in zip(mono, ring.generators)):
            raise ZeroDivisionError(
                "cannot invert: non-constant part involves an untruncated generator"
            )
    c_inv = dom.inverse(c)
    neg_n = -(u * c_inv - ring.one())
    out = ring.one()
    term = ring.one()
    while True:
        term = term * neg_n
        if term.is_zero():
            break
        out = out + term
    return out * c_inv


def gf2_truncated_ring(name: str = "T", truncation: int = 1, degree: int = 1) -> PolyRing:
    return PolyRing(GF2_DOMAIN, [Generator(name, degree, truncation)])
