"""Exterior powers, K-theory Chern classes and gamma operations on virtual
sums of line bundles.

Elements are integer combinations of line classes ``L`` (ring elements with
``L*L = 1``) plus a trivial summand.  The Bott class is only a grading
marker: ``chern_from_lambda(xi)[i]`` is the coefficient carrying ``v^i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable

from .gf2core import Generator, PolyRing, SpecialKRing, TruncatedPoly
from .gf2core.kring import KElement


class RankError(ValueError):
    pass


@dataclass(frozen=True)
class LambdaElement:
    ring: Any
    lines: tuple[tuple[Any, int], ...] = ()
    trivial: int = 0

    def __post_init__(self) -> None:
        merged: dict[Any, int] = {}
        one = self.ring.one
        triv = self.trivial
        for L, a in self.lines:
            L = self.ring.coerce(L)
            if L * L != self.ring.coerce(1):
                raise ValueError(f"{L} is not a line class (L^2 != 1)")
            if L == one:
                triv += a
                continue
            merged[L] = merged.get(L, 0) + a
        lines = tuple(sorted(((L, a) for L, a in merged.items() if a), key=lambda p: str(p[0])))
        object.__setattr__(self, "lines", lines)
        object.__setattr__(self, "trivial", triv)

    @property
    def rank(self) -> int:
        return self.trivial + sum(a for _, a in self.lines)

    def is_honest(self) -> bool:
        return self.trivial >= 0 and all(a >= 0 for _, a in self.lines)

    def _combine(self, other: "LambdaElement", sign: int) -> "LambdaElement":
        if self.ring != other.ring:
            raise ValueError("elements over different rings")
        return LambdaElement(
            self.ring,
            self.lines + tuple((L, sign * a) for L, a in other.lines),
            self.trivial + sign * other.trivial,
        )

    def __add__(self, other: "LambdaElement | int") -> "LambdaElement":
        if isinstance(other, int):
            return LambdaElement(self.ring, self.lines, self.trivial + other)
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other: "LambdaElement | int") -> "LambdaElement":
        if isinstance(other, int):
            return self + (-other)
        return self._combine(other, -1)

    def __neg__(self) -> "LambdaElement":
        return LambdaElement(self.ring, tuple((L, -a) for L, a in self.lines), -self.trivial)

    def __rmul__(self, n: int) -> "LambdaElement":
        return LambdaElement(self.ring, tuple((L, n * a) for L, a in self.lines), n * self.trivial)

    def positive_part(self) -> "LambdaElement":
        return LambdaElement(
            self.ring, tuple((L, a) for L, a in self.lines if a > 0), max(self.trivial, 0)
        )

    def negative_part(self) -> "LambdaElement":
        return LambdaElement(
            self.ring, tuple((L, -a) for L, a in self.lines if a < 0), max(-self.trivial, 0)
        )

    def value(self) -> Any:
        """The class in the coefficient ring."""
        out = self.ring.coerce(self.trivial)
        for L, a in self.lines:
            out = out + L * a
        return out


def hopf(ring: SpecialKRing, multiplicity: int = 1) -> LambdaElement:
    return LambdaElement(ring, ((ring.hopf, multiplicity),))


def trivial(ring: Any, k: int) -> LambdaElement:
    return LambdaElement(ring, (), k)


def reduced_hopf(ring: SpecialKRing) -> LambdaElement:
    """``nu = H - 1``."""
    return hopf(ring) - 1


def series_ring(ring: Any, N: int, name: str = "t") -> PolyRing:
    return PolyRing(ring, [Generator(name, 1, N + 1)])


def lambda_series(xi: LambdaElement, N: int, name: str = "t") -> TruncatedPoly:
    """``lambda_t(xi) = prod (1 + L t)^a * (1 + t)^n`` mod ``t^{N+1}``."""
    R = series_ring(xi.ring, N, name)
    t = R.gen(name)
    out = (R.one() + t) ** xi.trivial
    for L, a in xi.lines:
        out = out * (R.one() + t * L) ** a
    return out


def exterior_powers(xi: LambdaElement) -> list[Any]:
    """``[lambda^0 xi, ..., lambda^k xi]`` for an honest ``xi`` of rank ``k``."""
    if not xi.is_honest():
        raise RankError("exterior powers of a virtual element do not terminate")
    k = xi.rank
    series = lambda_series(xi, k)
    return [series.coefficient((i,)) for i in range(k + 1)]


def chern_from_lambda(xi: LambdaElement) -> list[Any]:
    """K-theory Chern classes ``c_0^K, ..., c_k^K`` of an honest ``xi``.

    Substituting ``z = 1 - s`` in ``sum_i (-z)^i lambda^i xi`` and reading the
    coefficient of ``s^{k-i}`` gives the class carrying ``v^i``.
    """
    if not xi.is_honest():
        raise RankError("Chern classes need an honest (non-virtual) sum")
    k = xi.rank
    lam = exterior_powers(xi)
    R = PolyRing(xi.ring, [Generator("s", 1, None)])
    s = R.gen("s")
    minus_z = s - R.one()
    total = R.zero()
    power = R.one()
    for i in range(k + 1):
        total = total + power * lam[i]
        power = power * minus_z
    return [total.coefficient((k - i,)) for i in range(k + 1)]


def euler_k(xi: LambdaElement) -> Any:
    """``sum (-1)^i lambda^i xi``, the K-Euler class with the Bott marker stripped."""
    out = xi.ring.zero
    for i, lam in enumerate(exterior_powers(xi)):
        out = out + lam * (-1) ** i
    return out


def _gamma_of_honest(xi: LambdaElement, N: int, name: str) -> TruncatedPoly:
    """``gamma_T(xi - k) = sum_i (1 - T)^i c_i^K(xi)``."""
    R = series_ring(xi.ring, N, name)
    one_minus_T = R.one() - R.gen(name)
    out = R.zero()
    for i, c in enumerate(chern_from_lambda(xi)):
        out = out + one_minus_T**i * c
    return out


def gamma_series(x: LambdaElement, N: int, name: str = "T") -> TruncatedPoly:
    """``gamma_T(x)`` for rank-0 ``x``, through the Chern identity.

    A virtual ``x`` is split as ``P - Q`` with both honest; ``gamma_T`` is
    exponential, so ``gamma_T(x) = gamma_T(P - #P) / gamma_T(Q - #Q)``.
    """
    if x.rank != 0:
        raise RankError(f"gamma operations are taken on rank-0 elements, got rank {x.rank}")
    P, Q = x.positive_part(), x.negative_part()
    num = _gamma_of_honest(P, N, name)
    den = _gamma_of_honest(Q, N, name)
    return num * den**-1


def gamma_ops(x: LambdaElement, N: int) -> list[Any]:
    series = gamma_series(x, N)
    return [series.coefficient((i,)) for i in range(N + 1)]


def gamma_direct(x: LambdaElement, N: int) -> list[Any]:
    """``gamma_T = lambda_{T/(1-T)}``, by substitution in the lambda series."""
    if x.rank != 0:
        raise RankError(f"gamma operations are taken on rank-0 elements, got rank {x.rank}")
    lam = lambda_series(x, N, "T")
    R = lam.ring
    T = R.gen("T")
    sub = T * (R.one() - T) ** -1
    series = lam.substitute("T", sub)
    return [series.coefficient((i,)) for i in range(N + 1)]


def atiyah_gammas(d: int, f: int, N: int) -> list[KElement]:
    """``gamma^i(R^d - tau RP^d) = gamma^i(-(d+1) nu)`` for ``i <= N``."""
    ring = SpecialKRing(f)
    return gamma_ops(-(d + 1) * reduced_hopf(ring), N)


def atiyah_bound(d: int, f: int) -> int:
    """Least ``n >= d`` with ``gamma^i(-(d+1) nu) = 0`` for all ``i >= max(n-d, 1)``.

    ``mu^i = (-2)^{i-1} mu`` vanishes mod ``2^f`` once ``i > f``, so indices
    up to ``f`` decide the answer.
    """
    if d < 1 or f < 1:
        raise ValueError("need d >= 1 and f >= 1")
    gammas = atiyah_gammas(d, f, f + 1)
    if not gammas[f + 1].is_zero():
        raise AssertionError("gamma operations should vanish beyond the torsion exponent")
    nonzero = [i for i in range(1, f + 1) if not gammas[i].is_zero()]
    return d + max(nonzero) + 1 if nonzero else d


def ktheory_table(d: int, f: int, N: int) -> dict:
    gammas = atiyah_gammas(d, f, N)
    return {
        "d": d,
        "f": f,
        "gamma": [{"i": i, "free": g.free, "mu": g.mu_part} for i, g in enumerate(gammas)],
        "atiyah_bound": atiyah_bound(d, f),
    }


def random_line_sum(ring: SpecialKRing, rng, max_mult: int = 3, honest: bool = True) -> LambdaElement:
    """Random sum of line classes drawn from ``line_classes(ring)``."""
    lo = 0 if honest else -max_mult
    classes = line_classes(ring)
    lines = tuple((L, rng.randint(lo, max_mult)) for L in classes)
    return LambdaElement(ring, lines, rng.randint(lo, max_mult))


def line_classes(ring: SpecialKRing) -> list[KElement]:
    """All ``1 + b mu`` with ``(1 + b mu)^2 = 1`` other than 1 itself."""
    one = ring.one
    out = []
    for b in range(1, 1 << ring.f):
        L = ring.element(1, b)
        if L * L == one:
            out.append(L)
    return out


def as_pairs(values: Iterable[KElement]) -> list[tuple[int, int]]:
    return [(v.free, v.mu_part) for v in values]
