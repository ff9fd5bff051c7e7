"""Total characteristic classes in truncated polynomial rings.

Covers dual (normal) classes, the invariant ``D``, the polynomial division
identity in ``H^*(M)[t]``, twisted Euler class nonvanishing and the parity
predicate for Hopf-bundle sums.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from .gf2core import (
    GF2_DOMAIN,
    ZZ,
    Generator,
    PolyRing,
    TruncatedPoly,
    series_invert,
)


class ClassShapeError(ValueError):
    pass


@dataclass(frozen=True)
class CharClassVector:
    """Components ``[w_0, ..., w_d]`` of a total class; ``w_i`` has degree ``i``."""

    components: tuple[TruncatedPoly, ...]

    def __post_init__(self) -> None:
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if not comps:
            raise ClassShapeError("a class vector needs at least w_0")
        ring = comps[0].ring
        for i, w in enumerate(comps):
            if w.ring != ring:
                raise ClassShapeError("components live in different rings")
            if not w.is_homogeneous(i):
                raise ClassShapeError(f"component {i} is not of pure degree {i}: {w}")

    @classmethod
    def from_total(cls, total: TruncatedPoly, length: int) -> "CharClassVector":
        stray = [deg for deg in total.degrees() if deg >= length]
        if stray:
            raise ClassShapeError(f"total class has terms in degrees {sorted(stray)} >= {length}")
        return cls(tuple(total.component(i) for i in range(length)))

    @property
    def ring(self) -> PolyRing:
        return self.components[0].ring

    @property
    def top(self) -> int:
        return len(self.components) - 1

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i: int) -> TruncatedPoly:
        return self.components[i]

    def total(self) -> TruncatedPoly:
        out = self.ring.zero()
        for w in self.components:
            out = out + w
        return out

    def nonzero_indices(self) -> list[int]:
        return [i for i, w in enumerate(self.components) if not w.is_zero()]

    def as_strings(self) -> list[str]:
        return [str(w) for w in self.components]


@dataclass(frozen=True)
class ManifoldPresentation:
    name: str
    dimension: int
    tangent: CharClassVector

    @property
    def ring(self) -> PolyRing:
        return self.tangent.ring


def dual_total_class(w: CharClassVector) -> CharClassVector:
    """Componentwise inverse: ``w * dual = 1`` in the ring."""
    inv = series_invert(w.total())
    return CharClassVector.from_total(_drop_above(inv, w.top), len(w))


def _drop_above(p: TruncatedPoly, top: int) -> TruncatedPoly:
    ring = p.ring
    return TruncatedPoly(ring, {m: c for m, c in p.items() if ring.monomial_degree(m) <= top})


def projective_space(d: int, name: str = "T") -> ManifoldPresentation:
    """RP^d with ``1 + w(tau) = (1 + T)^{d+1}`` in ``GF(2)[T]/(T^{d+1})``."""
    if d < 1:
        raise ValueError("projective space needs d >= 1")
    ring = PolyRing(GF2_DOMAIN, [Generator(name, 1, d + 1)])
    total = (ring.one() + ring.gen(name)) ** (d + 1)
    return ManifoldPresentation(f"RP^{d}", d, CharClassVector.from_total(total, d + 1))


def sphere(d: int) -> ManifoldPresentation:
    """S^d: stably trivial tangent bundle, cohomology ``GF(2)[u]/(u^2)``, ``|u| = d``."""
    if d < 1:
        raise ValueError("sphere needs d >= 1")
    ring = PolyRing(GF2_DOMAIN, [Generator("u", d, 2)])
    comps = (ring.one(),) + tuple(ring.zero() for _ in range(d))
    return ManifoldPresentation(f"S^{d}", d, CharClassVector(comps))


def product(a: ManifoldPresentation, b: ManifoldPresentation) -> ManifoldPresentation:
    """Cartesian product; generator names must be distinct."""
    if a.ring.domain != b.ring.domain:
        raise ValueError("factors use different coefficient domains")
    ring = PolyRing(a.ring.domain, a.ring.generators + b.ring.generators)
    na = a.ring.ngens

    def lift(p: TruncatedPoly, left: bool) -> TruncatedPoly:
        if left:
            return TruncatedPoly(ring, {m + (0,) * b.ring.ngens: c for m, c in p.items()})
        return TruncatedPoly(ring, {(0,) * na + m: c for m, c in p.items()})

    total = lift(a.tangent.total(), True) * lift(b.tangent.total(), False)
    d = a.dimension + b.dimension
    return ManifoldPresentation(
        f"{a.name}x{b.name}", d, CharClassVector.from_total(_drop_above(total, d), d + 1)
    )


def cap_D(mp: ManifoldPresentation) -> int:
    """Greatest ``n >= d`` with ``w_{n-d}(-tau) != 0``.

    Genuine closed connected manifolds satisfy ``d <= D < 2d``; arbitrary
    presentations may not, which only triggers a warning.
    """
    dual = dual_total_class(mp.tangent)
    top = max(dual.nonzero_indices())
    D = mp.dimension + top
    if not mp.dimension <= D < 2 * mp.dimension:
        warnings.warn(
            f"D={D} violates d <= D < 2d for d={mp.dimension}; "
            "presentation is not that of a closed connected manifold",
            stacklevel=2,
        )
    return D


def _t_name(ring: PolyRing) -> str:
    names = {g.name for g in ring.generators}
    name = "t"
    while name in names:
        name += "_"
    return name


def _extend(p: TruncatedPoly, ring: PolyRing) -> TruncatedPoly:
    return TruncatedPoly(ring, {m + (0,): c for m, c in p.items()})


def division_witness(mp: ManifoldPresentation, m: int) -> TruncatedPoly | None:
    """The polynomial ``a(t)`` of degree ``m-d-1`` with
    ``a(t) * t * (t^d + w_1 t^{d-1} + ... + w_d) = t^m`` in ``H^*(M)[t]``,
    or None when no such polynomial exists.

    The only candidate is ``t^{m-d-1} sum_i t^{-i} w_i(-tau)`` cut off at
    ``i = m-d-1``; it is returned exactly when re-multiplication gives ``t^m``.
    """
    d = mp.dimension
    if m <= d:
        raise ValueError(f"need m > d, got m={m}, d={d}")
    base = mp.ring
    ext = base.with_extra_generator(Generator(_t_name(base), 1, None))
    t = ext.gen(ext.generators[-1].name)
    dual = dual_total_class(mp.tangent)
    e = m - d - 1
    a = ext.zero()
    for i in range(min(e, dual.top) + 1):
        a = a + _extend(dual[i], ext) * t ** (e - i)
    euler = ext.zero()
    for i in range(d + 1):
        euler = euler + _extend(mp.tangent[i], ext) * t ** (d - i)
    if a * t * euler == t**m:
        return a
    return None


def twisted_euler_nonzero(wxi: CharClassVector, k: int, nonzero_powers: Iterable[int]) -> bool:
    """Whether ``e(lambda (x) xi) = sum_i w_{k-i}(xi) e(lambda)^i`` is nonzero.

    The summands sit in distinct Kunneth bidegrees, so the sum is nonzero
    iff a single summand is.
    """
    if len(wxi) != k + 1:
        raise ClassShapeError(f"expected {k + 1} components for rank {k}, got {len(wxi)}")
    powers = set(nonzero_powers)
    return any(not wxi[k - i].is_zero() and i in powers for i in range(k + 1))


def hopf_sum_classes(base_dim: int, trivial: int, hopf: int) -> CharClassVector:
    """``w(R^trivial + hopf*H)`` over ``RP^base_dim``: ``(1+T)^hopf``, rank components."""
    ring = PolyRing(GF2_DOMAIN, [Generator("T", 1, base_dim + 1)])
    total = (ring.one() + ring.gen("T")) ** hopf
    return CharClassVector.from_total(total, trivial + hopf + 1)


def trivial_classes(ring: PolyRing, k: int) -> CharClassVector:
    return CharClassVector((ring.one(),) + tuple(ring.zero() for _ in range(k)))


def binomial_is_odd(n: int, k: int) -> bool:
    """Lucas: ``C(n, k)`` is odd iff the binary digits of ``k`` sit inside those of ``n``."""
    if k < 0 or n < 0 or k > n:
        return False
    return k & n == k


def binomial_is_odd_naive(n: int, k: int) -> bool:
    if k < 0 or n < 0 or k > n:
        return False
    return comb(n, k) % 2 == 1


def frick_harrison_admissible(l: int, m: int, k: int, r: int, D: int) -> bool:
    return 0 <= l <= m <= k and m + r <= D and binomial_is_odd(k - l, k - m)


def dual_chern(c: CharClassVector, d: int) -> tuple[CharClassVector, int]:
    """Inverse of an integral total Chern class and its vanishing threshold.

    The threshold is the least ``n >= d`` such that every dual component of
    positive index ``i >= n - d`` is zero (``c_0 = 1`` never counts).
    """
    if c.ring.domain != ZZ:
        raise ValueError("dual_chern expects integer coefficients")
    dual = dual_total_class(c)
    positive = [i for i in dual.nonzero_indices() if i >= 1]
    threshold = d + max(positive) + 1 if positive else d
    return dual, threshold


def class_vector(ring: PolyRing, comps: Sequence[TruncatedPoly | int]) -> CharClassVector:
    return CharClassVector(tuple(p if isinstance(p, TruncatedPoly) else ring.const(p) for p in comps))
