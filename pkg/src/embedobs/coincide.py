"""Coincidence witnesses for affine-on-simplices (PL) maps.

A witness is a pair of disjoint simplices with barycentric points ``x``
and ``y`` such that ``f(x) = f(y)`` holds exactly.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import lp
from .simplicial import Simplex, SimplicialComplex


class MapError(ValueError):
    pass


@dataclass(frozen=True)
class PLMap:
    dimension: int
    images: tuple[tuple[str, tuple[Fraction, ...]], ...]

    def __post_init__(self) -> None:
        if self.dimension < 1:
            raise MapError("target dimension must be >= 1")
        clean = []
        for v, p in sorted(self.images):
            coords = tuple(Fraction(c) for c in p)
            if len(coords) != self.dimension:
                raise MapError(f"image of {v} has {len(coords)} coordinates, expected {self.dimension}")
            clean.append((str(v), coords))
        object.__setattr__(self, "images", tuple(clean))
        object.__setattr__(self, "_lookup", dict(clean))

    @classmethod
    def of(cls, dimension: int, images: Mapping[str, Sequence]) -> "PLMap":
        return cls(dimension, tuple((v, tuple(Fraction(c) for c in p)) for v, p in images.items()))

    def __call__(self, v: str) -> tuple[Fraction, ...]:
        return self._lookup[v]  # type: ignore[attr-defined]

    def covers(self, K: SimplicialComplex) -> bool:
        return set(K.vertices) <= set(self._lookup)  # type: ignore[attr-defined]

    def evaluate(self, point: Mapping[str, Fraction]) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dimension
        for v, w in point.items():
            for k, c in enumerate(self(v)):
                out[k] += w * c
        return tuple(out)

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "images": {v: [str(c) for c in p] for v, p in self.images},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "PLMap":
        try:
            dim = int(data["dimension"])
            images = data["images"]
            return cls.of(dim, {str(v): [Fraction(str(c)) for c in p] for v, p in images.items()})
        except (KeyError, TypeError, ValueError, ZeroDivisionError, AttributeError) as exc:
            raise MapError(f"malformed points file: {exc}") from exc


@dataclass(frozen=True)
class CoincidenceWitness:
    sigma: Simplex
    tau: Simplex
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]
    image: tuple[Fraction, ...]

    @property
    def x_point(self) -> dict[str, Fraction]:
        return dict(zip(self.sigma, self.x))

    @property
    def y_point(self) -> dict[str, Fraction]:
        return dict(zip(self.tau, self.y))

    @property
    def supports(self) -> tuple[Simplex, Simplex]:
        return (
            tuple(v for v, w in zip(self.sigma, self.x) if w),
            tuple(v for v, w in zip(self.tau, self.y) if w),
        )

    @property
    def cardinality(self) -> int:
        """``#supp(x) - 1 + #supp(y) - 1``."""
        sx, sy = self.supports
        return len(sx) + len(sy) - 2

    def verify(self, f: PLMap) -> bool:
        sx, sy = self.supports
        return (
            not set(sx) & set(sy)
            and all(w >= 0 for w in self.x + self.y)
            and sum(self.x) == 1
            and sum(self.y) == 1
            and f.evaluate(self.x_point) == f.evaluate(self.y_point) == self.image
        )

    def to_json(self) -> dict:
        return {
            "sigma": list(self.sigma),
            "tau": list(self.tau),
            "x": [str(w) for w in self.x],
            "y": [str(w) for w in self.y],
            "image": [str(c) for c in self.image],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "CoincidenceWitness":
        return cls(
            tuple(data["sigma"]),
            tuple(data["tau"]),
            tuple(Fraction(w) for w in data["x"]),
            tuple(Fraction(w) for w in data["y"]),
            tuple(Fraction(c) for c in data["image"]),
        )


def _system(f: PLMap, sigma: Simplex, tau: Simplex) -> tuple[list[list[Fraction]], list[Fraction]]:
    A: list[list[Fraction]] = []
    b: list[Fraction] = []
    for k in range(f.dimension):
        A.append([f(v)[k] for v in sigma] + [-f(u)[k] for u in tau])
        b.append(Fraction(0))
    A.append([Fraction(1)] * len(sigma) + [Fraction(0)] * len(tau))
    b.append(Fraction(1))
    A.append([Fraction(0)] * len(sigma) + [Fraction(1)] * len(tau))
    b.append(Fraction(1))
    return A, b


def pair_feasible(f: PLMap, sigma: Simplex, tau: Simplex) -> CoincidenceWitness | None:
    """Exact test for a coincidence between the images of ``sigma`` and ``tau``.

    The witness is the lexicographically least feasible ``(x, y)``.
    """
    sigma, tau = tuple(sigma), tuple(tau)
    if set(sigma) & set(tau):
        raise ValueError("simplices must be disjoint")
    A, b = _system(f, sigma, tau)
    z = lp.lexmin_point(A, b)
    if z is None:
        return None
    x, y = tuple(z[: len(sigma)]), tuple(z[len(sigma) :])
    w = CoincidenceWitness(sigma, tau, x, y, f.evaluate(dict(zip(sigma, x))))
    if not w.verify(f):
        raise AssertionError(f"witness failed exact re-verification: {w}")
    return w


def candidate_pairs(K: SimplicialComplex, cap: int | None = None) -> list[tuple[Simplex, Simplex]]:
    """Unordered disjoint pairs ``sigma < tau``, filtered by ``#sigma-1+#tau-1 <= cap``."""
    simplices = sorted(K.simplices)
    out = []
    for i, s in enumerate(simplices):
        ss = set(s)
        for t in simplices[i + 1 :]:
            if cap is not None and len(s) + len(t) - 2 > cap:
                continue
            if ss.isdisjoint(t):
                out.append((s, t))
    return out


def find_coincidences(
    K: SimplicialComplex, f: PLMap, cap: int | None = None, threads: int = 1
) -> list[CoincidenceWitness]:
    if not f.covers(K):
        missing = sorted(set(K.vertices) - {v for v, _ in f.images})
        raise MapError(f"map has no image for vertices {missing}")
    pairs = candidate_pairs(K, cap)

    def test(pair: tuple[Simplex, Simplex]) -> CoincidenceWitness | None:
        return pair_feasible(f, *pair)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(test, pairs))
    else:
        results = [test(p) for p in pairs]
    return [w for w in results if w is not None]


def random_plmap(
    K: SimplicialComplex, m: int, seed: int, denominator_bound: int = 16, numerator_bound: int = 1000
) -> PLMap:
    """Images with numerators in ``[-numerator_bound, numerator_bound]`` and
    denominators in ``[1, denominator_bound]``, drawn in vertex order."""
    if m < 1:
        raise MapError("target dimension must be >= 1")
    rng = random.Random(seed)
    images = {}
    for v in K.vertices:
        images[v] = [
            Fraction(rng.randint(-numerator_bound, numerator_bound), rng.randint(1, denominator_bound))
            for _ in range(m)
        ]
    return PLMap.of(m, images)


def mirror(f: PLMap, axis: int = -1) -> PLMap:
    """Compose with the reflection negating coordinate ``axis``."""
    k = axis % f.dimension
    return PLMap(
        f.dimension,
        tuple((v, tuple(-c if i == k else c for i, c in enumerate(p))) for v, p in f.images),
    )


def interpolate(f: PLMap, g: PLMap, t: Fraction) -> PLMap:
    if f.dimension != g.dimension or [v for v, _ in f.images] != [v for v, _ in g.images]:
        raise MapError("maps have different shapes")
    t = Fraction(t)
    return PLMap(
        f.dimension,
        tuple(
            (v, tuple((1 - t) * a + t * b for a, b in zip(p, g(v)))) for v, p in f.images
        ),
    )


def linear_homotopy(f: PLMap, g: PLMap, steps: int) -> list[PLMap]:
    """``steps + 1`` maps at the grid times ``i/steps``."""
    return [interpolate(f, g, Fraction(i, steps)) for i in range(steps + 1)]


def l1_gap(f: PLMap, sigma: Simplex, tau: Simplex) -> Fraction:
    """Exact L1 distance between the image simplices of ``sigma`` and ``tau``."""
    A, b = _system(f, sigma, tau)
    m = f.dimension
    n = len(sigma) + len(tau)
    rows = []
    for k, row in enumerate(A):
        slack = [Fraction(0)] * (2 * m)
        if k < m:
            slack[k] = Fraction(-1)
            slack[m + k] = Fraction(1)
        rows.append(list(row) + slack)
    c = [0] * n + [1] * (2 * m)
    res = lp.minimize(rows, b, c)
    assert res is not None
    return res[0]


class EndpointMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ScanStep:
    t: Fraction
    witnesses: int
    gap: Fraction


@dataclass(frozen=True)
class ScanReport:
    steps: tuple[ScanStep, ...]
    tolerance: Fraction

    @property
    def witness_times(self) -> list[Fraction]:
        return [s.t for s in self.steps if s.witnesses]

    @property
    def min_gap(self) -> Fraction:
        return min(s.gap for s in self.steps)

    @property
    def near_misses(self) -> list[Fraction]:
        return [s.t for s in self.steps if not s.witnesses and s.gap <= self.tolerance]

    def to_json(self) -> dict:
        return {
            "steps": [
                {"t": str(s.t), "witnesses": s.witnesses, "gap": str(s.gap)} for s in self.steps
            ],
            "witness_times": [str(t) for t in self.witness_times],
            "near_misses": [str(t) for t in self.near_misses],
            "min_gap": str(self.min_gap),
        }


def homotopy_scan(
    A: SimplicialComplex,
    h: Sequence[PLMap],
    tolerance: Fraction | int | str = 0,
    axis: int = -1,
    cap: int | None = None,
) -> ScanReport:
    """Exact coincidence test at each grid time ``i/(len(h)-1)``.

    This locates coincidences only on the grid; it does not decide whether
    some off-grid time has one.
    """
    if len(h) < 2:
        raise ValueError("need at least the two endpoint maps")
    if h[-1] != mirror(h[0], axis):
        raise EndpointMismatch("final map is not the mirror image of the initial map")
    steps = []
    last = len(h) - 1
    for i, f in enumerate(h):
        pairs = candidate_pairs(A, cap)
        found = [w for w in (pair_feasible(f, s, t) for s, t in pairs) if w is not None]
        if found:
            gap = Fraction(0)
        else:
            gap = min((l1_gap(f, s, t) for s, t in pairs), default=Fraction(0))
        steps.append(ScanStep(Fraction(i, last), len(found), gap))
    return ScanReport(tuple(steps), Fraction(tolerance))
