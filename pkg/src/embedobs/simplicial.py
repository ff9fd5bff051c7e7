"""Finite abstract simplicial complexes, barycentric points and cover families.

Vertex labels are strings ordered lexicographically; a simplex is a sorted
tuple of labels.  All point-level arithmetic is exact (``Fraction``).
"""

from __future__ import annotations

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

Simplex = tuple[str, ...]

PAIR_CAP = 1 << 24


class ComplexError(ValueError):
    pass


class ResourceCapExceeded(RuntimeError):
    pass


def simplex_key(s: Simplex) -> tuple:
    return (len(s), s)


def _canon(simplex: Iterable) -> Simplex:
    labels = tuple(sorted({str(v) for v in simplex}))
    if not labels:
        raise ComplexError("empty simplex")
    return labels


def _faces(s: Simplex) -> Iterable[Simplex]:
    for k in range(1, len(s) + 1):
        yield from itertools.combinations(s, k)


def _is_maximal(s: Simplex, closure: set[Simplex], vertices: Sequence[str]) -> bool:
    members = set(s)
    return not any(
        v not in members and tuple(sorted(members | {v})) in closure for v in vertices
    )


class SimplicialComplex:
    """Downward-closed family of nonempty vertex sets.

    Stored as the sorted facet list plus a membership set of all simplices.
    """

    __slots__ = ("vertices", "facets", "_simplices")

    def __init__(self, facets: Iterable[Iterable], vertices: Iterable | None = None):
        canon = {_canon(f) for f in facets}
        closure: set[Simplex] = set()
        for f in canon:
            closure.update(_faces(f))
        verts = {v for s in closure for v in s}
        if vertices is not None:
            extra = {str(v) for v in vertices}
            closure.update((v,) for v in extra)
            verts |= extra
        self.vertices: tuple[str, ...] = tuple(sorted(verts))
        self._simplices = frozenset(closure)
        self.facets: tuple[Simplex, ...] = tuple(
            sorted((s for s in closure if _is_maximal(s, closure, self.vertices)), key=simplex_key)
        )

    @classmethod
    def from_simplices(cls, simplices: Iterable[Iterable]) -> "SimplicialComplex":
        """Build from a family that must already be downward closed."""
        family = {_canon(s) for s in simplices}
        for s in family:
            for face in _faces(s):
                if face not in family:
                    raise ComplexError(f"family not downward closed: {face} missing below {s}")
        return cls(family)

    @property
    def simplices(self) -> frozenset[Simplex]:
        return self._simplices

    def sorted_simplices(self) -> list[Simplex]:
        return sorted(self._simplices, key=simplex_key)

    def __contains__(self, s: object) -> bool:
        if isinstance(s, (tuple, list, set, frozenset)):
            return tuple(sorted(s)) in self._simplices
        return False

    def __len__(self) -> int:
        return len(self._simplices)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.vertices == other.vertices and self._simplices == other._simplices

    def __hash__(self) -> int:
        return hash((self.vertices, self._simplices))

    def __repr__(self) -> str:
        return f"SimplicialComplex({len(self.vertices)} vertices, {len(self.facets)} facets, dim {self.dim})"

    @property
    def dim(self) -> int:
        return max((len(s) - 1 for s in self._simplices), default=-1)

    def f_vector(self) -> list[int]:
        counts = [0] * (self.dim + 1)
        for s in self._simplices:
            counts[len(s) - 1] += 1
        return counts

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * n for i, n in enumerate(self.f_vector()))

    def simplices_of_dim(self, k: int) -> list[Simplex]:
        return sorted(s for s in self._simplices if len(s) == k + 1)

    def is_downward_closed(self) -> bool:
        return all(face in self._simplices for s in self._simplices for face in _faces(s))

    def restrict(self, keep: Callable[[Simplex], bool]) -> "SimplicialComplex":
        """Subfamily of simplices passing ``keep``; must be downward closed."""
        return SimplicialComplex.from_simplices(s for s in self._simplices if keep(s))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices), "facets": [list(f) for f in self.facets]}

    @classmethod
    def from_json(cls, data: Mapping) -> "SimplicialComplex":
        if not isinstance(data, Mapping) or "facets" not in data:
            raise ComplexError("complex JSON needs a 'facets' list")
        facets = data["facets"]
        if not isinstance(facets, list) or not all(isinstance(f, list) and f for f in facets):
            raise ComplexError("'facets' must be a list of nonempty vertex lists")
        complex_ = cls(facets, data.get("vertices"))
        return complex_

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def skeleton(K: SimplicialComplex, q: int) -> SimplicialComplex:
    if q < 0:
        raise ValueError("skeleton dimension must be >= 0")
    return SimplicialComplex((s for s in K.simplices if len(s) <= q + 1), K.vertices)


def full_simplex(labels: Sequence[str]) -> SimplicialComplex:
    return SimplicialComplex([labels])


def boundary_of_simplex(n: int, prefix: str = "v") -> SimplicialComplex:
    """All proper nonempty faces of an ``n``-simplex on ``n+1`` vertices."""
    if n < 1:
        raise ValueError("need n >= 1")
    labels = vertex_labels(n + 1, prefix)
    return SimplicialComplex(itertools.combinations(labels, n))


def vertex_labels(count: int, prefix: str = "v") -> list[str]:
    width = len(str(max(count - 1, 0)))
    return [f"{prefix}{i:0{width}d}" for i in range(count)]


def complete_graph(n: int, prefix: str = "v") -> SimplicialComplex:
    return skeleton(boundary_of_simplex(n - 1, prefix), 1)


def join(K1: SimplicialComplex, K2: SimplicialComplex) -> SimplicialComplex:
    clash = set(K1.vertices) & set(K2.vertices)
    if clash:
        raise ComplexError(f"join needs disjoint labels; shared: {sorted(clash)}")
    if not K1.vertices:
        return K2
    if not K2.vertices:
        return K1
    return SimplicialComplex(a + b for a in K1.facets for b in K2.facets)


def empty_complex() -> SimplicialComplex:
    return SimplicialComplex([])


_RP2_FACETS = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6),
]


def minimal_rp2() -> SimplicialComplex:
    """The 6-vertex real projective plane (hemi-icosahedron)."""
    return SimplicialComplex([[str(v) for v in f] for f in _RP2_FACETS])


# -- barycentric points -------------------------------------------------------


@dataclass(frozen=True)
class BarycentricPoint:
    weights: tuple[tuple[str, Fraction], ...]

    def __post_init__(self) -> None:
        clean = tuple(sorted((str(v), Fraction(w)) for v, w in self.weights))
        if len({v for v, _ in clean}) != len(clean):
            raise ValueError("repeated vertex in barycentric point")
        if any(w < 0 for _, w in clean):
            raise ValueError("negative barycentric weight")
        if sum(w for _, w in clean) != 1:
            raise ValueError("barycentric weights must sum to 1")
        object.__setattr__(self, "weights", tuple((v, w) for v, w in clean if w != 0))

    @classmethod
    def of(cls, weights: Mapping[str, Fraction | int | str]) -> "BarycentricPoint":
        return cls(tuple((v, Fraction(w)) for v, w in weights.items()))

    def __getitem__(self, v: str) -> Fraction:
        return dict(self.weights).get(v, Fraction(0))

    @property
    def support(self) -> Simplex:
        return tuple(v for v, _ in self.weights)

    def in_complex(self, K: SimplicialComplex) -> bool:
        return self.support in K.simplices


def alpha(x: BarycentricPoint, y: BarycentricPoint) -> BarycentricPoint:
    """Normalized positive part of ``x - y``."""
    verts = set(x.support) | set(y.support)
    pos = {v: max(x[v] - y[v], Fraction(0)) for v in verts}
    total = sum(pos.values(), Fraction(0))
    if total == 0:
        raise ValueError("alpha(x, y) is undefined for x == y")
    return BarycentricPoint.of({v: p / total for v, p in pos.items() if p})


def mu(x: BarycentricPoint, Rj: Iterable[Simplex]) -> Fraction:
    """``min`` over ``I`` in ``Rj`` plus the empty set of the mass of ``x`` off ``I``."""
    best = Fraction(1)
    for I in Rj:
        inside = set(I)
        outside = sum((w for v, w in x.weights if v not in inside), Fraction(0))
        if outside < best:
            best = outside
    return best


# -- cover families -----------------------------------------------------------


@dataclass(frozen=True)
class CoverFamily:
    complex: SimplicialComplex
    members: tuple[frozenset[Simplex], ...]
    kind: str = "explicit"

    def __post_init__(self) -> None:
        S = self.complex.simplices
        for j, Rj in enumerate(self.members):
            bad = [s for s in Rj if s not in S]
            if bad:
                raise ComplexError(f"R_{j + 1} contains non-simplices, e.g. {sorted(bad)[0]}")

    @property
    def r(self) -> int:
        return len(self.members)

    @property
    def intersection(self) -> frozenset[Simplex]:
        if not self.members:
            return self.complex.simplices
        return frozenset.intersection(*self.members)

    def members_downward_closed(self) -> bool:
        return all(
            face in Rj for Rj in self.members for s in Rj for face in _faces(s)
        )

    def subcomplex(self) -> SimplicialComplex:
        """The subcomplex ``A`` of points whose support lies in every member."""
        R = self.intersection
        if not all(face in R for s in R for face in _faces(s)):
            raise ComplexError("intersection of the family is not downward closed")
        return SimplicialComplex(R)

    def to_json(self) -> dict:
        return {
            "kind": "explicit",
            "families": [[list(s) for s in sorted(Rj, key=simplex_key)] for Rj in self.members],
        }


def family_from_predicates(
    K: SimplicialComplex, predicates: Sequence[Callable[[Simplex], bool]], kind: str
) -> CoverFamily:
    return CoverFamily(
        K, tuple(frozenset(s for s in K.simplices if p(s)) for p in predicates), kind
    )


def skeleton_family(K: SimplicialComplex, m: int) -> CoverFamily:
    """Single member ``{I : 2#I <= m + 3}``."""
    return family_from_predicates(K, [lambda s: 2 * len(s) <= m + 3], "skeleton")


def partition_family(K: SimplicialComplex, parts: Sequence[Iterable[str]]) -> CoverFamily:
    """Members ``R_j = {I : 2#(I & V_j) < #V_j}`` for a partition of the vertices."""
    blocks = [frozenset(str(v) for v in p) for p in parts]
    if any(not b for b in blocks):
        raise ComplexError("partition has an empty part")
    seen: set[str] = set()
    for b in blocks:
        if seen & b:
            raise ComplexError("partition parts overlap")
        seen |= b
    if seen != set(K.vertices):
        raise ComplexError("partition does not cover the vertex set exactly")

    def make(block: frozenset[str]) -> Callable[[Simplex], bool]:
        return lambda s: 2 * len(block.intersection(s)) < len(block)

    return family_from_predicates(K, [make(b) for b in blocks], "partition")


@dataclass(frozen=True)
class CoverCheck:
    ok: bool
    counterexample: tuple[int, Simplex, Simplex] | None = None
    pairs_checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _disjoint_pairs(K: SimplicialComplex, bound: int) -> list[tuple[Simplex, Simplex]]:
    """Ordered pairs ``(I, J)`` of disjoint simplices, ``#I - 1 + #J - 1 <= bound``."""
    simplices = sorted(K.simplices)
    n = len(simplices)
    if n * n > PAIR_CAP:
        raise ResourceCapExceeded(f"{n} simplices give {n * n} pairs, cap is {PAIR_CAP}")
    out = []
    for I in simplices:
        si = set(I)
        for J in simplices:
            if len(I) + len(J) - 2 <= bound and si.isdisjoint(J):
                out.append((I, J))
    return out


def verify_cover_hypothesis(
    K: SimplicialComplex, family: CoverFamily, m: int, r: int, threads: int = 1
) -> CoverCheck:
    """Exhaustive check that every disjoint pair with ``#I-1+#J-1 <= m+r``
    has ``I`` or ``J`` in each member.

    The reported counterexample is the least ``(j, I, J)`` in lexicographic
    order (``j`` is 1-based).
    """
    if family.r != r:
        raise ValueError(f"family has {family.r} members, expected r={r}")
    pairs = _disjoint_pairs(K, m + r)

    def scan(j: int) -> tuple[int, Simplex, Simplex] | None:
        Rj = family.members[j]
        for I, J in pairs:
            if I not in Rj and J not in Rj:
                return (j + 1, I, J)
        return None

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            found = list(pool.map(scan, range(r)))
    else:
        found = [scan(j) for j in range(r)]
    for hit in found:
        if hit is not None:
            return CoverCheck(False, hit, len(pairs))
    return CoverCheck(True, None, len(pairs))


def minimal_excluded(K: SimplicialComplex, R: Iterable[Simplex]) -> list[Simplex]:
    """Inclusion-minimal simplices of ``K`` outside ``R``."""
    Rset = set(R)
    outside = [s for s in K.simplices if s not in Rset]
    outside_set = set(outside)
    minimal = [
        s for s in outside
        if not any(face in outside_set for face in _faces(s) if face != s)
    ]
    return sorted(minimal, key=simplex_key)


def gamma_sets(family: CoverFamily) -> tuple[list[Simplex], list[list[Simplex]]]:
    """``Gamma`` and ``C_j = {I' in Gamma : I' not in R_j}`` for a family."""
    gamma = minimal_excluded(family.complex, family.intersection)
    return gamma, [[g for g in gamma if g not in Rj] for Rj in family.members]


def family_from_gamma(K: SimplicialComplex, C: Sequence[Iterable[Simplex]]) -> CoverFamily:
    """``R_j = {I in S : no I' in C_j is contained in I}``."""
    blocks = [[set(c) for c in Cj] for Cj in C]

    def make(block: list[set[str]]) -> Callable[[Simplex], bool]:
        return lambda s: not any(c <= set(s) for c in block)

    return family_from_predicates(K, [make(b) for b in blocks], "gamma")


@dataclass(frozen=True)
class GammaCheck:
    ok: bool
    reason: str = ""
    cover: CoverCheck | None = None

    def __bool__(self) -> bool:
        return self.ok


def gamma_cover_check(
    K: SimplicialComplex,
    gamma: Iterable[Iterable[str]],
    C: Sequence[Iterable[Iterable[str]]],
    m: int,
    r: int,
) -> GammaCheck:
    G = {_canon(g) for g in gamma}
    Cs = [[_canon(c) for c in Cj] for Cj in C]
    if len(Cs) != r:
        return GammaCheck(False, f"expected {r} sets C_j, got {len(Cs)}")
    for g in G:
        if g not in K.simplices:
            return GammaCheck(False, f"{g} is not a simplex")
    union = set().union(*Cs) if Cs else set()
    if not union <= G:
        return GammaCheck(False, "some C_j is not contained in Gamma")
    if union != G:
        return GammaCheck(False, "Gamma is not the union of the C_j")
    for j, Cj in enumerate(Cs, start=1):
        for a, b in itertools.combinations_with_replacement(sorted(Cj), 2):
            if len(a) + len(b) <= m + r + 2 and not set(a) & set(b):
                return GammaCheck(False, f"C_{j} has small disjoint members {a}, {b}")
    if not G:
        return GammaCheck(True, "empty Gamma")
    cover = verify_cover_hypothesis(K, family_from_gamma(K, Cs), m, r)
    if not cover:
        return GammaCheck(False, "induced family fails the cover hypothesis", cover)
    return GammaCheck(True, "", cover)
