"""Cell-level deleted products and the mod 2 Euler class of the swap cover.

A cell of the deleted product is an ordered pair ``(sigma, tau)`` of disjoint
simplices, of dimension ``dim sigma + dim tau``.  The swap ``(sigma, tau) ->
(tau, sigma)`` is free and cellular, and the orbit complex ``Y`` carries the
line bundle ``lambda``.  Cup product with ``e(lambda)`` is computed as the
connecting map of

    0 -> C^*(Y) --proj^*--> C^*(X) --transfer^*--> C^*(Y) -> 0

by lifting through a section, taking the coboundary upstairs and reading the
result off one member of each orbit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .gf2core import BitMatrix, rank, solve
from .simplicial import PAIR_CAP, ResourceCapExceeded, Simplex, SimplicialComplex

Cell = tuple[Simplex, Simplex]


class NotACocycle(ValueError):
    pass


class InsufficientDegree(ValueError):
    """The complex was not materialized far enough for the requested degree."""


def cell_dim(cell: Cell) -> int:
    return len(cell[0]) + len(cell[1]) - 2


def swap(cell: Cell) -> Cell:
    return (cell[1], cell[0])


def cell_faces(cell: Cell) -> list[Cell]:
    """Codimension-one faces; mod 2 every face has incidence 1."""
    sigma, tau = cell
    out = []
    if len(sigma) > 1:
        for i in range(len(sigma)):
            out.append((sigma[:i] + sigma[i + 1 :], tau))
    if len(tau) > 1:
        for i in range(len(tau)):
            out.append((sigma, tau[:i] + tau[i + 1 :]))
    return out


def _coboundary_matrices(cells: Sequence[Sequence[Cell]], face_map) -> list[BitMatrix]:
    """``delta^n : C^n -> C^{n+1}`` with one row per ``(n+1)``-cell."""
    index = [{c: i for i, c in enumerate(layer)} for layer in cells]
    mats = []
    for n in range(len(cells) - 1):
        rows = []
        lower = index[n]
        for c in cells[n + 1]:
            word = 0
            for f in face_map(c):
                word ^= 1 << lower[f]
            rows.append(word)
        mats.append(BitMatrix(len(cells[n + 1]), len(cells[n]), rows))
    return mats


@dataclass
class FreeInvolutionComplex:
    """Ordered disjoint pairs of simplices, graded by total dimension.

    ``truncated_at`` is the top materialized degree when the enumeration was
    cut short of the complex's true dimension, else None.
    """

    cells: list[list[Cell]]
    truncated_at: int | None = None
    description: str = ""
    coboundary: list[BitMatrix] = field(default_factory=list)
    index: list[dict[Cell, int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        for n, layer in enumerate(self.cells):
            for c in layer:
                if cell_dim(c) != n:
                    raise ValueError(f"cell {c} filed in degree {n}")
                if set(c[0]) & set(c[1]):
                    raise ValueError(f"cell {c} is not a disjoint pair")
        self.index = [{c: i for i, c in enumerate(layer)} for layer in self.cells]
        for n, layer in enumerate(self.cells):
            for c in layer:
                if swap(c) not in self.index[n]:
                    raise ValueError(f"swap of {c} missing: involution not defined")
        self.coboundary = _coboundary_matrices(self.cells, cell_faces)

    @property
    def dim(self) -> int:
        return len(self.cells) - 1

    def counts(self) -> list[int]:
        return [len(layer) for layer in self.cells]

    def swap_index(self, n: int, i: int) -> int:
        return self.index[n][swap(self.cells[n][i])]


def deleted_product(
    K: SimplicialComplex,
    cap: int | None = None,
    subcomplex: SimplicialComplex | None = None,
    max_degree: int | None = None,
) -> FreeInvolutionComplex:
    """Deleted product of ``K`` (or of a subcomplex ``A``), optionally capped.

    ``cap`` keeps cells with ``#sigma - 1 + #tau - 1 <= cap`` and defines the
    complex.  ``max_degree`` only limits how much of it is materialized.
    """
    base = K
    if subcomplex is not None:
        if not subcomplex.simplices <= K.simplices:
            raise ValueError("subcomplex is not contained in K")
        base = subcomplex
    simplices = sorted(base.simplices)
    if len(simplices) ** 2 > PAIR_CAP:
        raise ResourceCapExceeded(f"{len(simplices)} simplices exceed the pair enumeration cap")
    limit = cap
    if max_degree is not None:
        limit = max_degree if limit is None else min(limit, max_degree)
    layers: dict[int, list[Cell]] = {}
    for sigma in simplices:
        ss = set(sigma)
        for tau in simplices:
            n = len(sigma) + len(tau) - 2
            if limit is not None and n > limit:
                continue
            if ss.isdisjoint(tau):
                layers.setdefault(n, []).append((sigma, tau))
    top = max(layers, default=-1)
    cells = [sorted(layers.get(n, [])) for n in range(top + 1)]
    truncated_at = None
    if max_degree is not None and (cap is None or max_degree < cap):
        # is anything beyond max_degree actually present?
        beyond = any(
            len(s) + len(t) - 2 > max_degree and set(s).isdisjoint(t)
            and (cap is None or len(s) + len(t) - 2 <= cap)
            for s in simplices for t in simplices
        )
        if beyond:
            truncated_at = max_degree
            cells += [[] for _ in range(max_degree + 1 - len(cells))]
    parts = ["full" if cap is None else f"cap:{cap}"]
    if subcomplex is not None:
        parts.append("subcomplex")
    if truncated_at is not None:
        parts.append(f"materialized<= {truncated_at}")
    return FreeInvolutionComplex(cells, truncated_at, " ".join(parts))


@dataclass
class QuotientComplex:
    """Orbit complex ``Y = X/G`` with transfer/projection data.

    Orbit ``i`` in degree ``n`` is represented by ``reps[n][i]``, the
    lexicographically least member.
    """

    X: FreeInvolutionComplex
    reps: list[list[Cell]] = field(default_factory=list)
    orbit_of: list[list[int]] = field(default_factory=list)
    rep_index: list[list[int]] = field(default_factory=list)
    other_index: list[list[int]] = field(default_factory=list)
    coboundary: list[BitMatrix] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.reps) - 1

    @property
    def truncated_at(self) -> int | None:
        return self.X.truncated_at

    def counts(self) -> list[int]:
        return [len(r) for r in self.reps]

    def transfer(self, n: int) -> BitMatrix:
        """``C_n(Y) -> C_n(X)``: an orbit goes to the sum of its two cells."""
        nx = len(self.X.cells[n])
        rows = [0] * nx
        for o, (a, b) in enumerate(zip(self.rep_index[n], self.other_index[n])):
            rows[a] |= 1 << o
            rows[b] |= 1 << o
        return BitMatrix(nx, len(self.reps[n]), rows)

    def projection(self, n: int) -> BitMatrix:
        """``C_n(X) -> C_n(Y)``: a cell goes to its orbit."""
        ny = len(self.reps[n])
        rows = [0] * ny
        for i, o in enumerate(self.orbit_of[n]):
            rows[o] |= 1 << i
        return BitMatrix(ny, len(self.X.cells[n]), rows)

    def check_exactness(self) -> bool:
        """Chain-level exactness of ``0 -> C(Y) -> C(X) -> C(Y) -> 0`` in every degree."""
        for n in range(self.dim + 1):
            tr, pr = self.transfer(n), self.projection(n)
            ny, nx = len(self.reps[n]), len(self.X.cells[n])
            if not pr.matmul(tr).is_zero():
                return False
            if rank(tr) != ny or rank(pr) != ny:
                return False
            if rank(tr) != nx - rank(pr):
                return False
        return True

    def unit(self) -> int:
        """The unit 0-cocycle (all orbit vertices)."""
        if not self.reps:
            return 0
        return (1 << len(self.reps[0])) - 1

    def _delta(self, n: int) -> BitMatrix | None:
        if n < len(self.coboundary):
            return self.coboundary[n]
        return None

    def is_cocycle(self, n: int, c: int) -> bool:
        if self.truncated_at is not None and n >= self.truncated_at:
            raise InsufficientDegree(f"degree {n + 1} cells are not materialized")
        d = self._delta(n)
        return d is None or d.matvec(c) == 0

    def is_coboundary(self, n: int, c: int) -> bool:
        if c == 0:
            return True
        if n == 0:
            return False
        d = self._delta(n - 1)
        if d is None:
            return False
        return solve(d, c) is not None


def quotient(X: FreeInvolutionComplex) -> QuotientComplex:
    reps: list[list[Cell]] = []
    orbit_of: list[list[int]] = []
    rep_index: list[list[int]] = []
    other_index: list[list[int]] = []
    for n, layer in enumerate(X.cells):
        idx = X.index[n]
        layer_reps = []
        for c in layer:
            s = swap(c)
            if s == c:
                raise ValueError(f"cell {c} is fixed by the involution")
            if c < s:
                layer_reps.append(c)
        layer_reps.sort()
        rep_pos = {c: o for o, c in enumerate(layer_reps)}
        orb = [rep_pos[min(c, swap(c))] for c in layer]
        reps.append(layer_reps)
        orbit_of.append(orb)
        rep_index.append([idx[c] for c in layer_reps])
        other_index.append([idx[swap(c)] for c in layer_reps])

    def orbit_faces(c: Cell) -> list[Cell]:
        return [min(f, swap(f)) for f in cell_faces(c)]

    Y = QuotientComplex(X, reps, orbit_of, rep_index, other_index)
    Y.coboundary = _coboundary_matrices(reps, orbit_faces)
    return Y


def smith_connecting(Y: QuotientComplex, n: int, c: int, flip: int = 0) -> int:
    """Connecting image of the degree-``n`` cocycle ``c`` (packed over orbits).

    ``flip`` selects, orbit by orbit, the non-canonical member as the section;
    the cohomology class of the result does not depend on it.
    """
    width = len(Y.reps[n]) if n < len(Y.reps) else 0
    if c >> width:
        raise ValueError("cochain longer than the orbit count")
    if not Y.is_cocycle(n, c):
        raise NotACocycle(f"degree {n} cochain is not a cocycle")
    if n + 1 >= len(Y.reps):
        return 0
    lift = 0
    word, o = c, 0
    while word:
        if word & 1:
            member = Y.other_index[n][o] if (flip >> o) & 1 else Y.rep_index[n][o]
            lift |= 1 << member
        word >>= 1
        o += 1
    up = Y.X.coboundary[n].matvec(lift)
    out = 0
    for o, (a, b) in enumerate(zip(Y.rep_index[n + 1], Y.other_index[n + 1])):
        va, vb = (up >> a) & 1, (up >> b) & 1
        if va != vb:
            raise AssertionError("coboundary of the lift is not pulled back from Y")
        if va:
            out |= 1 << o
    return out


def euler_powers(Y: QuotientComplex, m: int) -> list[int]:
    """Cocycle representatives of ``e^0, ..., e^m``."""
    c = Y.unit()
    out = [c]
    for n in range(m):
        c = smith_connecting(Y, n, c)
        out.append(c)
    return out


def _check_degree(Y: QuotientComplex, m: int) -> None:
    if Y.truncated_at is not None and m >= Y.truncated_at:
        raise InsufficientDegree(
            f"e^{m} needs cells through degree {m + 1}; materialized through {Y.truncated_at}"
        )


def euler_power_nonzero(Y: QuotientComplex, m: int) -> bool:
    if m < 0:
        raise ValueError("m must be >= 0")
    _check_degree(Y, m)
    if m > Y.dim:
        return False
    c = euler_powers(Y, m)[-1]
    return not Y.is_coboundary(m, c)


@dataclass(frozen=True)
class IndexReport:
    index: int
    cells: list[int]
    orbits: list[int]
    description: str
    cocycles: list[str]

    def to_json(self, with_cocycles: bool = False) -> dict:
        out = {
            "index": self.index,
            "cells_per_degree": self.cells,
            "orbits_per_degree": self.orbits,
            "complex": self.description,
        }
        if with_cocycles:
            out["cocycles"] = self.cocycles
        return out


def _bits(word: int, n: int) -> str:
    return "".join(str((word >> i) & 1) for i in range(n))


def z2_index(Y: QuotientComplex) -> int:
    """Largest ``m`` with ``e(lambda)^m != 0``; ``-1`` for an empty complex."""
    return index_report(Y).index


def index_report(Y: QuotientComplex) -> IndexReport:
    c = Y.unit()
    reps: list[str] = []
    index = -1
    n = 0
    while n <= Y.dim:
        if Y.is_coboundary(n, c):
            break
        index = n
        reps.append(_bits(c, len(Y.reps[n])))
        if Y.truncated_at is not None and n + 1 >= Y.truncated_at:
            raise InsufficientDegree(
                f"e^{n} is nonzero and degree {n + 2} cells are not materialized; "
                "the index is not determined"
            )
        if n == Y.dim:
            break
        c = smith_connecting(Y, n, c)
        n += 1
    return IndexReport(index, Y.X.counts(), Y.counts(), Y.X.description, reps)


def nonzero_powers(Y: QuotientComplex) -> set[int]:
    """``{i : e^i != 0}``; an initial segment by monotonicity."""
    return set(range(z2_index(Y) + 1))


def coboundary_squares_vanish(complex_: FreeInvolutionComplex | QuotientComplex) -> bool:
    mats = complex_.coboundary
    return all(mats[n + 1].matmul(mats[n]).is_zero() for n in range(len(mats) - 1))


def build_quotient(
    K: SimplicialComplex,
    cap: int | None = None,
    subcomplex: SimplicialComplex | None = None,
    max_degree: int | None = None,
) -> QuotientComplex:
    return quotient(deleted_product(K, cap=cap, subcomplex=subcomplex, max_degree=max_degree))


def cells_json(X: FreeInvolutionComplex) -> list[list[list[list[str]]]]:
    return [[[list(s), list(t)] for s, t in layer] for layer in X.cells]


def cells_from_json(data: Iterable) -> FreeInvolutionComplex:
    cells = [[(tuple(s), tuple(t)) for s, t in layer] for layer in data]
    return FreeInvolutionComplex(cells)
