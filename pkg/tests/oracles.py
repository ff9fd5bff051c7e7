"""Independent reference computations used only by the tests.

None of these import the code paths they check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import comb

import numpy as np
import sympy


# -- GF(2) by enumeration ------------------------------------------------------


def gf2_solutions(rows: list[list[int]], b: list[int]) -> list[tuple[int, ...]]:
    n = len(rows[0]) if rows else 0
    out = []
    for x in itertools.product((0, 1), repeat=n):
        if all(sum(r[j] * x[j] for j in range(n)) % 2 == bi for r, bi in zip(rows, b)):
            out.append(x)
    return out


def gf2_rank_dense(a: np.ndarray) -> int:
    a = (a.copy() % 2).astype(np.uint8)
    r = 0
    rows, cols = a.shape
    for c in range(cols):
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        a[[r, p]] = a[[p, r]]
        mask = a[:, c].astype(bool)
        mask[r] = False
        a[mask] ^= a[r]
        r += 1
        if r == rows:
            break
    return r


def gf2_nullspace_dense(a: np.ndarray) -> np.ndarray:
    """Rows of the returned array span the null space of ``a``."""
    a = (a.copy() % 2).astype(np.uint8)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        hits = np.nonzero(a[r:, c])[0]
        if hits.size == 0:
            continue
        p = r + hits[0]
        a[[r, p]] = a[[p, r]]
        mask = a[:, c].astype(bool)
        mask[r] = False
        a[mask] ^= a[r]
        pivots.append(c)
        r += 1
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.uint8)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = a[i, f]
    return basis


# -- Z/2-index by the homology Smith map ---------------------------------------


def _disjoint_pair_cells(simplices, cap):
    cells: dict[int, list] = {}
    for s in simplices:
        for t in simplices:
            if set(s) & set(t):
                continue
            n = len(s) + len(t) - 2
            if cap is not None and n > cap:
                continue
            cells.setdefault(n, []).append((s, t))
    top = max(cells, default=-1)
    return [sorted(cells.get(n, [])) for n in range(top + 1)]


def euler_pairing_oracle(simplices, cap=None) -> list[bool]:
    """``[e^m != 0 for m = 0..dim]`` via ``<e^m, z> = eps(S^m z)`` on cycles.

    ``S`` is the homology connecting map of the double cover, built with the
    lexicographically *greatest* member of each orbit as section.
    """
    simplices = [tuple(s) for s in simplices]
    X = _disjoint_pair_cells(simplices, cap)
    orbits = [sorted({frozenset([c, (c[1], c[0])]) for c in layer}, key=lambda o: sorted(o)) for layer in X]
    section = [[max(o) for o in layer] for layer in orbits]
    orbit_pos = [{c: i for i, o in enumerate(layer) for c in o} for layer in orbits]
    sec_pos = [{c: i for i, c in enumerate(layer)} for layer in section]

    def faces(c):
        s, t = c
        out = []
        if len(s) > 1:
            out += [(s[:i] + s[i + 1 :], t) for i in range(len(s))]
        if len(t) > 1:
            out += [(s, t[:i] + t[i + 1 :]) for i in range(len(t))]
        return out

    dims = [len(layer) for layer in orbits]
    boundary_Y = []  # boundary_Y[n]: C_n(Y) -> C_{n-1}(Y)
    smith = []  # smith[n]: C_n(Y) -> C_{n-1}(Y)
    for n in range(len(orbits)):
        if n == 0:
            boundary_Y.append(None)
            smith.append(None)
            continue
        B = np.zeros((dims[n - 1], dims[n]), dtype=np.uint8)
        S = np.zeros((dims[n - 1], dims[n]), dtype=np.uint8)
        for o, cell in enumerate(section[n]):
            for f in faces(cell):
                B[orbit_pos[n - 1][f], o] ^= 1
                if f in sec_pos[n - 1]:
                    S[sec_pos[n - 1][f], o] ^= 1
        boundary_Y.append(B)
        smith.append(S)

    out = []
    for m in range(len(orbits)):
        functional = np.ones(dims[0], dtype=np.int64)
        for n in range(1, m + 1):
            functional = (functional @ smith[n].astype(np.int64)) % 2
        if m == 0:
            cycles = np.eye(dims[0], dtype=np.uint8)
        else:
            cycles = gf2_nullspace_dense(boundary_Y[m])
        values = (cycles.astype(np.int64) @ functional) % 2 if cycles.size else np.zeros(0)
        out.append(bool(np.any(values)))
    return out


def index_oracle(simplices, cap=None) -> int:
    flags = euler_pairing_oracle(simplices, cap)
    idx = -1
    for m, nz in enumerate(flags):
        if not nz:
            break
        idx = m
    return idx


def dense_cohomology_ranks(simplices, cap=None) -> list[int]:
    """``dim H^n(Y)`` of the orbit complex, by dense ranks."""
    simplices = [tuple(s) for s in simplices]
    X = _disjoint_pair_cells(simplices, cap)
    orbits = [sorted({min(c, (c[1], c[0])) for c in layer}) for layer in X]
    pos = [{c: i for i, c in enumerate(layer)} for layer in orbits]
    ranks = []
    for n in range(1, len(orbits)):
        B = np.zeros((len(orbits[n - 1]), len(orbits[n])), dtype=np.uint8)
        for o, (s, t) in enumerate(orbits[n]):
            fs = []
            if len(s) > 1:
                fs += [(s[:i] + s[i + 1 :], t) for i in range(len(s))]
            if len(t) > 1:
                fs += [(s, t[:i] + t[i + 1 :]) for i in range(len(t))]
            for f in fs:
                B[pos[n - 1][min(f, (f[1], f[0]))], o] ^= 1
        ranks.append(gf2_rank_dense(B))
    betti = []
    for n in range(len(orbits)):
        r_out = ranks[n] if n < len(ranks) else 0
        r_in = ranks[n - 1] if n >= 1 else 0
        betti.append(len(orbits[n]) - r_out - r_in)
    return betti


# -- exact LP by vertex enumeration --------------------------------------------


def vertices_by_enumeration(A, b) -> list[tuple[Fraction, ...]]:
    """All basic feasible solutions of ``A z = b, z >= 0`` (sympy, exact)."""
    M = sympy.Matrix(A)
    rhs = sympy.Matrix(b)
    n = M.shape[1]
    r = M.rank()
    if sympy.Matrix.hstack(M, rhs).rank() != r:
        return []
    verts = set()
    for cols in itertools.combinations(range(n), r):
        sub = M[:, list(cols)]
        if sub.rank() != r:
            continue
        sol, params = sub.gauss_jordan_solve(rhs)
        if params.shape[0]:
            continue
        z = [sympy.Integer(0)] * n
        for k, c in enumerate(cols):
            z[c] = sol[k]
        if all(v >= 0 for v in z):
            verts.add(tuple(Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1])) for v in z))
    return sorted(verts)


def coincidence_system(images: dict, sigma, tau):
    m = len(next(iter(images.values())))
    A, b = [], []
    for k in range(m):
        A.append([images[v][k] for v in sigma] + [-images[u][k] for u in tau])
        b.append(0)
    A.append([1] * len(sigma) + [0] * len(tau))
    b.append(1)
    A.append([0] * len(sigma) + [1] * len(tau))
    b.append(1)
    return A, b


# -- binomials and K-theory ---------------------------------------------------


def binom_parity(n: int, k: int) -> bool:
    if k < 0 or k > n:
        return False
    return comb(n, k) % 2 == 1


def atiyah_gamma_mu(d: int, f: int, i: int) -> int:
    """``mu``-coefficient of ``gamma^i(-(d+1) nu)``: binomial series of
    ``(1 + mu t)^{-(d+1)}`` with ``mu^i = (-2)^{i-1} mu``, reduced mod ``2^f``."""
    if i == 0:
        return 0
    neg_binom = (-1) ** i * comb(d + i, i)
    return (neg_binom * (-2) ** (i - 1)) % (1 << f)


def atiyah_bound_oracle(d: int, f: int) -> int:
    horizon = f + 5
    nonzero = [i for i in range(1, horizon) if atiyah_gamma_mu(d, f, i)]
    return d + max(nonzero) + 1 if nonzero else d
