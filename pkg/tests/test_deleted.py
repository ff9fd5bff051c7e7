from __future__ import annotations

import random

import pytest

from embedobs.deleted import (
    InsufficientDegree,
    NotACocycle,
    build_quotient,
    cells_from_json,
    cells_json,
    coboundary_squares_vanish,
    deleted_product,
    euler_power_nonzero,
    euler_powers,
    index_report,
    quotient,
    smith_connecting,
    z2_index,
)
from embedobs.gf2core import solve
from embedobs.simplicial import (
    boundary_of_simplex,
    complete_graph,
    minimal_rp2,
    skeleton_family,
)

from oracles import dense_cohomology_ranks, euler_pairing_oracle, index_oracle

MODELS = {
    "sphere1": lambda: boundary_of_simplex(2),
    "sphere2": lambda: boundary_of_simplex(3),
    "sphere3": lambda: boundary_of_simplex(4),
    "K5": lambda: complete_graph(5),
    "rp2": minimal_rp2,
    "K6": lambda: complete_graph(6),
}


# -- cell counts ---------------------------------------------------------------


def test_k5_cell_counts():
    X = deleted_product(complete_graph(5))
    assert X.counts() == [20, 60, 30]
    assert sum(X.counts()) == 110
    Y = quotient(X)
    assert sum(Y.counts()) == 55


def test_triangle_cell_counts():
    X = deleted_product(boundary_of_simplex(2))
    # 6 ordered vertex pairs and 6 (vertex, opposite edge) pairs
    assert X.counts() == [6, 6]
    Y = quotient(X)
    assert Y.counts() == [3, 3]
    # the quotient is a hexagon-like circle: H^0 = H^1 = GF(2)
    assert dense_cohomology_ranks(sorted(boundary_of_simplex(2).simplices)) == [1, 1]


def test_cap_zero_keeps_vertex_pairs():
    X = deleted_product(boundary_of_simplex(4), cap=0)
    assert X.dim == 0
    assert X.counts() == [20]


def test_cells_json_roundtrip():
    X = deleted_product(complete_graph(4))
    Y = cells_from_json(cells_json(X))
    assert Y.cells == X.cells
    with pytest.raises(ValueError):
        cells_from_json([[[["a"], ["b"]]]])  # swap missing


# -- structural invariants -------------------------------------------------------


@pytest.mark.parametrize("name", sorted(MODELS))
def test_exactness_and_delta_squared(name):
    K = MODELS[name]()
    X = deleted_product(K)
    Y = quotient(X)
    assert Y.check_exactness()
    assert coboundary_squares_vanish(X)
    assert coboundary_squares_vanish(Y)


@pytest.mark.parametrize("name", sorted(MODELS))
def test_index_matches_homology_oracle(name):
    K = MODELS[name]()
    Y = build_quotient(K)
    flags = euler_pairing_oracle(sorted(K.simplices))
    for m in range(Y.dim + 1):
        assert euler_power_nonzero(Y, m) == flags[m]
    assert z2_index(Y) == index_oracle(sorted(K.simplices))


@pytest.mark.parametrize("name", ["sphere2", "sphere3", "K5", "rp2"])
def test_section_independence(name):
    K = MODELS[name]()
    Y = build_quotient(K)
    rng = random.Random(name)
    for n, c in enumerate(euler_powers(Y, Y.dim - 1)[:-1]):
        base = smith_connecting(Y, n, c)
        width = len(Y.reps[n])
        for _ in range(10):
            flip = rng.getrandbits(width) if width else 0
            other = smith_connecting(Y, n, c, flip=flip)
            diff = base ^ other
            assert diff == 0 or solve(Y.coboundary[n], diff) is not None


@pytest.mark.parametrize("name", ["sphere2", "sphere3", "K5", "rp2"])
def test_skeleton_consistency(name):
    K = MODELS[name]()
    full = build_quotient(K)
    for m in range(full.dim + 1):
        expected = euler_power_nonzero(full, m)
        for cap in range(m + 1, full.dim + 1):
            assert euler_power_nonzero(build_quotient(K, cap=cap), m) == expected


@pytest.mark.parametrize("name", sorted(MODELS))
def test_monotonicity(name):
    Y = build_quotient(MODELS[name]())
    flags = [euler_power_nonzero(Y, m) for m in range(Y.dim + 2)]
    for m in range(len(flags) - 1):
        if not flags[m]:
            assert not flags[m + 1]


# -- examples ------------------------------------------------------------------


def test_smith_connecting_examples():
    Y = build_quotient(boundary_of_simplex(2))
    e = smith_connecting(Y, 0, Y.unit())
    assert e != 0 and Y.is_cocycle(1, e) and not Y.is_coboundary(1, e)
    assert smith_connecting(Y, 0, 0) == 0

    Y3 = build_quotient(boundary_of_simplex(3))
    e2 = euler_powers(Y3, 2)[-1]
    assert not Y3.is_coboundary(2, e2)


def test_smith_connecting_rejects_non_cocycle():
    Y = build_quotient(complete_graph(5))
    with pytest.raises(NotACocycle):
        smith_connecting(Y, 0, 1)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_sphere_index(d):
    Y = build_quotient(boundary_of_simplex(d + 1))
    assert euler_power_nonzero(Y, d)
    assert z2_index(Y) == d
    assert euler_power_nonzero(Y, 0)


def test_k5_and_rp2_index():
    Y = build_quotient(complete_graph(5))
    assert z2_index(Y) == 2
    assert not euler_power_nonzero(Y, 3)
    assert z2_index(build_quotient(minimal_rp2())) == 3


def test_capped_sphere():
    K = boundary_of_simplex(4)
    for m in range(4):
        assert euler_power_nonzero(build_quotient(K, cap=m), m)


def test_subcomplex_mode():
    K = boundary_of_simplex(4)
    A = skeleton_family(K, 2).subcomplex()
    Y = build_quotient(K, subcomplex=A)
    assert z2_index(Y) == 2
    assert "subcomplex" in Y.X.description


def test_truncation_is_reported():
    K = boundary_of_simplex(4)
    Y = build_quotient(K, max_degree=2)
    assert Y.truncated_at == 2
    with pytest.raises(InsufficientDegree):
        index_report(Y)
    with pytest.raises(InsufficientDegree):
        euler_power_nonzero(Y, 2)
    # low degrees are still decidable
    assert euler_power_nonzero(Y, 1)


def test_index_report_json():
    rep = index_report(build_quotient(complete_graph(5)))
    data = rep.to_json(with_cocycles=True)
    assert data["index"] == 2
    assert data["cells_per_degree"] == [20, 60, 30]
    assert data["orbits_per_degree"] == [10, 30, 15]
    assert data["complex"] == "full"
    assert len(data["cocycles"]) == 3
    assert data["cocycles"][0] == "1" * 10


def test_random_complexes_against_oracle():
    from embedobs.simplicial import SimplicialComplex

    rng = random.Random(17)
    verts = [f"x{i}" for i in range(7)]
    for _ in range(40):
        facets = [rng.sample(verts, rng.randint(1, 4)) for _ in range(rng.randint(2, 6))]
        K = SimplicialComplex(facets)
        Y = build_quotient(K)
        assert Y.check_exactness()
        flags = euler_pairing_oracle(sorted(K.simplices))
        assert [euler_power_nonzero(Y, m) for m in range(Y.dim + 1)] == flags
