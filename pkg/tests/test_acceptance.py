"""Acceptance criteria 1-11, each with its tolerance (exact) and time limit.

Every test prints one ``criterion N: PASS|FAIL`` line, also without ``-s``.
"""

from __future__ import annotations

import json
import random
import time
from contextlib import contextmanager
from fractions import Fraction
from math import comb

from embedobs.charclass import (
    binomial_is_odd,
    cap_D,
    division_witness,
    dual_total_class,
    frick_harrison_admissible,
    projective_space,
    sphere,
)
from embedobs.cli import main
from embedobs.coincide import PLMap, find_coincidences, random_plmap
from embedobs.deleted import build_quotient, euler_power_nonzero, z2_index
from embedobs.gf2core import SpecialKRing
from embedobs.lambda_ring import (
    chern_from_lambda,
    exterior_powers,
    gamma_direct,
    gamma_ops,
    random_line_sum,
    trivial,
)
from embedobs.simplicial import (
    CoverFamily,
    boundary_of_simplex,
    complete_graph,
    minimal_rp2,
    partition_family,
    skeleton_family,
    verify_cover_hypothesis,
)

from oracles import index_oracle


@contextmanager
def criterion(n: int, title: str, limit: float | None, capsys):
    start = time.perf_counter()
    ok = False
    try:
        yield
        ok = True
    finally:
        elapsed = time.perf_counter() - start
        within = limit is None or elapsed < limit
        status = "PASS" if ok and within else "FAIL"
        budget = f" (limit {limit:g}s)" if limit is not None else ""
        with capsys.disabled():
            print(f"\ncriterion {n}: {status}  {title}  [{elapsed:.2f}s{budget}]")
    assert within, f"criterion {n} took {elapsed:.2f}s, limit {limit}s"


def test_criterion_01_rp_table(capsys):
    with criterion(1, "RP^d table, D = 2^(r+1) - 1 for d = 1..32", 1.0, capsys):
        for d in range(1, 33):
            r = d.bit_length() - 1
            assert 2**r <= d < 2 ** (r + 1)
            assert cap_D(projective_space(d)) == 2 ** (r + 1) - 1


def test_criterion_02_peterson(capsys):
    with criterion(2, "w_(d-1)(-tau RP^d) != 0 for d = 2, 4, 8, 16", 1.0, capsys):
        for d in (2, 4, 8, 16):
            mp = projective_space(d)
            dual = dual_total_class(mp.tangent)
            assert not dual[d - 1].is_zero()
            m = 2 * d - 1
            assert m <= cap_D(mp)
            assert division_witness(mp, m) is None


def test_criterion_03_sphere_models(capsys):
    with criterion(3, "index of deleted boundary(d+1)-simplex is d, d = 1..3", 30.0, capsys):
        for d in (1, 2, 3):
            assert z2_index(build_quotient(boundary_of_simplex(d + 1))) == d


def test_criterion_04_capped(capsys):
    with criterion(4, "e^m != 0 on capped(m) quotient of boundary 4-simplex, m <= 3", 30.0, capsys):
        K = boundary_of_simplex(4)
        for m in range(4):
            assert euler_power_nonzero(build_quotient(K, cap=m), m)


def test_criterion_05_manifold_converse(capsys):
    with criterion(5, "index = D for sphere models and minimal RP^2", 60.0, capsys):
        for d in (1, 2, 3):
            K = boundary_of_simplex(d + 1)
            idx = z2_index(build_quotient(K))
            assert idx == cap_D(sphere(d))
            assert idx == index_oracle(sorted(K.simplices))
        K = minimal_rp2()
        idx = z2_index(build_quotient(K))
        assert idx == cap_D(projective_space(2)) == 3
        assert idx == index_oracle(sorted(K.simplices))


def test_criterion_06_van_kampen_flores(capsys):
    with criterion(6, "index of deleted K_5 is 2", 5.0, capsys):
        K = complete_graph(5)
        assert K == boundary_of_simplex(4).restrict(lambda s: len(s) <= 2)
        Y = build_quotient(K)
        assert Y.dim == 2
        assert z2_index(Y) == 2


def test_criterion_07_coincidences(capsys):
    with criterion(7, "100 K_5 drawings and 200 Radon instances have witnesses", 60.0, capsys):
        K5 = complete_graph(5)
        for seed in range(100):
            f = random_plmap(K5, 2, seed=seed)
            ws = find_coincidences(K5, f)
            assert ws and all(w.verify(f) for w in ws)
        S = boundary_of_simplex(3)
        for seed in range(200):
            f = random_plmap(S, 2, seed=1000 + seed)
            ws = find_coincidences(S, f)
            assert len(ws) == 1 and ws[0].verify(f)


def _odd_partitions(n: int, largest: int | None = None):
    """Integer partitions of ``n`` into odd parts, largest part first."""
    if n == 0:
        yield []
        return
    top = n if largest is None else min(n, largest)
    for p in range(top, 0, -1):
        if p % 2:
            for rest in _odd_partitions(n - p, p):
                yield [p] + rest


def test_criterion_08_cover_hypothesis(capsys):
    with criterion(8, "skeleton and odd-part partition families pass, broken ones fail", 10.0, capsys):
        for d in range(1, 6):
            K = boundary_of_simplex(d + 1)
            verts = list(K.vertices)
            for m in range(0, 2 * d + 2):
                assert verify_cover_hypothesis(K, skeleton_family(K, m), m, 1)
            # the boundary of a simplex is symmetric under relabeling, so
            # consecutive blocks represent every partition with these sizes
            for sizes in _odd_partitions(len(verts)):
                parts, start = [], 0
                for s in sizes:
                    parts.append(verts[start : start + s])
                    start += s
                fam = partition_family(K, parts)
                for m in range(0, 2 * d + 1):
                    assert verify_cover_hypothesis(K, fam, m, len(parts))
        K = boundary_of_simplex(3)
        broken = verify_cover_hypothesis(K, CoverFamily(K, (frozenset(),)), 1, 1)
        assert not broken and broken.counterexample == (1, ("v0",), ("v1",))
        even = partition_family(K, [["v0", "v1"], ["v2", "v3"]])
        check = verify_cover_hypothesis(K, even, 0, 2)
        assert not check
        j, I, J = check.counterexample
        assert I not in even.members[j - 1] and J not in even.members[j - 1]


def test_criterion_09_lambda_suite(capsys):
    with criterion(9, "Chern identities on 100 sums, gamma two ways on 100 elements", 5.0, capsys):
        ring = SpecialKRing(3)
        rng = random.Random(2718)
        sums = [random_line_sum(ring, rng) for _ in range(100)]
        for i, xi in enumerate(sums):
            c = chern_from_lambda(xi)
            total = ring.zero
            for ci in c:
                total = total + ci
            assert total == ring.one
            assert c[0] == exterior_powers(xi)[-1]
            eta = sums[(i + 1) % len(sums)]
            a, b, both = c, chern_from_lambda(eta), chern_from_lambda(xi + eta)
            for k in range(len(both)):
                conv = ring.zero
                for r in range(max(0, k - len(b) + 1), min(k, len(a) - 1) + 1):
                    conv = conv + a[r] * b[k - r]
                assert both[k] == conv
        for k in range(6):
            cs = chern_from_lambda(trivial(ring, k))
            assert cs[0] == ring.one and all(x == ring.zero for x in cs[1:])
        for _ in range(100):
            x = random_line_sum(ring, rng, honest=False)
            x = x - x.rank
            assert gamma_ops(x, 5) == gamma_direct(x, 5)


def test_criterion_10_admissibility(capsys):
    with criterion(10, "Lucas parity on 500 tuples, reflection case admissible", 1.0, capsys):
        rng = random.Random(1618)
        for _ in range(500):
            l = rng.randint(0, 200)
            m = rng.randint(l, 400)
            k = rng.randint(m, 800)
            assert binomial_is_odd(k - l, k - m) == (comb(k - l, k - m) % 2 == 1)
            D = rng.randint(0, 900)
            r = rng.randint(0, 10)
            expected = m + r <= D and comb(k - l, k - m) % 2 == 1
            assert frick_harrison_admissible(l, m, k, r, D) == expected
        for m in range(0, 40):
            for r in range(0, 5):
                for D in range(m + r, m + r + 5):
                    assert frick_harrison_admissible(m, m, m + 1, r, D)


def _invocations(tmp):
    k5 = tmp / "k5.json"
    k5.write_text(json.dumps(complete_graph(5).to_json()))
    s3 = tmp / "s3.json"
    s3.write_text(json.dumps(boundary_of_simplex(3).to_json()))
    fam = tmp / "fam.json"
    fam.write_text(json.dumps({"kind": "partition", "parts": [["v0"], ["v1", "v2", "v3"]]}))
    total = tmp / "total.json"
    total.write_text(json.dumps({
        "dimension": 4, "domain": "gf2",
        "generators": [{"name": "T", "degree": 1, "truncation": 5}],
        "total": [[[0], 1], [[1], 1], [[4], 1]],
    }))
    pts = tmp / "pts.json"
    f = PLMap.of(2, {"v0": (0, 0), "v1": (3, 0), "v2": (0, 3), "v3": (Fraction(1, 2), 1)})
    pts.write_text(json.dumps(f.to_json()))
    return [
        ["dualsw", "--rp", "12"],
        ["dualsw", "--total", str(total)],
        ["capd", "--rp", "9"],
        ["division", "--rp", "4", "--m", "8"],
        ["index", "--complex", str(k5), "--cocycles"],
        ["index", "--complex", str(s3), "--mode", "cap:1"],
        ["index", "--complex", str(s3), "--mode", f"family:{fam}"],
        ["cover-check", "--complex", str(s3), "--family", str(fam), "--m", "1", "--r", "2"],
        ["coincide", "--complex", str(k5), "--random-dim", "2", "--seed", "77"],
        ["coincide", "--complex", str(s3), "--points", str(pts)],
        ["ktheory", "--d", "6", "--f", "4", "--n", "8"],
        ["fh", "--l", "3", "--m", "4", "--k", "5", "--r", "2", "--capD", "7"],
        ["complex", "--builtin", "rp2"],
    ]


def test_criterion_11_determinism(capsys, tmp_path):
    with criterion(11, "byte-identical reports across runs and thread counts", None, capsys):
        for argv in _invocations(tmp_path):
            outs = []
            for threads in ("1", "1", "4", "8"):
                capsys.readouterr()
                main(["--threads", threads, *argv])
                report = json.loads(capsys.readouterr().out)
                report.pop("timing")
                outs.append(json.dumps(report, sort_keys=True, indent=2).encode())
            assert len(set(outs)) == 1, argv
