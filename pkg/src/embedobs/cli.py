"""Command-line entry point.

Every subcommand prints one JSON report on stdout.  Exit codes: 0 success,
1 negative verdict, 2 input error, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
import warnings
from pathlib import Path
from typing import Any, Callable

from . import __version__
from .charclass import (
    CharClassVector,
    ManifoldPresentation,
    cap_D,
    division_witness,
    dual_total_class,
    frick_harrison_admissible,
    projective_space,
)
from .coincide import MapError, PLMap, find_coincidences, random_plmap
from .deleted import InsufficientDegree, build_quotient, index_report
from .gf2core import GF2_DOMAIN, ZZ, Generator, PolyRing
from .lambda_ring import ktheory_table
from .simplicial import (
    ComplexError,
    CoverFamily,
    ResourceCapExceeded,
    SimplicialComplex,
    boundary_of_simplex,
    complete_graph,
    minimal_rp2,
    partition_family,
    skeleton_family,
    verify_cover_hypothesis,
)

SCHEMA = "embedobs.report/1"

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _load_json(path: str) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON: {exc}") from exc


def _unwrap(data: Any) -> Any:
    # accept a full report from `embedobs complex` as well as the bare object
    if isinstance(data, dict) and data.get("schema") == SCHEMA and "results" in data:
        return data["results"]
    return data


def load_complex(path: str) -> SimplicialComplex:
    try:
        return SimplicialComplex.from_json(_unwrap(_load_json(path)))
    except ComplexError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_total(path: str) -> ManifoldPresentation:
    """Total class file: ``{"dimension", "domain", "generators", "total"}``.

    ``generators`` is a list of ``{"name", "degree", "truncation"}`` and
    ``total`` a list of ``[exponents, coefficient]`` terms.
    """
    data = _load_json(path)
    try:
        d = int(data["dimension"])
        domain = {"gf2": GF2_DOMAIN, "int": ZZ}[data.get("domain", "gf2")]
        gens = [
            Generator(g["name"], int(g.get("degree", 1)), g.get("truncation"))
            for g in data["generators"]
        ]
        ring = PolyRing(domain, gens)
        total = ring.from_terms((tuple(e), int(c)) for e, c in data["total"])
        return ManifoldPresentation(data.get("name", Path(path).stem), d, CharClassVector.from_total(total, d + 1))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"{path}: bad total class file: {exc}") from exc


def load_family(path: str, K: SimplicialComplex) -> CoverFamily:
    data = _load_json(path)
    try:
        kind = data.get("kind", "explicit")
        if kind == "skeleton":
            return skeleton_family(K, int(data["m"]))
        if kind == "partition":
            return partition_family(K, data["parts"])
        if kind == "explicit":
            members = tuple(
                frozenset(tuple(sorted(str(v) for v in s)) for s in Rj) for Rj in data["families"]
            )
            return CoverFamily(K, members)
        raise InputError(f"{path}: unknown family kind {kind!r}")
    except (KeyError, TypeError, AttributeError, ComplexError) as exc:
        raise InputError(f"{path}: bad family file: {exc}") from exc


def _manifold(args: argparse.Namespace) -> ManifoldPresentation:
    if args.rp is not None:
        return projective_space(args.rp)
    return load_total(args.total)


def _digest(command: str, params: dict, files: list[str]) -> str:
    h = hashlib.sha256()
    h.update(json.dumps({"command": command, "params": params}, sort_keys=True).encode())
    for f in files:
        h.update(Path(f).read_bytes())
    return h.hexdigest()


# -- subcommands: each returns (results, exit code) ---------------------------


def cmd_dualsw(args: argparse.Namespace) -> tuple[dict, int]:
    mp = _manifold(args)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        D = cap_D(mp)
    return {
        "manifold": mp.name,
        "dimension": mp.dimension,
        "tangent": mp.tangent.as_strings(),
        "dual": dual_total_class(mp.tangent).as_strings(),
        "D": D,
        "warnings": [str(w.message) for w in caught],
    }, EXIT_OK


def cmd_capd(args: argparse.Namespace) -> tuple[dict, int]:
    mp = _manifold(args)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return {"manifold": mp.name, "dimension": mp.dimension, "D": cap_D(mp)}, EXIT_OK


def cmd_division(args: argparse.Namespace) -> tuple[dict, int]:
    mp = _manifold(args)
    try:
        a = division_witness(mp, args.m)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    res = {"manifold": mp.name, "m": args.m, "witness": None if a is None else str(a)}
    return res, EXIT_OK if a is not None else EXIT_NEGATIVE


def cmd_index(args: argparse.Namespace) -> tuple[dict, int]:
    K = load_complex(args.complex)
    mode = args.mode
    cap = None
    sub = None
    if mode == "full":
        pass
    elif mode.startswith("cap:"):
        try:
            cap = int(mode[4:])
        except ValueError as exc:
            raise InputError(f"bad mode {mode!r}") from exc
    elif mode.startswith("family:"):
        family = load_family(mode[7:], K)
        try:
            sub = family.subcomplex()
        except ComplexError as exc:
            raise InputError(str(exc)) from exc
        cap = args.cap
    else:
        raise InputError(f"unknown mode {mode!r}; use full, cap:M or family:FILE")
    Y = build_quotient(K, cap=cap, subcomplex=sub, max_degree=args.max_degree)
    report = index_report(Y)
    return report.to_json(with_cocycles=args.cocycles), EXIT_OK


def cmd_cover_check(args: argparse.Namespace) -> tuple[dict, int]:
    K = load_complex(args.complex)
    family = load_family(args.family, K)
    try:
        check = verify_cover_hypothesis(K, family, args.m, args.r, threads=args.threads)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    res: dict[str, Any] = {"ok": check.ok, "pairs_checked": check.pairs_checked, "counterexample": None}
    if check.counterexample:
        j, I, J = check.counterexample
        res["counterexample"] = {"j": j, "I": list(I), "J": list(J)}
    return res, EXIT_OK if check.ok else EXIT_NEGATIVE


def cmd_coincide(args: argparse.Namespace) -> tuple[dict, int]:
    K = load_complex(args.complex)
    if args.points:
        try:
            f = PLMap.from_json(_load_json(args.points))
        except MapError as exc:
            raise InputError(str(exc)) from exc
    else:
        if args.seed is None or args.random_dim is None:
            raise InputError("give --points, or --random-dim together with an explicit --seed")
        f = random_plmap(K, args.random_dim, args.seed, args.denominator_bound)
    try:
        witnesses = find_coincidences(K, f, cap=args.cap, threads=args.threads)
    except MapError as exc:
        raise InputError(str(exc)) from exc
    return {
        "map": f.to_json(),
        "count": len(witnesses),
        "witnesses": [w.to_json() for w in witnesses],
    }, EXIT_OK


def cmd_ktheory(args: argparse.Namespace) -> tuple[dict, int]:
    if args.d < 1 or args.f < 1 or args.n < 0:
        raise InputError("need d >= 1, f >= 1, n >= 0")
    return ktheory_table(args.d, args.f, args.n), EXIT_OK


def cmd_fh(args: argparse.Namespace) -> tuple[dict, int]:
    ok = frick_harrison_admissible(args.l, args.m, args.k, args.r, args.capD)
    return {"l": args.l, "m": args.m, "k": args.k, "r": args.r, "D": args.capD, "admissible": ok}, (
        EXIT_OK if ok else EXIT_NEGATIVE
    )


BUILTINS: dict[str, Callable[[str], SimplicialComplex]] = {
    "boundary": lambda arg: boundary_of_simplex(int(arg)),
    "complete": lambda arg: complete_graph(int(arg)),
    "rp2": lambda arg: minimal_rp2(),
}


def cmd_complex(args: argparse.Namespace) -> tuple[dict, int]:
    name, _, arg = args.builtin.partition(":")
    if name not in BUILTINS:
        raise InputError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
    try:
        K = BUILTINS[name](arg)
    except ValueError as exc:
        raise InputError(f"bad builtin argument: {exc}") from exc
    return K.to_json(), EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="embedobs", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--threads", type=int, default=1, help="worker threads (results do not depend on it)")
    sub = p.add_subparsers(dest="command", required=True)

    def manifold_args(sp: argparse.ArgumentParser) -> None:
        g = sp.add_mutually_exclusive_group(required=True)
        g.add_argument("--rp", type=int, help="real projective space of this dimension")
        g.add_argument("--total", help="JSON file with a total tangent class")

    sp = sub.add_parser("dualsw", help="dual Stiefel-Whitney classes and D")
    manifold_args(sp)
    sp.set_defaults(func=cmd_dualsw, files=["total"])

    sp = sub.add_parser("capd", help="the invariant D")
    manifold_args(sp)
    sp.set_defaults(func=cmd_capd, files=["total"])

    sp = sub.add_parser("division", help="division witness a(t) for a given m")
    manifold_args(sp)
    sp.add_argument("--m", type=int, required=True)
    sp.set_defaults(func=cmd_division, files=["total"])

    sp = sub.add_parser("index", help="Z/2-index of a deleted product")
    sp.add_argument("--complex", required=True)
    sp.add_argument("--mode", default="full", help="full | cap:M | family:FILE")
    sp.add_argument("--cap", type=int, default=None, help="dimension cap in family mode")
    sp.add_argument("--max-degree", type=int, default=None)
    sp.add_argument("--cocycles", action="store_true", help="include e^i cocycles as bit strings")
    sp.set_defaults(func=cmd_index, files=["complex", "mode"])

    sp = sub.add_parser("cover-check", help="check the cover-family hypothesis")
    sp.add_argument("--complex", required=True)
    sp.add_argument("--family", required=True)
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.set_defaults(func=cmd_cover_check, files=["complex", "family"])

    sp = sub.add_parser("coincide", help="coincidence witnesses of a PL map")
    sp.add_argument("--complex", required=True)
    sp.add_argument("--points")
    sp.add_argument("--random-dim", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--denominator-bound", type=int, default=16)
    sp.add_argument("--cap", type=int, default=None)
    sp.set_defaults(func=cmd_coincide, files=["complex", "points"])

    sp = sub.add_parser("ktheory", help="gamma operations on RP^d and the Atiyah bound")
    sp.add_argument("--d", type=int, required=True)
    sp.add_argument("--f", type=int, required=True, help="torsion exponent of the K ring")
    sp.add_argument("--n", type=int, required=True, help="highest gamma^i to tabulate")
    sp.set_defaults(func=cmd_ktheory, files=[])

    sp = sub.add_parser("fh", help="binomial admissibility predicate for twisted obstructions")
    for name in ("l", "m", "k", "r"):
        sp.add_argument(f"--{name}", type=int, required=True)
    sp.add_argument("--capD", type=int, required=True)
    sp.set_defaults(func=cmd_fh, files=[])

    sp = sub.add_parser("complex", help="emit a built-in complex as JSON")
    sp.add_argument("--builtin", required=True, help="boundary:N | complete:N | rp2")
    sp.set_defaults(func=cmd_complex, files=[])
    return p


def _input_files(args: argparse.Namespace) -> list[str]:
    out = []
    for attr in args.files:
        value = getattr(args, attr, None)
        if not value:
            continue
        if attr == "mode":
            if value.startswith("family:"):
                out.append(value[7:])
            continue
        out.append(value)
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    params = {k: v for k, v in vars(args).items() if k not in ("func", "files", "threads")}
    start = time.perf_counter()
    try:
        results, code = args.func(args)
        digest = _digest(args.command, params, _input_files(args))
    except InputError as exc:
        print(f"embedobs: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ResourceCapExceeded, InsufficientDegree) as exc:
        print(f"embedobs: {exc}", file=sys.stderr)
        return EXIT_CAP
    report = {
        "schema": SCHEMA,
        "command": args.command,
        "input_digest": digest,
        "parameters": params,
        "results": results,
        "timing": {"seconds": round(time.perf_counter() - start, 6)},
    }
    json.dump(report, sys.stdout, sort_keys=True, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
