"""Command-line interface.

Exit status: 0 on success, 1 when a verification finds a violation, 2 on
usage or contract errors. ``--format json`` prints one JSON document per
run with keys ``command``, ``config`` and ``results`` (plus ``timing`` when
``--timing`` is given, which is the only non-deterministic field).
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import time
from collections import deque
from pathlib import Path

from . import kernels
from .mosaic import (
    DEFAULT_CAP,
    BraidMosaic,
    MosaicParseError,
    enumerate_mosaics,
    format_mosaic,
    generate_moves,
    mosaic_count,
    mosaic_from_rank,
    move_counts,
    moves_by_position,
    paper_move_counts,
    parse_mosaic,
)
from .motif import CapExceeded, ContractError
from .oracle import underlying_permutation, writhe
from .orbits import CACHE_ENV, OrbitCache, compare_with_oracle, constant_on_orbits, same_type_stabilized
from .quantum import (
    build_observable,
    check_adjoint_invariance,
    expectation,
    measure_sample,
    superposition,
    unitary_of_move,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_NEGATIVE_MOSAIC = re.compile(r"^-\d+(,-?\d+)+$")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, help="strand count (>= 2)")
    p.add_argument("--len", dest="length", type=int, required=True, help="mosaic length (>= 1)")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest state space to enumerate")
    p.add_argument("--cache-dir", default=None, help=f"orbit table cache (default ${CACHE_ENV})")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--timing", action="store_true", help="include wall-clock timing in json output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="braidquant", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="list the mosaics of (n, len) in LEX order")
    _common(p)
    p.add_argument("--count-only", action="store_true")

    p = sub.add_parser("moves", help="list moves with per-family counts")
    _common(p)

    p = sub.add_parser("orbits", help="orbit decomposition")
    _common(p)
    p.add_argument("--members", action="store_true", help="print every orbit's members")

    p = sub.add_parser("classify", help="canonical representative of a mosaic")
    _common(p)
    p.add_argument("mosaic")

    p = sub.add_parser("equal", help="fixed-length same-type test")
    _common(p)
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("stabilize", help="bounded search over identity-tile padding")
    _common(p)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("first")
    p.add_argument("second")

    p = sub.add_parser("invariant-check", help="check that a function is constant on orbits")
    _common(p)
    p.add_argument("--invariant", default="writhe", help="writhe | permutation | first-tile | PATH to a 'mosaic value' table")

    p = sub.add_parser("oracle-compare", help="orbit partition vs braid-group classes")
    _common(p)

    for name in ("quantum-expect", "quantum-sample"):
        p = sub.add_parser(name, help="expectation of an invariant observable" if name == "quantum-expect" else "Born-rule sampling")
        _common(p)
        p.add_argument("terms", nargs="+", help="state terms MOSAIC or MOSAIC@AMPLITUDE (normalised)")
        if name == "quantum-expect":
            p.add_argument("--invariant", default="writhe")
        else:
            p.add_argument("--shots", type=int, default=1000)
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("verify", help="run the exhaustive property suite")
    _common(p)
    return parser


def _mosaic(text: str, args) -> BraidMosaic:
    beta = parse_mosaic(text, args.n)
    if beta.length != args.length:
        raise ContractError(f"mosaic {text!r} has length {beta.length}, expected --len {args.length}")
    return beta


def _invariant(spec: str, n: int):
    if spec == "writhe":
        return writhe
    if spec == "permutation":
        return lambda b: " ".join(map(str, underlying_permutation(b)))
    if spec == "first-tile":
        return lambda b: b.tiles[0]
    path = Path(spec)
    if not path.exists():
        raise ContractError(f"unknown invariant {spec!r}")
    table = {}
    for line in path.read_text().splitlines():
        if line.strip() and not line.startswith("#"):
            text, value = line.split()
            table[parse_mosaic(text, n).tiles] = float(value)

    def lookup(b):
        if b.tiles not in table:
            raise ContractError(f"invariant table has no entry for {format_mosaic(b)}")
        return table[b.tiles]

    return lookup


def _state(args):
    terms = []
    for t in args.terms:
        text, _, amp = t.strip().partition("@")
        terms.append((_mosaic(text, args), complex(amp) if amp else 1.0))
    return superposition(terms)


def _witness(beta1: BraidMosaic, beta2: BraidMosaic, moves) -> list[str]:
    """Move lines along a BFS path from ``beta1`` to ``beta2`` (empty if equal)."""
    start, goal = beta1.rank, beta2.rank
    parent = {start: None}
    queue = deque([start])
    while queue:
        r = queue.popleft()
        if r == goal:
            break
        for m in moves:
            s = m.apply_rank(r)
            if s not in parent:
                parent[s] = (r, m)
                queue.append(s)
    path = []
    r = goal
    while parent.get(r) is not None:
        r, m = parent[r]
        path.append(m.to_line())
    return path[::-1]


def _run(args, cache: OrbitCache) -> tuple[dict, list[str], int]:
    """Return (results, text lines, exit status)."""
    n, cmd = args.n, args.command
    length = args.length
    if n < 2 or length < 1:
        raise ContractError("need --n >= 2 and --len >= 1")
    lines: list[str] = []

    if cmd == "enumerate":
        count = mosaic_count(n, length)
        if count > args.cap:
            raise CapExceeded(f"(2n-1)^len = {count} exceeds cap {args.cap}")
        if args.count_only:
            return {"count": count}, [str(count)], EXIT_OK
        mosaics = [format_mosaic(b) for b in enumerate_mosaics(n, length, cap=args.cap)]
        return {"count": count, "mosaics": mosaics}, mosaics, EXIT_OK

    if cmd == "moves":
        moves = generate_moves(n, length)
        counts = move_counts(moves)
        paper = paper_move_counts(n, length)
        second = moves_by_position(n, length)
        second_counts = {f: sum(1 for x in second if x[2] == f) for f in counts}
        agree = {(m.identity[0], m.position, m.family[:2]) for m in moves} == second
        lines = [m.to_line() for m in moves]
        for f in counts:
            lines.append(f"# {f}: enumerated={counts[f]} second-pass={second_counts[f]} closed-form={paper[f]}")
        lines.append(f"# second enumeration agrees: {'yes' if agree else 'NO'}")
        results = {
            "moves": [m.to_line() for m in moves],
            "counts": counts,
            "second_pass_counts": second_counts,
            "closed_form_counts": paper,
            "second_pass_agrees": agree,
        }
        return results, lines, EXIT_OK if agree else EXIT_FAIL

    if cmd == "orbits":
        table = cache.get(n, length, cap=args.cap)
        sizes = table.sizes()
        orbits = [
            {"id": oid, "representative": format_mosaic(mosaic_from_rank(oid, n, length)), "size": sz}
            for oid, sz in sizes.items()
        ]
        lines = [f"{len(orbits)} orbits", "sizes: " + ",".join(map(str, table.size_profile()))]
        for o in orbits:
            lines.append(f"orbit {o['id']} size={o['size']} rep={o['representative']}")
            if args.members:
                o["members"] = [format_mosaic(b) for b in table.members(o["id"])]
                lines.append("  " + " ".join(o["members"]))
        return {"orbit_count": len(orbits), "sizes": table.size_profile(), "orbits": orbits}, lines, EXIT_OK

    if cmd == "classify":
        beta = _mosaic(args.mosaic, args)
        table = cache.get(n, length, cap=args.cap)
        oid = table.orbit_id(beta)
        rep = format_mosaic(table.canonical(beta))
        size = table.sizes()[oid]
        return {"mosaic": format_mosaic(beta), "orbit_id": oid, "representative": rep, "orbit_size": size}, [
            f"{format_mosaic(beta)} -> {rep} (orbit {oid}, size {size})"
        ], EXIT_OK

    if cmd == "equal":
        b1, b2 = _mosaic(args.first, args), _mosaic(args.second, args)
        table = cache.get(n, length, cap=args.cap)
        same = table.orbit_id(b1) == table.orbit_id(b2)
        witness = _witness(b1, b2, generate_moves(n, length)) if same else []
        lines = ["EQUIVALENT" if same else "INEQUIVALENT"] + [f"  {w}" for w in witness]
        return {"equivalent": same, "witness": witness}, lines, EXIT_OK

    if cmd == "stabilize":
        b1, b2 = _mosaic(args.first, args), _mosaic(args.second, args)
        verdict = same_type_stabilized(
            b1, b2, args.kmax, cap=args.cap, table_for=lambda nn, ll: cache.get(nn, ll, cap=args.cap)
        )
        return {"verdict": str(verdict), "k": verdict.k, "kmax": args.kmax}, [str(verdict)], EXIT_OK

    if cmd == "invariant-check":
        fn = _invariant(args.invariant, n)
        table = cache.get(n, length, cap=args.cap)
        bad = constant_on_orbits(fn, table)
        if bad is None:
            return {"holds": True}, ["HOLDS"], EXIT_OK
        a, b = bad
        results = {"holds": False, "counterexample": [format_mosaic(a), format_mosaic(b)], "values": [str(fn(a)), str(fn(b))]}
        return results, [f"VIOLATED: {format_mosaic(a)} -> {fn(a)} but {format_mosaic(b)} -> {fn(b)} in the same orbit"], EXIT_FAIL

    if cmd == "oracle-compare":
        table = cache.get(n, length, cap=args.cap)
        report = compare_with_oracle(n, length, cap=args.cap, table=table)
        d = report.to_dict()
        lines = [
            f"orbits: {report.orbit_count}",
            f"braid classes: {report.oracle_class_count}",
            f"refinement: {'yes' if report.refines else 'NO'}",
            f"split classes: {report.split_count}",
        ]
        if report.counterexample:
            lines.append("counterexample: " + " vs ".join(d["counterexample"]))
        lines.extend("  " + " | ".join(c) for c in d["split_classes"])
        return d, lines, EXIT_OK if report.refines else EXIT_FAIL

    if cmd == "quantum-expect":
        psi = _state(args)
        fn = _invariant(args.invariant, n)
        omega = build_observable(fn, n, length)
        bad = [m.to_line() for m in generate_moves(n, length) if not check_adjoint_invariance(omega, unitary_of_move(m))]
        value = expectation(omega, psi)
        lines = [f"{value:.12g}"]
        if bad:
            lines.append(f"warning: observable is not ambient invariant (first violating move: {bad[0]})")
        return {"expectation": value, "invariant": not bad, "violating_moves": bad}, lines, EXIT_OK

    if cmd == "quantum-sample":
        psi = _state(args)
        hist = measure_sample(psi, args.shots, args.seed)
        lines = [f"{k} {v}" for k, v in hist.items()]
        return {"shots": args.shots, "seed": args.seed, "histogram": [[k, v] for k, v in hist.items()]}, lines, EXIT_OK

    if cmd == "verify":
        from .checks import run_checks

        results = run_checks(n, length, cap=args.cap)
        lines = [f"{'PASS' if r.ok else 'FAIL'} {r.name}" + (f" ({r.detail})" if r.detail else "") for r in results]
        ok = all(r.ok for r in results)
        return {"checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]}, lines, (
            EXIT_OK if ok else EXIT_FAIL
        )

    raise UsageError(f"unknown command {cmd!r}")


def _config(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("format", "timing", "cache_dir")}


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # argparse would read "-1,0" as an option; a leading space keeps it positional
    argv = [" " + a if _NEGATIVE_MOSAIC.match(a) else a for a in argv]
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"braidquant: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    for k, v in vars(args).items():
        if isinstance(v, str):
            setattr(args, k, v.strip())
        elif isinstance(v, list):
            setattr(args, k, [x.strip() for x in v])
    cache = OrbitCache(args.cache_dir or os.environ.get(CACHE_ENV))
    t0 = time.perf_counter()
    try:
        results, lines, status = _run(args, cache)
    except MosaicParseError as exc:
        print(f"braidquant: malformed mosaic: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceeded as exc:
        print(f"braidquant: state space too large: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ContractError as exc:
        print(f"braidquant: invalid input: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        doc = {"command": args.command, "config": _config(args), "results": results}
        if args.timing:
            doc["timing"] = {"seconds": time.perf_counter() - t0, "backend": kernels.BACKEND}
        print(json.dumps(doc, sort_keys=True))
    else:
        print("\n".join(lines))
    return status


if __name__ == "__main__":
    sys.exit(main())
