"""tradeforge command line.

Exit codes: 0 ok, 1 requested property fails, 2 usage / inadmissible input,
3 search cap exceeded.  Data goes to stdout, diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import random
import sys

from . import builders
from .builders import SearchCapExceeded, SearchConfig
from .combinatorics import default_labelling
from .formats import FormatError, format_decomposition_text, format_json, format_text, parse_collection
from .inclusion import apply_W, foundation, is_design, is_halving, is_simple, is_trade, volume_report
from .kernel import probe_conjectures, standard_basis
from .sts import PAPER_STS, format_sts, parse_sts, sts_generate, verify_sts
from .trades import ak_companion, cycle_trade, minimal_trade, v10_trade

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
DEFAULT_SEED = 42
ENV_MAX_ITERS = "TRADEFORGE_MAX_ITERS"

log = logging.getLogger("tradeforge")


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _max_iters(args) -> int | None:
    env = os.environ.get(ENV_MAX_ITERS)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ENV_MAX_ITERS} must be an integer, got {env!r}") from None
    return args.max_iterations


def _write_collection(args, f, header, decomposition=None) -> None:
    if args.format == "json":
        text = format_json(f, header, args.one_based, decomposition)
    elif decomposition is not None:
        text = format_decomposition_text(decomposition, header, args.one_based)
    else:
        text = format_text(f, header, args.one_based)
    _emit(text, args.out)


def cmd_gen(args) -> int:
    v, method = args.v, args.method
    header = {"t": 2, "method": method}
    decomposition = None
    cap = _max_iters(args)
    if method == "hillclimb":
        if v != builders.HC_V:
            raise UsageError("hillclimb only supports v=10")
        cfg = SearchConfig(
            seed=args.seed,
            max_iterations=cap or SearchConfig.max_iterations,
            restart_limit=args.restart_limit or SearchConfig.restart_limit,
            jobs=args.jobs,
        )
        header["seed"] = args.seed
        decomposition = builders.hill_climb_partition(cfg)
        h = builders.sum_decomposition(decomposition)
    else:
        if v < 6 or v % 4 != 2:
            raise UsageError(f"no (2,3,{v})-halving: v must be 4n+2 >= 6")
        labelling = default_labelling(v)
        if method == "ak":
            res = builders.ak_run(v, cap)
            print(f"ak: {res.iterations} iterations", file=sys.stderr)
            h = res.halving
        elif method == "v10":
            decomposition = builders.v10_decomposition(v, labelling, int(args.one_based))
            h = builders.sum_decomposition(decomposition)
        elif method == "partition":
            circuit = None
            if args.random_circuit:
                header["seed"] = args.seed
                circuit = builders.eulerian_circuit(v // 2, random.Random(args.seed))
            h, decomposition = builders.partition_halving(v, labelling, circuit)
        else:
            sts = None
            if args.sts:
                with open(args.sts, encoding="utf-8") as fh:
                    sts = parse_sts(fh.read(), one_based=args.one_based)
            try:
                h, decomposition = builders.structured_partition(v, labelling, sts)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
    if not is_halving(h):
        print(f"{method}: output is not a halving", file=sys.stderr)
        return EXIT_FAIL
    _write_collection(args, h, header, decomposition if args.decompose else None)
    return EXIT_OK


def _first_violation(vec, expected):
    return next(vec.violations(expected), None)


def cmd_verify(args) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(str(exc)) from None
    try:
        cf = parse_collection(text, args.one_based, args.v)
    except FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    f = cf.collection
    t = args.t if args.t is not None else cf.header.get("t", 2)
    if not 0 <= t <= f.k:
        raise UsageError(f"t={t} out of range for k={f.k}")
    lam = args.lam or 0
    vec = apply_W(t, f, jobs=args.jobs)
    vol, balanced = volume_report(f)
    shift = int(args.one_based)
    report = {
        "v": f.v,
        "k": f.k,
        "t": t,
        "blocks": len(f),
        "is_trade": bool(f) and vec.is_zero(),
        "is_simple": is_simple(f),
        "is_halving": is_halving(f, t),
        "volume": vol,
        "balanced": balanced,
        "foundation_size": len(foundation(f)),
    }
    if lam:
        report["lambda"] = lam
        report["is_design"] = is_design(t, lam, f)
    if cf.stanzas:
        report["constituents"] = len(cf.stanzas)
        report["constituents_are_trades"] = all(is_trade(t, s) for _, s in cf.stanzas)
        seen: set = set()
        disjoint = True
        for _, s in cf.stanzas:
            disjoint &= not (seen & s.support())
            seen |= s.support()
        report["constituents_disjoint"] = disjoint
    if args.halving:
        ok = report["is_halving"]
    elif lam:
        ok = report["is_design"]
    else:
        ok = report["is_trade"]
    if args.partition:
        ok = ok and report.get("constituents_are_trades", False) and report.get("constituents_disjoint", False)
    for key, val in report.items():
        print(f"{key}: {str(val).lower() if isinstance(val, bool) else val}")
    if not ok:
        bad = _first_violation(vec, lam)
        if bad is not None:
            sub, count = bad
            print(f"violation: t-subset {' '.join(str(x + shift) for x in sub)} count {count}, expected {lam}")
        return EXIT_FAIL
    return EXIT_OK


def cmd_trade(args) -> int:
    shift = int(args.one_based)
    v = args.v
    try:
        if args.kind == "minimal":
            f = minimal_trade([x - shift for x in args.a], [x - shift for x in args.b], v)
        elif args.kind == "ak":
            f = ak_companion([x - shift for x in args.block], v)
        else:
            labelling = default_labelling(v)
            idx = [i - shift for i in args.indices]
            f = v10_trade(idx, labelling) if args.kind == "v10" else cycle_trade(idx, labelling)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    header = {"t": 2, "kind": args.kind}
    args.decompose = False
    _write_collection(args, f, header)
    return EXIT_OK


def cmd_sts(args) -> int:
    if args.order in PAPER_STS and not args.construct:
        ts = PAPER_STS[args.order]
    else:
        try:
            ts = sts_generate(args.order)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    assert verify_sts(ts)
    _emit(format_sts(ts, args.one_based), args.out)
    return EXIT_OK


def cmd_basis(args) -> int:
    try:
        sb = standard_basis(args.t, args.k, args.v)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.check_conjectures:
        report = probe_conjectures(sb)
    else:
        report = {"t": args.t, "k": args.k, "v": args.v, "num_basis_columns": sb.num_columns,
                  "column_order": sb.column_permutation}
    if args.emit_matrix:
        report["matrix"] = [[str(x) for x in row] for row in sb.matrix.data]
    _emit(json.dumps(report) + "\n", args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tradeforge", description="(2,3,v)-halvings and trade partitions")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    def io_flags(sp):
        sp.add_argument("--one-based", action="store_true", help="shift printed/parsed elements by +1")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", help="output file (default stdout)")

    g = sub.add_parser("gen", help="construct a halving")
    g.add_argument("--method", required=True, choices=("ak", "v10", "partition", "structured", "hillclimb"))
    g.add_argument("--v", type=int, required=True)
    g.add_argument("--seed", type=int, default=DEFAULT_SEED)
    g.add_argument("--decompose", action="store_true", help="write constituent trades as stanzas")
    g.add_argument("--sts", help="STS file for --method structured")
    g.add_argument("--random-circuit", action="store_true", help="seeded random Eulerian circuit (partition)")
    g.add_argument("--max-iterations", type=int)
    g.add_argument("--restart-limit", type=int)
    g.add_argument("--jobs", type=int, default=1)
    io_flags(g)
    g.set_defaults(func=cmd_gen)

    vp = sub.add_parser("verify", help="check a collection file")
    vp.add_argument("file")
    vp.add_argument("--t", type=int)
    vp.add_argument("--lambda", dest="lam", type=int)
    vp.add_argument("--halving", action="store_true")
    vp.add_argument("--partition", action="store_true", help="also require disjoint trade stanzas")
    vp.add_argument("--v", type=int, help="ground-set size if the file has no header")
    vp.add_argument("--one-based", action="store_true")
    vp.add_argument("--jobs", type=int, default=1)
    vp.set_defaults(func=cmd_verify)

    tp = sub.add_parser("trade", help="print a single trade")
    tsub = tp.add_subparsers(dest="kind", required=True)
    tm = tsub.add_parser("minimal")
    tm.add_argument("--a", type=int, nargs=3, required=True)
    tm.add_argument("--b", type=int, nargs=3, required=True)
    ta = tsub.add_parser("ak")
    ta.add_argument("--block", type=int, nargs=3, required=True)
    tv = tsub.add_parser("v10")
    tv.add_argument("--alpha", dest="indices", type=int, nargs=3, required=True)
    tc = tsub.add_parser("cycle")
    tc.add_argument("--cycle", dest="indices", type=int, nargs="+", required=True)
    for sp in (tm, ta, tv, tc):
        sp.add_argument("--v", type=int, required=True)
        io_flags(sp)
        sp.set_defaults(func=cmd_trade)

    sp = sub.add_parser("sts", help="print a Steiner triple system")
    sp.add_argument("--order", type=int, required=True)
    sp.add_argument("--construct", action="store_true", help="use the Bose/Skolem construction even for 7, 9")
    sp.add_argument("--one-based", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sts)

    bp = sub.add_parser("basis", help="standard kernel basis of W_tk")
    bp.add_argument("--t", type=int, required=True)
    bp.add_argument("--k", type=int, required=True)
    bp.add_argument("--v", type=int, required=True)
    bp.add_argument("--check-conjectures", action="store_true")
    bp.add_argument("--emit-matrix", action="store_true")
    bp.add_argument("--out")
    bp.set_defaults(func=cmd_basis)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(name)s: %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SearchCapExceeded as exc:
        print(f"search cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
