"""Command line front end.

Exit status: 0 on success, 1 when a verification finds a failure, 2 on
usage, range or file-format errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import bitstore, diagnostics, harness, storage
from .layout import derive_params, table_sizes
from .query import query, query_traced

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    parts = [p for p in text.replace(",", " ").split() if p]
    try:
        return [int(p, 0) for p in parts]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _add_params(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("--m", type=int, required=required, help="universe size")
    p.add_argument("--x", type=int)
    p.add_argument("--z", type=int)
    p.add_argument("--t", type=int)


def _params(args: argparse.Namespace):
    if args.m is None or args.m < 1:
        raise UsageError("--m must be a positive integer")
    return derive_params(args.m, args.x, args.z, args.t)


def cmd_build(args: argparse.Namespace) -> int:
    params = _params(args)
    ds = bitstore.new_empty(params)
    bitstore.save(ds, args.out)
    sizes = table_sizes(params)
    print(f"m={params.m} x={params.x} z={params.z} t={params.t} n={params.n}")
    print(f"size_t={sizes.size_t} size_t0={sizes.size_t0} size_t1={sizes.size_t1} bits={sizes.total}")
    return EXIT_OK


def cmd_store(args: argparse.Namespace) -> int:
    ds = bitstore.load(args.input)
    label = storage.classify(ds.params, args.set)
    storage.store(ds, args.set)
    bitstore.save(ds, args.out or args.input)
    name = "+".join(map(str, label.partition)) or "empty"
    print(f"stored={','.join(map(str, ds.stored_set))} partition={name} case={label.case} route={ds.assignment.source}")
    return EXIT_OK


def cmd_query(args: argparse.Namespace) -> int:
    ds = bitstore.load(args.input)
    if args.trace:
        tr = query_traced(ds, args.elem)
        for pr in tr.probes:
            print(f"probe table={pr.table} index={pr.index} value={pr.value}")
        answer = tr.answer
    else:
        answer = query(ds, args.elem)
    print("Yes" if answer else "No")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = harness.VerifyConfig(
        m=args.m,
        x=args.x,
        z=args.z,
        t=args.t,
        mode=args.mode,
        max_subset_size=args.max_size,
        min_subset_size=args.min_size,
        sample_count=args.samples,
        seed=args.seed,
        parallelism=args.jobs,
        cross_check=args.cross_check,
    )
    p = cfg.params
    print(f"m={p.m} x={p.x} z={p.z} t={p.t} n={p.n} mode={cfg.mode}")
    report = harness.verify(cfg)
    print("\n".join(report.lines()))
    return EXIT_OK if report.success else EXIT_FAIL


def cmd_sweep(args: argparse.Namespace) -> int:
    rows = harness.space_sweep(args.m_list)
    print("m bits bits/m^(5/6)")
    for row in rows:
        print(f"{row.m} {row.bits} {row.ratio:.6f}")
    ratios = [r.ratio for r in rows]
    print(f"band={max(ratios) / min(ratios):.6f}")
    return EXIT_OK


def _print_report(rep: diagnostics.UniverseReport) -> None:
    def fmt(s):
        return ",".join(map(str, sorted(s))) or "-"

    print(f"element={rep.element}")
    print(f"  U_B={fmt(rep.u_b)} U2_B_size={len(rep.u2_b)} bad_B={rep.bad_b} reasons_B={','.join(rep.reasons_b) or '-'}")
    print(f"  U_C={fmt(rep.u_c)} U2_C_size={len(rep.u2_c)} bad_C={rep.bad_c} reasons_C={','.join(rep.reasons_c) or '-'}")


def cmd_diagnose(args: argparse.Namespace) -> int:
    if args.abstract:
        if args.m is not None:
            raise UsageError("--abstract and --m are mutually exclusive")
        with open(args.abstract) as fh:
            sch = diagnostics.parse_abstract(fh.read())
    else:
        sch = diagnostics.to_abstract(_params(args))
    s = args.s or max(sch.size_a, sch.size_b, sch.size_c)
    print(f"m={sch.m} sA={sch.size_a} sB={sch.size_b} sC={sch.size_c} s={s}")

    if args.element is not None:
        _print_report(diagnostics.classify_element(sch, args.element, s))
        return EXIT_OK

    dirty = diagnostics.cleanliness(sch)
    total, ratio = diagnostics.sum_u2b(sch)
    bad_b = bad_c = both = 0
    for e in range(sch.m):
        rep = diagnostics.classify_element(sch, e, s)
        bad_b += rep.bad_b
        bad_c += rep.bad_c
        both += rep.bad_b and rep.bad_c
    print(f"dirty_sets={len(dirty)}")
    print(f"sum_u2b={total} ratio={ratio:.6f}")
    print(f"bad_b={bad_b} bad_c={bad_c} bad_both={both}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bitprobe5", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="write an empty structure")
    _add_params(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("store", help="store a set of at most five elements")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--set", type=_int_list, required=True, help="e.g. 0,1,2,3,37")
    p.add_argument("--out", help="defaults to overwriting --in")
    p.set_defaults(func=cmd_store)

    p = sub.add_parser("query", help="answer a membership query")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--elem", type=int, required=True)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("verify", help="store-and-query sweep")
    _add_params(p)
    p.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--max-size", type=int, default=5)
    p.add_argument("--min-size", type=int, default=0)
    p.add_argument("--cross-check", action="store_true", help="compare literal cases with the solver")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", help="space under default parameters")
    p.add_argument("--m-list", type=_int_list, required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("diagnose", help="universe statistics")
    _add_params(p, required=False)
    p.add_argument("--abstract", help="abstract scheme file: 'm sA sB sC' then m lines 'a b c'")
    p.add_argument("--element", type=int)
    p.add_argument("--s", type=int, help="threshold table size (default: largest table)")
    p.set_defaults(func=cmd_diagnose)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, IndexError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except storage.Unsatisfiable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
