"""Command line entry point: ``gen``, ``queries``, ``verify``, ``bench``, ``query``.

Exit codes: 0 success, 1 verification or bound failure, 2 usage/parse error.
"""
from __future__ import annotations

import argparse
import sys

from .._backend import available
from ..core import ORDERS
from . import io
from .algorithms import ALGORITHMS, parse_algos
from .bench import run_bench, sample
from .gen import DistError, gen_dataset, gen_queries
from .verify import run_verify


class UsageError(Exception):
    pass


def _cmd_gen(args):
    try:
        ids, l, r, w = gen_dataset(args.n, args.domain, args.length, args.weight,
                                   args.seed, args.resolution)
    except DistError as exc:
        raise UsageError(str(exc)) from None
    io.write_dataset(args.out, ids.tolist(), l.tolist(), r.tolist(), w.tolist())
    return 0


def _cmd_queries(args):
    ds = io.read_dataset(args.dataset)
    try:
        qs = gen_queries(ds, args.count, args.k, args.seed)
    except DistError as exc:
        raise UsageError(str(exc)) from None
    io.write_workload(args.out, qs)
    return 0


def _cmd_verify(args):
    ds = io.read_dataset(args.dataset, order=args.order)
    qs = io.read_workload(args.workload)
    report = run_verify(ds, qs, backend=args.backend)
    text = report.render()
    sys.stdout.write(text)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if report.ok else 1


def _cmd_bench(args):
    try:
        algos = parse_algos(args.algos)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    ds = io.read_dataset(args.dataset, order=args.order)
    qs = io.read_workload(args.workload)
    try:
        ds = sample(ds, args.sample_rate, args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(ds) == 0:
        raise UsageError("sampling produced an empty dataset")
    if args.repeat < 1:
        raise UsageError("repeat must be >= 1")
    results = run_bench(ds, qs, algos, backend=args.backend, repeat=args.repeat)
    rows = [r["row"] for r in results]
    if args.out:
        with open(args.out, "w", newline="", encoding="utf-8") as fh:
            io.write_report(fh, rows)
    else:
        io.write_report(sys.stdout, rows)
    status = 0
    for r in results:
        if r["violations"]:
            print(f"bound violations in {r['row']['algo']}: {r['violations']}", file=sys.stderr)
            status = 1
    return status


def _cmd_query(args):
    if args.algo not in ALGORITHMS:
        raise UsageError(f"unknown algorithm {args.algo!r}; valid: {', '.join(ALGORITHMS)}")
    if args.k < 1:
        raise UsageError("k must be >= 1")
    ds = io.read_dataset(args.dataset, order=args.order)
    _, search = ALGORITHMS[args.algo](ds, args.backend)
    for x in search(args.s, args.k)[0]:
        x = ds.external(x)
        print(f"{x.id},{x.l!r},{x.r!r},{x.w!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="topkstab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", help="generate a synthetic dataset CSV")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--domain", type=float, default=1e6, help="left endpoints uniform on [0, domain]")
    g.add_argument("--length", default="uniform:0,100", help="uniform:a,b or pareto:alpha,xmin")
    g.add_argument("--weight", default="gaussian:5000,1500",
                   help="gaussian:mean,variance | uniform:a,b | int:a,b")
    g.add_argument("--resolution", type=float, default=0.0, help="snap endpoints to this grid (0 = off)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", required=True)
    g.set_defaults(func=_cmd_gen)

    q = sub.add_parser("queries", help="generate a workload CSV over a dataset's domain")
    q.add_argument("dataset")
    q.add_argument("--count", type=int, default=1000)
    q.add_argument("--k", type=int, default=25)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--out", required=True)
    q.set_defaults(func=_cmd_queries)

    backends = available()
    v = sub.add_parser("verify", help="check every algorithm against the oracle")
    v.add_argument("dataset")
    v.add_argument("workload")
    v.add_argument("--order", choices=ORDERS, default="max")
    v.add_argument("--report", help="also write the report here")
    v.add_argument("--backend", choices=backends)
    v.set_defaults(func=_cmd_verify)

    b = sub.add_parser("bench", help="instrumented build/query benchmark")
    b.add_argument("dataset")
    b.add_argument("workload")
    b.add_argument("--algos", default=",".join(ALGORITHMS), help=f"subset of {','.join(ALGORITHMS)}")
    b.add_argument("--sample-rate", type=float, default=1.0)
    b.add_argument("--order", choices=ORDERS, default="max")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--repeat", type=int, default=1, help="timed passes; the fastest is reported")
    b.add_argument("--backend", choices=backends)
    b.add_argument("--out", help="report CSV (default stdout)")
    b.set_defaults(func=_cmd_bench)

    one = sub.add_parser("query", help="answer one top-k stabbing query")
    one.add_argument("dataset")
    one.add_argument("--algo", default="stpsa", help=f"one of {', '.join(ALGORITHMS)}")
    one.add_argument("--s", type=float, required=True)
    one.add_argument("--k", type=int, required=True)
    one.add_argument("--order", choices=ORDERS, default="max")
    one.add_argument("--backend", choices=backends)
    one.set_defaults(func=_cmd_query)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, io.ParseError) as exc:
        print(f"topkstab {args.cmd}: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"topkstab {args.cmd}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
