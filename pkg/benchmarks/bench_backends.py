"""Compare the compiled and pure-Python kernels on one generated dataset.

    python3 benchmarks/bench_backends.py --n 100000 --domain 1000

Prints one CSV row per algorithm with the mean query latency of each
backend and the speedup.  Timings are interleaved across backends.
"""
import argparse
import sys

from topkstab import available_backends, ingest
from topkstab.harness.algorithms import ALGORITHMS, parse_algos
from topkstab.harness.bench import interleaved_means
from topkstab.harness.gen import gen_dataset, gen_queries


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--domain", type=float, default=1000.0)
    p.add_argument("--length", default="pareto:2,5")
    p.add_argument("--queries", type=int, default=500)
    p.add_argument("--k", type=int, default=25)
    p.add_argument("--algos", default="ss,it,if,st,sst,stpsa")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    if "cython" not in available_backends():
        print("compiled extension not built; nothing to compare", file=sys.stderr)
        return 1
    ids, l, r, w = gen_dataset(args.n, args.domain, args.length, seed=args.seed, resolution=1.0)
    ds = ingest(zip(ids.tolist(), l.tolist(), r.tolist(), w.tolist()))
    qs = gen_queries(ds, args.queries, args.k, seed=args.seed + 1)

    print("algo,python_us,cython_us,speedup")
    for name in parse_algos(args.algos):
        entries = {b: (ALGORITHMS[name](ds, b)[1], qs) for b in ("python", "cython")}
        means = interleaved_means(entries, repeat=args.repeat)
        py, cy = means["python"], means["cython"]
        print(f"{name},{py:.2f},{cy:.2f},{py / cy:.1f}", flush=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
