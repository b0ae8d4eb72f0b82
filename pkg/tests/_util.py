"""Shared test helpers: fixture data, a pure-Python oracle, random instances."""
import numpy as np

from topkstab import Dataset, ingest
from topkstab.harness.gen import gen_dataset

D1_RECORDS = [(1, 1.0, 5.0, 10.0), (2, 3.0, 7.0, 20.0), (3, 6.0, 9.0, 5.0), (4, 2.0, 8.0, 15.0)]


def ids(xs):
    return [x.id for x in xs]


def brute_topk(intervals, s, k):
    """Filter-and-sort in plain Python; shares no code with the package."""
    hits = [x for x in intervals if x.l <= s <= x.r]
    hits.sort(key=lambda x: (-x.w, x.id))
    return hits[:k]


def random_instance(rng: np.random.Generator, n: int, *, pareto: bool, grid: bool,
                    weight_levels: int = 8, order: str = "max") -> Dataset:
    """Seeded dataset with shuffled ids and quantized weights (many ties)."""
    length = "pareto:1.5,2" if pareto else "uniform:0,60"
    resolution = 1.0 if grid else 0.0
    _, l, r, w = gen_dataset(n, 1000.0, length, f"int:1,{weight_levels}",
                             seed=int(rng.integers(2**31)), resolution=resolution)
    id_pool = rng.permutation(3 * n + 5)[:n]
    return ingest(zip(id_pool.tolist(), l.tolist(), r.tolist(), w.tolist()), order=order)


def probe_values(ds: Dataset, rng: np.random.Generator, count: int):
    """Query points: uniform in the domain, exact endpoints, and outside the domain."""
    lo, hi = ds.domain
    ends = np.concatenate((ds.l, ds.r))
    vals = list(rng.uniform(lo, hi, count).tolist())
    vals += rng.choice(ends, size=min(count, ends.size)).tolist()
    vals += [lo - 1.0, hi + 1.0, lo, hi]
    return vals
