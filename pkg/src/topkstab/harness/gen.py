"""Seeded synthetic datasets and query workloads.

Distribution specs are ``name:param,param``:

lengths   ``uniform:a,b``       uniform on [a, b]
          ``pareto:alpha,xmin`` classical Pareto, heavy tail -> large stabbed sets
weights   ``gaussian:mean,var`` normal with the given mean and *variance*
          ``uniform:a,b``
          ``int:a,b``           integers in [a, b]; use a narrow range to force ties
"""
from __future__ import annotations

import math
from typing import Callable, Dict, Tuple

import numpy as np

from ..core import Dataset, Query

Sampler = Callable[[np.random.Generator, int], np.ndarray]


class DistError(ValueError):
    pass


def _params(spec: str, name: str, count: int) -> Tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in spec.split(",")) if spec else ()
    except ValueError:
        raise DistError(f"bad parameters for {name}: {spec!r}") from None
    if len(vals) != count or not all(math.isfinite(v) for v in vals):
        raise DistError(f"{name} takes {count} finite parameters, got {spec!r}")
    return vals


def _uniform(p):
    a, b = p
    if a > b:
        raise DistError(f"uniform needs a <= b, got {a}, {b}")
    return lambda rng, n: rng.uniform(a, b, n) if a < b else np.full(n, a)


def _pareto(p):
    alpha, xmin = p
    if alpha <= 0 or xmin <= 0:
        raise DistError("pareto needs alpha > 0 and xmin > 0")
    return lambda rng, n: xmin * (1.0 + rng.pareto(alpha, n))


def _gaussian(p):
    mean, var = p
    if var < 0:
        raise DistError("gaussian variance must be >= 0")
    std = math.sqrt(var)
    return lambda rng, n: rng.normal(mean, std, n)


def _int(p):
    a, b = p
    if a != int(a) or b != int(b) or a > b:
        raise DistError(f"int needs integer bounds a <= b, got {a}, {b}")
    return lambda rng, n: rng.integers(int(a), int(b), n, endpoint=True).astype(np.float64)


LENGTHS: Dict[str, Callable] = {"uniform": _uniform, "pareto": _pareto}
WEIGHTS: Dict[str, Callable] = {"gaussian": _gaussian, "uniform": _uniform, "int": _int}


def parse_dist(spec: str, table: Dict[str, Callable]) -> Sampler:
    name, _, rest = spec.partition(":")
    if name not in table:
        raise DistError(f"unknown distribution {name!r}; choose from {sorted(table)}")
    return table[name](_params(rest, name, 2))


def gen_dataset(n: int, domain: float, length: str = "uniform:0,100",
                weight: str = "gaussian:5000,1500", seed: int = 0,
                resolution: float = 0.0):
    """Return ``(ids, l, r, w)`` arrays.

    Left endpoints are uniform on ``[0, domain]`` and right endpoints are
    clipped to ``domain``.  With ``resolution > 0`` both endpoints snap to
    that grid, mimicking timestamp data with many shared endpoints.
    """
    if n < 1:
        raise DistError("n must be >= 1")
    if not (domain > 0 and math.isfinite(domain)):
        raise DistError("domain must be a positive finite width")
    if resolution < 0:
        raise DistError("resolution must be >= 0")
    length_of = parse_dist(length, LENGTHS)
    weight_of = parse_dist(weight, WEIGHTS)
    rng = np.random.default_rng(seed)
    l = rng.uniform(0.0, domain, n)
    lengths = length_of(rng, n)
    if (lengths < 0).any():
        raise DistError("length distribution produced negative lengths")
    r = np.minimum(l + lengths, domain)
    w = weight_of(rng, n)
    if resolution > 0:
        l = np.round(l / resolution) * resolution
        r = np.maximum(np.round(r / resolution) * resolution, l)
    ids = np.arange(n, dtype=np.int64)
    return ids, l, r, w


def gen_queries(dataset: Dataset, count: int, k: int, seed: int = 0):
    if len(dataset) == 0:
        raise DistError("cannot draw queries from an empty dataset")
    if count < 0 or k < 1:
        raise DistError("need count >= 0 and k >= 1")
    lo, hi = dataset.domain
    rng = np.random.default_rng(seed)
    return [Query(s, k) for s in rng.uniform(lo, hi, count).tolist()]
