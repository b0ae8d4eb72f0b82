"""The compiled and pure-Python kernels must agree on every counter."""
import numpy as np
import pytest

from topkstab import IntervalForest, IntervalTree, SegmentTree, SequentialScan, StPsa, available_backends

from _util import ids, probe_values, random_instance

pytestmark = pytest.mark.skipif("cython" not in available_backends(), reason="extension not built")


def searches(ds, backend):
    tree = SegmentTree(ds, backend)
    return {
        "ss": SequentialScan(ds, backend).search,
        "it": IntervalTree(ds, backend).search,
        "if": IntervalForest(ds, backend).search,
        "st": tree.search,
        "sst": tree.search_sorted,
        "stpsa": StPsa(tree, backend).search,
    }


def test_identical_tuples():
    rng = np.random.default_rng(2024)
    for trial in range(30):
        ds = random_instance(rng, int(rng.integers(1, 1500)), pareto=trial % 2 == 0, grid=trial % 3 != 0)
        py, cy = searches(ds, "python"), searches(ds, "cython")
        for s in probe_values(ds, rng, 8):
            k = int(rng.integers(1, 80))
            for name in py:
                a, b = py[name](s, k), cy[name](s, k)
                assert ids(a[0]) == ids(b[0]), name
                assert a[1:] == b[1:], name


def test_large_k_and_min_order():
    rng = np.random.default_rng(5)
    ds = random_instance(rng, 700, pareto=True, grid=True, order="min")
    py, cy = searches(ds, "python"), searches(ds, "cython")
    for s in probe_values(ds, rng, 5):
        for name in py:
            assert ids(py[name](s, 10_000)[0]) == ids(cy[name](s, 10_000)[0])
