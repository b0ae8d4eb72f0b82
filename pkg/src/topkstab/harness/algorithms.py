"""Name -> builder registry used by the CLI.

A builder returns ``(index, search)`` where ``search(s, k)`` yields the
kernel tuple ``(items, nodes, touches, trees)``.
"""
from ..core import SequentialScan
from ..interval_forest import IntervalForest
from ..interval_tree import IntervalTree
from ..segment_tree import SegmentTree, StPsa


def _ss(ds, backend=None):
    idx = SequentialScan(ds, backend)
    return idx, idx.search


def _it(ds, backend=None):
    idx = IntervalTree(ds, backend)
    return idx, idx.search


def _if(ds, backend=None):
    idx = IntervalForest(ds, backend)
    return idx, idx.search


def _st(ds, backend=None):
    idx = SegmentTree(ds, backend)
    return idx, idx.search


def _sst(ds, backend=None):
    idx = SegmentTree(ds, backend)
    return idx, idx.search_sorted


def _stpsa(ds, backend=None):
    idx = StPsa.from_dataset(ds, backend)
    return idx, idx.search


ALGORITHMS = {
    "ss": _ss,
    "it": _it,
    "if": _if,
    "st": _st,
    "sst": _sst,
    "stpsa": _stpsa,
}


def parse_algos(text):
    names = [a.strip() for a in text.split(",") if a.strip()]
    bad = [a for a in names if a not in ALGORITHMS]
    if bad or not names:
        raise ValueError(f"unknown algorithm(s) {bad or text!r}; valid: {', '.join(ALGORITHMS)}")
    return names
