"""Exact top-k weighted stabbing queries over static interval data.

Indexes (all answer ``search(s, k)`` / ``topk(s, k)`` identically):

``SequentialScan``  weight-sorted scan with early stop
``IntervalTree``    stab all, keep a size-k heap
``IntervalForest``  sqrt(n) weight chunks, one interval tree each, early exit
``SegmentTree``     plain stab-all (``topk``) or weight-sorted lists (``topk_sorted``)
``StPsa``           segment tree with per-leaf path arrays, O(log n + k)
"""
from ._backend import DEFAULT as BACKEND, available as available_backends
from ._hits import Hits
from .core import (
    Dataset,
    IngestError,
    Interval,
    Query,
    SequentialScan,
    compare,
    ingest,
    oracle_topk,
    seq_scan_topk,
    sort_key,
)
from .interval_forest import IntervalForest, build_forest, if_topk
from .interval_tree import IntervalTree, build_interval_tree, it_topk, stab
from .segment_tree import (
    SegmentTree,
    StPsa,
    build_segment_tree,
    build_stpsa,
    sorted_st_topk,
    st_stab,
    st_topk,
    stpsa_topk,
)

__all__ = [
    "BACKEND", "available_backends",
    "Dataset", "IngestError", "Interval", "Query", "SequentialScan",
    "compare", "ingest", "oracle_topk", "seq_scan_topk", "sort_key",
    "IntervalForest", "build_forest", "if_topk",
    "IntervalTree", "build_interval_tree", "it_topk", "stab",
    "SegmentTree", "StPsa", "build_segment_tree", "build_stpsa",
    "sorted_st_topk", "st_stab", "st_topk", "stpsa_topk",
]
