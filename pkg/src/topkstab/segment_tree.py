"""Segment tree over elementary intervals, and its path-array variant (ST-PSA).

With distinct endpoints ``e_0 < ... < e_{m-1}`` the leaves, left to right,
are the ``2m + 1`` elementary intervals::

    (-inf, e_0), [e_0, e_0], (e_0, e_1), [e_1, e_1], ..., [e_{m-1}, e_{m-1}], (e_{m-1}, inf)

Leaf ``2j + 1`` is the point ``e_j``.  A closed interval ``[l, r]`` covers
exactly the leaf run from the point of ``l`` to the point of ``r``.  Nodes
split their leaf run at ``mid = (lo + hi) // 2``; the descent test for
``s`` is ``s > key`` or, when the right child starts with a point leaf,
``s >= key``.

An interval is stored at each node whose leaf run it covers while not
covering the parent's ("canonical" nodes); at most one per root-to-leaf
path.  Canonical lists are kept in ascending rank order, which is all the
weight-sorted variant needs.

ST-PSA replaces them by one array per leaf: the union of the canonical
lists along the leaf's root path, sorted by rank.  A query descends to
its leaf and copies a prefix.
"""
from __future__ import annotations

from typing import Callable, List, NamedTuple, Optional

import numpy as np

from ._backend import get_kernels
from .core import Dataset, Interval, Query


class Range(NamedTuple):
    lo: float
    hi: float
    lo_closed: bool
    hi_closed: bool

    def contains(self, s: float) -> bool:
        above = s >= self.lo if self.lo_closed else s > self.lo
        below = s <= self.hi if self.hi_closed else s < self.hi
        return above and below


class SegmentTreeNode(NamedTuple):
    range: Range
    canonical: List[Interval]
    left: Optional[int]
    right: Optional[int]
    path_array: Optional[List[Interval]]


class SegmentTree:
    """Plain (stab all, size-k heap) and weight-sorted (best-head merge) queries."""

    name = "st"

    def __init__(self, dataset: Dataset, backend: str | None = None):
        self.dataset = dataset
        self._build_skeleton()
        self._assign()
        self.copies = int(self.crank.shape[0])
        self._kernel = get_kernels(backend).SegmentKernel(
            self.key, self.closed, self.left, self.right,
            self.cstart, self.cstop, self.crank, dataset.by_rank,
        )

    def _build_skeleton(self):
        ds = self.dataset
        e = np.unique(np.concatenate((ds.rank_l, ds.rank_r)))
        self.endpoints = e
        self.n_leaves = 2 * e.size + 1

        los, his, keys, closeds, lefts, rights = [], [], [], [], [], []
        lo = np.zeros(1, dtype=np.int64)
        hi = np.full(1, self.n_leaves, dtype=np.int64)
        base = 0
        height = 0
        while lo.size:
            height += 1
            internal = hi - lo > 1
            mid = (lo + hi) // 2
            odd = (mid & 1).astype(bool)
            # right child starts at point leaf e_j (mid = 2j+1) or at gap (e_{j-1}, e_j) (mid = 2j)
            idx = np.where(odd, (mid - 1) // 2, mid // 2 - 1)
            key = np.full(lo.size, np.nan)
            key[internal] = e[idx[internal]]
            next_base = base + lo.size
            n_int = int(internal.sum())
            left = np.full(lo.size, -1, dtype=np.int64)
            right = np.full(lo.size, -1, dtype=np.int64)
            left[internal] = next_base + 2 * np.arange(n_int, dtype=np.int64)
            right[internal] = left[internal] + 1
            los.append(lo)
            his.append(hi)
            keys.append(key)
            closeds.append((odd & internal).astype(np.int8))
            lefts.append(left)
            rights.append(right)
            child_lo = np.empty(2 * n_int, dtype=np.int64)
            child_hi = np.empty(2 * n_int, dtype=np.int64)
            child_lo[0::2] = lo[internal]
            child_hi[0::2] = mid[internal]
            child_lo[1::2] = mid[internal]
            child_hi[1::2] = hi[internal]
            lo, hi = child_lo, child_hi
            base = next_base

        self.lo = np.concatenate(los)
        self.hi = np.concatenate(his)
        self.key = np.concatenate(keys)
        self.closed = np.concatenate(closeds)
        self.left = np.concatenate(lefts)
        self.right = np.concatenate(rights)
        self.height = height

    def _assign(self):
        ds = self.dataset
        n = len(ds)
        e = self.endpoints
        a = 2 * np.searchsorted(e, ds.rank_l) + 1
        b = 2 * np.searchsorted(e, ds.rank_r) + 1
        rank = np.arange(n, dtype=np.int64)
        node = np.zeros(n, dtype=np.int64)
        found_node, found_rank = [], []
        while rank.size:
            nlo = self.lo[node]
            nhi = self.hi[node]
            ra = a[rank]
            rb = b[rank]
            covered = (ra <= nlo) & (nhi - 1 <= rb)
            found_node.append(node[covered])
            found_rank.append(rank[covered])
            rest = ~covered
            mid = ((nlo + nhi) // 2)[rest]
            rank_r, node_r = rank[rest], node[rest]
            go_left = ra[rest] < mid
            go_right = rb[rest] >= mid
            rank = np.concatenate((rank_r[go_left], rank_r[go_right]))
            node = np.concatenate((self.left[node_r[go_left]], self.right[node_r[go_right]]))

        n_nodes = self.lo.size
        node = np.concatenate(found_node) if found_node else np.empty(0, np.int64)
        rank = np.concatenate(found_rank) if found_rank else np.empty(0, np.int64)
        packed = np.sort(node * max(n, 1) + rank)
        self.cnode = packed // max(n, 1)
        self.crank = packed % max(n, 1)
        counts = np.bincount(self.cnode, minlength=n_nodes)
        self.cstop = np.cumsum(counts).astype(np.int64)
        self.cstart = self.cstop - counts

    def leaf_range(self, j: int) -> Range:
        """Range of elementary leaf ``j``."""
        e = self.endpoints
        if j & 1:
            v = float(e[(j - 1) // 2])
            return Range(v, v, True, True)
        i = j // 2
        lo = float(e[i - 1]) if i > 0 else float("-inf")
        hi = float(e[i]) if i < e.size else float("inf")
        return Range(lo, hi, False, False)

    def node_range(self, u: int) -> Range:
        first = self.leaf_range(int(self.lo[u]))
        last = self.leaf_range(int(self.hi[u]) - 1)
        return Range(first.lo, last.hi, first.lo_closed, last.hi_closed)

    def is_leaf(self, u: int) -> bool:
        return self.left[u] < 0

    def canonical(self, u: int) -> List[Interval]:
        items = self.dataset.by_rank
        return [items[r] for r in self.crank[self.cstart[u]:self.cstop[u]].tolist()]

    def node(self, u: int) -> SegmentTreeNode:
        return SegmentTreeNode(
            range=self.node_range(u),
            canonical=self.canonical(u),
            left=None if self.is_leaf(u) else int(self.left[u]),
            right=None if self.is_leaf(u) else int(self.right[u]),
            path_array=None,
        )

    def path(self, s: float) -> List[int]:
        """Node ids on the root-to-leaf path for ``s``."""
        u = 0
        out = [0]
        while self.left[u] >= 0:
            kv = self.key[u]
            u = int(self.right[u] if (s > kv or (self.closed[u] and s == kv)) else self.left[u])
            out.append(u)
        return out

    def stab(self, s: float, emit: Callable[[Interval], None]) -> int:
        """Emit the canonical intervals along the path for ``s``; return the terminal leaf."""
        nodes = self.path(s)
        for u in nodes:
            for x in self.canonical(u):
                emit(x)
        return nodes[-1]

    def search(self, s: float, k: int):
        return self._kernel.search(float(s), int(k))

    def search_sorted(self, s: float, k: int):
        return self._kernel.search_sorted(float(s), int(k))

    def topk(self, s: float, k: int) -> List[Interval]:
        return list(self._kernel.search(float(s), int(k))[0])

    def topk_sorted(self, s: float, k: int) -> List[Interval]:
        return list(self._kernel.search_sorted(float(s), int(k))[0])


class StPsa:
    """Segment tree whose leaves hold rank-sorted arrays of every interval on their path.

    Interior canonical lists are not kept: each query ends at a leaf, so only
    leaf arrays are ever read.
    """

    name = "stpsa"

    def __init__(self, tree: SegmentTree, backend: str | None = None):
        self.dataset = tree.dataset
        self.endpoints = tree.endpoints
        self.key, self.closed = tree.key, tree.closed
        self.left, self.right = tree.left, tree.right
        self.lo, self.hi = tree.lo, tree.hi
        self.height = tree.height
        self.canonical_copies = tree.copies
        self._build_paths(tree)
        self.copies = int(self.prank.shape[0])
        self._kernel = get_kernels(backend).PathKernel(
            self.key, self.closed, self.left, self.right,
            self.pstart, self.pstop, self.prank, self.dataset.by_rank,
        )

    @classmethod
    def from_dataset(cls, dataset: Dataset, backend: str | None = None) -> "StPsa":
        return cls(SegmentTree(dataset, backend=backend), backend=backend)

    def _build_paths(self, tree: SegmentTree):
        n = max(len(self.dataset), 1)
        n_nodes = self.lo.size
        leaf_node = np.empty(tree.n_leaves, dtype=np.int64)
        leaves = np.flatnonzero(self.left < 0)
        leaf_node[self.lo[leaves]] = leaves

        # every canonical entry reaches each leaf below its node
        cnode, crank = tree.cnode, tree.crank
        span = self.hi[cnode] - self.lo[cnode]
        total = int(span.sum())
        offsets = np.cumsum(span) - span
        leaf = np.repeat(self.lo[cnode], span) + (np.arange(total, dtype=np.int64) - np.repeat(offsets, span))
        packed = leaf_node[leaf] * n + np.repeat(crank, span)
        del leaf
        packed.sort()
        repeats = packed[1:] == packed[:-1]
        self.sorted_total = total
        self.dedup_count = int(repeats.sum())
        if self.dedup_count:
            packed = packed[np.concatenate(([True], ~repeats))]
        pnode = packed // n
        # int32 halves the cache lines a k-prefix read touches
        self.prank = (packed % n).astype(np.int32)
        counts = np.bincount(pnode, minlength=n_nodes)
        self.pstop = np.cumsum(counts).astype(np.int64)
        self.pstart = self.pstop - counts

    def path_array(self, u: int) -> List[Interval]:
        items = self.dataset.by_rank
        return [items[r] for r in self.prank[self.pstart[u]:self.pstop[u]].tolist()]

    def leaf_for(self, s: float) -> int:
        u = 0
        while self.left[u] >= 0:
            kv = self.key[u]
            u = int(self.right[u] if (s > kv or (self.closed[u] and s == kv)) else self.left[u])
        return u

    def search(self, s: float, k: int):
        return self._kernel.search(float(s), int(k))

    def topk(self, s: float, k: int) -> List[Interval]:
        return list(self._kernel.search(float(s), int(k))[0])


def build_segment_tree(dataset: Dataset, backend: str | None = None) -> SegmentTree:
    return SegmentTree(dataset, backend=backend)


def st_stab(tree: SegmentTree, s: float, emit: Callable[[Interval], None]) -> int:
    return tree.stab(s, emit)


def st_topk(tree: SegmentTree, q: Query) -> List[Interval]:
    return tree.topk(q.s, q.k)


def sorted_st_topk(tree: SegmentTree, q: Query) -> List[Interval]:
    return tree.topk_sorted(q.s, q.k)


def build_stpsa(tree: SegmentTree, backend: str | None = None) -> StPsa:
    return StPsa(tree, backend=backend)


def stpsa_topk(index: StPsa, q: Query) -> List[Interval]:
    return index.topk(q.s, q.k)
