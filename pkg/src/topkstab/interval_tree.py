"""Centered interval tree and the stab-everything top-k baseline.

Trees are stored flattened in breadth-first node order.  For node ``i`` the
crossing intervals live in ``al_*[lo[i]:hi[i]]`` (ascending left endpoint)
and ``ar_*[lo[i]:hi[i]]`` (ascending right endpoint); ties keep rank order.

The build runs one numpy pass per tree level and accepts several disjoint
groups at once, each becoming its own root; the interval forest uses that
to build all of its trees together.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional

import numpy as np

from ._backend import get_kernels
from .core import Dataset, Interval, Query


class IntervalTreeNode(NamedTuple):
    center: float
    a_left: List[Interval]
    a_right: List[Interval]
    left: Optional[int]
    right: Optional[int]


@dataclass
class FlatTrees:
    center: np.ndarray
    left: np.ndarray
    right: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    al_key: np.ndarray
    al_rank: np.ndarray
    ar_key: np.ndarray
    ar_rank: np.ndarray
    roots: np.ndarray
    height: int

    @property
    def n_nodes(self) -> int:
        return int(self.center.shape[0])

    def kernel_args(self):
        return (self.center, self.left, self.right, self.lo, self.hi,
                self.al_key, self.al_rank, self.ar_key, self.ar_rank, self.roots)


def build_flat(l: np.ndarray, r: np.ndarray, group: np.ndarray) -> FlatTrees:
    """Build one interval tree per group.

    ``l`` and ``r`` are rank-indexed endpoint arrays; ``group[rank]`` is the
    tree the interval belongs to, numbered ``0..G-1`` with every group
    non-empty.  Roots come out as nodes ``0..G-1``.

    A node's center is the lower median of its subset's endpoint multiset.
    That value is an endpoint of some member, so every node holds at least
    one interval, and each child receives at most half of the subset.
    """
    n = l.shape[0]
    active = np.arange(n, dtype=np.int64)
    grp = np.asarray(group, dtype=np.int64)
    n_groups = int(grp.max()) + 1 if n else 0

    centers, lefts, rights = [], [], []
    cross_node, cross_rank = [], []
    base = 0
    height = 0
    while active.size:
        height += 1
        al = l[active]
        ar = r[active]
        cnt = np.bincount(grp, minlength=n_groups)
        vals = np.concatenate((al, ar))
        order = np.lexsort((vals, np.concatenate((grp, grp))))
        first = 2 * (np.cumsum(cnt) - cnt)
        center = vals[order][first + cnt - 1]
        vc = center[grp]
        to_left = ar < vc
        to_right = al > vc
        crossing = ~(to_left | to_right)
        cross_node.append(base + grp[crossing])
        cross_rank.append(active[crossing])

        moving = ~crossing
        child_key = np.where(to_left, 2 * grp, 2 * grp + 1)[moving]
        keys, inv = np.unique(child_key, return_inverse=True)
        next_base = base + n_groups
        child_ids = next_base + np.arange(keys.size, dtype=np.int64)
        left = np.full(n_groups, -1, dtype=np.int64)
        right = np.full(n_groups, -1, dtype=np.int64)
        is_right = (keys & 1).astype(bool)
        left[keys[~is_right] >> 1] = child_ids[~is_right]
        right[keys[is_right] >> 1] = child_ids[is_right]
        centers.append(center)
        lefts.append(left)
        rights.append(right)

        active = active[moving]
        grp = inv.reshape(-1).astype(np.int64)
        base = next_base
        n_groups = keys.size

    def cat(parts, dtype):
        return np.concatenate(parts).astype(dtype) if parts else np.empty(0, dtype)

    center = cat(centers, np.float64)
    n_nodes = center.shape[0]
    node = cat(cross_node, np.int64)
    rank = cat(cross_rank, np.int64)
    counts = np.bincount(node, minlength=n_nodes)
    hi = np.cumsum(counts).astype(np.int64)
    lo = hi - counts
    by_l = np.lexsort((rank, l[rank], node))
    by_r = np.lexsort((rank, r[rank], node))
    al_rank = np.ascontiguousarray(rank[by_l])
    ar_rank = np.ascontiguousarray(rank[by_r])
    roots = np.arange(int(group.max()) + 1 if n else 0, dtype=np.int64)
    return FlatTrees(
        center=center,
        left=cat(lefts, np.int64),
        right=cat(rights, np.int64),
        lo=lo,
        hi=hi,
        al_key=np.ascontiguousarray(l[al_rank]),
        al_rank=al_rank,
        ar_key=np.ascontiguousarray(r[ar_rank]),
        ar_rank=ar_rank,
        roots=roots,
        height=height,
    )


def stab_flat(flat: FlatTrees, root: int, s: float, emit: Callable[[int], None]):
    """Report every rank stabbed by ``s`` in the tree at ``root``.

    Returns ``(m, nodes, touches)``.  Left of a center the ``a_left`` array is
    read upward while ``l <= s``; right of it ``a_right`` is read downward
    from the largest ``r`` while ``r >= s``.  On ``s == center`` the whole
    crossing set is stabbed and neither subtree can hold a match.
    """
    m = nodes = touches = 0
    node = root
    while node >= 0:
        nodes += 1
        c = flat.center[node]
        lo, hi = int(flat.lo[node]), int(flat.hi[node])
        if s < c:
            for i in range(lo, hi):
                touches += 1
                if flat.al_key[i] > s:
                    break
                emit(int(flat.al_rank[i]))
                m += 1
            node = int(flat.left[node])
        elif s > c:
            for i in range(hi - 1, lo - 1, -1):
                touches += 1
                if flat.ar_key[i] < s:
                    break
                emit(int(flat.ar_rank[i]))
                m += 1
            node = int(flat.right[node])
        else:
            for i in range(lo, hi):
                emit(int(flat.al_rank[i]))
            touches += hi - lo
            m += hi - lo
            break
    return m, nodes, touches


class IntervalTree:
    """Interval tree answering top-k by stabbing everything into a size-k heap."""

    name = "it"

    def __init__(self, dataset: Dataset, backend: str | None = None):
        self.dataset = dataset
        n = len(dataset)
        self.flat = build_flat(dataset.rank_l, dataset.rank_r, np.zeros(n, dtype=np.int64))
        self.copies = 2 * n
        self._kernel = get_kernels(backend).ForestKernel(*self.flat.kernel_args(), dataset.by_rank)

    @property
    def root(self) -> Optional[int]:
        return 0 if self.flat.n_nodes else None

    @property
    def height(self) -> int:
        return self.flat.height

    def node(self, i: int) -> IntervalTreeNode:
        f, items = self.flat, self.dataset.by_rank
        lo, hi = int(f.lo[i]), int(f.hi[i])
        return IntervalTreeNode(
            center=float(f.center[i]),
            a_left=[items[j] for j in f.al_rank[lo:hi].tolist()],
            a_right=[items[j] for j in f.ar_rank[lo:hi].tolist()],
            left=int(f.left[i]) if f.left[i] >= 0 else None,
            right=int(f.right[i]) if f.right[i] >= 0 else None,
        )

    def stab(self, s: float, emit: Callable[[Interval], None]):
        """Emit each interval containing ``s``; returns ``(m, nodes, touches)``."""
        if self.root is None:
            return 0, 0, 0
        items = self.dataset.by_rank
        return stab_flat(self.flat, 0, s, lambda rank: emit(items[rank]))

    def search(self, s: float, k: int):
        return self._kernel.search(float(s), int(k), False)

    def topk(self, s: float, k: int) -> List[Interval]:
        return list(self._kernel.search(float(s), int(k), False)[0])


def build_interval_tree(dataset: Dataset, backend: str | None = None) -> IntervalTree:
    return IntervalTree(dataset, backend=backend)


def stab(tree: IntervalTree, s: float, emit: Callable[[Interval], None]) -> int:
    return tree.stab(s, emit)[0]


def it_topk(tree: IntervalTree, q: Query) -> List[Interval]:
    return tree.topk(q.s, q.k)
