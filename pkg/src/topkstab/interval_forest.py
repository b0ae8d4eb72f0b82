"""Interval forest: weight-sorted chunks, one interval tree each, early exit.

The rank-sorted dataset is cut into ``p = ceil(sqrt(n))`` consecutive chunks
of ``ceil(n / p)`` intervals.  Every interval of chunk ``i`` outranks every
interval of chunk ``i + 1``, so once the accumulator holds ``k`` results
after some tree, later trees cannot improve it.
"""
from __future__ import annotations

import math
from typing import List, Tuple

import numpy as np

from ._backend import get_kernels
from .core import Dataset, Interval, Query
from .interval_tree import build_flat, stab_flat


def forest_shape(n: int) -> Tuple[int, int]:
    """Return ``(p, chunk_size)`` for ``n`` intervals."""
    if n <= 0:
        return 0, 0
    p = math.isqrt(n - 1) + 1
    return p, -(-n // p)


class IntervalForest:
    name = "if"

    def __init__(self, dataset: Dataset, backend: str | None = None):
        self.dataset = dataset
        n = len(dataset)
        self.p, self.chunk_size = forest_shape(n)
        chunk = np.arange(n, dtype=np.int64) // max(self.chunk_size, 1)
        self.flat = build_flat(dataset.rank_l, dataset.rank_r, chunk)
        self.copies = 2 * n
        self._kernel = get_kernels(backend).ForestKernel(*self.flat.kernel_args(), dataset.by_rank)

    @property
    def chunk_bounds(self) -> List[Tuple[float, float]]:
        """Per chunk ``(max weight, min weight)`` in internal weights."""
        w = self.dataset.rank_w
        c = self.chunk_size
        return [(float(w[i * c]), float(w[min((i + 1) * c, len(w)) - 1])) for i in range(self.p)]

    def chunk(self, i: int) -> List[Interval]:
        c = self.chunk_size
        return self.dataset.by_rank[i * c:(i + 1) * c]

    def search(self, s: float, k: int):
        return self._kernel.search(float(s), int(k), True)

    def topk(self, s: float, k: int) -> List[Interval]:
        return list(self._kernel.search(float(s), int(k), True)[0])

    def trace(self, s: float, k: int) -> Tuple[List[Interval], List[int]]:
        """Reference run that also reports how many intervals each visited tree stabbed.

        Slow (pure Python over the flat arrays); meant for inspection.
        """
        import heapq

        heap: List[int] = []
        per_tree = []

        def push(rank):
            if len(heap) < k:
                heapq.heappush(heap, -rank)
            elif -rank > heap[0]:
                heapq.heapreplace(heap, -rank)

        for root in self.flat.roots.tolist():
            m, _, _ = stab_flat(self.flat, root, s, push)
            per_tree.append(m)
            if len(heap) == k:
                break
        items = self.dataset.by_rank
        return [items[r] for r in sorted(-x for x in heap)], per_tree


def build_forest(dataset: Dataset, backend: str | None = None) -> IntervalForest:
    return IntervalForest(dataset, backend=backend)


def if_topk(forest: IntervalForest, q: Query) -> List[Interval]:
    return forest.topk(q.s, q.k)
