"""Pure-Python query kernels.

Same classes and signatures as the compiled ``_ckernels`` module.  Every
``search`` returns ``(items, nodes, touches, trees)``:

* ``items``   -- result intervals, best first, as a rank-backed :class:`Hits`
* ``nodes``   -- tree nodes visited
* ``touches`` -- interval entries read (including a scan's one overshoot)
* ``trees``   -- interval trees entered (forest only, else 0 or 1)

Ranks are positions in the result order, so "better" means "smaller rank".
The bounded accumulator is a size-k heap of negated ranks.
"""
from heapq import heappush, heapreplace, heappop

from ._hits import Hits

NAME = "python"


def _finish(heap, items):
    return Hits(sorted([-x for x in heap]), items)


class ScanKernel:
    def __init__(self, l, r, items):
        self.l = l.tolist()
        self.r = r.tolist()
        self.items = list(items)

    def search(self, s, k):
        out = []
        touches = 0
        for rank, (lo, hi) in enumerate(zip(self.l, self.r)):
            touches += 1
            if lo <= s <= hi:
                out.append(rank)
                if len(out) == k:
                    break
        return Hits(out, self.items), 0, touches, 0


class ForestKernel:
    """Stab-and-accumulate over one or more flattened interval trees.

    With ``prune`` set, stops after the first tree that leaves the
    accumulator full; trees must then be ordered by weight dominance.
    """

    def __init__(self, center, left, right, lo, hi,
                 al_key, al_rank, ar_key, ar_rank, roots, items):
        self.center = center.tolist()
        self.left = left.tolist()
        self.right = right.tolist()
        self.lo = lo.tolist()
        self.hi = hi.tolist()
        self.al_key = al_key.tolist()
        self.al_rank = al_rank.tolist()
        self.ar_key = ar_key.tolist()
        self.ar_rank = ar_rank.tolist()
        self.roots = list(roots)
        self.items = list(items)

    def search(self, s, k, prune=False):
        center, left, right = self.center, self.left, self.right
        lo, hi = self.lo, self.hi
        al_key, al_rank, ar_key, ar_rank = self.al_key, self.al_rank, self.ar_key, self.ar_rank
        heap = []
        size = 0
        nodes = touches = trees = 0
        for root in self.roots:
            trees += 1
            node = root
            while node >= 0:
                nodes += 1
                c = center[node]
                if s < c:
                    i, end = lo[node], hi[node]
                    while i < end:
                        touches += 1
                        if al_key[i] > s:
                            break
                        x = -al_rank[i]
                        if size < k:
                            heappush(heap, x)
                            size += 1
                        elif x > heap[0]:
                            heapreplace(heap, x)
                        i += 1
                    node = left[node]
                elif s > c:
                    i, end = hi[node] - 1, lo[node]
                    while i >= end:
                        touches += 1
                        if ar_key[i] < s:
                            break
                        x = -ar_rank[i]
                        if size < k:
                            heappush(heap, x)
                            size += 1
                        elif x > heap[0]:
                            heapreplace(heap, x)
                        i -= 1
                    node = right[node]
                else:
                    for i in range(lo[node], hi[node]):
                        x = -al_rank[i]
                        if size < k:
                            heappush(heap, x)
                            size += 1
                        elif x > heap[0]:
                            heapreplace(heap, x)
                    touches += hi[node] - lo[node]
                    break
            if prune and size == k:
                break
        return _finish(heap, self.items), nodes, touches, trees


def _descend(key, closed, left, right, s):
    node = 0
    nodes = 1
    while left[node] >= 0:
        kv = key[node]
        if s > kv or (closed[node] and s == kv):
            node = right[node]
        else:
            node = left[node]
        nodes += 1
    return node, nodes


class SegmentKernel:
    """Plain and weight-sorted segment tree queries over canonical lists.

    Each node's canonical list is stored in ascending rank order.
    """

    def __init__(self, key, closed, left, right, cstart, cstop, crank, items):
        self.key = key.tolist()
        self.closed = closed.tolist()
        self.left = left.tolist()
        self.right = right.tolist()
        self.cstart = cstart.tolist()
        self.cstop = cstop.tolist()
        self.crank = crank.tolist()
        self.items = list(items)

    def leaf(self, s):
        return _descend(self.key, self.closed, self.left, self.right, s)

    def search(self, s, k):
        key, closed, left, right = self.key, self.closed, self.left, self.right
        cstart, cstop, crank = self.cstart, self.cstop, self.crank
        heap = []
        size = 0
        touches = 0
        node = 0
        nodes = 0
        while True:
            nodes += 1
            a, b = cstart[node], cstop[node]
            touches += b - a
            for i in range(a, b):
                x = -crank[i]
                if size < k:
                    heappush(heap, x)
                    size += 1
                elif x > heap[0]:
                    heapreplace(heap, x)
            if left[node] < 0:
                break
            kv = key[node]
            if s > kv or (closed[node] and s == kv):
                node = right[node]
            else:
                node = left[node]
        return _finish(heap, self.items), nodes, touches, 0

    def search_sorted(self, s, k):
        key, closed, left, right = self.key, self.closed, self.left, self.right
        cstart, cstop, crank = self.cstart, self.cstop, self.crank
        heads = []
        touches = 0
        node = 0
        nodes = 0
        while True:
            nodes += 1
            a, b = cstart[node], cstop[node]
            if a < b:
                heads.append((crank[a], a, b))
                touches += 1
            if left[node] < 0:
                break
            kv = key[node]
            if s > kv or (closed[node] and s == kv):
                node = right[node]
            else:
                node = left[node]
        heads.sort()
        out = []
        while heads:
            rank, i, b = heappop(heads)
            out.append(rank)
            if len(out) == k:
                break
            i += 1
            if i < b:
                heappush(heads, (crank[i], i, b))
                touches += 1
        return Hits(out, self.items), nodes, touches, 0


class PathKernel:
    """Descend to the leaf for ``s`` and copy a prefix of its path array."""

    def __init__(self, key, closed, left, right, pstart, pstop, prank, items):
        self.key = key.tolist()
        self.closed = closed.tolist()
        self.left = left.tolist()
        self.right = right.tolist()
        self.pstart = pstart.tolist()
        self.pstop = pstop.tolist()
        self.prank = prank.tolist()
        self.items = list(items)

    def search(self, s, k):
        node, nodes = _descend(self.key, self.closed, self.left, self.right, s)
        a = self.pstart[node]
        b = min(self.pstop[node], a + k)
        return Hits(self.prank[a:b], self.items), nodes, b - a, 0
