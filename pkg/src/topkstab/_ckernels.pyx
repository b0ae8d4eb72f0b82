# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled query kernels; mirror of ``_pykernels`` (same classes, same tuples)."""
from cpython cimport array
from libc.stdlib cimport malloc, free, qsort
from libc.string cimport memcpy

from ._hits import Hits

NAME = "cython"

cdef array.array _RANKS = array.array("q")
cdef array.array _RANKS32 = array.array("i")


cdef array.array _ranks(const long long* src, Py_ssize_t size):
    cdef array.array out = array.clone(_RANKS, size, zero=False)
    if size:
        memcpy(out.data.as_voidptr, src, size * sizeof(long long))
    return out


cdef int _cmp_ll(const void* a, const void* b) noexcept nogil:
    cdef long long x = (<const long long*>a)[0]
    cdef long long y = (<const long long*>b)[0]
    return (x > y) - (x < y)


cdef inline void _push(long long* h, Py_ssize_t* size, Py_ssize_t cap, long long x) noexcept nogil:
    # bounded max-heap: retains the `cap` smallest ranks seen
    cdef Py_ssize_t i, p, c, n
    if size[0] < cap:
        i = size[0]
        size[0] += 1
        while i > 0:
            p = (i - 1) >> 1
            if h[p] >= x:
                break
            h[i] = h[p]
            i = p
        h[i] = x
    elif x < h[0]:
        n = size[0]
        i = 0
        while True:
            c = 2 * i + 1
            if c >= n:
                break
            if c + 1 < n and h[c + 1] > h[c]:
                c += 1
            if h[c] <= x:
                break
            h[i] = h[c]
            i = c
        h[i] = x


cdef object _finish(long long* h, Py_ssize_t size, list items):
    qsort(h, size, sizeof(long long), _cmp_ll)
    return Hits(_ranks(h, size), items)


cdef long long* _alloc(Py_ssize_t cap) except NULL:
    cdef long long* h = <long long*>malloc((cap if cap > 0 else 1) * sizeof(long long))
    if h == NULL:
        raise MemoryError()
    return h


cdef class ScanKernel:
    cdef double[::1] l
    cdef double[::1] r
    cdef list items

    def __init__(self, l, r, items):
        self.l = l
        self.r = r
        self.items = list(items)

    def search(self, double s, Py_ssize_t k):
        cdef Py_ssize_t i, n = self.l.shape[0], touches = 0
        cdef Py_ssize_t found = 0
        cdef array.array out = array.clone(_RANKS, min(k, n), zero=False)
        for i in range(n):
            touches += 1
            if self.l[i] <= s <= self.r[i]:
                out.data.as_longlongs[found] = i
                found += 1
                if found == k:
                    break
        array.resize(out, found)
        return Hits(out, self.items), 0, touches, 0


cdef class ForestKernel:
    cdef double[::1] center
    cdef long long[::1] left
    cdef long long[::1] right
    cdef long long[::1] lo
    cdef long long[::1] hi
    cdef double[::1] al_key
    cdef long long[::1] al_rank
    cdef double[::1] ar_key
    cdef long long[::1] ar_rank
    cdef long long[::1] roots
    cdef list items

    def __init__(self, center, left, right, lo, hi,
                 al_key, al_rank, ar_key, ar_rank, roots, items):
        self.center = center
        self.left = left
        self.right = right
        self.lo = lo
        self.hi = hi
        self.al_key = al_key
        self.al_rank = al_rank
        self.ar_key = ar_key
        self.ar_rank = ar_rank
        self.roots = roots
        self.items = list(items)

    def search(self, double s, Py_ssize_t k, bint prune=False):
        cdef Py_ssize_t cap = min(k, <Py_ssize_t>len(self.items))
        cdef long long* h = _alloc(cap)
        cdef Py_ssize_t size = 0, t, i, end
        cdef long long node
        cdef long nodes = 0, touches = 0, trees = 0
        cdef double c
        try:
            for t in range(self.roots.shape[0]):
                trees += 1
                node = self.roots[t]
                while node >= 0:
                    nodes += 1
                    c = self.center[node]
                    if s < c:
                        i = self.lo[node]
                        end = self.hi[node]
                        while i < end:
                            touches += 1
                            if self.al_key[i] > s:
                                break
                            _push(h, &size, cap, self.al_rank[i])
                            i += 1
                        node = self.left[node]
                    elif s > c:
                        i = self.hi[node] - 1
                        end = self.lo[node]
                        while i >= end:
                            touches += 1
                            if self.ar_key[i] < s:
                                break
                            _push(h, &size, cap, self.ar_rank[i])
                            i -= 1
                        node = self.right[node]
                    else:
                        for i in range(self.lo[node], self.hi[node]):
                            _push(h, &size, cap, self.al_rank[i])
                        touches += self.hi[node] - self.lo[node]
                        break
                if prune and size == k:
                    break
            return _finish(h, size, self.items), nodes, touches, trees
        finally:
            free(h)


cdef class SegmentKernel:
    cdef double[::1] key
    cdef signed char[::1] closed
    cdef long long[::1] left
    cdef long long[::1] right
    cdef long long[::1] cstart
    cdef long long[::1] cstop
    cdef long long[::1] crank
    cdef list items

    def __init__(self, key, closed, left, right, cstart, cstop, crank, items):
        self.key = key
        self.closed = closed
        self.left = left
        self.right = right
        self.cstart = cstart
        self.cstop = cstop
        self.crank = crank
        self.items = list(items)

    cdef inline long long _child(self, long long node, double s) noexcept nogil:
        cdef double kv = self.key[node]
        if s > kv or (self.closed[node] and s == kv):
            return self.right[node]
        return self.left[node]

    def leaf(self, double s):
        cdef long long node = 0
        cdef long nodes = 1
        while self.left[node] >= 0:
            node = self._child(node, s)
            nodes += 1
        return node, nodes

    def search(self, double s, Py_ssize_t k):
        cdef Py_ssize_t cap = min(k, <Py_ssize_t>len(self.items))
        cdef long long* h = _alloc(cap)
        cdef Py_ssize_t size = 0, i
        cdef long long node = 0
        cdef long nodes = 0, touches = 0
        try:
            while True:
                nodes += 1
                touches += self.cstop[node] - self.cstart[node]
                for i in range(self.cstart[node], self.cstop[node]):
                    _push(h, &size, cap, self.crank[i])
                if self.left[node] < 0:
                    break
                node = self._child(node, s)
            return _finish(h, size, self.items), nodes, touches, 0
        finally:
            free(h)

    def search_sorted(self, double s, Py_ssize_t k):
        # heads of the non-empty canonical lists on the path; best head is
        # found by a linear pass since paths are only O(log n) long
        cdef Py_ssize_t cap = 0
        cdef long long node = 0
        while True:
            cap += 1
            if self.left[node] < 0:
                break
            node = self._child(node, s)
        cdef long long* pos = _alloc(cap)
        cdef long long* stop = _alloc(cap)
        cdef Py_ssize_t nlists = 0, j, best
        cdef long nodes = 0, touches = 0
        cdef long long br
        cdef array.array out = array.clone(_RANKS, k if k < <Py_ssize_t>len(self.items) else len(self.items), zero=False)
        cdef Py_ssize_t found = 0
        try:
            node = 0
            while True:
                nodes += 1
                if self.cstart[node] < self.cstop[node]:
                    pos[nlists] = self.cstart[node]
                    stop[nlists] = self.cstop[node]
                    nlists += 1
                    touches += 1
                if self.left[node] < 0:
                    break
                node = self._child(node, s)
            while nlists > 0:
                best = 0
                br = self.crank[pos[0]]
                for j in range(1, nlists):
                    if self.crank[pos[j]] < br:
                        br = self.crank[pos[j]]
                        best = j
                out.data.as_longlongs[found] = br
                found += 1
                if found == k:
                    break
                pos[best] += 1
                if pos[best] < stop[best]:
                    touches += 1
                else:
                    nlists -= 1
                    pos[best] = pos[nlists]
                    stop[best] = stop[nlists]
            array.resize(out, found)
            return Hits(out, self.items), nodes, touches, 0
        finally:
            free(pos)
            free(stop)


cdef class PathKernel:
    cdef double[::1] key
    cdef signed char[::1] closed
    cdef long long[::1] left
    cdef long long[::1] right
    cdef long long[::1] pstart
    cdef long long[::1] pstop
    cdef int[::1] prank
    cdef list items

    def __init__(self, key, closed, left, right, pstart, pstop, prank, items):
        self.key = key
        self.closed = closed
        self.left = left
        self.right = right
        self.pstart = pstart
        self.pstop = pstop
        self.prank = prank
        self.items = list(items)

    def search(self, double s, Py_ssize_t k):
        cdef long long node = 0
        cdef long nodes = 1
        cdef double kv
        cdef Py_ssize_t a, b, i
        while self.left[node] >= 0:
            kv = self.key[node]
            if s > kv or (self.closed[node] and s == kv):
                node = self.right[node]
            else:
                node = self.left[node]
            nodes += 1
        a = self.pstart[node]
        b = self.pstop[node]
        if b - a > k:
            b = a + k
        cdef array.array out = array.clone(_RANKS32, b - a, zero=False)
        if b > a:
            memcpy(out.data.as_voidptr, &self.prank[a], (b - a) * sizeof(int))
        return Hits(out, self.items), nodes, b - a, 0
