"""Weighted intervals, the result order, ingestion and the brute-force oracle.

Every index in this package answers the same question: among the closed
intervals ``[l, r]`` that contain ``s``, which ``k`` have the largest weight?
Results are ordered by weight descending with ties broken by ascending id,
so two correct indexes always return identical sequences.

A :class:`Dataset` assigns each interval its *rank*, i.e. its position in
that order.  Indexes compare ranks instead of ``(w, id)`` pairs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from ._backend import get_kernels

ORDERS = ("max", "min")


class IngestError(ValueError):
    """A record violates the dataset invariants.

    ``index`` is the offending record's position in the input sequence.
    """

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


@dataclass(frozen=True, slots=True)
class Interval:
    id: int
    l: float
    r: float
    w: float

    def contains(self, s: float) -> bool:
        return self.l <= s <= self.r


@dataclass(frozen=True, slots=True)
class Query:
    s: float
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")


def sort_key(x: Interval) -> Tuple[float, int]:
    return (-x.w, x.id)


def compare(a: Interval, b: Interval) -> int:
    """Return -1 if ``a`` ranks before ``b``, 1 if after, 0 if tied.

    Higher weight ranks first; equal weights fall back to the smaller id.
    """
    if a.w != b.w:
        return -1 if a.w > b.w else 1
    if a.id != b.id:
        return -1 if a.id < b.id else 1
    return 0


class Dataset:
    """An immutable, validated set of weighted intervals.

    ``intervals`` keeps ingestion order.  Weights stored on the intervals are
    the *internal* weights: for ``order="min"`` they are negated so every
    index stays max-oriented; :meth:`external` undoes that for output.

    Rank-ordered views (``by_rank``, ``rank_l``, ``rank_r``, ``rank_w``) are
    what the indexes build from.
    """

    def __init__(self, intervals: Sequence[Interval], order: str = "max"):
        if order not in ORDERS:
            raise ValueError(f"order must be one of {ORDERS}, got {order!r}")
        self.intervals: Tuple[Interval, ...] = tuple(intervals)
        self.order = order
        n = len(self.intervals)
        self.ids = np.fromiter((x.id for x in self.intervals), dtype=np.int64, count=n)
        self.l = np.fromiter((x.l for x in self.intervals), dtype=np.float64, count=n)
        self.r = np.fromiter((x.r for x in self.intervals), dtype=np.float64, count=n)
        self.w = np.fromiter((x.w for x in self.intervals), dtype=np.float64, count=n)

        perm = np.lexsort((self.ids, -self.w))
        self.by_rank: List[Interval] = [self.intervals[i] for i in perm.tolist()]
        self.rank_l = self.l[perm]
        self.rank_r = self.r[perm]
        self.rank_w = self.w[perm]
        self.rank_ids = self.ids[perm]

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    @property
    def domain(self) -> Tuple[float, float]:
        if not self.intervals:
            raise ValueError("empty dataset has no domain")
        return float(self.l.min()), float(self.r.max())

    def external(self, x: Interval) -> Interval:
        """Interval as the user supplied it (weights un-negated for ``min``)."""
        if self.order == "min":
            return replace(x, w=-x.w)
        return x

    def subset(self, mask: np.ndarray) -> "Dataset":
        """Dataset of the intervals selected by a boolean mask over ``intervals``."""
        idx = np.flatnonzero(mask).tolist()
        return Dataset([self.intervals[i] for i in idx], order=self.order)


def ingest(records: Iterable[Sequence], order: str = "max") -> Dataset:
    """Validate ``(id, l, r, w)`` records and build a :class:`Dataset`.

    Raises :class:`IngestError` naming the first offending record.
    """
    if order not in ORDERS:
        raise ValueError(f"order must be one of {ORDERS}, got {order!r}")
    sign = -1.0 if order == "min" else 1.0
    seen = set()
    out = []
    for pos, (iid, l, r, w) in enumerate(records):
        iid = int(iid)
        l, r, w = float(l), float(r), float(w)
        if iid < 0:
            raise IngestError(f"negative id {iid}", pos)
        if iid in seen:
            raise IngestError(f"duplicate id {iid}", pos)
        if not (math.isfinite(l) and math.isfinite(r)):
            raise IngestError(f"non-finite endpoint at id {iid}", pos)
        if not math.isfinite(w):
            raise IngestError(f"non-finite weight at id {iid}", pos)
        if l > r:
            raise IngestError(f"l > r at id {iid}", pos)
        seen.add(iid)
        out.append(Interval(iid, l, r, sign * w))
    return Dataset(out, order=order)


def oracle_topk(dataset: Dataset, q: Query) -> List[Interval]:
    """Exhaustive filter-and-sort reference answer.

    Uses no index and no precomputed rank, only the raw columns.
    """
    s = q.s
    hit = np.flatnonzero((dataset.l <= s) & (s <= dataset.r))
    if hit.size == 0:
        return []
    picked = hit[np.lexsort((dataset.ids[hit], -dataset.w[hit]))][: q.k]
    return [dataset.intervals[i] for i in picked.tolist()]


class SequentialScan:
    """Weight-sorted sequential scan that stops at the k-th stabbed interval."""

    name = "ss"

    def __init__(self, dataset: Dataset, backend: str | None = None):
        self.dataset = dataset
        self.copies = len(dataset)
        self._kernel = get_kernels(backend).ScanKernel(
            dataset.rank_l, dataset.rank_r, dataset.by_rank
        )

    def search(self, s: float, k: int):
        """Return ``(items, nodes, touches, trees)``; ``touches`` counts scanned intervals."""
        return self._kernel.search(float(s), int(k))

    def topk(self, s: float, k: int) -> List[Interval]:
        return list(self._kernel.search(float(s), int(k))[0])


def seq_scan_topk(index: SequentialScan, q: Query) -> List[Interval]:
    return index.topk(q.s, q.k)
