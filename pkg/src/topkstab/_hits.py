"""Query results as rank sequences.

Kernels answer with ranks only; turning them into :class:`Interval` objects
means one scattered memory read per result, which would dominate the
O(log n + k) index work at microsecond scale.  :class:`Hits` defers that
to the moment the caller reads an element.
"""
from collections.abc import Sequence


class Hits(Sequence):
    """Result intervals, best first, looked up by rank on access."""

    __slots__ = ("ranks", "_items")
    __hash__ = None

    def __init__(self, ranks, items):
        self.ranks = ranks
        self._items = items

    def __len__(self):
        return len(self.ranks)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self._items[r] for r in self.ranks[i]]
        return self._items[self.ranks[i]]

    def __iter__(self):
        items = self._items
        return (items[r] for r in self.ranks)

    def __eq__(self, other):
        if isinstance(other, (Hits, list, tuple)):
            return list(self) == list(other)
        return NotImplemented

    def __repr__(self):
        return f"Hits({list(self)!r})"
