"""Cross-check every index against the brute-force oracle."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from ..core import Dataset, Query, oracle_topk
from .algorithms import ALGORITHMS


@dataclass
class Divergence:
    algo: str
    query_index: int
    query: Query
    expected: List[int]
    got: List[int]

    def __str__(self):
        return (f"FAIL algo={self.algo} query={self.query_index} s={self.query.s!r} "
                f"k={self.query.k} expected={self.expected} got={self.got}")


@dataclass
class VerifyReport:
    n: int
    queries: int
    mismatches: Dict[str, int] = field(default_factory=dict)
    first: Optional[Divergence] = None

    @property
    def ok(self) -> bool:
        return not any(self.mismatches.values())

    def render(self) -> str:
        lines = [f"n={self.n} queries={self.queries}", "algo,mismatches"]
        lines += [f"{a},{c}" for a, c in self.mismatches.items()]
        if self.first is not None:
            lines.append(str(self.first))
        lines.append("OK" if self.ok else "FAILED")
        return "\n".join(lines) + "\n"


def run_verify(dataset: Dataset, queries: Sequence[Query], algos: Sequence[str] = tuple(ALGORITHMS),
               backend: str | None = None, _drop_id: int | None = None) -> VerifyReport:
    """Run every query through each index and compare id sequences with the oracle.

    ``_drop_id`` is a fault-injection hook for tests: the indexes are built
    without that interval while the oracle still sees it.
    """
    built_on = dataset
    if _drop_id is not None:
        built_on = dataset.subset(dataset.ids != _drop_id)
    expected = [[x.id for x in oracle_topk(dataset, q)] for q in queries]
    report = VerifyReport(n=len(dataset), queries=len(queries))
    for name in algos:
        _, search = ALGORITHMS[name](built_on, backend)
        bad = 0
        for i, (q, want) in enumerate(zip(queries, expected)):
            got = [x.id for x in search(q.s, q.k)[0]]
            if got != want:
                bad += 1
                if report.first is None:
                    report.first = Divergence(name, i, q, want, got)
        report.mismatches[name] = bad
    return report
