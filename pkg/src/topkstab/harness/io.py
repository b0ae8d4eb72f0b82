"""CSV formats.

Dataset:  header ``id,l,r,w``, one interval per line.
Workload: header ``s,k``.
Report:   header ``algo,n,k,build_ms,copies,mean_us,p50_us,p99_us,nodes_mean,touches_mean,trees_mean``.

Floats are written with ``repr`` (shortest round-trip form), so identical
inputs give byte-identical files.
"""
from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, List, Sequence, TextIO

from ..core import Dataset, IngestError, Query, ingest

DATASET_HEADER = ["id", "l", "r", "w"]
WORKLOAD_HEADER = ["s", "k"]
REPORT_HEADER = ["algo", "n", "k", "build_ms", "copies", "mean_us", "p50_us",
                 "p99_us", "nodes_mean", "touches_mean", "trees_mean"]


class ParseError(ValueError):
    pass


def fmt(x: float) -> str:
    return repr(float(x))


def _open_rows(path: Path, header: List[str]):
    fh = open(path, newline="", encoding="utf-8")
    reader = csv.reader(fh)
    first = next(reader, None)
    if first != header:
        fh.close()
        raise ParseError(f"{path}:1: expected header {','.join(header)}, got {first!r}")
    return fh, reader


def read_dataset(path, order: str = "max") -> Dataset:
    path = Path(path)
    records = []
    lines = []
    fh, reader = _open_rows(path, DATASET_HEADER)
    with fh:
        for row in reader:
            lineno = reader.line_num
            if not row:
                continue
            if len(row) != 4:
                raise ParseError(f"{path}:{lineno}: expected 4 fields, got {len(row)} in {','.join(row)!r}")
            try:
                records.append((int(row[0]), float(row[1]), float(row[2]), float(row[3])))
            except ValueError:
                raise ParseError(f"{path}:{lineno}: cannot parse row {','.join(row)!r}") from None
            lines.append(lineno)
    try:
        return ingest(records, order=order)
    except IngestError as exc:
        raise ParseError(f"{path}:{lines[exc.index]}: {exc}") from None


def write_dataset(path, ids: Sequence[int], l: Sequence[float], r: Sequence[float],
                  w: Sequence[float]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(",".join(DATASET_HEADER) + "\n")
        fh.writelines(f"{i},{a!r},{b!r},{c!r}\n" for i, a, b, c in zip(ids, l, r, w))


def read_workload(path) -> List[Query]:
    path = Path(path)
    out = []
    fh, reader = _open_rows(path, WORKLOAD_HEADER)
    with fh:
        for row in reader:
            if not row:
                continue
            try:
                s, k = float(row[0]), int(row[1])
                out.append(Query(s, k))
            except (ValueError, IndexError):
                raise ParseError(f"{path}:{reader.line_num}: cannot parse row {','.join(row)!r}") from None
    return out


def write_workload(path, queries: Iterable[Query]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        fh.write(",".join(WORKLOAD_HEADER) + "\n")
        fh.writelines(f"{q.s!r},{q.k}\n" for q in queries)


def write_report(fh: TextIO, rows: Iterable[dict]) -> None:
    writer = csv.DictWriter(fh, fieldnames=REPORT_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
