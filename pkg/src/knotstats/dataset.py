"""Ingestion and validation of the per-knot invariant dataset.

Canonical CSV schema:

    name,crossings,alternating,dt,volume,kfh_rank,determinant

with ``alternating`` in {0,1} and ``dt`` an optional space-separated DT
code.  A header map (flat key = value config) adapts other column
layouts onto this schema.  Rows failing hard invariants are quarantined
into the validation report, never silently dropped; records without a
positive volume load but are excluded from fits.
"""

from __future__ import annotations

import csv
import json
import math
import random
import statistics
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import diagram as dg
from .errors import (DegenerateRange, Disagreement, EmptyFile, KnotstatsError,
                     MissingColumn, NonRealizable)
from .invariants import determinant

REQUIRED_COLUMNS = ("name", "crossings", "alternating", "volume",
                    "kfh_rank", "determinant")
OPTIONAL_COLUMNS = ("dt",)

_TRUE_TOKENS = {"1", "true", "yes", "a", "alt", "alternating"}
_FALSE_TOKENS = {"0", "false", "no", "n", "nonalt", "non-alternating",
                 "nonalternating"}


@dataclass(frozen=True)
class KnotRecord:
    name: str
    crossings: int
    alternating: bool
    volume: float | None
    kfh_rank: int
    determinant: int
    dt: dg.DTCode | None = None

    @property
    def hyperbolic(self) -> bool:
        return self.volume is not None and self.volume > 0

    @property
    def group(self) -> str:
        return f"{self.crossings}{'a' if self.alternating else 'n'}"


@dataclass(frozen=True)
class Quarantined:
    row: int
    reason: str
    raw: str


@dataclass
class ValidationReport:
    path: str
    total_rows: int = 0
    loaded: int = 0
    quarantined: list[Quarantined] = field(default_factory=list)
    non_hyperbolic: int = 0

    @property
    def ok(self) -> bool:
        return self.loaded + len(self.quarantined) == self.total_rows

    def to_json(self) -> str:
        return json.dumps({
            "path": self.path,
            "total_rows": self.total_rows,
            "loaded": self.loaded,
            "quarantined_count": len(self.quarantined),
            "non_hyperbolic": self.non_hyperbolic,
            "quarantined": [
                {"row": q.row, "reason": q.reason, "raw": q.raw}
                for q in self.quarantined[:1000]
            ],
        }, indent=2)


class KnotTable:
    """Immutable collection of records indexed by (crossings, alternating)."""

    def __init__(self, records):
        self.records: tuple[KnotRecord, ...] = tuple(records)
        self._groups: dict[tuple[int, bool], list[KnotRecord]] = {}
        for rec in self.records:
            self._groups.setdefault((rec.crossings, rec.alternating), []).append(rec)

    def __len__(self) -> int:
        return len(self.records)

    def groups(self) -> list[tuple[int, bool]]:
        return sorted(self._groups)

    def group(self, crossings: int, alternating: bool) -> tuple[KnotRecord, ...]:
        return tuple(self._groups.get((crossings, alternating), ()))

    def group_counts(self) -> dict[str, int]:
        return {f"{c}{'a' if alt else 'n'}": len(v)
                for (c, alt), v in sorted(self._groups.items())}


def read_header_map(path) -> dict[str, str]:
    """Parse a flat ``ours = theirs`` column-name map file."""
    mapping = {}
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise KnotstatsError(f"bad header-map line: {line!r}")
        key, value = (s.strip().strip("'\"") for s in line.split("=", 1))
        mapping[key] = value
    return mapping


def _parse_record(row: dict[str, str], realize_dt: bool = False) -> KnotRecord:
    name = row["name"].strip()
    if not name:
        raise ValueError("empty name")
    crossings = int(row["crossings"])
    alt_token = row["alternating"].strip().lower()
    if alt_token in _TRUE_TOKENS:
        alternating = True
    elif alt_token in _FALSE_TOKENS:
        alternating = False
    else:
        raise ValueError(f"bad alternating flag {row['alternating']!r}")
    vol_text = (row.get("volume") or "").strip()
    volume = float(vol_text) if vol_text else None
    if volume is not None and not math.isfinite(volume):
        raise ValueError(f"non-finite volume {vol_text!r}")
    kfh_rank = int(row["kfh_rank"])
    det = int(row["determinant"])
    dt_text = (row.get("dt") or "").strip()
    dt = dg.parse_dt(dt_text) if dt_text else None

    if det <= 0 or det % 2 == 0:
        raise ValueError("determinant parity")
    if kfh_rank < det:
        raise ValueError("kfh_rank below determinant")
    if alternating and kfh_rank != det:
        raise ValueError("alternating rank must equal determinant")
    if dt is not None and dt.crossings != crossings:
        raise ValueError("dt length does not match crossing count")
    return KnotRecord(name, crossings, alternating, volume, kfh_rank, det, dt)


def load_csv(path, header_map: dict[str, str] | None = None,
             max_quarantine: int = 100000) -> tuple[KnotTable, ValidationReport]:
    """Stream a dataset CSV into a validated table plus a report."""
    path = Path(path)
    report = ValidationReport(path=str(path))
    records: list[KnotRecord] = []
    names: set[str] = set()
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyFile(f"{path} has no header")
        header = [h.strip() for h in header]
        if header_map:
            renames = {theirs: ours for ours, theirs in header_map.items()}
            header = [renames.get(h, h) for h in header]
        missing = [c for c in REQUIRED_COLUMNS if c not in header]
        if missing:
            raise MissingColumn(f"missing columns {missing} in {path}")
        idx = {c: header.index(c) for c in header}
        rows_seen = 0
        for lineno, raw in enumerate(reader, start=2):
            if not raw or all(not cell.strip() for cell in raw):
                continue
            rows_seen += 1
            try:
                row = {c: raw[i] for c, i in idx.items() if i < len(raw)}
                rec = _parse_record(row)
                if rec.name in names:
                    raise ValueError(f"duplicate name {rec.name}")
            except (ValueError, KnotstatsError) as exc:
                if len(report.quarantined) < max_quarantine:
                    report.quarantined.append(
                        Quarantined(lineno, str(exc), ",".join(raw)))
                else:
                    report.quarantined.append(
                        Quarantined(lineno, "quarantine cap reached", ""))
                continue
            names.add(rec.name)
            records.append(rec)
            if not rec.hyperbolic:
                report.non_hyperbolic += 1
        report.total_rows = rows_seen
    if rows_seen == 0:
        raise EmptyFile(f"{path} has no data rows")
    report.loaded = len(records)
    return KnotTable(records), report


@dataclass(frozen=True)
class SampleCheck:
    name: str
    stored: int
    computed: int | None
    status: str  # "match", "mismatch", "realization-failure"


@dataclass(frozen=True)
class SampleReport:
    checks: tuple[SampleCheck, ...]

    @property
    def matches(self) -> int:
        return sum(c.status == "match" for c in self.checks)

    @property
    def mismatches(self) -> tuple[SampleCheck, ...]:
        return tuple(c for c in self.checks if c.status == "mismatch")

    def to_json(self) -> str:
        return json.dumps({
            "sampled": len(self.checks),
            "matches": self.matches,
            "checks": [{"name": c.name, "stored": c.stored,
                        "computed": c.computed, "status": c.status}
                       for c in self.checks],
        }, indent=2)


def verify_sample(table: KnotTable, k: int, seed: int = 0,
                  crossings: int | None = None) -> SampleReport:
    """Realize k sampled DT codes and compare consensus determinants
    against the stored determinant column."""
    pool = [r for r in table.records if r.dt is not None
            and (crossings is None or r.crossings == crossings)]
    rng = random.Random(seed)
    chosen = pool if k >= len(pool) else rng.sample(pool, k)
    checks = []
    for rec in chosen[:k] if k else []:
        try:
            d = dg.realize(dg.dt_to_gauss(rec.dt))
            value = determinant(d)
        except NonRealizable:
            checks.append(SampleCheck(rec.name, rec.determinant, None,
                                      "realization-failure"))
            continue
        except Disagreement as exc:
            checks.append(SampleCheck(rec.name, rec.determinant, None,
                                      f"route-disagreement: {exc.values}"))
            continue
        status = "match" if value == rec.determinant else "mismatch"
        checks.append(SampleCheck(rec.name, rec.determinant, value, status))
    return SampleReport(tuple(checks))


@dataclass(frozen=True)
class GroupSummary:
    crossings: int
    alternating: bool
    count: int
    mean_volume: float | None
    median_volume: float | None
    mean_rank: float
    median_rank: float
    mean_det: float
    median_det: float


def group_stats(table: KnotTable) -> list[GroupSummary]:
    """Per-(crossings, alternating) count and mean/median summaries."""
    if not len(table):
        raise EmptyFile("empty table")
    out = []
    for c, alt in table.groups():
        recs = table.group(c, alt)
        vols = [r.volume for r in recs if r.hyperbolic]
        out.append(GroupSummary(
            crossings=c, alternating=alt, count=len(recs),
            mean_volume=statistics.fmean(vols) if vols else None,
            median_volume=statistics.median(vols) if vols else None,
            mean_rank=statistics.fmean(r.kfh_rank for r in recs),
            median_rank=statistics.median(r.kfh_rank for r in recs),
            mean_det=statistics.fmean(r.determinant for r in recs),
            median_det=statistics.median(r.determinant for r in recs),
        ))
    return out


@dataclass(frozen=True)
class HistogramPDF:
    edges: tuple[float, ...]
    densities: tuple[float, ...]

    def integral(self) -> float:
        return float(sum(d * (hi - lo) for d, lo, hi in
                         zip(self.densities, self.edges, self.edges[1:])))


def histogram_pdf(values, rule="auto") -> HistogramPDF:
    """Normalized histogram whose densities integrate to one."""
    arr = np.asarray([float(v) for v in values], dtype=float)
    if arr.size < 2:
        raise DegenerateRange("need at least 2 values")
    if float(arr.max()) == float(arr.min()):
        raise DegenerateRange("all values are equal")
    if isinstance(rule, str):
        try:
            edges = np.histogram_bin_edges(arr, bins=rule)
        except (ValueError, MemoryError):
            edges = np.histogram_bin_edges(arr, bins="sturges")
        if edges.size > 100001:
            # width-based rules explode on wildly skewed spreads
            edges = np.histogram_bin_edges(arr, bins="sturges")
        rule = edges
    densities, edges = np.histogram(arr, bins=rule, density=True)
    if not np.isfinite(densities).all():
        raise DegenerateRange("value range too narrow to resolve into bins")
    return HistogramPDF(tuple(edges.tolist()), tuple(densities.tolist()))
