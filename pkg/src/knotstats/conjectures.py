"""Machine checks of the volume/rank, volume/determinant, density and
Stoimenow inequalities over a knot table.

Each check reports per-group satisfaction fractions under both the
strict and non-strict reading (the extremal-slope witnesses sit exactly
on the bound), the worst offending knots, and a monotone-trend flag
across crossing numbers.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Callable

from .dataset import KnotRecord, KnotTable
from .errors import EmptyInput
from .stats import density_f, sigmoid_eval

STOIMENOW_BASE = 1.0355  # det(L) >= 2 * 1.0355^Vol(L) for alternating links
_WITNESS_CAP = 10


@dataclass(frozen=True)
class ConjectureParams:
    a: float = 1.0
    b: float = 0.0
    cutoff: int = 50
    margin: float = 0.0


@dataclass(frozen=True)
class Witness:
    name: str
    volume: float
    value: float
    bound: float

    @property
    def excess(self) -> float:
        return self.value - self.bound


@dataclass(frozen=True)
class GroupResult:
    group: str
    n: int
    fraction_strict: float
    fraction_nonstrict: float
    violations_strict: int
    witnesses: tuple[Witness, ...]


@dataclass(frozen=True)
class ConjectureReport:
    kind: str
    params: dict
    groups: tuple[GroupResult, ...]

    @property
    def monotone_trend(self) -> bool:
        """Non-decreasing strict fraction with crossing number, per type."""
        by_type: dict[str, list[tuple[int, float]]] = {}
        for g in self.groups:
            by_type.setdefault(g.group[-1], []).append(
                (int(g.group[:-1]), g.fraction_strict))
        for series in by_type.values():
            series.sort()
            fracs = [f for _, f in series]
            if any(b < a for a, b in zip(fracs, fracs[1:])):
                return False
        return True

    def to_json(self) -> str:
        return json.dumps({
            "kind": self.kind,
            "params": self.params,
            "monotone_trend": self.monotone_trend,
            "groups": [{
                "group": g.group, "n": g.n,
                "fraction_strict": g.fraction_strict,
                "fraction_nonstrict": g.fraction_nonstrict,
                "violations_strict": g.violations_strict,
                "witnesses": [{"name": w.name, "volume": w.volume,
                               "value": w.value, "bound": w.bound}
                              for w in g.witnesses],
            } for g in self.groups],
        }, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["group", "n", "fraction_strict", "fraction_nonstrict",
                         "violations_strict"])
        for g in self.groups:
            writer.writerow([g.group, g.n, f"{g.fraction_strict:.6f}",
                             f"{g.fraction_nonstrict:.6f}", g.violations_strict])
        return buf.getvalue()


def _scan_groups(table: KnotTable, kind: str, params: dict,
                 value_of: Callable[[KnotRecord], float],
                 bound_of: Callable[[KnotRecord], float],
                 keep: Callable[[KnotRecord], bool]) -> ConjectureReport:
    if not len(table):
        raise EmptyInput("empty table")
    results = []
    for c, alt in table.groups():
        recs = [r for r in table.group(c, alt) if r.hyperbolic and keep(r)]
        if not recs:
            continue
        strict = 0
        nonstrict = 0
        offenders = []
        for r in recs:
            v, bound = value_of(r), bound_of(r)
            strict += v < bound
            nonstrict += v <= bound
            if v >= bound:
                offenders.append(Witness(r.name, r.volume, v, bound))
        offenders.sort(key=lambda w: -w.excess)
        results.append(GroupResult(
            group=f"{c}{'a' if alt else 'n'}", n=len(recs),
            fraction_strict=strict / len(recs),
            fraction_nonstrict=nonstrict / len(recs),
            violations_strict=len(recs) - strict,
            witnesses=tuple(offenders[:_WITNESS_CAP])))
    return ConjectureReport(kind, params, tuple(results))


def check_rank_volume(table: KnotTable, a: float,
                      log=math.log) -> ConjectureReport:
    """Fraction of knots with log(rank) < a * volume, per group."""
    if a <= 0:
        raise ValueError("slope bound a must be positive")
    return _scan_groups(
        table, "rank-volume", {"a": a},
        value_of=lambda r: log(r.kfh_rank),
        bound_of=lambda r: a * r.volume,
        keep=lambda r: True)


def check_det_volume(table: KnotTable, a: float, b: float,
                     log=math.log) -> ConjectureReport:
    """Fraction of knots with log(det) < a * volume + b, per group."""
    return _scan_groups(
        table, "det-volume", {"a": a, "b": b},
        value_of=lambda r: log(r.determinant),
        bound_of=lambda r: a * r.volume + b,
        keep=lambda r: True)


def check_stoimenow(table: KnotTable) -> ConjectureReport:
    """Alternating records against det >= 2 * 1.0355^volume (a theorem)."""
    return _scan_groups(
        table, "stoimenow", {"base": STOIMENOW_BASE},
        value_of=lambda r: 2.0 * STOIMENOW_BASE ** r.volume,
        bound_of=lambda r: float(r.determinant),
        keep=lambda r: r.alternating)


@dataclass(frozen=True)
class DensityGroupResult:
    group: str
    n_breakpoints: int
    fraction: float
    violations: int


@dataclass(frozen=True)
class DensityBoundReport:
    cutoff: int
    margin: float
    params: dict[str, tuple[float, float, float, float]]
    groups: tuple[DensityGroupResult, ...] = field(default_factory=tuple)

    def to_json(self) -> str:
        return json.dumps({
            "kind": "density-bound",
            "cutoff": self.cutoff,
            "margin": self.margin,
            "params": {g: list(p) for g, p in self.params.items()},
            "groups": [{"group": g.group, "n_breakpoints": g.n_breakpoints,
                        "fraction": g.fraction, "violations": g.violations}
                       for g in self.groups],
        }, indent=2)


def check_density_bound(table: KnotTable, cutoff: int,
                        params_by_group: dict[str, tuple[float, float, float, float]],
                        margin: float = 0.0) -> DensityBoundReport:
    """Fraction of density breakpoints with f(x) < g(x) + margin.

    Runs over the non-alternating groups that have parameters in
    `params_by_group` (keys like "12n").
    """
    if not len(table):
        raise EmptyInput("empty table")
    results = []
    for c, alt in table.groups():
        if alt:
            continue
        key = f"{c}n"
        if key not in params_by_group:
            continue
        recs = [r for r in table.group(c, alt) if r.hyperbolic]
        if not recs:
            continue
        curve = density_f(recs, cutoff)
        params = params_by_group[key]
        n_ok = 0
        total = 0
        for x, fx in zip(curve.breakpoints, curve.values):
            if not math.isfinite(x):
                continue
            total += 1
            n_ok += fx < sigmoid_eval(params, x) + margin
        if total == 0:
            continue
        results.append(DensityGroupResult(key, total, n_ok / total, total - n_ok))
    return DensityBoundReport(cutoff, margin, dict(params_by_group), tuple(results))
