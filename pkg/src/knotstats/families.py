"""Parametric diagram families with closed-form determinants.

Pretzel diagrams P(p, q, r) are emitted directly as PD-style crossing
lists (three vertical half-twist tangles closed top and bottom); the
n-twist knot is P(1, 1, n), which has n + 2 crossings and determinant
2n + 1.  The (3, 3, n) pretzels, n even, have determinant 6n + 9.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass

from .diagram import Crossing, Diagram, validate
from .errors import NotAKnot
from .invariants import determinant

# Port order around every crossing: NW, NE, SE, SW.  Using the same
# screen-order rotation at each crossing is a consistent orientation.
_NW, _NE, _SE, _SW = range(4)
_OPPOSITE = {_NW: _SE, _SE: _NW, _NE: _SW, _SW: _NE}


@dataclass(frozen=True)
class PretzelSpec:
    """Signed half-twist counts of the three vertical tangles."""

    p: int
    q: int
    r: int

    def __post_init__(self):
        if abs(self.p) + abs(self.q) + abs(self.r) < 1:
            raise ValueError("at least one tangle must carry a crossing")

    @property
    def twists(self) -> tuple[int, int, int]:
        return (self.p, self.q, self.r)


@dataclass(frozen=True)
class TwistSpec:
    """Twist count of an n-twist knot (n twists plus a clasp)."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("twist count must be at least 1")


def pretzel(spec: PretzelSpec) -> Diagram:
    """The standard P(p, q, r) diagram; raises NotAKnot on extra components."""
    twists = spec.twists
    crossings_of = []  # per tangle, list of crossing indices top to bottom
    n_x = 0
    for t in twists:
        ids = list(range(n_x, n_x + abs(t)))
        crossings_of.append(ids)
        n_x += abs(t)

    # Wire the 4-valent map: (crossing, port) terminals joined by wires,
    # with tangle corners as pass-through junctions for empty tangles.
    links: list[tuple] = []
    corners = []
    for i, ids in enumerate(crossings_of):
        top_l, top_r = ("c", i, "tl"), ("c", i, "tr")
        bot_l, bot_r = ("c", i, "bl"), ("c", i, "br")
        corners.append((top_l, top_r, bot_l, bot_r))
        if not ids:
            links.append((top_l, bot_l))
            links.append((top_r, bot_r))
            continue
        links.append((top_l, (ids[0], _NW)))
        links.append((top_r, (ids[0], _NE)))
        for a, b in zip(ids, ids[1:]):
            links.append(((a, _SW), (b, _NW)))
            links.append(((a, _SE), (b, _NE)))
        links.append(((ids[-1], _SW), bot_l))
        links.append(((ids[-1], _SE), bot_r))
    for i in range(2):
        links.append((corners[i][1], corners[i + 1][0]))      # NE_i - NW_{i+1}
        links.append((corners[i][3], corners[i + 1][2]))      # SE_i - SW_{i+1}
    links.append((corners[0][0], corners[2][1]))              # big arc over the top
    links.append((corners[0][2], corners[2][3]))              # big arc under the bottom

    # Contract junctions: arcs run terminal-to-terminal through corners.
    attach: dict[tuple, list[tuple]] = {}
    for a, b in links:
        attach.setdefault(a, []).append(b)
        attach.setdefault(b, []).append(a)

    def is_terminal(node) -> bool:
        return not (isinstance(node[0], str) and node[0] == "c")

    for node, hits in attach.items():
        expected = 1 if is_terminal(node) else 2
        if len(hits) != expected:
            raise AssertionError(f"bad wiring degree at {node}")

    arc_of: dict[tuple[int, int], int] = {}
    n_arcs = 0
    for start in [n for n in attach if is_terminal(n)]:
        if start in arc_of:
            continue
        prev, cur = start, attach[start][0]
        while not is_terminal(cur):
            hits = attach[cur]
            prev, cur = cur, (hits[1] if hits[0] == prev else hits[0])
        arc_of[start] = n_arcs
        arc_of[cur] = n_arcs
        n_arcs += 1
    if n_arcs != 2 * n_x:
        raise NotAKnot("wiring produced a crossing-free component")

    # over/under: positive half twists put the NW-SE strand on top
    over_patterns = []
    for t, ids in zip(twists, crossings_of):
        top = t > 0
        for _ in ids:
            over_patterns.append((top, not top, top, not top))

    crossings = []
    for x in range(n_x):
        arcs = tuple(arc_of[(x, port)] for port in range(4))
        crossings.append([arcs, [False] * 4, over_patterns[x]])

    # orient: follow the single strand, marking incoming ports
    terminal_pairs: dict[int, tuple[tuple[int, int], tuple[int, int]]] = {}
    ends: dict[int, list[tuple[int, int]]] = {}
    for term, arc in arc_of.items():
        ends.setdefault(arc, []).append(term)
    start_term = (0, _NW)
    arc = arc_of[start_term]
    entered: set[tuple[int, int]] = set()
    cur_term = start_term
    for _ in range(2 * n_x):
        x, port = cur_term
        if cur_term in entered:
            raise NotAKnot("construction yields more than one component")
        entered.add(cur_term)
        crossings[x][1][port] = True
        exit_term = (x, _OPPOSITE[port])
        arc = arc_of[exit_term]
        e0, e1 = ends[arc]
        cur_term = e1 if e0 == exit_term else e0
    if cur_term != start_term or len(entered) != 2 * n_x:
        raise NotAKnot("construction yields more than one component")

    diagram = Diagram(
        tuple(Crossing(a, tuple(inc), tuple(ov)) for a, inc, ov in crossings),
        n_arcs)
    validate(diagram)
    return diagram


def twist(spec: TwistSpec) -> Diagram:
    """The n-twist knot: n twist crossings plus a two-crossing clasp."""
    return pretzel(PretzelSpec(1, 1, spec.n))


@dataclass(frozen=True)
class FamilyRow:
    parameter: int
    crossings: int
    determinant: int
    formula: int

    @property
    def match(self) -> bool:
        return self.determinant == self.formula


@dataclass(frozen=True)
class FamilyReport:
    kind: str
    rows: tuple[FamilyRow, ...]

    @property
    def all_match(self) -> bool:
        return all(r.match for r in self.rows)

    def to_json(self) -> str:
        return json.dumps({
            "kind": self.kind,
            "all_match": self.all_match,
            "rows": [{"parameter": r.parameter, "crossings": r.crossings,
                      "determinant": r.determinant, "formula": r.formula,
                      "match": r.match} for r in self.rows],
        }, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["parameter", "crossings", "determinant", "formula", "match"])
        for r in self.rows:
            writer.writerow([r.parameter, r.crossings, r.determinant,
                             r.formula, int(r.match)])
        return buf.getvalue()


def family_report(kind: str, parameters) -> FamilyReport:
    """Computed vs closed-form determinants over a parameter range.

    kind "twist" checks 2n + 1; kind "pretzel33" checks P(3, 3, n)
    against 6n + 9.
    """
    rows = []
    for n in parameters:
        if kind == "twist":
            d = twist(TwistSpec(n))
            formula = 2 * n + 1
        elif kind == "pretzel33":
            d = pretzel(PretzelSpec(3, 3, n))
            formula = 6 * n + 9
        else:
            raise ValueError(f"unknown family kind {kind!r}")
        rows.append(FamilyRow(n, d.n_crossings, determinant(d), formula))
    return FamilyReport(kind, tuple(rows))
