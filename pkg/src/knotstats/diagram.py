"""Planar knot diagrams built from Dowker-Thistlethwaite and Gauss codes.

A diagram is a PD-style crossing list: every crossing stores its four
incident arcs in cyclic order (a rotation system), which slots are
incoming, and which strand passes over.  Faces, checkerboard colorings,
writhe and the DT round trip are all derived from that rotation system.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property, lru_cache

import networkx as nx

from .errors import DuplicateMagnitude, NonRealizable, OddValue, WrongRange

# A crossing gadget slot: 0 = first-visit in, 1 = second-visit in,
# 2 = first-visit out, 3 = second-visit out.  The gadget 4-cycle
# 0-1-2-3 is transversal: the two strands occupy opposite slots.
_SLOT_IN_FIRST, _SLOT_IN_SECOND, _SLOT_OUT_FIRST, _SLOT_OUT_SECOND = range(4)

# Exhaustive rotation search is only used as a fallback for codes with
# nugatory crossings; cap the work it may do.
_FALLBACK_ATTEMPT_CAP = 1 << 20


@dataclass(frozen=True)
class DTCode:
    """A validated Dowker-Thistlethwaite code.

    A negative value means the even-numbered strand passes under at
    that crossing; an all-positive code is the alternating convention.
    """

    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        for v in self.values:
            if v % 2 != 0:
                raise OddValue(f"DT value {v} is odd")
        mags = [abs(v) for v in self.values]
        if len(set(mags)) != len(mags):
            raise DuplicateMagnitude(f"repeated magnitude in {self.values}")
        c = len(self.values)
        if set(mags) != set(range(2, 2 * c + 1, 2)):
            raise WrongRange(
                f"magnitudes {sorted(mags)} are not {{2, 4, ..., {2 * c}}}")

    @property
    def crossings(self) -> int:
        return len(self.values)

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.values)


@dataclass(frozen=True)
class GaussCode:
    """Double-occurrence crossing sequence with over/under flags.

    Entries are (label, passes_over) pairs; each label in 1..c appears
    exactly twice, once over and once under.
    """

    entries: tuple[tuple[int, bool], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "entries",
            tuple((int(l), bool(o)) for l, o in self.entries))
        seen: dict[int, list[bool]] = {}
        for label, over in self.entries:
            seen.setdefault(label, []).append(over)
        for label, flags in seen.items():
            if len(flags) != 2 or flags[0] == flags[1]:
                raise ValueError(
                    f"crossing {label} must appear exactly twice, "
                    "once over and once under")
        if seen and sorted(seen) != list(range(1, len(seen) + 1)):
            raise ValueError("crossing labels must be 1..c")

    @property
    def crossings(self) -> int:
        return len(self.entries) // 2


@dataclass(frozen=True)
class Crossing:
    """One crossing: incident arcs in cyclic order plus strand data.

    ``arcs[p]`` is the arc at rotation position p; ``incoming[p]`` says
    whether that arc points into the crossing; ``over[p]`` says whether
    the strand through slot p is the over-strand.  Opposite positions
    belong to the same strand.
    """

    arcs: tuple[int, int, int, int]
    incoming: tuple[bool, bool, bool, bool]
    over: tuple[bool, bool, bool, bool]

    @property
    def sign(self) -> int:
        q_over = next(p for p in range(4) if self.over[p] and not self.incoming[p])
        q_under = next(p for p in range(4) if not self.over[p] and not self.incoming[p])
        return 1 if q_over == (q_under + 1) % 4 else -1


@dataclass(frozen=True)
class Diagram:
    """A single-component planar knot diagram with 2c arcs."""

    crossings: tuple[Crossing, ...]
    n_arcs: int

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @cached_property
    def arc_ends(self) -> dict[int, list[tuple[int, int]]]:
        ends: dict[int, list[tuple[int, int]]] = {}
        for ci, x in enumerate(self.crossings):
            for p, a in enumerate(x.arcs):
                ends.setdefault(a, []).append((ci, p))
        return ends


@dataclass(frozen=True)
class CheckerboardColoring:
    """Faces of a diagram with a proper black/white 2-coloring.

    ``faces[i]`` is a tuple of darts (crossing index, rotation position);
    ``colors[i]`` is 0 or 1 and ``white`` names the white color class.
    """

    faces: tuple[tuple[tuple[int, int], ...], ...]
    colors: tuple[int, ...]
    white: int

    @property
    def white_faces(self) -> tuple[int, ...]:
        return tuple(i for i, col in enumerate(self.colors) if col == self.white)


def parse_dt(text: str) -> DTCode:
    """Parse whitespace- or comma-separated signed even integers."""
    cleaned = re.sub(r"[\[\]\(\)]", " ", text)
    tokens = [t for t in re.split(r"[\s,]+", cleaned) if t]
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise WrongRange(f"not an integer DT code: {text!r}") from exc
    return DTCode(tuple(values))


def dt_to_gauss(code: DTCode) -> GaussCode:
    """Expand a DT code into its length-2c Gauss sequence.

    Crossing k+1 pairs odd visit 2k+1 with even visit |values[k]|; a
    positive value puts the even-numbered strand on top.
    """
    c = code.crossings
    entries: list[tuple[int, bool] | None] = [None] * (2 * c)
    for k, v in enumerate(code.values):
        odd_pos, even_pos = 2 * k, abs(v) - 1  # zero-based
        even_over = v > 0
        entries[odd_pos] = (k + 1, not even_over)
        entries[even_pos] = (k + 1, even_over)
    return GaussCode(tuple(entries))  # type: ignore[arg-type]


def faces(diagram: Diagram) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Faces as orbits of darts (crossing, position) under the rotation."""
    if diagram.n_crossings == 0:
        return ((),)
    ends = diagram.arc_ends

    def step(dart: tuple[int, int]) -> tuple[int, int]:
        ci, p = dart
        p_next = (p + 1) % 4
        arc = diagram.crossings[ci].arcs[p_next]
        e0, e1 = ends[arc]
        return e1 if e0 == (ci, p_next) else e0

    seen: set[tuple[int, int]] = set()
    out: list[tuple[tuple[int, int], ...]] = []
    for start in ((ci, p) for ci in range(diagram.n_crossings) for p in range(4)):
        if start in seen:
            continue
        orbit = []
        d = start
        while d not in seen:
            seen.add(d)
            orbit.append(d)
            d = step(d)
        out.append(tuple(orbit))
    return tuple(out)


def traversal(diagram: Diagram) -> list[tuple[int, int]]:
    """Visits (crossing, incoming position) along the knot from arc 0's head."""
    if diagram.n_crossings == 0:
        return []
    in_end: dict[int, tuple[int, int]] = {}
    for ci, x in enumerate(diagram.crossings):
        for p in range(4):
            if x.incoming[p]:
                in_end[x.arcs[p]] = (ci, p)
    start = min(in_end)
    visits = []
    arc = start
    for _ in range(diagram.n_arcs):
        ci, p = in_end[arc]
        visits.append((ci, p))
        arc = diagram.crossings[ci].arcs[(p + 2) % 4]
    if arc != start:
        raise ValueError("traversal does not close up")
    return visits


def validate(diagram: Diagram) -> None:
    """Assert the structural invariants of a well-formed knot diagram."""
    c = diagram.n_crossings
    if c == 0:
        if diagram.n_arcs != 0 or diagram.crossings:
            raise ValueError("degenerate unknot must have no arcs")
        return
    if diagram.n_arcs != 2 * c:
        raise ValueError(f"expected {2 * c} arcs, got {diagram.n_arcs}")
    for ci, x in enumerate(diagram.crossings):
        for p in range(2):
            if x.incoming[p] == x.incoming[p + 2]:
                raise ValueError(f"crossing {ci}: strand must pass through")
            if x.over[p] != x.over[p + 2]:
                raise ValueError(f"crossing {ci}: over flag must follow strands")
        if x.over[0] == x.over[1]:
            raise ValueError(f"crossing {ci}: exactly one strand is over")
    counts: dict[int, list[int]] = {}
    for ci, x in enumerate(diagram.crossings):
        for p in range(4):
            counts.setdefault(x.arcs[p], [0, 0])[x.incoming[p]] += 1
    if set(counts) != set(range(diagram.n_arcs)):
        raise ValueError("arc labels must be 0..2c-1")
    for a, (n_out, n_in) in counts.items():
        if n_in != 1 or n_out != 1:
            raise ValueError(f"arc {a} must appear once incoming, once outgoing")
    visits = traversal(diagram)
    if len({(ci, p) for ci, p in visits}) != 2 * c:
        raise ValueError("traversal must cover every strand pass once")
    if len(faces(diagram)) != c + 2:
        raise ValueError("Euler formula F = c + 2 violated")


def writhe(diagram: Diagram) -> int:
    return sum(x.sign for x in diagram.crossings)


def mirror(diagram: Diagram) -> Diagram:
    """Flip every crossing's over-strand; planarity is untouched."""
    flipped = tuple(
        Crossing(x.arcs, x.incoming, tuple(not o for o in x.over))
        for x in diagram.crossings)
    return Diagram(flipped, diagram.n_arcs)


def checkerboard(diagram: Diagram) -> CheckerboardColoring:
    """Proper 2-coloring of the faces; white is the smaller color class."""
    face_list = faces(diagram)
    if diagram.n_crossings == 0:
        return CheckerboardColoring(face_list, (0,), 0)
    face_of: dict[tuple[int, int], int] = {}
    for fi, orbit in enumerate(face_list):
        for dart in orbit:
            face_of[dart] = fi
    # Two faces are adjacent when they lie on the two sides of an arc:
    # the dart (ci, p) sweeps the arc at position p+1.
    sides: dict[int, list[int]] = {}
    for fi, orbit in enumerate(face_list):
        for ci, p in orbit:
            arc = diagram.crossings[ci].arcs[(p + 1) % 4]
            sides.setdefault(arc, []).append(fi)
    colors = [-1] * len(face_list)
    colors[0] = 0
    queue = [0]
    adj: dict[int, set[int]] = {i: set() for i in range(len(face_list))}
    for f1, f2 in sides.values():
        adj[f1].add(f2)
        adj[f2].add(f1)
    while queue:
        f = queue.pop()
        for g in adj[f]:
            if colors[g] == -1:
                colors[g] = 1 - colors[f]
                queue.append(g)
            elif colors[g] == colors[f]:
                raise ValueError("faces are not checkerboard colorable")
    n_white0 = colors.count(0)
    white = 0 if 2 * n_white0 <= len(face_list) else 1
    return CheckerboardColoring(face_list, tuple(colors), white)


def _visit_structure(gauss: GaussCode):
    """Per-label visit indices and per-visit slots for realization."""
    first: dict[int, int] = {}
    second: dict[int, int] = {}
    for k, (label, _) in enumerate(gauss.entries):
        (second if label in first else first)[label] = k
    return first, second


def _crossing_from_rotation(gauss, first, second, label, slot_order, n):
    """Build a Crossing for `label` whose rotation lists slots in `slot_order`."""
    k1, k2 = first[label], second[label]
    arc_at_slot = {
        _SLOT_IN_FIRST: (k1 - 1) % n,
        _SLOT_OUT_FIRST: k1,
        _SLOT_IN_SECOND: (k2 - 1) % n,
        _SLOT_OUT_SECOND: k2,
    }
    over_first = gauss.entries[k1][1]
    arcs = tuple(arc_at_slot[s] for s in slot_order)
    incoming = tuple(s in (_SLOT_IN_FIRST, _SLOT_IN_SECOND) for s in slot_order)
    over = tuple(
        over_first if s in (_SLOT_IN_FIRST, _SLOT_OUT_FIRST) else not over_first
        for s in slot_order)
    return Crossing(arcs, incoming, over)


def _realize_by_rotation_search(gauss: GaussCode,
                                fixed: dict[int, tuple[int, ...]] | None = None,
                                ) -> Diagram:
    """Find a planar rotation system by exhausting crossing chiralities.

    Exponential in the number of undecided crossings; used as the
    realizability oracle and as a fallback for nugatory crossings.
    """
    c = gauss.crossings
    n = 2 * c
    first, second = _visit_structure(gauss)
    fixed = fixed or {}
    free = [l for l in range(1, c + 1) if l not in fixed]
    if 2 ** len(free) > _FALLBACK_ATTEMPT_CAP:
        raise NonRealizable(
            f"rotation search over {len(free)} undecided crossings is too large")
    choices = ((0, 1, 2, 3), (0, 3, 2, 1))
    for bits in itertools.product(range(2), repeat=len(free)):
        orders = dict(fixed)
        for label, b in zip(free, bits):
            orders[label] = choices[b]
        crossings = tuple(
            _crossing_from_rotation(gauss, first, second, l, orders[l], n)
            for l in range(1, c + 1))
        diagram = Diagram(crossings, n)
        if len(faces(diagram)) == c + 2:
            return diagram
    raise NonRealizable("no planar rotation system exists")


def _gadget_walk(rot, slot_nodes, start_arc):
    """Pendant (slot, arc) pairs in boundary order around one gadget.

    Walks the gadget boundary in the embedding, bouncing off pendant
    arc edges.  Returns fewer than four pairs when the pendants are
    split between two faces (nugatory crossings).
    """

    def after(v, u):
        r = rot[v]
        return r[(r.index(u) + 1) % len(r)]

    gadget = set(slot_nodes)
    start = (start_arc, slot_nodes[0])
    pend = []
    cur = start
    for _ in range(64):
        u, v = cur
        w = after(v, u)
        if w in gadget:
            cur = (v, w)
        else:
            pend.append((v, w))
            cur = (w, v)
        if cur == start:
            return pend
    raise AssertionError("gadget walk did not close")


@lru_cache(maxsize=4096)
def _planar_rotations(labels: tuple[int, ...]):
    """Rotation orders for each crossing of a double-occurrence sequence.

    Depends only on the unsigned chord diagram, so results are memoized
    across over/under variants of the same pairing.  Returns the decided
    slot orders plus the labels left undecided by the boundary walk.
    """
    n = len(labels)
    c = n // 2
    first: dict[int, int] = {}
    second: dict[int, int] = {}
    for k, label in enumerate(labels):
        (second if label in first else first)[label] = k
    in_slot = {}
    out_slot = {}
    for label in range(1, c + 1):
        in_slot[first[label]] = _SLOT_IN_FIRST
        out_slot[first[label]] = _SLOT_OUT_FIRST
        in_slot[second[label]] = _SLOT_IN_SECOND
        out_slot[second[label]] = _SLOT_OUT_SECOND

    graph = nx.Graph()
    for label in range(1, c + 1):
        ring = [("x", label, s) for s in range(4)]
        for i in range(4):
            graph.add_edge(ring[i], ring[(i + 1) % 4])
    for k, label in enumerate(labels):
        nxt = (k + 1) % n
        graph.add_edge(("a", k), ("x", label, out_slot[k]))
        graph.add_edge(("a", k), ("x", labels[nxt], in_slot[nxt]))

    planar, embedding = nx.check_planarity(graph)
    if not planar:
        raise NonRealizable(f"no planar embedding for Gauss code of {c} crossings")
    rot = {v: list(embedding.neighbors_cw_order(v)) for v in graph.nodes}

    fixed: dict[int, tuple[int, ...]] = {}
    undecided: list[int] = []
    for label in range(1, c + 1):
        slot_nodes = [("x", label, s) for s in range(4)]
        start_arc = next(w for w in rot[slot_nodes[0]] if w[0] == "a")
        pend = _gadget_walk(rot, slot_nodes, start_arc)
        if len(pend) != 4:
            undecided.append(label)
            continue
        fixed[label] = tuple(v[2] for v, _ in pend)
    return fixed, tuple(undecided)


def realize(gauss: GaussCode) -> Diagram:
    """Realize a Gauss code as a planar diagram.

    Each crossing becomes a transversality-forcing 4-cycle gadget; the
    code is realizable exactly when the gadget graph is planar, and the
    embedding's rotations give the crossing order.  Crossings whose
    pendants end up split between faces (nugatory crossings) are
    resolved by a small rotation search.
    """
    c = gauss.crossings
    if c == 0:
        return Diagram((), 0)
    n = 2 * c
    first, second = _visit_structure(gauss)
    fixed, undecided = _planar_rotations(tuple(l for l, _ in gauss.entries))
    diagram = _realize_by_rotation_search(gauss, fixed) if undecided else Diagram(
        tuple(_crossing_from_rotation(gauss, first, second, l, fixed[l], n)
              for l in range(1, c + 1)), n)
    validate(diagram)
    return diagram


def _dt_from_visits(labels, overs):
    """DT values for a visit sequence, or None if parities clash."""
    n = len(labels)
    positions: dict[int, list[int]] = {}
    for i, label in enumerate(labels):
        positions.setdefault(label, []).append(i + 1)
    values = []
    for odd in range(1, n, 2):
        label = labels[odd - 1]
        a, b = positions[label]
        even = b if a == odd else a
        if even % 2 != 0:
            return None
        values.append(even if overs[even - 1] else -even)
    return tuple(values)


def _dt_candidates(labels, overs):
    n = len(labels)
    for rev in (False, True):
        ls = labels[::-1] if rev else labels
        os = overs[::-1] if rev else overs
        for shift in range(n):
            code = _dt_from_visits(ls[shift:] + ls[:shift], os[shift:] + os[:shift])
            if code is not None:
                yield code


def extract_dt(diagram: Diagram) -> DTCode:
    """DT code of a diagram, minimized over start point and orientation."""
    if diagram.n_crossings == 0:
        return DTCode(())
    visits = traversal(diagram)
    labels = [ci for ci, _ in visits]
    overs = [diagram.crossings[ci].over[p] for ci, p in visits]
    return DTCode(min(_dt_candidates(labels, overs)))


def canonical_dt(code: DTCode) -> DTCode:
    """The lexicographically smallest relabeling of a DT code.

    Pure bookkeeping on the visit sequence; equals extract_dt of any
    realization of the code.
    """
    if code.crossings == 0:
        return code
    gauss = dt_to_gauss(code)
    labels = [l for l, _ in gauss.entries]
    overs = [o for _, o in gauss.entries]
    return DTCode(min(_dt_candidates(labels, overs)))


def dt_relabelings(code: DTCode) -> set[tuple[int, ...]]:
    """All DT value tuples reachable by moving the start or reversing."""
    gauss = dt_to_gauss(code)
    labels = [l for l, _ in gauss.entries]
    overs = [o for _, o in gauss.entries]
    return set(_dt_candidates(labels, overs))
