"""Knot determinant by three independent exact routes.

Goeritz matrix on white checkerboard regions, the Wirtinger/Fox
Jacobian evaluated at t = -1, and the Kauffman bracket state sum
evaluated in the 8th cyclotomic ring.  All arithmetic is exact over
unbounded integers; no floating point anywhere in this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .diagram import Diagram, checkerboard, faces
from .errors import BudgetExceeded, Disagreement, NonSquareNorm

#: Hard cap on the 2^c state sum (worst case ~16M states).
BRACKET_BUDGET = 24

#: Default participation cap for the Jones route inside `determinant`;
#: keeps the three-way consensus fast on batch runs.
DEFAULT_JONES_BUDGET = 14


class LaurentPoly:
    """Exact integer Laurent polynomial in one variable."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[int, int] | None = None):
        self.coeffs = {e: c for e, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(out)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "LaurentPoly(0)"
        terms = [f"{c}*A^{e}" for e, c in sorted(self.coeffs.items())]
        return "LaurentPoly(" + " + ".join(terms) + ")"

    def eval_zeta8(self) -> "CycInt":
        """Evaluate at the primitive 8th root of unity."""
        z = CycInt.zero()
        for e, c in self.coeffs.items():
            z = z + CycInt.zeta_power(e).scale(c)
        return z


@dataclass(frozen=True)
class CycInt:
    """Element a0 + a1*z + a2*z^2 + a3*z^3 of Z[z], z^8 = 1, z^4 = -1."""

    a: tuple[int, int, int, int]

    @classmethod
    def zero(cls) -> "CycInt":
        return cls((0, 0, 0, 0))

    @classmethod
    def one(cls) -> "CycInt":
        return cls((1, 0, 0, 0))

    @classmethod
    def zeta_power(cls, e: int) -> "CycInt":
        e %= 8
        sign = -1 if e >= 4 else 1
        comps = [0, 0, 0, 0]
        comps[e % 4] = sign
        return cls(tuple(comps))

    def scale(self, k: int) -> "CycInt":
        return CycInt(tuple(k * x for x in self.a))

    def __add__(self, other: "CycInt") -> "CycInt":
        return CycInt(tuple(x + y for x, y in zip(self.a, other.a)))

    def __neg__(self) -> "CycInt":
        return self.scale(-1)

    def __mul__(self, other: "CycInt") -> "CycInt":
        out = [0, 0, 0, 0]
        for i, x in enumerate(self.a):
            if x == 0:
                continue
            for j, y in enumerate(other.a):
                k = i + j
                if k < 4:
                    out[k] += x * y
                else:
                    out[k - 4] -= x * y  # z^4 = -1
        return CycInt(tuple(out))

    def conj(self) -> "CycInt":
        a0, a1, a2, a3 = self.a
        return CycInt((a0, -a3, -a2, -a1))

    def norm_sq(self) -> int:
        """Squared modulus; defined only when z*conj(z) is rational."""
        prod = self * self.conj()
        if any(prod.a[1:]):
            raise NonSquareNorm(f"modulus of {self.a} is not a rational integer")
        return prod.a[0]


def bareiss_det(rows: list[list[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(rows)
    if n == 0:
        return 1
    m = [list(map(int, r)) for r in rows]
    if any(len(r) != n for r in m):
        raise ValueError("matrix must be square")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if pivot is None:
                return 0
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _smoothing_pairs(diagram: Diagram):
    """Per crossing, the arc pairs joined by the A- and B-smoothing.

    The A-smoothing joins the regions swept when the over-strand is
    rotated one step in the rotation direction onto the under-strand.
    """
    out = []
    for x in diagram.crossings:
        q = next(p for p in range(4) if x.over[p] and x.incoming[p])
        a = x.arcs
        pairs_a = ((a[q], a[(q + 1) % 4]), (a[(q + 2) % 4], a[(q + 3) % 4]))
        pairs_b = ((a[(q + 1) % 4], a[(q + 2) % 4]), (a[(q + 3) % 4], a[q]))
        out.append((pairs_a, pairs_b))
    return out


def kauffman_bracket(diagram: Diagram, budget: int = BRACKET_BUDGET) -> LaurentPoly:
    """Exact bracket polynomial via the 2^c smoothing state sum."""
    c = diagram.n_crossings
    if c > min(budget, BRACKET_BUDGET):
        raise BudgetExceeded(f"{c} crossings exceeds state-sum budget")
    if c == 0:
        return LaurentPoly({0: 1})
    pairs = _smoothing_pairs(diagram)
    n = diagram.n_arcs
    counts: dict[tuple[int, int], int] = {}
    parent = list(range(n))
    for state in range(1 << c):
        for i in range(n):
            parent[i] = i
        for k in range(c):
            chosen = pairs[k][(state >> k) & 1]
            for u, v in chosen:
                while parent[u] != u:
                    parent[u] = parent[parent[u]]
                    u = parent[u]
                while parent[v] != v:
                    parent[v] = parent[parent[v]]
                    v = parent[v]
                if u != v:
                    parent[v] = u
        loops = 0
        for i in range(n):
            if parent[i] == i:
                loops += 1
        exp = c - 2 * state.bit_count()  # a - b
        key = (exp, loops)
        counts[key] = counts.get(key, 0) + 1
    d_poly = LaurentPoly({2: -1, -2: -1})
    d_powers = [LaurentPoly({0: 1})]
    max_loops = max(l for _, l in counts)
    for _ in range(max_loops - 1):
        d_powers.append(d_powers[-1] * d_poly)
    total = LaurentPoly()
    for (exp, loops), mult in counts.items():
        total = total + LaurentPoly.monomial(exp, mult) * d_powers[loops - 1]
    return total


def jones_det(diagram: Diagram, budget: int = BRACKET_BUDGET) -> int:
    """|Jones at t = -1| via the bracket evaluated at the 8th root of unity.

    The writhe prefactor is a unit, so it drops out of the modulus.
    """
    z = kauffman_bracket(diagram, budget).eval_zeta8()
    norm = z.norm_sq()
    root = math.isqrt(norm)
    if root * root != norm:
        raise NonSquareNorm(f"squared modulus {norm} is not a perfect square")
    return root


def goeritz_det(diagram: Diagram) -> int:
    """|det| of the reduced Goeritz matrix on white regions."""
    if diagram.n_crossings == 0:
        return 1
    coloring = checkerboard(diagram)
    face_of: dict[tuple[int, int], int] = {}
    for fi, orbit in enumerate(coloring.faces):
        for dart in orbit:
            face_of[dart] = fi
    white_index = {fi: i for i, fi in enumerate(coloring.white_faces)}
    w = len(white_index)
    if w <= 1:
        return 1
    g = [[0] * w for _ in range(w)]
    for ci, x in enumerate(diagram.crossings):
        whites = [p for p in range(4)
                  if coloring.colors[face_of[(ci, p)]] == coloring.white]
        if len(whites) != 2 or (whites[1] - whites[0]) % 4 != 2:
            raise AssertionError("white quadrants must be opposite")
        q_over = next(p for p in range(4) if x.over[p] and x.incoming[p])
        eta = 1 if whites[0] % 2 == q_over % 2 else -1
        i = white_index[face_of[(ci, whites[0])]]
        j = white_index[face_of[(ci, whites[1])]]
        if i != j:
            g[i][j] -= eta
            g[j][i] -= eta
    for i in range(w):
        g[i][i] = -sum(g[i][j] for j in range(w) if j != i)
    reduced = [row[: w - 1] for row in g[: w - 1]]
    return abs(bareiss_det(reduced))


def _over_arc_classes(diagram: Diagram) -> dict[int, int]:
    """Map each arc to its Wirtinger over-arc class index."""
    parent = list(range(diagram.n_arcs))

    def find(u: int) -> int:
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    for x in diagram.crossings:
        q = next(p for p in range(4) if x.over[p] and x.incoming[p])
        ru, rv = find(x.arcs[q]), find(x.arcs[(q + 2) % 4])
        if ru != rv:
            parent[rv] = ru
    roots = sorted({find(a) for a in range(diagram.n_arcs)})
    index = {r: i for i, r in enumerate(roots)}
    return {a: index[find(a)] for a in range(diagram.n_arcs)}


def alexander_det(diagram: Diagram) -> int:
    """|Alexander polynomial at t = -1| from the Fox Jacobian.

    Convention: over-arc contributes 1 - t, incoming under-arc t,
    outgoing under-arc -1, with t = -1 substituted up front.
    """
    c = diagram.n_crossings
    if c == 0:
        return 1
    cls = _over_arc_classes(diagram)
    rows = []
    for x in diagram.crossings:
        q_over = next(p for p in range(4) if x.over[p] and x.incoming[p])
        q_under = next(p for p in range(4) if not x.over[p] and x.incoming[p])
        row = [0] * c
        row[cls[x.arcs[q_over]]] += 2          # 1 - t at t = -1
        row[cls[x.arcs[q_under]]] += -1        # t at t = -1
        row[cls[x.arcs[(q_under + 2) % 4]]] += -1
        rows.append(row)
    minor = [row[: c - 1] for row in rows[: c - 1]]
    return abs(bareiss_det(minor))


def determinant(diagram: Diagram, jones_budget: int = DEFAULT_JONES_BUDGET) -> int:
    """Consensus knot determinant.

    Goeritz and Alexander routes always run; the Jones route joins when
    the crossing count is within `jones_budget`.  Raises Disagreement
    with all computed values when any two routes differ.
    """
    values = {
        "goeritz": goeritz_det(diagram),
        "alexander": alexander_det(diagram),
    }
    if diagram.n_crossings <= min(jones_budget, BRACKET_BUDGET):
        values["jones"] = jones_det(diagram)
    if len(set(values.values())) != 1:
        raise Disagreement(values)
    return values["goeritz"]
