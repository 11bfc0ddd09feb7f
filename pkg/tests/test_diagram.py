import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotstats import diagram as dg
from knotstats.errors import (DuplicateMagnitude, NonRealizable, OddValue,
                              WrongRange)


class TestParseDT:
    def test_basic(self):
        code = dg.parse_dt("4 6 2")
        assert code.values == (4, 6, 2)
        assert code.crossings == 3

    def test_commas_and_brackets(self):
        assert dg.parse_dt("[4, -6, 2]").values == (4, -6, 2)

    def test_odd_value(self):
        with pytest.raises(OddValue):
            dg.parse_dt("3 6 2")

    def test_duplicate_magnitude(self):
        with pytest.raises(DuplicateMagnitude):
            dg.parse_dt("4 -4 2")

    def test_wrong_range(self):
        with pytest.raises(WrongRange):
            dg.parse_dt("4 8 2")

    def test_not_integers(self):
        with pytest.raises(WrongRange):
            dg.parse_dt("4 x 2")

    def test_empty_is_unknot(self):
        assert dg.parse_dt("").crossings == 0


class TestGauss:
    def test_dt_to_gauss_round(self):
        gauss = dg.dt_to_gauss(dg.DTCode((4, 6, 2)))
        labels = [l for l, _ in gauss.entries]
        assert sorted(labels) == [1, 1, 2, 2, 3, 3]
        for label in (1, 2, 3):
            overs = [o for l, o in gauss.entries if l == label]
            assert overs[0] != overs[1]

    def test_sign_controls_over(self):
        gauss_pos = dg.dt_to_gauss(dg.DTCode((2,)))
        gauss_neg = dg.dt_to_gauss(dg.DTCode((-2,)))
        assert gauss_pos.entries != gauss_neg.entries

    def test_bad_gauss_rejected(self):
        with pytest.raises(ValueError):
            dg.GaussCode(((1, True), (1, True)))


def _all_dt_codes(c, signs=True):
    mags = list(range(2, 2 * c + 1, 2))
    for perm in itertools.permutations(mags):
        if signs:
            for bits in itertools.product((1, -1), repeat=c):
                yield tuple(m * s for m, s in zip(perm, bits))
        else:
            yield perm


class TestRealize:
    def test_trefoil(self):
        d = dg.realize(dg.dt_to_gauss(dg.DTCode((4, 6, 2))))
        assert d.n_crossings == 3
        assert len(dg.faces(d)) == 5

    def test_unknot(self):
        d = dg.realize(dg.GaussCode(()))
        assert d.n_crossings == 0

    def test_smallest_nonrealizable(self):
        # Frozen oracle fact: this is the lexicographically smallest
        # positive DT sequence with no planar embedding.
        with pytest.raises(NonRealizable):
            dg.realize(dg.dt_to_gauss(dg.DTCode((4, 6, 8, 10, 2))))

    @pytest.mark.parametrize("c", [3, 4, 5])
    def test_matches_exhaustive_oracle(self, c):
        # Planarity-gadget realization agrees with the brute-force
        # rotation search on every unsigned code.
        for perm in _all_dt_codes(c, signs=False):
            gauss = dg.dt_to_gauss(dg.DTCode(perm))
            try:
                dg._realize_by_rotation_search(gauss)
                oracle_ok = True
            except NonRealizable:
                oracle_ok = False
            try:
                d = dg.realize(gauss)
                ours_ok = True
            except NonRealizable:
                ours_ok = False
            assert ours_ok == oracle_ok, perm
            if ours_ok:
                assert len(dg.faces(d)) == c + 2

    def test_round_trip_random_signed(self):
        rng = random.Random(11)
        tried = 0
        while tried < 200:
            c = rng.randint(3, 7)
            mags = list(range(2, 2 * c + 1, 2))
            rng.shuffle(mags)
            code = tuple(m * rng.choice((1, -1)) for m in mags)
            dt = dg.DTCode(code)
            try:
                d = dg.realize(dg.dt_to_gauss(dt))
            except NonRealizable:
                continue
            tried += 1
            assert dg.extract_dt(d) == dg.canonical_dt(dt)


class TestDerived:
    def test_writhe_kinks(self):
        assert dg.writhe(dg.realize(dg.dt_to_gauss(dg.DTCode((2,))))) == -1
        assert dg.writhe(dg.realize(dg.dt_to_gauss(dg.DTCode((-2,))))) == 1

    def test_mirror_involution(self):
        d = dg.realize(dg.dt_to_gauss(dg.DTCode((4, 6, 2))))
        assert dg.mirror(dg.mirror(d)) == d
        assert dg.writhe(dg.mirror(d)) == -dg.writhe(d)

    def test_checkerboard_proper(self):
        d = dg.realize(dg.dt_to_gauss(dg.DTCode((4, 6, 8, 2))))
        col = dg.checkerboard(d)
        face_of = {}
        for fi, orbit in enumerate(col.faces):
            for dart in orbit:
                face_of[dart] = fi
        # each arc separates two faces of different colors
        sides = {}
        for fi, orbit in enumerate(col.faces):
            for ci, p in orbit:
                arc = d.crossings[ci].arcs[(p + 1) % 4]
                sides.setdefault(arc, []).append(fi)
        for f1, f2 in sides.values():
            assert col.colors[f1] != col.colors[f2]
        assert 2 * len(col.white_faces) <= len(col.faces)

    def test_canonical_dt_idempotent(self):
        dt = dg.DTCode((6, -8, 2, 4))
        canon = dg.canonical_dt(dt)
        assert dg.canonical_dt(canon) == canon
        assert canon.values in dg.dt_relabelings(dt)


@st.composite
def random_dt(draw):
    c = draw(st.integers(min_value=1, max_value=6))
    mags = list(range(2, 2 * c + 1, 2))
    perm = draw(st.permutations(mags))
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=c, max_size=c))
    return dg.DTCode(tuple(m * s for m, s in zip(perm, signs)))


@settings(max_examples=60, deadline=None)
@given(random_dt())
def test_relabeling_closure(dt):
    """Every relabeling of a code has the same canonical form."""
    canon = dg.canonical_dt(dt)
    for values in dg.dt_relabelings(dt):
        assert dg.canonical_dt(dg.DTCode(values)) == canon


@settings(max_examples=60, deadline=None)
@given(random_dt())
def test_realize_or_reject(dt):
    """realize either yields a valid diagram or raises NonRealizable."""
    try:
        d = dg.realize(dg.dt_to_gauss(dt))
    except NonRealizable:
        return
    dg.validate(d)
    assert dg.extract_dt(d) == dg.canonical_dt(dt)
