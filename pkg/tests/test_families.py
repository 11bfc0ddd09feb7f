import pytest

from knotstats import diagram as dg
from knotstats import families as fam
from knotstats.errors import NotAKnot
from knotstats.invariants import determinant


class TestSpecs:
    def test_twist_positive(self):
        with pytest.raises(ValueError):
            fam.TwistSpec(0)

    def test_pretzel_needs_a_crossing(self):
        with pytest.raises(ValueError):
            fam.PretzelSpec(0, 0, 0)


class TestTwist:
    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_structure_and_determinant(self, n):
        d = fam.twist(fam.TwistSpec(n))
        dg.validate(d)
        assert d.n_crossings == n + 2
        assert determinant(d) == 2 * n + 1

    def test_n1_is_trefoil(self):
        d = fam.twist(fam.TwistSpec(1))
        assert dg.extract_dt(d) == dg.canonical_dt(dg.DTCode((4, 6, 2)))


class TestPretzel:
    @pytest.mark.parametrize("p,q,r", [(3, 3, 2), (3, 3, 4), (1, 1, 5),
                                       (-3, 3, 2), (3, -5, 2)])
    def test_determinant_formula(self, p, q, r):
        d = fam.pretzel(fam.PretzelSpec(p, q, r))
        dg.validate(d)
        assert determinant(d) == abs(p * q + q * r + r * p)

    def test_link_rejected(self):
        # all-even pretzels have three components
        with pytest.raises(NotAKnot):
            fam.pretzel(fam.PretzelSpec(2, 2, 2))

    def test_empty_tangle(self):
        # P(1, 0, 3) has a crossing-free middle tangle yet is a knot
        d = fam.pretzel(fam.PretzelSpec(1, 0, 3))
        dg.validate(d)
        assert determinant(d) == abs(1 * 0 + 0 * 3 + 3 * 1)

    def test_mirror_symmetry(self):
        a = determinant(fam.pretzel(fam.PretzelSpec(3, 3, 2)))
        b = determinant(fam.pretzel(fam.PretzelSpec(-3, -3, -2)))
        assert a == b


class TestReport:
    def test_twist_report(self):
        report = fam.family_report("twist", range(1, 6))
        assert report.all_match
        assert [r.determinant for r in report.rows] == [3, 5, 7, 9, 11]
        assert "all_match" in report.to_json()
        assert report.to_csv().splitlines()[0].startswith("parameter,")

    def test_pretzel_report(self):
        report = fam.family_report("pretzel33", [2, 4])
        assert report.all_match
        assert [r.determinant for r in report.rows] == [21, 33]

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            fam.family_report("granny", [1])
