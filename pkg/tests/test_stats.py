import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from knotstats import stats
from knotstats.errors import (DegenerateX, EmptyInput, NonpositiveVolume,
                              TooFewPoints)


class TestLinfit:
    def test_hand_oracle(self):
        fit = stats.linfit([0.0, 1.0, 2.0], [0.0, 1.0, 0.0])
        assert abs(fit.slope - 0.0) < 1e-12
        assert abs(fit.intercept - 1.0 / 3.0) < 1e-12
        assert abs(fit.r_squared - 0.0) < 1e-12

    def test_collinear_exact(self):
        xs = [float(i) for i in range(10)]
        ys = [2.5 * x - 1.25 for x in xs]
        fit = stats.linfit(xs, ys)
        assert abs(fit.slope - 2.5) < 1e-12
        assert abs(fit.intercept + 1.25) < 1e-12
        assert abs(fit.r_squared - 1.0) < 1e-12
        assert fit.slope_err < 1e-12 and fit.intercept_err < 1e-12

    def test_order_independent(self):
        rng = random.Random(3)
        xs = [rng.uniform(0, 50) for _ in range(500)]
        ys = [0.2 * x + rng.gauss(0, 1) for x in xs]
        fit1 = stats.linfit(xs, ys)
        order = list(range(500))
        rng.shuffle(order)
        fit2 = stats.linfit([xs[i] for i in order], [ys[i] for i in order])
        assert fit1.slope == pytest.approx(fit2.slope, abs=1e-12)
        assert fit1.intercept == pytest.approx(fit2.intercept, abs=1e-12)

    def test_errors(self):
        with pytest.raises(TooFewPoints):
            stats.linfit([1.0, 2.0], [1.0, 2.0])
        with pytest.raises(DegenerateX):
            stats.linfit([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])
        with pytest.raises(ValueError):
            stats.linfit([1.0, 2.0, 3.0], [1.0, 2.0])


class TestAMin:
    def test_tightness(self):
        points = [(1.0, 0.5), (2.0, 1.8), (4.0, 3.0)]
        a = stats.a_min(points)
        assert all(y <= a * x + 1e-15 for x, y in points)
        assert any(abs(y - a * x) < 1e-15 for x, y in points)

    def test_errors(self):
        with pytest.raises(EmptyInput):
            stats.a_min([])
        with pytest.raises(NonpositiveVolume):
            stats.a_min([(0.0, 1.0)])

    @settings(max_examples=80)
    @given(st.lists(st.tuples(st.floats(0.1, 100), st.floats(-10, 100)),
                    min_size=1, max_size=40))
    def test_is_least_upper_slope(self, points):
        a = stats.a_min(points)
        assert all(y <= a * x + 1e-9 * max(1.0, abs(a * x)) for x, y in points)
        shrunk = a - max(abs(a), 1.0) * 1e-6
        assert any(y > shrunk * x for x, y in points)


class TestDensity:
    def test_fixture_curve(self):
        records = [(2.0, 10), (3.0, 99), (4.0, 10), (5.0, 99)]
        curve = stats.density_f(records, cutoff=50)
        assert curve.breakpoints == (3.0, 4.0, 5.0, math.inf)
        assert curve.values == (1.0, 0.5, 2.0 / 3.0, 0.5)

    def test_range_and_monotone_denominator(self):
        rng = random.Random(9)
        records = [(rng.uniform(1, 30), rng.randint(1, 200)) for _ in range(300)]
        curve = stats.density_f(records, cutoff=50)
        assert all(0.0 <= v <= 1.0 for v in curve.values)
        assert curve.breakpoints[-1] == math.inf
        total = sum(r < 50 for _, r in records) / len(records)
        assert curve.values[-1] == pytest.approx(total)

    def test_errors(self):
        with pytest.raises(EmptyInput):
            stats.density_f([], 50)
        with pytest.raises(NonpositiveVolume):
            stats.density_f([(-1.0, 3)], 50)


class TestSigmoid:
    PARAMS = (-1.0, 14.0, 0.7, 1.0)

    def _samples(self, noise=0.0, seed=0):
        rng = random.Random(seed)
        xs = np.linspace(0.0, 1.4, 40)
        ys = np.array([stats.sigmoid_eval(self.PARAMS, x)
                       + (rng.gauss(0, noise) if noise else 0.0) for x in xs])
        return xs, ys

    def test_eval_midpoint(self):
        assert stats.sigmoid_eval(self.PARAMS, 0.7) == pytest.approx(0.5)
        assert stats.sigmoid_eval((1, 1, 0, 0), 1e6) == pytest.approx(1.0)
        assert stats.sigmoid_eval((1, 1, 0, 0), -1e6) == pytest.approx(0.0)

    def test_noiseless_recovery(self):
        fit = stats.sigmoid_fit(self._samples())
        for got, true in zip(fit.params, self.PARAMS):
            assert abs(got - true) < 1e-6

    def test_noisy_recovery_within_3_sigma(self):
        hits = 0
        for seed in range(20):
            fit = stats.sigmoid_fit(self._samples(noise=0.01, seed=seed))
            if all(abs(g - t) <= 3 * e for g, t, e in
                   zip(fit.params, self.PARAMS, fit.errors)):
                hits += 1
        assert hits == 20

    def test_accepts_density_curve(self):
        xs, ys = self._samples()
        curve = stats.DensityCurve(tuple(xs) + (math.inf,),
                                   tuple(ys) + (ys[-1],), 50)
        fit = stats.sigmoid_fit(curve)
        assert abs(fit.x0 - 0.7) < 1e-6

    def test_errors(self):
        with pytest.raises(TooFewPoints):
            stats.sigmoid_fit(([1.0, 2.0], [0.0, 1.0]))
        with pytest.raises(DegenerateX):
            stats.sigmoid_fit(([1.0] * 6, [0.0, 1, 0, 1, 0, 1]))

    def test_flat_curve_refused(self):
        from knotstats.errors import DegenerateRange
        with pytest.raises(DegenerateRange):
            stats.sigmoid_fit(([1.0, 2, 3, 4, 5, 6], [0.0] * 6))
