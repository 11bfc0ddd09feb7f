"""Least-squares fits, extremal slopes, density curves, sigmoid fits.

Ordinary least squares uses the closed-form estimates with standard
errors from the residual variance; the sigmoid model
g(x) = L / (1 + exp(-k*(x - x0))) + b is fitted by damped least squares
(Levenberg-Marquardt) with an analytic Jacobian.  Large sums use
compensated summation so results do not depend on input order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (DegenerateRange, DegenerateX, EmptyInput, NoConvergence,
                     NonpositiveVolume, SingularJacobian, TooFewPoints)

_LM_DAMPING0 = 1e-3
_LM_FACTOR = 10.0
_LM_RTOL = 1e-10
_LM_MAX_ITER = 1000


@dataclass(frozen=True)
class LinearFit:
    slope: float
    slope_err: float
    intercept: float
    intercept_err: float
    pearson_r: float
    r_squared: float
    n: int


@dataclass(frozen=True)
class SigmoidFit:
    L: float
    k: float
    x0: float
    b: float
    L_err: float
    k_err: float
    x0_err: float
    b_err: float
    sse: float
    iterations: int
    converged: bool

    @property
    def params(self) -> tuple[float, float, float, float]:
        return (self.L, self.k, self.x0, self.b)

    @property
    def errors(self) -> tuple[float, float, float, float]:
        return (self.L_err, self.k_err, self.x0_err, self.b_err)


@dataclass(frozen=True)
class DensityCurve:
    """Right-continuous step function of cumulative small-rank fraction.

    Breakpoints are the distinct volumes with at least one record
    strictly below, plus +inf for the whole-population fraction.
    """

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]
    cutoff: int

    def finite_points(self) -> tuple[np.ndarray, np.ndarray]:
        xs = np.asarray(self.breakpoints)
        ys = np.asarray(self.values)
        mask = np.isfinite(xs)
        return xs[mask], ys[mask]


def linfit(xs: Sequence[float], ys: Sequence[float]) -> LinearFit:
    """Closed-form OLS of ys on xs with standard errors.

    slope_err = s / sqrt(Sxx), intercept_err = s * sqrt(1/n + mean(x)^2/Sxx)
    with s^2 = SSE / (n - 2).
    """
    n = len(xs)
    if n != len(ys):
        raise ValueError("xs and ys must have equal length")
    if n < 3:
        raise TooFewPoints(f"need at least 3 points, got {n}")
    mean_x = math.fsum(xs) / n
    mean_y = math.fsum(ys) / n
    sxx = math.fsum((x - mean_x) ** 2 for x in xs)
    if sxx == 0.0:
        raise DegenerateX("all x values are equal")
    sxy = math.fsum((x - mean_x) * (y - mean_y) for x, y in zip(xs, ys))
    syy = math.fsum((y - mean_y) ** 2 for y in ys)
    slope = sxy / sxx
    intercept = mean_y - slope * mean_x
    sse = math.fsum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys))
    s2 = sse / (n - 2)
    slope_err = math.sqrt(s2 / sxx)
    intercept_err = math.sqrt(s2 * (1.0 / n + mean_x * mean_x / sxx))
    if syy > 0.0:
        pearson = sxy / math.sqrt(sxx * syy)
        r2 = pearson * pearson
    else:
        pearson = 0.0
        r2 = 0.0
    return LinearFit(slope, slope_err, intercept, intercept_err, pearson, r2, n)


def a_min(points: Sequence[tuple[float, float]]) -> float:
    """Smallest slope a with y <= a*x over all (x, y); equality attained."""
    if not points:
        raise EmptyInput("no points")
    for x, _ in points:
        if x <= 0:
            raise NonpositiveVolume(f"volume {x} is not positive")
    return max(y / x for x, y in points)


def density_f(records, cutoff: int) -> DensityCurve:
    """Fraction of small-rank knots among those below each volume.

    `records` holds (volume, rank) pairs or objects with .volume and
    .kfh_rank attributes; all volumes must be positive.
    """
    pairs = []
    for rec in records:
        if isinstance(rec, tuple):
            vol, rank = rec
        else:
            vol, rank = rec.volume, rec.kfh_rank
        pairs.append((float(vol), rank))
    if not pairs:
        raise EmptyInput("no records")
    for vol, _ in pairs:
        if not (vol > 0):
            raise NonpositiveVolume(f"volume {vol} is not positive")
    pairs.sort()
    breakpoints: list[float] = []
    values: list[float] = []
    below = 0
    small = 0
    i = 0
    n = len(pairs)
    while i < n:
        x = pairs[i][0]
        if below > 0:
            breakpoints.append(x)
            values.append(small / below)
        while i < n and pairs[i][0] == x:
            below += 1
            small += pairs[i][1] < cutoff
            i += 1
    breakpoints.append(math.inf)
    values.append(small / below)
    return DensityCurve(tuple(breakpoints), tuple(values), cutoff)


def sigmoid_eval(params: Sequence[float], x: float) -> float:
    """g(x) = L / (1 + exp(-k*(x - x0))) + b, saturating on overflow."""
    L, k, x0, b = params
    z = -k * (x - x0)
    if z > 700.0:
        return b
    if z < -700.0:
        return L + b
    return L / (1.0 + math.exp(z)) + b


def _sigmoid_model(params: np.ndarray, xs: np.ndarray):
    L, k, x0, b = params
    z = np.clip(-k * (xs - x0), -700.0, 700.0)
    s = 1.0 / (1.0 + np.exp(z))
    g = L * s + b
    ds = s * (1.0 - s)
    jac = np.column_stack([s, L * ds * (xs - x0), -L * ds * k, np.ones_like(xs)])
    return g, jac


def default_sigmoid_init(xs: np.ndarray, ys: np.ndarray) -> tuple[float, float, float, float]:
    """Robust starting point for monotone-decreasing density curves."""
    y_max, y_min = float(np.max(ys)), float(np.min(ys))
    b0 = y_max
    l0 = y_min - y_max
    mid = 0.5 * (y_max + y_min)
    x0 = float(xs[int(np.argmin(np.abs(ys - mid)))])
    x_range = float(np.max(xs) - np.min(xs))
    k0 = 10.0 / x_range if x_range > 0 else 1.0
    return (l0 if l0 != 0.0 else -1.0, k0, x0, b0)


def sigmoid_fit(curve_or_points, init: Sequence[float] | None = None) -> SigmoidFit:
    """Levenberg-Marquardt fit of the 4-parameter sigmoid.

    Accepts a DensityCurve or an (xs, ys) pair.  Parameter errors are
    sqrt of the diagonal of s^2 * (J^T J)^-1 at the optimum with
    s^2 = SSE / (n - 4).
    """
    if isinstance(curve_or_points, DensityCurve):
        xs, ys = curve_or_points.finite_points()
    else:
        xs, ys = curve_or_points
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
    n = len(xs)
    if n < 5:
        raise TooFewPoints(f"need at least 5 points, got {n}")
    if float(np.max(xs)) == float(np.min(xs)):
        raise DegenerateX("x range is degenerate")
    if float(np.max(ys)) == float(np.min(ys)):
        raise DegenerateRange("flat curve: sigmoid parameters are not identifiable")

    params = np.asarray(init if init is not None else default_sigmoid_init(xs, ys),
                        dtype=float)
    g, jac = _sigmoid_model(params, xs)
    residuals = g - ys
    sse = float(residuals @ residuals)
    lam = _LM_DAMPING0
    iterations = 0
    converged = False
    while iterations < _LM_MAX_ITER:
        iterations += 1
        jtj = jac.T @ jac
        grad = jac.T @ residuals
        damped = jtj + lam * np.diag(np.maximum(np.diag(jtj), 1e-12))
        try:
            step = np.linalg.solve(damped, -grad)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobian("damped normal equations are singular") from exc
        trial = params + step
        g_t, jac_t = _sigmoid_model(trial, xs)
        res_t = g_t - ys
        sse_t = float(res_t @ res_t)
        if sse_t <= sse:
            rel_change = abs(sse - sse_t) / max(sse, 1e-300)
            params, g, jac, residuals, sse = trial, g_t, jac_t, res_t, sse_t
            lam = max(lam / _LM_FACTOR, 1e-15)
            if rel_change < _LM_RTOL:
                converged = True
                break
        else:
            lam *= _LM_FACTOR
            if lam > 1e15:
                converged = True  # damping saturated: local minimum
                break
    if not converged:
        raise NoConvergence(f"no convergence in {_LM_MAX_ITER} iterations")

    grad_norm = float(np.linalg.norm(jac.T @ residuals))
    dof = max(n - 4, 1)
    s2 = sse / dof
    jtj = jac.T @ jac
    try:
        cov = s2 * np.linalg.inv(jtj)
        errs = np.sqrt(np.maximum(np.diag(cov), 0.0))
    except np.linalg.LinAlgError as exc:
        raise SingularJacobian("J^T J is singular at the optimum") from exc
    return SigmoidFit(
        L=float(params[0]), k=float(params[1]),
        x0=float(params[2]), b=float(params[3]),
        L_err=float(errs[0]), k_err=float(errs[1]),
        x0_err=float(errs[2]), b_err=float(errs[3]),
        sse=sse, iterations=iterations,
        converged=grad_norm < 1e-6 * max(1.0, math.sqrt(sse)) or sse < 1e-20 or converged,
    )
