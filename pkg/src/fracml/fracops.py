"""Fractional-integral quadrature and kinetic-equation residual checks.

The Riemann-Liouville integral of order ``nu``

    (I^nu f)(t) = 1/Gamma(nu) * integral_0^t (t - s)**(nu - 1) f(s) ds

is discretized with the product-trapezoidal rule: the data are interpolated
piecewise-linearly and the weakly singular kernel is integrated exactly
against each linear piece, so the singularity at ``s = t`` (for ``nu < 1``)
is never sampled.  With ``u = t_i - s`` and ``m = i - j``, the element
``[t_j, t_{j+1}]`` contributes

    h**nu * [ f_j * c_left(m) + f_{j+1} * c_right(m) ]

where, writing ``P(m, p) = m**p - (m-1)**p``,

    c_left(m)  = P(m, nu+1)/(nu+1) - (m-1) * P(m, nu)/nu
    c_right(m) = m * P(m, nu)/nu   - P(m, nu+1)/(nu+1).

At ``nu = 1`` both coefficients reduce to 1/2 and the rule is the ordinary
trapezoid.  The scheme is exact for piecewise-linear data and second-order
accurate for smooth ones, which is what the grid-refinement residual report
relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .errors import DomainError
from .kinetics import (
    DEFAULT_CONFIG,
    KineticProblem,
    SolutionSeriesConfig,
    forcing_value,
)
from .mittag import SeriesEvaluation


@dataclass(frozen=True, eq=False)
class SampledFunction:
    """Samples of a function on the uniform grid t_i = t0 + i*step, t0 = 0."""

    step: float
    values: np.ndarray
    t0: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.step) and self.step > 0.0):
            raise DomainError("step must be finite and > 0")
        if self.t0 != 0.0:
            raise DomainError("grids must start at t0 = 0")
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 2:
            raise DomainError("values must be a 1-D sequence of length >= 2")
        if not np.all(np.isfinite(v)):
            raise DomainError("values must be finite")
        object.__setattr__(self, "values", v)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.step * np.arange(self.values.size)

    def __len__(self) -> int:
        return self.values.size


@dataclass(frozen=True)
class ResidualReport:
    """Grid-refinement residual norms and an empirical convergence order.

    ``order_estimate`` is the mean of log2(max_res[j] / max_res[j+1]) over
    successive grid halvings; ``complete`` is False when any solver
    evaluation failed to converge (its point is still recorded).
    """

    grid_steps: tuple
    max_residuals: tuple
    l2_residuals: tuple
    order_estimate: float
    complete: bool = field(default=True)


def _pow_diff(m: np.ndarray, p: float) -> np.ndarray:
    """m**p - (m-1)**p for integer-valued m >= 1, without cancellation."""
    out = np.empty_like(m)
    first = m == 1.0
    out[first] = 1.0
    mm = m[~first]
    out[~first] = -(mm**p) * np.expm1(p * np.log1p(-1.0 / mm))
    return out


def rl_integral(f: SampledFunction, nu: float) -> SampledFunction:
    """Riemann-Liouville integral of order ``nu > 0`` of sampled data.

    Returns samples of (I^nu f) on the same grid; the value at t = 0 is 0.
    """
    if not (math.isfinite(nu) and nu > 0.0):
        raise DomainError("nu must be finite and > 0")
    v = f.values
    n = v.size
    m = np.arange(1, n, dtype=float)
    pd0 = _pow_diff(m, nu)
    pd1 = _pow_diff(m, nu + 1.0)
    c_left = pd1 / (nu + 1.0) - (m - 1.0) * pd0 / nu
    c_right = m * pd0 / nu - pd1 / (nu + 1.0)
    cl = np.concatenate(([0.0], c_left))
    cr = np.concatenate(([0.0], c_right))
    # g_i = h**nu/Gamma(nu) * sum over elements; node j is the left end of
    # element j (kernel index i-j) and the right end of element j-1 (index
    # i-j+1).  Both sums are discrete convolutions; the right-end one picks
    # up a spurious j = 0 contribution that is subtracted explicitly.
    left = np.convolve(v, cl)[:n]
    right = np.convolve(v, cr)[1:n + 1].copy()
    right[:-1] -= v[0] * cr[1:]
    g = (f.step**nu / math.gamma(nu)) * (left + right)
    g[0] = 0.0
    return SampledFunction(f.step, g)


def _check_grids(grids: Sequence[int]) -> tuple:
    grids = tuple(int(g) for g in grids)
    if len(grids) < 2:
        raise DomainError("at least two grids are required")
    for g in grids:
        if g < 16:
            raise DomainError("each grid needs at least 16 steps")
    for a, b in zip(grids, grids[1:]):
        if b != 2 * a:
            raise DomainError("each grid must refine the previous by a factor of 2")
    return grids


def residual_report(prob: KineticProblem,
                    solver: Callable[..., SeriesEvaluation],
                    c: float,
                    t_max: float,
                    grids: Sequence[int],
                    cfg: Optional[SolutionSeriesConfig] = None) -> ResidualReport:
    """Defect of a claimed solution against its kinetic equation.

    On each grid the residual R_i = N_i - N0 f(t_i) + c**nu (I^nu N)_i is
    formed from solver samples and the product-trapezoidal integral; for a
    true solution max|R| shrinks at second order as the step halves, while
    a wrong solution leaves a non-vanishing floor.
    """
    if not (math.isfinite(c) and c > 0.0):
        raise DomainError("c must be finite and > 0")
    if not (math.isfinite(t_max) and t_max > 0.0):
        raise DomainError("t_max must be finite and > 0")
    grids = _check_grids(grids)
    cfg = cfg if cfg is not None else DEFAULT_CONFIG
    cpow = c ** prob.nu
    max_res = []
    l2_res = []
    complete = True
    for steps in grids:
        h = t_max / steps
        ts = np.linspace(0.0, t_max, steps + 1)
        nvals = np.empty(steps + 1)
        for i, t in enumerate(ts):
            ev = solver(prob, float(t), cfg)
            if not ev.converged:
                complete = False
            nvals[i] = ev.value
        fvals = np.array([forcing_value(prob, float(t), cfg.inner_tol).value
                          for t in ts])
        integ = rl_integral(SampledFunction(h, nvals), prob.nu).values
        resid = nvals - fvals + cpow * integ
        max_res.append(float(np.max(np.abs(resid))))
        l2_res.append(float(math.sqrt(h * float(np.sum(resid * resid)))))
    ratios = [math.log2(max(a, 1e-300) / max(b, 1e-300))
              for a, b in zip(max_res, max_res[1:])]
    order = sum(ratios) / len(ratios)
    return ResidualReport(grids, tuple(max_res), tuple(l2_res), order, complete)


def laplace_numeric(f: SampledFunction, p: float,
                    t_max: Optional[float] = None) -> float:
    """Trapezoidal Laplace transform integral_0^t_max exp(-p t) f(t) dt.

    A property-testing helper, not a production transform: the caller is
    responsible for choosing ``p * t_max`` large enough (>= 20) that the
    discarded tail is negligible.  ``t_max`` truncates the sample range and
    defaults to all of it.
    """
    if not (math.isfinite(p) and p > 0.0):
        raise DomainError("p must be finite and > 0")
    v = f.values
    ts = f.times
    if t_max is not None:
        if t_max > ts[-1] * (1.0 + 1e-12):
            raise DomainError("t_max exceeds the sampled range")
        keep = ts <= t_max * (1.0 + 1e-12)
        v = v[keep]
        ts = ts[keep]
        if v.size < 2:
            raise DomainError("t_max leaves fewer than two samples")
    return float(np.trapezoid(np.exp(-p * ts) * v, dx=f.step))


def laplace_step_check(f: SampledFunction, nu: float,
                       p: float) -> tuple[float, float]:
    """Both sides of L{I^nu f}(p) = p**(-nu) L{f}(p) on sampled data.

    Returns (transform of the quadrature integral, p**(-nu) times the
    transform of f); callers assert their closeness.
    """
    lhs = laplace_numeric(rl_integral(f, nu), p)
    rhs = p ** (-nu) * laplace_numeric(f, p)
    return lhs, rhs
