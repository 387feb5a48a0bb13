"""Closed-form solutions of three fractional kinetic equations.

The equations are Volterra balances for a number density ``N(t)`` with a
Mittag-Leffler forcing and a memory (Riemann-Liouville) removal term:

    theorem 1:  N(t) - N0 E(t)            = -d**nu * I^nu N(t)
    theorem 2:  N(t) - N0 E((d t)**nu)    = -d**nu * I^nu N(t)
    theorem 3:  N(t) - N0 E((d t)**nu)    = -a**nu * I^nu N(t)

where ``E`` is the generalized k-Mittag-Leffler function with parameters
``(k, alpha, beta, gamma, q)`` and ``I^nu`` is the order-``nu`` fractional
integral.  Each solution is a series of the form

    N(t) = N0 * sum_n  C_n * x**n * E_{nu, b(n)}(y)

with coefficients ``C_n = (gamma)_{nq,k} / gamma_k(n alpha + beta)``.  For
theorem 1, ``x = t``, ``b(n) = n + 1`` and ``y = -(d t)**nu``.  For the
powered-argument equations there are two variants:

* ``stated``    -- ``x = (d t)**nu``, ``b(n) = nu n + 1``, no extra weight;
* ``rederived`` -- the same series multiplied termwise by
  ``Gamma(nu n + 1) / n!``, which is what the Laplace-transform solution of
  the balance equation produces (the two coincide when ``nu = 1``).

Only the rederived weights make the powered-argument series satisfy its
equation for ``nu != 1``; the residual verification in :mod:`fracml.fracops`
adjudicates this numerically, which is why both variants are kept.

Outer series are truncated with the same geometric-tail certificate as the
Mittag-Leffler evaluators, applied to outer terms that already include their
converged inner factor.
"""

from __future__ import annotations

import dataclasses
import enum
import math
from dataclasses import dataclass
from typing import Callable, Optional

from .errors import DomainError, UnknownCaseError
from .mittag import (
    MIN_TERMS,
    MLParameters,
    SeriesEvaluation,
    TwoParamML,
    kml,
    ml2,
)
from .summation import SeriesAbort, sum_series


class Forcing(enum.Enum):
    """Argument shape of the Mittag-Leffler forcing term."""

    PLAIN = "plain"        # f(t) = E(t)
    POWERED = "powered"    # f(t) = E((d t)**nu)


@dataclass(frozen=True)
class KineticProblem:
    """A kinetic equation instance.

    ``n0`` is the initial number density, ``d`` the forcing rate constant,
    ``a`` the removal rate constant (defaults to ``d``; theorems 1 and 2
    require ``a == d``) and ``nu`` the fractional order.  ``d = 0`` is a
    degenerate setting kept for testing the zero-removal identity
    ``N(t) = N0 E(t)``; the kinetic theorems themselves require ``d > 0``,
    which the command-line front end enforces.
    """

    n0: float
    ml: MLParameters
    d: float
    nu: float
    forcing: Forcing = Forcing.PLAIN
    a: Optional[float] = None

    def __post_init__(self):
        if not (math.isfinite(self.n0) and self.n0 > 0.0):
            raise DomainError("n0 must be finite and > 0")
        if not (math.isfinite(self.d) and self.d >= 0.0):
            raise DomainError("d must be finite and >= 0")
        if not (math.isfinite(self.nu) and self.nu > 0.0):
            raise DomainError("nu must be finite and > 0")
        if not isinstance(self.forcing, Forcing):
            raise DomainError("forcing must be a Forcing member")
        if self.a is None:
            object.__setattr__(self, "a", self.d)
        elif not (math.isfinite(self.a) and self.a >= 0.0):
            raise DomainError("a must be finite and >= 0")


@dataclass(frozen=True)
class SolutionSeriesConfig:
    """Truncation controls for the solution series."""

    outer_tol: float = 1e-12
    outer_max_terms: int = 2000
    inner_tol: float = 1e-13

    def __post_init__(self):
        if not (self.outer_tol >= 2.2e-16 and math.isfinite(self.outer_tol)):
            raise DomainError("outer_tol must be >= machine epsilon")
        if not (1 <= self.outer_max_terms <= 10_000):
            raise DomainError("outer_max_terms must lie in [1, 10000]")
        if not (self.inner_tol > 0.0 and math.isfinite(self.inner_tol)):
            raise DomainError("inner_tol must be > 0")


DEFAULT_CONFIG = SolutionSeriesConfig()


def _check_time(t: float) -> float:
    t = float(t)
    if not (math.isfinite(t) and t >= 0.0):
        raise DomainError("t must be finite and >= 0")
    return t


def forcing_value(prob: KineticProblem, t: float,
                  tol: float = 1e-12) -> SeriesEvaluation:
    """N0 times the forcing E(z) at z = t (plain) or z = (d t)**nu (powered)."""
    t = _check_time(t)
    if prob.forcing is Forcing.PLAIN:
        z = t
    else:
        z = (prob.d * t) ** prob.nu
    ev = kml(prob.ml, z, tol)
    return SeriesEvaluation(prob.n0 * ev.value, ev.terms_used,
                            prob.n0 * ev.tail_bound, ev.converged)


_ZERO = lambda n: 0.0  # noqa: E731


def _solution_series(prob: KineticProblem, cfg: SolutionSeriesConfig,
                     x: float, y: float,
                     inner_beta: Callable[[int], float],
                     extra_log: Callable[[int], float]) -> SeriesEvaluation:
    """Sum N0 * sum_n C_n exp(extra_log(n)) x**n E_{nu, inner_beta(n)}(y)."""
    ml = prob.ml
    k, alpha, beta, g, q = ml.k, ml.alpha, ml.beta, ml.gamma, ml.q
    nu = prob.nu
    log_k = math.log(k)
    c0 = g / k
    lg_c0 = math.lgamma(c0)
    log_n0 = math.log(prob.n0)

    def log_coeff(n: int) -> float:
        a = (alpha * n + beta) / k
        return (n * q * log_k + math.lgamma(c0 + n * q) - lg_c0
                - (a - 1.0) * log_k - math.lgamma(a))

    def inner(n: int) -> float:
        ev = ml2(TwoParamML(nu, inner_beta(n)), y, cfg.inner_tol)
        if not ev.converged:
            raise SeriesAbort("inner Mittag-Leffler factor did not converge")
        return ev.value

    if x == 0.0:
        value = prob.n0 * math.exp(log_coeff(0)) * inner(0)
        return SeriesEvaluation(value, 1, 0.0, True)

    log_x = math.log(x)

    def term(n: int) -> float:
        iv = inner(n)
        if iv == 0.0:
            return 0.0
        logmag = (log_n0 + log_coeff(n) + n * log_x + extra_log(n)
                  + math.log(abs(iv)))
        if logmag > 700.0:
            raise SeriesAbort("solution series term overflow")
        return math.copysign(math.exp(logmag), iv)

    res = sum_series(term, cfg.outer_tol, cfg.outer_max_terms, MIN_TERMS)
    return SeriesEvaluation(res.value, res.terms, res.tail_bound, res.converged)


def _require(prob: KineticProblem, forcing: Forcing, equal_rates: bool) -> None:
    if prob.forcing is not forcing:
        raise DomainError(f"this solver requires {forcing.value!r} forcing")
    if equal_rates and prob.a != prob.d:
        raise DomainError("this solver requires equal rates a == d")


def solve_theorem1(prob: KineticProblem, t: float,
                   cfg: SolutionSeriesConfig = DEFAULT_CONFIG) -> SeriesEvaluation:
    """Plain-forcing solution N0 sum_n C_n t**n E_{nu,n+1}(-(d t)**nu)."""
    t = _check_time(t)
    _require(prob, Forcing.PLAIN, equal_rates=True)
    w = (prob.d * t) ** prob.nu
    return _solution_series(prob, cfg, x=t, y=-w,
                            inner_beta=lambda n: n + 1.0, extra_log=_ZERO)


def solve_theorem2_stated(prob: KineticProblem, t: float,
                          cfg: SolutionSeriesConfig = DEFAULT_CONFIG) -> SeriesEvaluation:
    """Powered-forcing solution, unweighted series form (equal rates)."""
    _require(prob, Forcing.POWERED, equal_rates=True)
    return solve_theorem3_stated(prob, t, cfg)


def solve_theorem2_rederived(prob: KineticProblem, t: float,
                             cfg: SolutionSeriesConfig = DEFAULT_CONFIG) -> SeriesEvaluation:
    """Powered-forcing solution with the Gamma(nu n + 1)/n! weight (equal rates)."""
    _require(prob, Forcing.POWERED, equal_rates=True)
    return solve_theorem3_rederived(prob, t, cfg)


def solve_theorem3_stated(prob: KineticProblem, t: float,
                          cfg: SolutionSeriesConfig = DEFAULT_CONFIG) -> SeriesEvaluation:
    """Independent-rates solution N0 sum_n C_n w**n E_{nu,nu n+1}(-(a t)**nu)
    with w = (d t)**nu, unweighted series form."""
    t = _check_time(t)
    _require(prob, Forcing.POWERED, equal_rates=False)
    nu = prob.nu
    w = (prob.d * t) ** nu
    wa = (prob.a * t) ** nu
    return _solution_series(prob, cfg, x=w, y=-wa,
                            inner_beta=lambda n: nu * n + 1.0, extra_log=_ZERO)


def solve_theorem3_rederived(prob: KineticProblem, t: float,
                             cfg: SolutionSeriesConfig = DEFAULT_CONFIG) -> SeriesEvaluation:
    """Independent-rates solution with the Gamma(nu n + 1)/n! weight obtained
    by solving the balance equation with the Laplace transform."""
    t = _check_time(t)
    _require(prob, Forcing.POWERED, equal_rates=False)
    nu = prob.nu
    w = (prob.d * t) ** nu
    wa = (prob.a * t) ** nu

    def extra(n: int) -> float:
        return math.lgamma(nu * n + 1.0) - math.lgamma(n + 1.0)

    return _solution_series(prob, cfg, x=w, y=-wa,
                            inner_beta=lambda n: nu * n + 1.0, extra_log=extra)


# Parameter substitutions generating the eighteen special cases: six
# substitution groups, each applied to the three equation families.
_CASE_SUBSTITUTIONS = (
    {"q": 1.0},
    {"k": 1.0},
    {"q": 1.0, "k": 1.0},
    {"q": 1.0, "k": 1.0, "gamma": 1.0},
    {"q": 1.0, "k": 1.0, "gamma": 1.0, "beta": 1.0},
    {"q": 1.0, "k": 1.0, "gamma": 1.0, "alpha": 0.0, "beta": 1.0},
)


@dataclass(frozen=True)
class CorollaryReduction:
    """A special case: which equation family it reduces and how.

    ``evaluable`` is False for the ``alpha = 0`` group (cases 16-18), whose
    printed exponential solutions are not reachable from the general series
    (alpha = 0 violates the parameter domain); :meth:`apply` then raises.
    """

    case_id: int
    theorem: int
    substitutions: dict
    evaluable: bool

    def apply(self, ml: MLParameters) -> MLParameters:
        return dataclasses.replace(ml, **self.substitutions)


def corollary_reduction(case_id: int) -> CorollaryReduction:
    """Map a special-case number (1..18) to its parameter substitution."""
    if not isinstance(case_id, int) or not 1 <= case_id <= 18:
        raise UnknownCaseError(
            f"unknown reduction case {case_id!r}; valid cases are 1..18")
    group, theorem = divmod(case_id - 1, 3)
    subs = dict(_CASE_SUBSTITUTIONS[group])
    return CorollaryReduction(case_id, theorem + 1, subs,
                              evaluable=subs.get("alpha", 1.0) != 0.0)
