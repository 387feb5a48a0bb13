"""Series evaluators for Mittag-Leffler functions.

Two evaluators are provided:

* :func:`ml2` -- the two-parameter function
  ``E_{alpha,beta}(x) = sum_n x**n / Gamma(alpha n + beta)``;
* :func:`kml` -- the five-parameter generalization
  ``E(k, alpha, beta, gamma, q; z)
  = sum_n (gamma)_{nq,k} z**n / (gamma_k(n alpha + beta) n!)``
  built from the step-k gamma and gamma-ratio Pochhammer of
  :mod:`fracml.specfun`.

Both return a :class:`SeriesEvaluation` carrying truncation diagnostics;
``converged`` is True only when the geometric tail certificate of
:mod:`fracml.summation` holds.  Terms are built in log-magnitude + sign
form (or directly through the gamma function while its argument is in
range), and Gamma poles met inside a series contribute zero terms via the
reciprocal-gamma convention.

Alternating arguments are summed with compensated accumulation; when the
cancellation is severe enough that the double-precision term noise would
exceed the requested tolerance relative to the computed value, the sum is
transparently re-evaluated on an extended-precision internal path with a
working precision sized from the measured condition number.
"""

from __future__ import annotations

import enum
import math
import sys
import threading
from dataclasses import dataclass

from mpmath import mp, mpf

from .errors import DomainError
from .specfun import is_gamma_pole, k_gamma, recip_gamma, signed_log_gamma
from .summation import SeriesAbort, sum_series

DEFAULT_TOL = 1e-12
DEFAULT_MAX_TERMS = 10_000
MIN_TERMS = 8

_EPS = sys.float_info.epsilon
# |log magnitude| cap before a growing term is declared non-summable.
_LOG_HUGE = 700.0
# Error-estimate weights (ulps) for directly- and log-constructed terms.
_ERR_DIRECT = 3.0
_ERR_LOG = 60.0


def _check_tol(tol: float) -> None:
    if not (tol > 0.0 and math.isfinite(tol)):
        raise DomainError("tol must be a positive finite number")


@dataclass(frozen=True)
class TwoParamML:
    """Parameters of the two-parameter Mittag-Leffler series.

    ``alpha > 0`` is the exponent step (required for convergence on all of
    the real line); ``beta`` is the series offset and may be any finite
    real -- non-positive values only zero out the leading terms.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and self.alpha > 0.0):
            raise DomainError("alpha must be finite and > 0")
        if not math.isfinite(self.beta):
            raise DomainError("beta must be finite")


def _valid_exponent_step(q: float) -> bool:
    # Admissible q: the open interval (0, 1) or a positive integer.
    return math.isfinite(q) and (0.0 < q < 1.0 or (q >= 1.0 and q == round(q)))


@dataclass(frozen=True)
class MLParameters:
    """Parameters (k, alpha, beta, gamma, q) of the generalized k-Mittag-
    Leffler function; all of k, alpha, beta, gamma must be positive and q
    must lie in (0, 1) or be a positive integer."""

    k: float
    alpha: float
    beta: float
    gamma: float
    q: float

    def __post_init__(self):
        for name in ("k", "alpha", "beta", "gamma"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0.0):
                raise DomainError(f"{name} must be finite and > 0")
        if not _valid_exponent_step(self.q):
            raise DomainError("q must lie in (0, 1) or be a positive integer")


@dataclass(frozen=True)
class SeriesEvaluation:
    """A series value plus truncation diagnostics."""

    value: float
    terms_used: int
    tail_bound: float
    converged: bool


class ReductionCase(enum.Enum):
    """Named parameter reductions of the five-parameter function."""

    K_ML = "k-mittag-leffler (q=1)"
    GENERALIZED_ML = "generalized mittag-leffler (k=1)"
    PRABHAKAR = "prabhakar three-parameter (q=k=1)"
    TWO_PARAMETER = "two-parameter (q=k=gamma=1)"
    ONE_PARAMETER = "one-parameter (q=k=gamma=beta=1)"
    GENERAL = "general"


def reduction_case(p: MLParameters) -> ReductionCase:
    """Classify parameters into the named reduction they realize.

    Used to route tests; the evaluation path never depends on it.
    """
    q1 = p.q == 1.0
    k1 = p.k == 1.0
    g1 = p.gamma == 1.0
    b1 = p.beta == 1.0
    if q1 and k1 and g1 and b1:
        return ReductionCase.ONE_PARAMETER
    if q1 and k1 and g1:
        return ReductionCase.TWO_PARAMETER
    if q1 and k1:
        return ReductionCase.PRABHAKAR
    if k1:
        return ReductionCase.GENERALIZED_ML
    if q1:
        return ReductionCase.K_ML
    return ReductionCase.GENERAL


_MAX_DPS = 300


def _needed_dps(abs_sum: float, value: float) -> int:
    cond = abs_sum / max(abs(value), 1e-300)
    extra = math.log10(cond) if cond > 1.0 else 0.0
    return min(_MAX_DPS, 22 + int(extra))


# The escalation path adjusts the global mpmath precision; serialize it so
# the evaluators stay safe to call from multiple threads.
_MP_LOCK = threading.Lock()


def _mp_sum(term_mp, dps: int, max_terms: int) -> tuple[float, int]:
    """Sum an mpmath term generator until three consecutive terms fall below
    the working precision relative to the largest magnitude seen."""
    with _MP_LOCK, mp.workdps(dps):
        total = mpf(0)
        peak = mpf(1)
        thresh = mpf(10) ** (-(dps + 3))
        small = 0
        n = 0
        while n < max_terms:
            t = term_mp(n)
            total += t
            at = abs(t)
            if at > peak:
                peak = at
            if at <= thresh * peak:
                small += 1
            else:
                small = 0
            if small >= 3 and n >= 8:
                break
            n += 1
        return float(total), n + 1


def _should_escalate(x: float, abs_sum: float, value: float,
                     err_units: float, tol: float) -> bool:
    # Escalate only for genuinely cancelling alternating sums whose
    # double-precision noise floor exceeds the requested relative accuracy.
    return (
        x < 0.0
        and abs_sum > 4.0 * abs(value)
        and _EPS * err_units > tol * max(abs(value), 1e-300)
    )


def _extended_sum(term_mp, abs_sum: float, approx: float,
                  max_terms: int) -> tuple[float, int, float]:
    """Re-sum a cancelling series in extended precision.

    The working precision must cover the (unknown) ratio of the absolute
    term sum to the true value; since a noise-dominated double result can
    grossly overestimate that value, the precision is re-derived from each
    pass's own result until it is self-consistent.  Returns the value, the
    terms used, and the remaining noise floor as a tail bound.
    """
    target = max(abs(approx), 1e-300)
    dps, value, used = 22, approx, 0
    for _ in range(6):
        dps = _needed_dps(abs_sum, target)
        value, used = _mp_sum(term_mp, dps, max_terms)
        if dps >= _needed_dps(abs_sum, value):
            break
        target = max(abs(value), 1e-300)
    return value, used, abs_sum * 10.0 ** (3 - dps)


def ml2(p: TwoParamML, x: float, tol: float = DEFAULT_TOL,
        max_terms: int = DEFAULT_MAX_TERMS) -> SeriesEvaluation:
    """Evaluate the two-parameter Mittag-Leffler series at real ``x``.

    ``converged`` is True when the geometric tail certificate bounds the
    truncation error by ``tol * max(1, |value|)``.
    """
    _check_tol(tol)
    x = float(x)
    if not math.isfinite(x):
        raise DomainError("x must be finite")
    if x == 0.0:
        return SeriesEvaluation(recip_gamma(p.beta), 1, 0.0, True)

    alpha, beta = p.alpha, p.beta
    log_ax = math.log(abs(x))
    err_units = 0.0

    def term(n: int) -> float:
        nonlocal err_units
        a = alpha * n + beta
        if is_gamma_pole(a):
            return 0.0
        la = n * log_ax
        if -170.0 <= a <= 170.0 and -700.0 <= la <= 700.0:
            t = x**n / math.gamma(a)
            if not math.isfinite(t):
                raise SeriesAbort("term overflow")
            err_units += _ERR_DIRECT * abs(t)
            return t
        lg, sg = signed_log_gamma(a)
        logmag = la - lg
        if logmag > _LOG_HUGE:
            raise SeriesAbort("term overflow")
        t = sg * math.exp(logmag)
        if x < 0.0 and n % 2:
            t = -t
        err_units += _ERR_LOG * abs(t)
        return t

    def cert_ok(n: int) -> bool:
        # Delay certification until the gamma argument is past all poles
        # and into its increasing range, so zero terms cannot fool it.
        return alpha * n + beta >= 2.0

    res = sum_series(term, tol, max_terms, MIN_TERMS, cert_ok)
    value, used, tail = res.value, res.terms, res.tail_bound
    if res.converged and _should_escalate(x, res.abs_sum, value, err_units, tol):
        value, used_mp, tail = _ml2_extended(alpha, beta, x, res.abs_sum,
                                             value, max_terms)
        used = max(used, used_mp)
    converged = res.converged and tail <= tol * max(1.0, abs(value))
    return SeriesEvaluation(value, used, tail, converged)


def _ml2_extended(alpha: float, beta: float, x: float, abs_sum: float,
                  approx: float, max_terms: int) -> tuple[float, int, float]:
    xm, al, be = mpf(x), mpf(alpha), mpf(beta)

    def term(n: int):
        a = al * n + be
        if a <= 0 and a == mp.floor(a):
            return mpf(0)
        return xm**n / mp.gamma(a)

    return _extended_sum(term, abs_sum, approx, max_terms)


def kml(p: MLParameters, z: float, tol: float = DEFAULT_TOL,
        max_terms: int = DEFAULT_MAX_TERMS) -> SeriesEvaluation:
    """Evaluate the generalized k-Mittag-Leffler series at real ``z``.

    Terms are assembled in log space from the step-k Pochhammer ratio, the
    step-k gamma and the factorial; convergence semantics match :func:`ml2`.
    For parameter choices where the series diverges (large integer q), the
    result is reported with ``converged=False``.
    """
    _check_tol(tol)
    z = float(z)
    if not math.isfinite(z):
        raise DomainError("z must be finite")
    if z == 0.0:
        return SeriesEvaluation(1.0 / k_gamma(p.beta, p.k), 1, 0.0, True)

    k, alpha, beta, g, q = p.k, p.alpha, p.beta, p.gamma, p.q
    log_k = math.log(k)
    c0 = g / k
    lg_c0 = math.lgamma(c0)
    log_az = math.log(abs(z))
    err_units = 0.0

    def term(n: int) -> float:
        nonlocal err_units
        lognum = n * q * log_k + math.lgamma(c0 + n * q) - lg_c0
        a = (alpha * n + beta) / k
        logden = (a - 1.0) * log_k + math.lgamma(a) + math.lgamma(n + 1.0)
        logmag = lognum - logden + n * log_az
        if logmag > _LOG_HUGE:
            raise SeriesAbort("term overflow")
        t = math.exp(logmag)
        if z < 0.0 and n % 2:
            t = -t
        err_units += _ERR_LOG * abs(t)
        return t

    def cert_ok(n: int) -> bool:
        return (alpha * n + beta) / k >= 2.0

    res = sum_series(term, tol, max_terms, MIN_TERMS, cert_ok)
    value, used, tail = res.value, res.terms, res.tail_bound
    if res.converged and _should_escalate(z, res.abs_sum, value, err_units, tol):
        value, used_mp, tail = _kml_extended(p, z, res.abs_sum, value,
                                             max_terms)
        used = max(used, used_mp)
    converged = res.converged and tail <= tol * max(1.0, abs(value))
    return SeriesEvaluation(value, used, tail, converged)


def _kml_extended(p: MLParameters, z: float, abs_sum: float,
                  approx: float, max_terms: int) -> tuple[float, int, float]:
    km, al, be = mpf(p.k), mpf(p.alpha), mpf(p.beta)
    gm, qm, zm = mpf(p.gamma), mpf(p.q), mpf(z)

    def term(n: int):
        c0 = gm / km
        num = km ** (n * qm) * mp.gamma(c0 + n * qm) / mp.gamma(c0)
        a = (al * n + be) / km
        den = km ** (a - 1) * mp.gamma(a) * mp.factorial(n)
        return num * zm**n / den

    return _extended_sum(term, abs_sum, approx, max_terms)
