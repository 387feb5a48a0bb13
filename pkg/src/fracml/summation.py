"""Compensated summation and certified truncation of power-series tails.

All series in this package are summed through :func:`sum_series`, which adds
terms with a Neumaier compensated accumulator and stops once a geometric tail
bound certifies that the remainder is below the requested tolerance.  The
certificate is: at the first index ``n >= min_terms`` where

* ``|term_n| <= tol * max(1, |partial|)``, and
* ``r = |term_{n+1}| / |term_n| < 1/2``,

the tail is bounded by ``|term_{n+1}| / (1 - r)``.  If no index certifies
within ``max_terms``, the partial sum is returned with ``converged=False``;
a wrong answer is never reported silently.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple, Optional


class SeriesAbort(Exception):
    """Raised by a term generator to abandon a summation (divergence, an
    inner factor that failed to converge, overflow)."""


class CompensatedSum:
    """Running Neumaier-compensated sum.

    Keeps the accumulated rounding error in a carry term so that the final
    ``value`` is accurate to a couple of ulps of the true sum of the added
    floats, independent of how severe the cancellation between them is.
    """

    __slots__ = ("_sum", "_carry")

    def __init__(self) -> None:
        self._sum = 0.0
        self._carry = 0.0

    def add(self, x: float) -> None:
        s = self._sum + x
        if abs(self._sum) >= abs(x):
            self._carry += (self._sum - s) + x
        else:
            self._carry += (x - s) + self._sum
        self._sum = s

    @property
    def value(self) -> float:
        return self._sum + self._carry


class SeriesSum(NamedTuple):
    value: float
    terms: int
    tail_bound: float
    converged: bool
    abs_sum: float


def sum_series(
    term: Callable[[int], float],
    tol: float,
    max_terms: int,
    min_terms: int = 8,
    cert_ok: Optional[Callable[[int], bool]] = None,
) -> SeriesSum:
    """Sum ``term(0) + term(1) + ...`` with the geometric-tail certificate.

    ``cert_ok(n)`` may veto certification at index ``n`` (used to delay the
    stopping test until the term magnitudes are provably monotone, e.g. past
    the zero terms produced by reciprocal gamma factors at poles).
    """
    acc = CompensatedSum()
    abs_sum = 0.0
    n = 0
    try:
        t = term(0)
        while n < max_terms:
            acc.add(t)
            abs_sum += abs(t)
            t_next = term(n + 1)
            if n >= min_terms and (cert_ok is None or cert_ok(n)):
                partial = acc.value
                if abs(t) <= tol * max(1.0, abs(partial)):
                    if t != 0.0 and abs(t_next) < 0.5 * abs(t):
                        r = abs(t_next) / abs(t)
                        tail = abs(t_next) / (1.0 - r)
                        return SeriesSum(partial, n + 1, tail, True, abs_sum)
                    if t == 0.0 and t_next == 0.0:
                        return SeriesSum(partial, n + 1, 0.0, True, abs_sum)
            t = t_next
            n += 1
    except SeriesAbort:
        return SeriesSum(acc.value, n, math.inf, False, abs_sum)
    return SeriesSum(acc.value, max_terms, math.inf, False, abs_sum)
