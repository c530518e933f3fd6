"""Provably sound no-root tests for sign patterns.

Every test here can only declare a pattern rootless; none of them can hide
a root.  Floating-point decisions are made on outward-rounded enclosures or on
correctly rounded sums, so rounding never flips a verdict the wrong way.
"""

from __future__ import annotations

import math
from typing import Optional

from .conjugate import as_pattern
from .errors import InvalidSkipError
from .interval import Interval, _dn, _up
from .model import NormalizedModel

TERMINATE = -1
"""Returned by :func:`skip_decrement` when no smaller code can have roots."""


def boundary_enclosure(m: NormalizedModel) -> Interval:
    q = Interval.enclose(m.omega[-1]) / m.k[-1]
    return q * q


def bracket_from_plus_sum(plus_sum: Interval, n: int, lower: Interval) -> Optional[Interval]:
    top = plus_sum / float(n)
    top = top * top
    if top.hi < lower.lo:
        return None
    # widen one ulp outward so roots sitting on an endpoint are kept
    return Interval(_dn(lower.lo), _up(top.hi))


def root_bracket(sigma, m: NormalizedModel) -> Optional[Interval]:
    """Interval containing every positive root of f_sigma, or None if provably empty.

    In exact arithmetic this is ``[(omega_n/k_n)**2, ((1/n) sum_{sigma_mu=+1} k_mu)**2]``.
    """
    sigma = as_pattern(sigma, m.n)
    plus = Interval(0.0, 0.0)
    for s, k in zip(sigma.signs, m.k):
        if s > 0:
            plus = plus + k
    return bracket_from_plus_sum(plus, m.n, boundary_enclosure(m))


def _partial_sums_nonpositive(signs, k) -> bool:
    total = 0.0
    bound = 0.0
    u = 2.0 ** -53
    for i, (s, x) in enumerate(zip(signs, k), start=1):
        total += x if s > 0 else -x
        bound += x
        # |fl(s_l) - s_l| <= gamma_l * sum |k|
        slack = 1.01 * i * u * bound
        if total > slack:
            return False
        if total > -slack:
            exact = math.fsum(x if s > 0 else -x for s, x in zip(signs[:i], k[:i]))
            if exact > 0.0:
                return False
    return True


def partial_sum_prune(sigma, m: NormalizedModel) -> bool:
    """True iff every partial sum ``sum_{mu<=l} sigma_mu k_mu`` is <= 0.

    In that case f_sigma has no positive roots.
    """
    sigma = as_pattern(sigma, m.n)
    return _partial_sums_nonpositive(sigma.signs, m.k)


def skip_decrement(iota: int, n: int, ic4: bool = True) -> int:
    """Next code to examine after ``iota`` was shown rootless (IC4 models only).

    Codes strictly between the return value and ``iota`` are rootless as well.
    Returns :data:`TERMINATE` when no smaller code can have roots.
    """
    if not ic4:
        raise InvalidSkipError("sequential skipping requires k_1 >= ... >= k_n")
    full = (1 << n) - 1
    if not 0 <= iota <= full:
        raise ValueError(f"code {iota} out of range for n={n}")
    zeros = full & ~iota
    if zeros.bit_count() <= 1:
        return TERMINATE
    # drop the last -1 (lowest zero bit); the next lowest is the penultimate one
    rest = zeros & (zeros - 1)
    penultimate = rest & -rest
    # keep sigma_1..sigma_l, clear everything after position l
    return (iota & ~(penultimate - 1)) - 1


def swap_prune(sigma, m: NormalizedModel, mu: int, nu: int) -> Optional[int]:
    """Code of the swapped pattern certified rootless when ``sigma`` is rootless.

    Swapping ``sigma_mu = +1`` with ``sigma_nu = -1`` (0-based indices) keeps
    the no-root property whenever ``(k_mu^2 - k_nu^2) R >= omega_mu^2 - omega_nu^2``
    at both ends of ``[(omega_n/k_n)^2, (sum k / n)^2]``.  Returns None when the
    condition cannot be certified.
    """
    sigma = as_pattern(sigma, m.n)
    if sigma.signs[mu] != 1 or sigma.signs[nu] != -1:
        raise ValueError("need sigma_mu = +1 and sigma_nu = -1")
    kmu, knu = Interval.enclose(m.k[mu] * m.k[mu]), Interval.enclose(m.k[nu] * m.k[nu])
    wmu, wnu = Interval.enclose(m.omega[mu] * m.omega[mu]), Interval.enclose(m.omega[nu] * m.omega[nu])
    dk = kmu - knu
    dw = wmu - wnu
    total = Interval(0.0, 0.0)
    for k in m.k:
        total = total + k
    top = total / float(m.n)
    for r in (boundary_enclosure(m), top * top):
        if (dk * r - dw).lo < 0.0:
            return None
    swapped = list(sigma.signs)
    swapped[mu], swapped[nu] = -1, 1
    return as_pattern(swapped, m.n).code
