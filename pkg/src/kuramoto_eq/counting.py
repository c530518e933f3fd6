"""Exact equilibrium counts and bounds, plus the parameter families they describe.

All binomials are exact Python integers.  Parameters ``q`` are converted to
:class:`fractions.Fraction` so that band boundaries (integers for the even
family, ``q0`` for the odd one) are decided exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import ParityError, RangeError
from .model import ModelInput

QLike = Union[int, float, str, Fraction]

CONSTANTS_TOL = 1e-12


@dataclass(frozen=True)
class CountReport:
    """A closed-form count.  ``multiplicity_counted`` means tangential (double)
    equilibria are counted twice, so the value may exceed a distinct-solution
    count exactly at band boundaries."""

    n: int
    q: Fraction | None
    count: int
    multiplicity_counted: bool

    def __int__(self) -> int:
        return self.count


def as_fraction(q: QLike) -> Fraction:
    """Exact rational value of ``q``; floats go through their shortest repr."""
    if isinstance(q, Fraction):
        return q
    if isinstance(q, (int, Rational)):
        return Fraction(q)
    if isinstance(q, float):
        if not math.isfinite(q):
            raise ValueError(f"q must be finite, got {q!r}")
        return Fraction(repr(q))
    return Fraction(str(q))


def upper_bound(n: int) -> int:
    """Maximum number of equilibria modulo shift, ``2**n - 2`` (also the generic
    complex root count)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return 2**n - 2


def _require_even(n: int) -> None:
    if n < 2 or n % 2:
        raise ParityError(f"n={n} must be an even integer >= 2")


def _require_odd(n: int) -> None:
    if n < 3 or n % 2 == 0:
        raise ParityError(f"n={n} must be an odd integer >= 3")


def even_count(n: int, q: QLike) -> CountReport:
    """Count for omega = (nq, ..., nq, -nq, ..., -nq), k = (n, ..., n), n even:

        2**n - sum_{-q < l < q} C(n, n/2 + l)

    counted with multiplicity (at integer q a tangential equilibrium counts twice).
    """
    _require_even(n)
    qf = as_fraction(q)
    if qf <= 0:
        raise ValueError("q must be positive")
    half = n // 2
    # integers l with |l| < q, clipped to the binomial support |l| <= n/2
    top = math.ceil(qf) - 1
    top = min(top, half)
    excluded = sum(math.comb(n, half + l) for l in range(-top, top + 1))
    return CountReport(n, qf, 2**n - excluded, True)


def even_max(n: int) -> int:
    """Largest even-family count, ``2**n - C(n, n/2)``, attained for 0 < q < 1."""
    _require_even(n)
    return 2**n - math.comb(n, n // 2)


def constants() -> tuple[float, float]:
    """The odd-family thresholds ``(q0, R0)``.

    q0 = sqrt(414 - 66 sqrt(33)) / 16 and R0 = (21 - 3 sqrt(33)) / 8; they
    satisfy R0 + sqrt(R0) = 2 sqrt(R0 - q0**2), which is checked here.
    """
    s33 = math.sqrt(33.0)
    q0 = math.sqrt(414.0 - 66.0 * s33) / 16.0
    R0 = (21.0 - 3.0 * s33) / 8.0
    gap = R0 + math.sqrt(R0) - 2.0 * math.sqrt(R0 - q0 * q0)
    if abs(gap) > CONSTANTS_TOL:
        raise ArithmeticError(f"constant identity violated by {gap:.3g}")
    return q0, R0


def below_q0(q: QLike) -> bool:
    """Exact test ``q < q0`` for rational q (no floating point involved)."""
    qf = as_fraction(q)
    if qf < 0:
        qf = -qf
    # q < q0  <=>  256 q^2 < 414 - 66 sqrt(33)  <=>  66^2 * 33 < (414 - 256 q^2)^2 with 414 - 256 q^2 > 0
    rhs = 414 - 256 * qf * qf
    return rhs > 0 and 66 * 66 * 33 < rhs * rhs


def odd_count(n: int, q: QLike) -> CountReport:
    """Count for omega = (nq, ..., -nq, ..., 0), k = (n, ..., n), n odd, 0 < q < q0:
    ``2**n - C(n-1, (n-1)/2)``."""
    _require_odd(n)
    qf = as_fraction(q)
    if qf <= 0:
        raise ValueError("q must be positive")
    if not below_q0(qf):
        raise RangeError(f"q={qf} is not below q0 ~ {constants()[0]:.4f}; no closed form")
    return CountReport(n, qf, 2**n - math.comb(n - 1, (n - 1) // 2), False)


def conjectured_max(n: int) -> int:
    """Conjectured maximum number of real equilibria (unproven for general n)."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if n % 2 == 0:
        return 2**n - math.comb(n, n // 2)
    return 2**n - math.comb(n - 1, (n - 1) // 2)


def max_ratio(n: int) -> Fraction:
    """``conjectured_max(n) / (2**n - 2)`` as an exact rational."""
    return Fraction(conjectured_max(n), upper_bound(n))


def special_case_model(n: int, q: QLike, parity: str | None = None) -> ModelInput:
    """The symmetric family behind :func:`even_count` / :func:`odd_count`.

    Even n: omega = (nq x n/2, -nq x n/2).  Odd n: omega = (nq x (n-1)/2,
    -nq x (n-1)/2, 0).  In both cases k = (n, ..., n) and sum(omega) = 0 exactly.
    """
    if parity is None:
        parity = "even" if n % 2 == 0 else "odd"
    if parity == "even":
        _require_even(n)
    elif parity == "odd":
        _require_odd(n)
    else:
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
    w = float(n * as_fraction(q))
    half = n // 2
    omega = [w] * half + [-w] * half + ([0.0] if parity == "odd" else [])
    return ModelInput(omega, [float(n)] * n)
