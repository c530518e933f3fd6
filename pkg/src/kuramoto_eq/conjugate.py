"""The decoupled radical functions f_sigma and their conjugate product g.

For a sign pattern sigma in {-1, +1}^n and a normalized model,

    f_sigma(R) = -R + (1/n) * sum_mu sigma_mu * sqrt(k_mu**2 R - omega_mu**2)

whose positive roots R are the squared order parameters of the equilibria
on branch sigma.  The product of f_sigma over all 2**n patterns is a
polynomial g of degree 2**n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DomainError, EmptyDomainError, SizeLimitError
from .interval import ENTIRE, EMPTY, Interval, interval_sqrt
from .model import NormalizedModel

G_MAX_N = 12


@dataclass(frozen=True)
class SignPattern:
    """Signs of cos(theta_mu); ``code`` reads sigma as binary with sigma_1 as MSB."""

    signs: tuple[int, ...]

    def __post_init__(self):
        if any(s not in (-1, 1) for s in self.signs):
            raise ValueError(f"sign pattern entries must be +-1, got {self.signs}")

    @classmethod
    def from_code(cls, code: int, n: int) -> SignPattern:
        if not 0 <= code < (1 << n):
            raise ValueError(f"code {code} out of range for n={n}")
        return cls(tuple(1 if (code >> (n - 1 - i)) & 1 else -1 for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.signs)

    @property
    def code(self) -> int:
        c = 0
        for s in self.signs:
            c = (c << 1) | (s > 0)
        return c

    @property
    def minus_count(self) -> int:
        return sum(1 for s in self.signs if s < 0)

    def __str__(self) -> str:
        return "(" + ",".join("+1" if s > 0 else "-1" for s in self.signs) + ")"


def as_pattern(sigma, n: int) -> SignPattern:
    if isinstance(sigma, SignPattern):
        return sigma
    if isinstance(sigma, int):
        return SignPattern.from_code(sigma, n)
    return SignPattern(tuple(int(s) for s in sigma))


def sign_matrix(n: int) -> np.ndarray:
    """All 2**n patterns as rows; row index equals the pattern code."""
    codes = np.arange(1 << n)
    shifts = np.arange(n - 1, -1, -1)
    bits = (codes[:, None] >> shifts[None, :]) & 1
    return (2 * bits - 1).astype(float)


@lru_cache(maxsize=64)
def coefficient_enclosures(m: NormalizedModel) -> tuple[list[Interval], list[Interval]]:
    """Enclosures of k_mu**2 and omega_mu**2 (the squares are rounded)."""
    k2 = [Interval.enclose(x * x) for x in m.k]
    w2 = [Interval.enclose(w * w) for w in m.omega]
    return k2, w2


@lru_cache(maxsize=64)
def coefficient_arrays(m: NormalizedModel) -> tuple[np.ndarray, ...]:
    """``(k2lo, k2hi, w2lo, w2hi)`` as contiguous float arrays for the kernel."""
    k2, w2 = coefficient_enclosures(m)
    return (
        np.array([c.lo for c in k2]),
        np.array([c.hi for c in k2]),
        np.array([c.lo for c in w2]),
        np.array([c.hi for c in w2]),
    )


class PatternFunction:
    """Point, derivative and interval evaluators of f_sigma for one model."""

    def __init__(self, sigma, model: NormalizedModel):
        self.model = model
        self.sigma = as_pattern(sigma, model.n)
        if self.sigma.n != model.n:
            raise ValueError("pattern length does not match model size")
        self.n = model.n
        self.k = model.k
        self.omega = model.omega

    @property
    def _coeff_enclosures(self):
        return coefficient_enclosures(self.model)

    def _radicands(self, R: float) -> list[float]:
        out = []
        for k, w in zip(self.k, self.omega):
            kr = k * k * R
            rad = kr - w * w
            if rad < 0.0:
                if rad >= -4.0 * math.ulp(kr):
                    rad = 0.0
                else:
                    raise DomainError(f"R={R!r} lies below the domain boundary {self.model.boundary!r}")
            out.append(rad)
        return out

    def value(self, R: float) -> float:
        rads = self._radicands(R)
        total = math.fsum(s * math.sqrt(r) for s, r in zip(self.sigma.signs, rads))
        return -R + total / self.n

    def deriv(self, R: float) -> float:
        rads = self._radicands(R)
        if min(rads) <= 0.0:
            raise DomainError("derivative is unbounded on the domain boundary")
        total = math.fsum(
            s * k * k / (2.0 * math.sqrt(r)) for s, k, r in zip(self.sigma.signs, self.k, rads)
        )
        return -1.0 + total / self.n

    # Interval forms.  The operation sequence mirrors _ckernel.pyx exactly so
    # that both backends return bit-identical isolators.

    def enclose(self, x: Interval) -> Interval:
        """Enclosure of f_sigma over ``x``; EMPTY if some radicand is negative on all of ``x``."""
        k2, w2 = self._coeff_enclosures
        acc = Interval(0.0, 0.0)
        for s, a, b in zip(self.sigma.signs, k2, w2):
            root = interval_sqrt(a * x - b)
            if root.is_empty:
                return EMPTY
            acc = acc + root if s > 0 else acc - root
        return acc / float(self.n) - x

    def enclose_deriv(self, x: Interval) -> Interval:
        """Enclosure of f_sigma' over ``x``; ENTIRE when ``x`` touches the boundary."""
        k2, w2 = self._coeff_enclosures
        acc = Interval(0.0, 0.0)
        for s, a, b in zip(self.sigma.signs, k2, w2):
            rad = a * x - b
            if rad.lo <= 0.0:
                return ENTIRE
            term = a / (interval_sqrt(rad) * 2.0)
            acc = acc + term if s > 0 else acc - term
        return acc / float(self.n) - 1.0


def f_sigma_eval(R: float, sigma, m: NormalizedModel) -> float:
    return PatternFunction(sigma, m).value(R)


def f_sigma_deriv(R: float, sigma, m: NormalizedModel) -> float:
    return PatternFunction(sigma, m).deriv(R)


def f_sigma_interval(x: Interval, sigma, m: NormalizedModel) -> Interval:
    """Outward enclosure of f_sigma over ``x`` intersected with its domain."""
    out = PatternFunction(sigma, m).enclose(x)
    if out.is_empty:
        raise EmptyDomainError(f"{x} lies below the domain boundary {m.boundary!r}")
    return out


def f_sigma_deriv_interval(x: Interval, sigma, m: NormalizedModel) -> Interval:
    """Derivative enclosure; ``ENTIRE`` (unbounded) when ``x`` reaches the boundary."""
    if x.hi < m.boundary * (1.0 - 4.0 * np.finfo(float).eps):
        raise EmptyDomainError(f"{x} lies below the domain boundary {m.boundary!r}")
    return PatternFunction(sigma, m).enclose_deriv(x)


def g_terms(R, m: NormalizedModel) -> np.ndarray:
    """Complex values of every f_sigma at ``R`` (principal square roots).

    Returns an array of shape ``(2**n,) + shape(R)``; row index is the pattern code.
    """
    if m.n > G_MAX_N:
        raise SizeLimitError(f"g is a product of 2**n factors; n={m.n} exceeds {G_MAX_N}")
    R = np.asarray(R, dtype=complex)
    k = np.asarray(m.k)
    w = np.asarray(m.omega)
    roots = np.sqrt(k.reshape((-1,) + (1,) * R.ndim) ** 2 * R - w.reshape((-1,) + (1,) * R.ndim) ** 2)
    signs = sign_matrix(m.n)
    return -R + np.tensordot(signs, roots, axes=(1, 0)) / m.n


def g_eval(R: float, m: NormalizedModel) -> tuple[float, float]:
    """g(R) = prod_sigma f_sigma(R) as (real value, |imaginary residue|)."""
    terms = g_terms(complex(R), m)
    value = complex(np.prod(terms))
    return value.real, abs(value.imag)


def g_eval_many(R: Sequence[float], m: NormalizedModel) -> tuple[np.ndarray, np.ndarray]:
    terms = g_terms(np.asarray(R, dtype=float), m)
    value = np.prod(terms, axis=0)
    return value.real, np.abs(value.imag)
