"""Model parameters, input conditions, equilibria and residuals."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ValidationError, ZeroOrderParameterError

DEFAULT_SUM_TOL = 1e-9


@dataclass(frozen=True)
class ModelInput:
    """Raw parameters: natural frequencies ``omega`` and couplings ``k``."""

    omega: tuple[float, ...]
    k: tuple[float, ...]

    def __init__(self, omega: Sequence[float], k: Sequence[float]):
        omega = tuple(float(w) for w in omega)
        k = tuple(float(x) for x in k)
        if len(omega) != len(k):
            raise ValueError(f"omega has {len(omega)} entries but k has {len(k)}")
        if len(omega) < 2:
            raise ValueError("need at least two oscillators")
        object.__setattr__(self, "omega", omega)
        object.__setattr__(self, "k", k)

    @property
    def n(self) -> int:
        return len(self.omega)

    @classmethod
    def from_power_flow(cls, P: Sequence[float], V: Sequence[float]) -> ModelInput:
        """Lossless, uniform-susceptance network: omega = P, k = sqrt(n)|V|.

        For the 4-bus case this is the familiar ``k = 2|V|``.
        """
        scale = math.sqrt(len(P))
        return cls(P, [scale * abs(v) for v in V])

    def with_zero_mean(self) -> ModelInput:
        mean = math.fsum(self.omega) / self.n
        return ModelInput([w - mean for w in self.omega], self.k)


@dataclass(frozen=True)
class ValidationReport:
    ic1: bool
    ic2: bool
    ic3: bool
    ic4: bool
    omega_sum: float

    @property
    def ok(self) -> bool:
        return self.ic1 and self.ic2 and self.ic3

    def __str__(self) -> str:
        flags = ", ".join(
            f"{name}={'ok' if val else 'FAIL'}"
            for name, val in (("IC1", self.ic1), ("IC2", self.ic2), ("IC3", self.ic3), ("IC4", self.ic4))
        )
        return f"{flags} (sum(omega)={self.omega_sum:.3g})"


def validate(model: ModelInput, sum_tol: float = DEFAULT_SUM_TOL) -> ValidationReport:
    """Check the input conditions without raising.

    IC1 holds iff ``|sum(omega)| <= sum_tol * max(1, max|omega|)``.  IC4 is
    evaluated on the order produced by :func:`normalize`.
    """
    total = math.fsum(model.omega)
    scale = max(1.0, max(abs(w) for w in model.omega))
    ic1 = abs(total) <= sum_tol * scale
    ic2 = any(w != 0.0 for w in model.omega)
    ic3 = all(x > 0.0 for x in model.k)
    ic4 = False
    if ic3:
        order = _ic3_order(model.omega, model.k)
        ks = [model.k[i] for i in order]
        ic4 = all(ks[i] >= ks[i + 1] for i in range(len(ks) - 1))
    return ValidationReport(ic1, ic2, ic3, ic4, total)


def _ic3_order(omega, k) -> list[int]:
    return sorted(range(len(omega)), key=lambda i: abs(omega[i] / k[i]))


@dataclass(frozen=True)
class NormalizedModel:
    """Parameters reordered so that ``|omega/k|`` is nondecreasing.

    ``perm[i]`` is the original (0-based) index of sorted entry ``i``.
    """

    omega: tuple[float, ...]
    k: tuple[float, ...]
    perm: tuple[int, ...]
    ic4: bool

    @property
    def n(self) -> int:
        return len(self.omega)

    @property
    def boundary(self) -> float:
        """Lower edge of the real domain, ``(omega_n / k_n)**2``."""
        return (self.omega[-1] / self.k[-1]) ** 2

    def to_original(self, values: Sequence) -> tuple:
        """Scatter a sorted-order vector back to the caller's indexing."""
        out = [None] * self.n
        for i, p in enumerate(self.perm):
            out[p] = values[i]
        return tuple(out)

    def denormalize(self) -> ModelInput:
        return ModelInput(self.to_original(self.omega), self.to_original(self.k))


def normalize(model: ModelInput) -> NormalizedModel:
    """Stable sort by ``|omega/k|`` ascending; record the permutation and IC4."""
    order = _ic3_order(model.omega, model.k)
    ks = tuple(model.k[i] for i in order)
    ic4 = all(ks[i] >= ks[i + 1] for i in range(len(ks) - 1))
    return NormalizedModel(tuple(model.omega[i] for i in order), ks, tuple(order), ic4)


def prepare(model: ModelInput, sum_tol: float = DEFAULT_SUM_TOL, fix_sum: bool = False) -> NormalizedModel:
    """Validate (optionally re-centering omega) and normalize, or raise."""
    if fix_sum:
        model = model.with_zero_mean()
    report = validate(model, sum_tol)
    if not report.ok:
        raise ValidationError(report)
    return normalize(model)


@dataclass(frozen=True)
class Equilibrium:
    """One equilibrium, stored in the caller's original oscillator order.

    ``code`` is the sign-pattern code in the normalized (IC3) order, which is
    the order in which the solver enumerates patterns.
    """

    theta: tuple[float, ...]
    R: float
    sigma: tuple[int, ...]
    residual: float
    certified: bool
    code: int = -1


def wrap_angle(x: float) -> float:
    """Reduce to (-pi, pi]; -pi maps to pi."""
    y = math.fmod(x + math.pi, 2.0 * math.pi)
    if y <= 0.0:
        y += 2.0 * math.pi
    return y - math.pi


def residual(theta: Sequence[float], model: ModelInput) -> float:
    """max_nu |omega_nu - (1/n) sum_mu k_nu k_mu sin(theta_nu - theta_mu)|"""
    th = np.asarray(theta, dtype=float)
    w = np.asarray(model.omega, dtype=float)
    k = np.asarray(model.k, dtype=float)
    if th.shape != w.shape:
        raise ValueError("theta and omega lengths differ")
    n = len(th)
    coupling = np.sin(th[:, None] - th[None, :]) @ k
    return float(np.max(np.abs(w - k * coupling / n)))


def order_parameter(theta: Sequence[float], k: Sequence[float]) -> complex:
    """(1/n) sum_mu k_mu exp(i theta_mu)."""
    return sum(km * cmath.exp(1j * t) for km, t in zip(k, theta)) / len(k)


def oc1_shift(theta: Sequence[float], k: Sequence[float], tol: float = 1e-12) -> tuple[float, ...]:
    """Rotate ``theta`` so that sum_mu k_mu exp(i theta_mu) is real and positive."""
    z = order_parameter(theta, k)
    scale = max(1.0, sum(abs(x) for x in k) / len(k))
    if abs(z) <= tol * scale:
        raise ZeroOrderParameterError(f"order parameter {abs(z):.3g} is numerically zero")
    phi = -cmath.phase(z)
    return tuple(wrap_angle(t + phi) for t in theta)


def random_model(
    rng: np.random.Generator,
    n: int,
    ic4: bool = False,
    spread: Optional[float] = None,
) -> ModelInput:
    """Random IC1-IC3 instance; with ``ic4=True`` k is arranged to satisfy IC4.

    ``spread`` scales |omega| relative to k**2; small spreads give many
    equilibria, spreads near 1 give few.
    """
    if spread is None:
        spread = rng.uniform(0.05, 0.9)
    k = rng.uniform(0.5, 1.5, size=n)
    omega = rng.uniform(-1.0, 1.0, size=n)
    omega -= omega.mean()
    omega *= spread * float(np.mean(k)) ** 2 / max(np.max(np.abs(omega)), 1e-300)
    omega -= omega.mean()
    if ic4:
        # larger |omega| gets smaller k, so sorting by |omega/k| keeps k descending
        order = np.argsort(np.abs(omega), kind="stable")
        k_sorted = np.sort(k)[::-1]
        k = np.empty(n)
        k[order] = k_sorted
    return ModelInput(omega.tolist(), k.tolist())
