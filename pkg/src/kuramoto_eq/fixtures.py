"""Named benchmark instances.

Every model here uses the coupling convention of :mod:`kuramoto_eq.model`,

    omega_nu = (1/n) sum_mu k_nu k_mu sin(theta_nu - theta_mu).

Two published instances, ``fourbus`` and ``n18``, list their couplings for
the unnormalized equation ``omega_nu = sum_mu k_nu k_mu sin(...)``.  Their
published equilibrium counts (8 and 8538) hold only in that reading.  Such
couplings are multiplied by sqrt(n) here; see :func:`from_unnormalized`.
"""

from __future__ import annotations

import math
from typing import Callable

from .model import ModelInput

FOURBUS_P = (1.00, -1.25, 2.00, -1.75)
FOURBUS_V = (1.10, 0.93, 1.05, 0.90)

N18_OMEGA = (
    0.1000, -0.1000, -0.1415, -0.1429, 0.1500, 0.2000, -0.4142, 0.7000, -0.8500,
    1.4142, 2.3000, 3.1415, -3.1904, -3.5000, 4.3333, -5.0000, -6.0000, 7.0000,
)

N60_OMEGA = (
    0, 0, 0, 0, 0, 0, 0, 0, 0, 20,
    -20, 40, -60, 60, 60, 80, -80, -100, -100, 120,
    -160, -160, -200, 240, -280, -300, 300, -360, 360, -380,
    420, 420, -420, -460, 460, 500, 520, 540, -560, -600,
    -620, 620, -640, 660, 660, 660, 680, -720, 780, -800,
    820, -820, -840, -840, -880, 920, -980, -980, -1080, 3500,
)


def from_unnormalized(omega, k) -> ModelInput:
    """Couplings given for ``omega = sum k k sin`` (no 1/n), rescaled by sqrt(n)."""
    s = math.sqrt(len(k))
    return ModelInput(omega, [s * x for x in k])


def ex31() -> ModelInput:
    return ModelInput([4.0, -4.0], [5.0, 2.0])


def fourbus() -> ModelInput:
    """4-bus network with published couplings k = 2|V| for the unnormalized equation."""
    return from_unnormalized(FOURBUS_P, [2.0 * v for v in FOURBUS_V])


def fourbus_literal() -> ModelInput:
    """Same network with k = 2|V| used directly in the 1/n equation (2 equilibria)."""
    return ModelInput(FOURBUS_P, [2.0 * v for v in FOURBUS_V])


def table1(n: int) -> ModelInput:
    """omega_mu = -1 + (2mu - 1)/n, k = sqrt(1.5); omega is re-centred exactly."""
    omega = [-1.0 + (2 * mu - 1) / n for mu in range(1, n + 1)]
    # the formula sums to zero in exact arithmetic; remove the rounding residue
    mean = math.fsum(omega) / n
    return ModelInput([w - mean for w in omega], [math.sqrt(1.5)] * n)


def n18() -> ModelInput:
    """18 buses, unit voltages, unit line reactances: k = (1, ..., 1) unnormalized."""
    return from_unnormalized(N18_OMEGA, [1.0] * 18)


def n60() -> ModelInput:
    return ModelInput([float(w) for w in N60_OMEGA], [60.0] * 60)


FIXTURES: dict[str, Callable[[], ModelInput]] = {
    "ex31": ex31,
    "fourbus": fourbus,
    "fourbus-literal": fourbus_literal,
    **{f"table1-n{n}": (lambda n=n: table1(n)) for n in range(3, 13)},
    "n18": n18,
    "n60": n60,
}

# equilibrium counts reported for each fixture
EXPECTED_COUNTS = {
    "ex31": 2,
    "fourbus": 8,
    "fourbus-literal": 2,
    **{f"table1-n{n}": c for n, c in zip(range(3, 13), (2, 2, 4, 4, 4, 4, 4, 4, 8, 8))},
    "n18": 8538,
    "n60": 2,
}


def get(name: str) -> ModelInput:
    try:
        return FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}") from None
