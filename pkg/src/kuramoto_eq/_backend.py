"""Selects the per-pattern isolation kernel.

The compiled ``_ckernel`` extension is used when it was built; otherwise the
pure-Python driver in :mod:`kuramoto_eq.interval` runs the same algorithm on
:class:`~kuramoto_eq.conjugate.PatternFunction` enclosures.  Setting
``KURAMOTO_EQ_PURE=1`` forces the fallback.
"""

from __future__ import annotations

import os

import numpy as np

from .conjugate import PatternFunction, coefficient_arrays
from .interval import _isolate

try:
    from . import _ckernel
except ImportError:  # pragma: no cover - depends on the build
    _ckernel = None

BACKENDS = ("compiled", "python") if _ckernel is not None else ("python",)


def _default() -> str:
    if os.environ.get("KURAMOTO_EQ_PURE", "") not in ("", "0"):
        return "python"
    return BACKENDS[0]


BACKEND = _default()


def isolate_python(pf: PatternFunction, lo: float, hi: float, tol: float, max_depth: int) -> list[tuple]:
    return _isolate(pf.enclose, pf.enclose_deriv, lo, hi, tol, max_depth)


def isolate_compiled(pf: PatternFunction, lo: float, hi: float, tol: float, max_depth: int) -> list[tuple]:
    k2lo, k2hi, w2lo, w2hi = coefficient_arrays(pf.model)
    signs = np.array(pf.sigma.signs, dtype=float)
    return _ckernel.isolate(signs, k2lo, k2hi, w2lo, w2hi, lo, hi, tol, max_depth)


def get_isolator(backend: str | None = None):
    """Raw-box isolator ``(pf, lo, hi, tol, max_depth) -> [(lo, hi, cert, flag)]``."""
    backend = backend or BACKEND
    if backend == "compiled":
        if _ckernel is None:
            raise RuntimeError("compiled kernel is not available; build with `pip install -e .`")
        return isolate_compiled
    if backend == "python":
        return isolate_python
    raise ValueError(f"unknown backend {backend!r}")
