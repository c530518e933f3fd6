"""Brute-force reference solver.

Dense sampling plus bisection, with no interval arithmetic and no pruning.  It
is deliberately simple and independent of the certified path so that the two
can check each other on small instances.  It makes no completeness promise:
roots closer together than the grid spacing can be merged or reported as a
suspected cluster.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .conjugate import as_pattern, sign_matrix
from .errors import SineOverflowError, SizeLimitError
from .model import Equilibrium, ModelInput, NormalizedModel, normalize, residual
from .solver import deduplicate, reconstruct_theta

ORACLE_MAX_N = 10
REFINE_TOL = 1e-12
CLUSTER_TOL = 1e-8
_CHUNK = 4_000_000  # max elements of the pattern x grid value matrix

SIMPLE = "simple"
CLUSTER = "suspected_cluster"


@dataclass(frozen=True)
class OracleRoot:
    R: float
    kind: str
    code: int


def default_grid_points(n: int) -> int:
    return 100_000 if n <= 6 else 10_000


def _domain(signs: np.ndarray, m: NormalizedModel, domain: str) -> Optional[tuple[float, float]]:
    k = np.asarray(m.k)
    lo = m.boundary
    if domain == "global":
        # any root satisfies sqrt(R) <= (1/n) sum k, whatever the pattern
        hi = (float(np.sum(k)) / m.n) ** 2
    elif domain == "bracket":
        hi = (float(np.sum(k[signs > 0])) / m.n) ** 2
    else:
        raise ValueError(f"unknown domain {domain!r}")
    if hi < lo:
        return None
    return np.nextafter(lo, -np.inf), np.nextafter(hi, np.inf)


def _values(signs: np.ndarray, R: np.ndarray, k2: np.ndarray, w2: np.ndarray) -> np.ndarray:
    """f_sigma at R for each row of ``signs``; R is (G,) or matched (P,)."""
    if R.ndim == 1 and signs.ndim == 2 and R.shape[0] != signs.shape[0]:
        roots = np.sqrt(np.maximum(k2[:, None] * R[None, :] - w2[:, None], 0.0))
        return signs @ roots / len(k2) - R[None, :]
    roots = np.sqrt(np.maximum(k2[None, :] * R[:, None] - w2[None, :], 0.0))
    return np.sum(signs * roots, axis=1) / len(k2) - R


def _bisect(signs, lo, hi, k2, w2):
    flo = _values(signs, lo, k2, w2)
    for _ in range(200):
        if np.all(hi - lo <= REFINE_TOL * np.maximum(1.0, np.abs(hi))):
            break
        mid = lo + 0.5 * (hi - lo)
        fm = _values(signs, mid, k2, w2)
        left = np.sign(fm) == np.sign(flo)
        lo = np.where(left, mid, lo)
        flo = np.where(left, fm, flo)
        hi = np.where(left, hi, mid)
    return lo + 0.5 * (hi - lo)


def _golden_min(signs, a, b, orient, k2, w2, iters=90):
    """Vectorized golden-section minimization of orient*f on [a, b]."""
    g = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - g * (b - a)
    d = a + g * (b - a)
    fc = orient * _values(signs, c, k2, w2)
    fd = orient * _values(signs, d, k2, w2)
    for _ in range(iters):
        left = fc < fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        c = b - g * (b - a)
        d = a + g * (b - a)
        fc = orient * _values(signs, c, k2, w2)
        fd = orient * _values(signs, d, k2, w2)
    x = 0.5 * (a + b)
    return x, orient * _values(signs, x, k2, w2)


def _scan(signs: np.ndarray, codes: np.ndarray, grid: np.ndarray, k2, w2) -> list[OracleRoot]:
    """Roots of every pattern in ``signs`` over the shared sample grid."""
    F = _values(signs, grid, k2, w2)
    out: list[OracleRoot] = []

    # exact zeros at a sample: a touch if both neighbours share a sign
    zero = F == 0.0
    G = len(grid)
    for p, i in zip(*np.nonzero(zero)):
        left = F[p, i - 1] if i > 0 else 0.0
        right = F[p, i + 1] if i + 1 < G else 0.0
        kind = CLUSTER if left * right > 0.0 else SIMPLE
        out.append(OracleRoot(float(grid[i]), kind, int(codes[p])))
    change = (F[:, :-1] * F[:, 1:] < 0.0)
    p_idx, i_idx = np.nonzero(change)
    if len(p_idx):
        R = _bisect(signs[p_idx], grid[i_idx].copy(), grid[i_idx + 1].copy(), k2, w2)
        out.extend(OracleRoot(float(r), SIMPLE, int(codes[p])) for p, r in zip(p_idx, R))

    # interior extrema of f that stay on one side of zero between three samples:
    # the function may touch or briefly cross zero there
    A = np.abs(F)
    inner = (A[:, 1:-1] <= A[:, :-2]) & (A[:, 1:-1] <= A[:, 2:])
    same = (np.sign(F[:, :-2]) == np.sign(F[:, 1:-1])) & (np.sign(F[:, 1:-1]) == np.sign(F[:, 2:]))
    same &= F[:, 1:-1] != 0.0
    p_idx, i_idx = np.nonzero(inner & same)
    if len(p_idx):
        i_idx = i_idx + 1
        orient = np.sign(F[p_idx, i_idx])
        sg = signs[p_idx]
        a, b = grid[i_idx - 1].copy(), grid[i_idx + 1].copy()
        x, gx = _golden_min(sg, a, b, orient, k2, w2)
        crossing = gx < 0.0
        if np.any(crossing):
            c = np.nonzero(crossing)[0]
            left = _bisect(sg[c], a[c], x[c].copy(), k2, w2)
            right = _bisect(sg[c], x[c].copy(), b[c], k2, w2)
            for j, l, r in zip(c, left, right):
                out.append(OracleRoot(float(l), SIMPLE, int(codes[p_idx[j]])))
                out.append(OracleRoot(float(r), SIMPLE, int(codes[p_idx[j]])))
        touch = (~crossing) & (gx < CLUSTER_TOL)
        for j in np.nonzero(touch)[0]:
            out.append(OracleRoot(float(x[j]), CLUSTER, int(codes[p_idx[j]])))
    return out


def _arrays(m: NormalizedModel):
    k = np.asarray(m.k, dtype=float)
    w = np.asarray(m.omega, dtype=float)
    return k * k, w * w


def brute_force_roots(
    sigma, m: NormalizedModel, grid_points: Optional[int] = None, domain: str = "bracket"
) -> list[OracleRoot]:
    """Approximate positive roots of f_sigma by sampling and bisection.

    ``domain="bracket"`` samples the pattern's root bracket; ``"global"`` uses
    ``[(omega_n/k_n)**2, (sum k / n)**2]``, valid for every pattern, which makes
    the result independent of the bracket formula.
    """
    sigma = as_pattern(sigma, m.n)
    G = grid_points or default_grid_points(m.n)
    if G < 1000:
        raise ValueError("grid_points must be at least 1000")
    signs = np.array([sigma.signs], dtype=float)
    dom = _domain(signs[0], m, domain)
    if dom is None:
        return []
    grid = np.linspace(dom[0], dom[1], G)
    k2, w2 = _arrays(m)
    roots = _scan(signs, np.array([sigma.code]), grid, k2, w2)
    return sorted(roots, key=lambda r: r.R)


def all_roots(m: NormalizedModel, grid_points: Optional[int] = None) -> dict[int, list[OracleRoot]]:
    """Roots of every pattern over the global domain, keyed by code."""
    G = grid_points or default_grid_points(m.n)
    signs = sign_matrix(m.n)
    codes = np.arange(1 << m.n)
    dom = _domain(signs[-1], m, "global")
    out: dict[int, list[OracleRoot]] = {int(c): [] for c in codes}
    if dom is None:
        return out
    grid = np.linspace(dom[0], dom[1], G)
    k2, w2 = _arrays(m)
    rows = max(1, _CHUNK // G)
    for start in range(0, len(codes), rows):
        sl = slice(start, start + rows)
        for r in _scan(signs[sl], codes[sl], grid, k2, w2):
            out[r.code].append(r)
    for v in out.values():
        v.sort(key=lambda r: r.R)
    return out


def brute_force_equilibria(
    m, grid_points: Optional[int] = None, angle_tol: float = 1e-7
) -> list[Equilibrium]:
    """All equilibria found by the oracle, in the same format as the solver."""
    if isinstance(m, ModelInput):
        m = normalize(m)
    if m.n > ORACLE_MAX_N:
        raise SizeLimitError(f"oracle enumerates 2**n patterns; n={m.n} exceeds {ORACLE_MAX_N}")
    original = m.denormalize()
    eqs = []
    for code, roots in all_roots(m, grid_points).items():
        for root in roots:
            try:
                theta = reconstruct_theta(root.R, code, m)
            except SineOverflowError:
                continue
            theta = m.to_original(theta)
            sigma = m.to_original(as_pattern(code, m.n).signs)
            eqs.append(Equilibrium(theta, root.R, sigma, residual(theta, original), False, code))
    eqs = deduplicate(eqs, angle_tol)
    eqs.sort(key=lambda e: (-e.code, -e.R))
    return eqs
