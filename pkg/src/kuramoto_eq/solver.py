"""Locate every equilibrium of a rank-one Kuramoto model.

Each sign pattern sigma gives a decoupled scalar equation f_sigma(R) = 0.  A
positive root R yields exactly one equilibrium (in the representative whose
weighted order parameter is real and positive)::

    sin(theta_nu) = omega_nu / (k_nu sqrt(R)),   sign(cos(theta_nu)) = sigma_nu

``solve_basic`` visits all 2**n patterns; ``solve_optimized`` walks the codes
downward and, on models whose couplings are nonincreasing in the solver order
(IC4), jumps over whole blocks of provably rootless patterns.
"""

from __future__ import annotations

import math
import time
import warnings
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import cKDTree

from . import _backend
from .conjugate import PatternFunction, SignPattern, as_pattern
from .errors import SineOverflowError
from .interval import DEFAULT_MAX_DEPTH, DEFAULT_WIDTH_TOL, Interval, RootRecord, _dn, _up, merge_records
from .model import Equilibrium, ModelInput, NormalizedModel, prepare, residual
from .prune import TERMINATE, _partial_sums_nonpositive, boundary_enclosure, bracket_from_plus_sum, skip_decrement

DEFAULT_ANGLE_TOL = 1e-7
SINE_SLACK = 1e-9
RESIDUAL_FACTOR = 1e-8

# per-pattern outcomes
BRACKET_EMPTY = "bracket_empty"
PARTIAL_SUM = "partial_sum"
SOLVED = "solved"
SKIPPED = "skipped"


@dataclass
class SolveResult:
    """Equilibria plus a record of what happened to every pattern.

    ``outcomes`` maps each visited pattern code (solver order) to one of
    ``bracket_empty``, ``partial_sum`` or ``solved``; ``skipped`` lists the
    inclusive code ranges ``(lo, hi)`` jumped over without a visit.  ``roots``
    maps solved codes to the number of equilibria they produced after
    deduplication.
    """

    model: NormalizedModel
    algorithm: str
    equilibria: list[Equilibrium]
    patterns_visited: int
    outcomes: dict[int, str] = field(default_factory=dict)
    roots: dict[int, int] = field(default_factory=dict)
    skipped: list[tuple[int, int]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    wall_time_s: float = 0.0

    @property
    def count(self) -> int:
        return len(self.equilibria)

    def outcome(self, code: int) -> str:
        if code in self.outcomes:
            return self.outcomes[code]
        if any(lo <= code <= hi for lo, hi in self.skipped):
            return SKIPPED
        raise KeyError(code)


class _PatternSolver:
    """Per-model state shared by every pattern: coefficient enclosures, kernel."""

    def __init__(self, m: NormalizedModel, width_tol: float, max_depth: int, backend: Optional[str]):
        self.m = m
        self.width_tol = width_tol
        self.max_depth = max_depth
        self.isolate = _backend.get_isolator(backend)
        self.lower = boundary_enclosure(m)
        self.k = m.k
        self.n = m.n

    def bracket(self, signs: Sequence[int]) -> Optional[Interval]:
        lo = hi = 0.0
        for s, k in zip(signs, self.k):
            if s > 0:
                lo = _dn(lo + k)
                hi = _up(hi + k)
        return bracket_from_plus_sum(Interval(lo, hi), self.n, self.lower)

    def partial_sum(self, signs: Sequence[int]) -> bool:
        return _partial_sums_nonpositive(signs, self.k)

    def roots(self, sigma: SignPattern, br: Interval) -> list[RootRecord]:
        pf = PatternFunction(sigma, self.m)
        tol = self.width_tol * max(1.0, abs(br.hi))
        raw = self.isolate(pf, br.lo, br.hi, tol, self.max_depth)
        return merge_records(raw, pf.enclose, pf.enclose_deriv, sign_pattern=sigma)


def reconstruct_theta(R, sigma, m: NormalizedModel) -> tuple[float, ...]:
    """Angles (solver order) on branch ``sigma`` for squared order parameter ``R``.

    ``R`` may be a float or a :class:`RootRecord` (its midpoint is used).
    Raises :class:`SineOverflowError` if some ``|omega/(k sqrt R)|`` exceeds 1
    by more than the rounding slack.
    """
    if isinstance(R, RootRecord):
        R = R.estimate
    sigma = as_pattern(sigma, m.n)
    r = math.sqrt(R)
    out = []
    for s, k, w in zip(sigma.signs, m.k, m.omega):
        kr = k * r
        sine = w / kr
        if abs(sine) > 1.0 + SINE_SLACK:
            raise SineOverflowError(f"|sin(theta)| = {abs(sine):.12g} > 1 at R={R!r}")
        sine = max(-1.0, min(1.0, sine)) + 0.0  # +0.0 turns -0.0 into 0.0
        # cosine from the radicand keeps full accuracy near |sine| = 1
        rad = k * k * R - w * w
        cosine = math.sqrt(rad) / kr if rad > 0.0 else 0.0
        out.append(math.atan2(sine, s * cosine))
    return tuple(out)


def _circular_gap(a: np.ndarray, b: np.ndarray) -> float:
    d = np.abs(np.asarray(a) - np.asarray(b)) % (2.0 * np.pi)
    return float(np.max(np.minimum(d, 2.0 * np.pi - d)))


def deduplicate(eqs: Sequence[Equilibrium], angle_tol: float = DEFAULT_ANGLE_TOL) -> list[Equilibrium]:
    """Merge equilibria whose angle vectors agree within ``angle_tol`` on the circle.

    From each group the certified member is kept, ties broken by smaller code.
    Input order is preserved for the survivors.
    """
    eqs = list(eqs)
    if len(eqs) < 2:
        return eqs
    theta = np.array([e.theta for e in eqs], dtype=float)
    # (cos, sin) embedding: circular gap <= tol implies chord gap <= tol
    emb = np.concatenate([np.cos(theta), np.sin(theta)], axis=1)
    tree = cKDTree(emb)
    pairs = tree.query_pairs(r=angle_tol, p=np.inf, output_type="ndarray")
    parent = list(range(len(eqs)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i, j in pairs:
        if _circular_gap(theta[i], theta[j]) <= angle_tol:
            ri, rj = find(int(i)), find(int(j))
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    best: dict[int, int] = {}
    for i, e in enumerate(eqs):
        root = find(i)
        j = best.get(root)
        if j is None or (e.certified, -e.code) > (eqs[j].certified, -eqs[j].code):
            best[root] = i
    keep = sorted(best.values())
    return [eqs[i] for i in keep]


def _equilibria_from_roots(
    records: Sequence[RootRecord], sigma: SignPattern, m: NormalizedModel, original: ModelInput, warn: list
) -> list[Equilibrium]:
    out = []
    bound = RESIDUAL_FACTOR * (1.0 + max(abs(w) for w in original.omega))
    for rec in records:
        if rec.depth_exceeded:
            warn.append(f"pattern {sigma.code}: depth limit reached near R={rec.estimate!r}")
        try:
            theta = reconstruct_theta(rec.estimate, sigma, m)
        except SineOverflowError as exc:
            warn.append(f"pattern {sigma.code}: {exc}")
            continue
        theta = m.to_original(theta)
        res = residual(theta, original)
        out.append(
            Equilibrium(
                theta=theta,
                R=rec.estimate,
                sigma=m.to_original(sigma.signs),
                residual=res,
                certified=rec.certified and res <= bound,
                code=sigma.code,
            )
        )
    return out


def _finish(result: SolveResult, raw: list[Equilibrium], angle_tol: float, t0: float) -> SolveResult:
    eqs = deduplicate(raw, angle_tol)
    eqs.sort(key=lambda e: (-e.code, -e.R))
    roots: dict[int, int] = {}
    for e in eqs:
        roots[e.code] = roots.get(e.code, 0) + 1
    for code, outcome in result.outcomes.items():
        if outcome == SOLVED:
            roots.setdefault(code, 0)
    result.equilibria = eqs
    result.roots = roots
    for w in result.warnings:
        warnings.warn(w, RuntimeWarning, stacklevel=3)
    result.wall_time_s = time.perf_counter() - t0
    return result


def solve_basic(
    m: NormalizedModel,
    width_tol: float = DEFAULT_WIDTH_TOL,
    max_depth: int = DEFAULT_MAX_DEPTH,
    angle_tol: float = DEFAULT_ANGLE_TOL,
    backend: Optional[str] = None,
    prune: bool = False,
) -> SolveResult:
    """Solve every one of the 2**n patterns over its root bracket.

    With ``prune=True`` the partial-sum test is applied before solving (bracket
    emptiness is always used; it is exact and costs nothing).
    """
    t0 = time.perf_counter()
    ps = _PatternSolver(m, width_tol, max_depth, backend)
    original = m.denormalize()
    result = SolveResult(m, "basic", [], 1 << m.n)
    raw: list[Equilibrium] = []
    for code in range((1 << m.n) - 1, -1, -1):
        sigma = SignPattern.from_code(code, m.n)
        br = ps.bracket(sigma.signs)
        if br is None:
            result.outcomes[code] = BRACKET_EMPTY
            continue
        if prune and ps.partial_sum(sigma.signs):
            result.outcomes[code] = PARTIAL_SUM
            continue
        result.outcomes[code] = SOLVED
        raw.extend(_equilibria_from_roots(ps.roots(sigma, br), sigma, m, original, result.warnings))
    return _finish(result, raw, angle_tol, t0)


def solve_optimized(
    m: NormalizedModel,
    width_tol: float = DEFAULT_WIDTH_TOL,
    max_depth: int = DEFAULT_MAX_DEPTH,
    angle_tol: float = DEFAULT_ANGLE_TOL,
    backend: Optional[str] = None,
) -> SolveResult:
    """Descending walk over codes with pruning and, under IC4, block skipping.

    Without IC4 the skip rule is unsound, so every pattern is visited with
    bracket and partial-sum pruning only.
    """
    if not m.ic4:
        res = solve_basic(m, width_tol, max_depth, angle_tol, backend, prune=True)
        res.algorithm = "optimized"
        return res
    t0 = time.perf_counter()
    ps = _PatternSolver(m, width_tol, max_depth, backend)
    original = m.denormalize()
    result = SolveResult(m, "optimized", [], 0)
    raw: list[Equilibrium] = []
    iota = (1 << m.n) - 1
    visited = 0
    while iota >= 0:
        visited += 1
        sigma = SignPattern.from_code(iota, m.n)
        br = ps.bracket(sigma.signs)
        if br is None:
            result.outcomes[iota] = BRACKET_EMPTY
            found = False
        elif ps.partial_sum(sigma.signs):
            result.outcomes[iota] = PARTIAL_SUM
            found = False
        else:
            result.outcomes[iota] = SOLVED
            eqs = _equilibria_from_roots(ps.roots(sigma, br), sigma, m, original, result.warnings)
            raw.extend(eqs)
            found = bool(eqs)
        if found:
            iota -= 1
            continue
        nxt = skip_decrement(iota, m.n)
        lo = 0 if nxt == TERMINATE else nxt + 1
        if lo <= iota - 1:
            result.skipped.append((lo, iota - 1))
        iota = nxt
    result.patterns_visited = visited
    return _finish(result, raw, angle_tol, t0)


ALGORITHMS = ("basic", "optimized", "oracle")


def solve(
    model: ModelInput,
    algorithm: str = "optimized",
    width_tol: float = DEFAULT_WIDTH_TOL,
    fix_sum: bool = False,
    sum_tol: Optional[float] = None,
    backend: Optional[str] = None,
) -> SolveResult:
    """Validate, normalize and solve ``model`` with the named algorithm."""
    kwargs = {} if sum_tol is None else {"sum_tol": sum_tol}
    m = prepare(model, fix_sum=fix_sum, **kwargs)
    if algorithm == "basic":
        return solve_basic(m, width_tol=width_tol, backend=backend)
    if algorithm == "optimized":
        return solve_optimized(m, width_tol=width_tol, backend=backend)
    if algorithm == "oracle":
        from .oracle import brute_force_equilibria

        t0 = time.perf_counter()
        eqs = brute_force_equilibria(m)
        res = SolveResult(m, "oracle", eqs, 1 << m.n)
        res.wall_time_s = time.perf_counter() - t0
        return res
    raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
