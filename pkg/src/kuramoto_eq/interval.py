"""Outward-rounded interval arithmetic and an interval Newton root isolator.

Endpoints are IEEE doubles.  Rather than switching the FPU rounding mode, every
computed endpoint is pushed one representable value outward with
``math.nextafter``.  Since the basic operations and ``sqrt`` are correctly
rounded, the nudged endpoint always brackets the exact real result.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

_INF = math.inf
_nextafter = math.nextafter


def _dn(x: float) -> float:
    return _nextafter(x, -_INF)


def _up(x: float) -> float:
    return _nextafter(x, _INF)


def _prod(a: float, b: float) -> float:
    # 0 * inf is 0 for enclosure purposes
    if a == 0.0 or b == 0.0:
        return 0.0
    return a * b


@dataclass(frozen=True, slots=True)
class Interval:
    """Closed interval ``[lo, hi]`` over the extended reals.

    The canonical empty interval is :data:`EMPTY` (``lo > hi``).
    """

    lo: float
    hi: float

    @classmethod
    def point(cls, x: float) -> Interval:
        return cls(x, x)

    @classmethod
    def enclose(cls, x: float) -> Interval:
        """Tight enclosure of a float that itself carries rounding error."""
        return cls(_dn(x), _up(x))

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return self.lo + 0.5 * (self.hi - self.lo)

    @property
    def is_bounded(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0.0 <= self.hi

    def subset_of(self, other: Interval) -> bool:
        return other.lo <= self.lo and self.hi <= other.hi

    def interior_of(self, other: Interval) -> bool:
        return other.lo < self.lo and self.hi < other.hi

    def intersect(self, other: Interval) -> Interval:
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        return Interval(lo, hi) if lo <= hi else EMPTY

    def hull(self, other: Interval) -> Interval:
        if self.is_empty:
            return other
        if other.is_empty:
            return self
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def __neg__(self) -> Interval:
        return Interval(-self.hi, -self.lo)

    def __add__(self, other) -> Interval:
        other = _coerce(other)
        return Interval(_dn(self.lo + other.lo), _up(self.hi + other.hi))

    __radd__ = __add__

    def __sub__(self, other) -> Interval:
        other = _coerce(other)
        return Interval(_dn(self.lo - other.hi), _up(self.hi - other.lo))

    def __rsub__(self, other) -> Interval:
        return _coerce(other) - self

    def __mul__(self, other) -> Interval:
        other = _coerce(other)
        p = (
            _prod(self.lo, other.lo),
            _prod(self.lo, other.hi),
            _prod(self.hi, other.lo),
            _prod(self.hi, other.hi),
        )
        return Interval(_dn(min(p)), _up(max(p)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> Interval:
        other = _coerce(other)
        if other.lo > 0.0 or other.hi < 0.0:
            q = (
                self.lo / other.lo,
                self.lo / other.hi,
                self.hi / other.lo,
                self.hi / other.hi,
            )
            return Interval(_dn(min(q)), _up(max(q)))
        if other.lo == 0.0 and other.hi > 0.0 and self.lo > 0.0:
            return Interval(_dn(self.lo / other.hi), _INF)
        raise ZeroDivisionError(f"divisor {other} contains zero")

    def __rtruediv__(self, other) -> Interval:
        return _coerce(other) / self

    def __repr__(self) -> str:
        if self.is_empty:
            return "Interval(EMPTY)"
        return f"Interval({self.lo!r}, {self.hi!r})"


EMPTY = Interval(_INF, -_INF)
ENTIRE = Interval(-_INF, _INF)


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    x = float(x)
    return Interval(x, x)


def interval_binary(op: str, a: Interval, b: Interval) -> Interval:
    """Apply ``op`` in {"add", "sub", "mul"} to two non-empty intervals."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown interval op {op!r}")


def interval_sqrt(a: Interval) -> Interval:
    """Enclosure of ``sqrt(a ∩ [0, inf))``; EMPTY when ``a`` is negative.

    The part of ``a`` below zero is clipped, so callers must only pass radicands
    that are nonnegative in exact arithmetic over the region they care about.
    """
    if a.is_empty or a.hi < 0.0:
        return EMPTY
    lo = 0.0 if a.lo <= 0.0 else _dn(math.sqrt(a.lo))
    return Interval(lo, _up(math.sqrt(a.hi)))


class RootStatus(enum.Enum):
    CERTIFIED_UNIQUE = "certified_unique"
    UNVERIFIED_CLUSTER = "unverified_cluster"


@dataclass(frozen=True)
class RootRecord:
    isolator: Interval
    status: RootStatus
    sign_pattern: Optional[object] = None
    depth_exceeded: bool = False

    @property
    def certified(self) -> bool:
        return self.status is RootStatus.CERTIFIED_UNIQUE

    @property
    def estimate(self) -> float:
        return self.isolator.mid


Evaluator = Callable[[Interval], Interval]

DEFAULT_WIDTH_TOL = 1e-12
DEFAULT_MAX_DEPTH = 4096


def newton_operator(f: Evaluator, df: Evaluator, x: Interval) -> Optional[Interval]:
    """One interval Newton image ``m - F(m)/F'(x)``, or None if not applicable."""
    d = df(x)
    if d.is_empty or d.contains_zero():
        return None
    m = x.mid
    fm = f(Interval(m, m))
    if fm.is_empty:
        return None
    return m - fm / d


def newton_all_roots(
    f: Evaluator,
    df: Evaluator,
    interval: Interval,
    width_tol: float = DEFAULT_WIDTH_TOL,
    max_depth: int = DEFAULT_MAX_DEPTH,
    relative: bool = True,
) -> list[RootRecord]:
    """Isolate every zero of ``f`` in a bounded interval.

    ``f`` and ``df`` map an :class:`Interval` to an enclosure of the function
    and its derivative over it.  ``f`` may return EMPTY where the function is
    undefined; ``df`` may return an unbounded interval, which forces bisection.

    The returned isolators are disjoint and jointly contain every root.  A
    record is ``CERTIFIED_UNIQUE`` only if some ancestor box passed the test
    ``N(X) ⊂ int(X)``; boxes that shrink below tolerance without a certificate
    (multiple roots, tangencies) come back as ``UNVERIFIED_CLUSTER``.

    With ``relative=True`` the tolerance is scaled by ``max(1, |interval.hi|)``.
    """
    if interval.is_empty:
        return []
    if not interval.is_bounded:
        raise ValueError("newton_all_roots needs a bounded interval")
    tol = width_tol * max(1.0, abs(interval.hi)) if relative else width_tol
    raw = _isolate(f, df, interval.lo, interval.hi, tol, max_depth)
    return merge_records(raw, f, df)


def _isolate(f, df, a0, b0, tol, max_depth):
    """Box-stack driver.  Keep step-for-step identical to ``_ckernel.pyx``."""
    out = []
    stack = [(a0, b0, 0, False)]
    while stack:
        a, b, depth, cert = stack.pop()
        x = Interval(a, b)
        fx = f(x)
        if fx.is_empty or fx.lo > 0.0 or fx.hi < 0.0:
            continue
        if depth > max_depth:
            out.append((a, b, False, True))
            continue
        d = df(x)
        m = a + 0.5 * (b - a)
        fm = f(Interval(m, m))
        if d.is_bounded and not fm.is_empty:
            # mean-value form; much tighter than fx near multiple roots
            fmv = fm + d * Interval(_dn(a - m), _up(b - m))
            if fmv.lo > 0.0 or fmv.hi < 0.0:
                continue
        newton = not (fm.is_empty or d.is_empty or d.lo <= 0.0 <= d.hi)
        if newton:
            n = m - fm / d
            a2 = max(a, n.lo)
            b2 = min(b, n.hi)
            if a2 > b2:
                continue
            cert2 = cert or (a < n.lo and n.hi < b)
        if b - a <= tol or not (a < m < b):
            if newton:
                out.append((a2, b2, cert2, False))
            else:
                out.append((a, b, cert, False))
            continue
        if not newton:
            stack.append((m, b, depth + 1, False))
            stack.append((a, m, depth + 1, False))
        elif cert2:
            if b2 - a2 < b - a:
                stack.append((a2, b2, depth + 1, True))
            else:
                out.append((a2, b2, True, False))
        elif b2 - a2 <= 0.5 * (b - a):
            stack.append((a2, b2, depth + 1, False))
        else:
            m2 = a2 + 0.5 * (b2 - a2)
            if not (a2 < m2 < b2):
                out.append((a2, b2, False, False))
                continue
            stack.append((m2, b2, depth + 1, False))
            stack.append((a2, m2, depth + 1, False))
    return out


def merge_records(
    raw: Iterable[tuple], f: Evaluator, df: Evaluator, sign_pattern=None
) -> list[RootRecord]:
    """Merge touching/overlapping raw boxes ``(lo, hi, certified, depth_flag)``.

    A single certified box keeps its status.  A merged group is re-certified on
    its hull with one Newton test, otherwise it becomes a cluster.
    """
    boxes = sorted(raw, key=lambda r: (r[0], r[1]))
    groups: list[list[tuple]] = []
    reach = -_INF
    for box in boxes:
        if groups and box[0] <= reach:
            groups[-1].append(box)
            reach = max(reach, box[1])
        else:
            groups.append([box])
            reach = box[1]
    records = []
    for group in groups:
        lo = min(g[0] for g in group)
        hi = max(g[1] for g in group)
        hull = Interval(lo, hi)
        flagged = any(g[3] for g in group)
        if len(group) == 1:
            cert = group[0][2]
        else:
            n = newton_operator(f, df, hull)
            cert = n is not None and n.interior_of(hull)
        status = RootStatus.CERTIFIED_UNIQUE if cert else RootStatus.UNVERIFIED_CLUSTER
        records.append(RootRecord(hull, status, sign_pattern, flagged))
    return records
