"""Numerical checks of complete monotonicity, its logarithmic variant and log-convexity.

``f`` is completely monotonic (CM) on an interval when ``(-1)^n f^(n) >= 0``
for every ``n >= 0``, and logarithmically completely monotonic (LCM) when
``f > 0`` and ``(-1)^n [ln f]^(n) >= 0`` for every ``n >= 1``.  A numerical
check can only sample finitely many orders and points, so every verdict
here means "up to ``max_order`` on the sampled grid".

Verdicts
--------
fail
    Some record has ``signed_value < -(band + 10 * abs_err)``.
inconclusive
    No failure, but some record's error exceeds ``band`` while its signed
    value does not clear zero by ``10 * abs_err``, or some derivative could
    not be resolved on any window.
pass
    Otherwise.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .exceptions import DomainError
from .quadrature import MAX_DERIV_ORDER, derivative_table

__all__ = [
    "Kind",
    "Outcome",
    "Record",
    "MonotonicityReport",
    "CrossCheckReport",
    "DEFAULT_BAND",
    "DEFAULT_GRID_SIZE",
    "cm_check",
    "lcm_check",
    "log_convexity_check",
    "lcm_implies_cm_crosscheck",
]

DEFAULT_BAND = 1e-7
DEFAULT_GRID_SIZE = 32
ERROR_MULTIPLIER = 10.0


class Kind(str, Enum):
    CM = "CM"
    LCM = "LCM"
    LOG_CONVEX = "log_convex"


class Outcome(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class Record:
    """One signed derivative (or log-convexity gap) and its tolerance."""

    x: float
    n: int
    signed_value: float
    tolerance: float
    abs_err: float = 0.0
    note: str = ""

    @property
    def violated(self):
        return self.signed_value < -self.tolerance

    def to_dict(self):
        d = {
            "x": self.x,
            "n": self.n,
            "signed_value": self.signed_value,
            "tolerance": self.tolerance,
            "abs_err": self.abs_err,
        }
        if self.note:
            d["note"] = self.note
        return d


@dataclass(frozen=True)
class MonotonicityReport:
    kind: Kind
    interval: tuple
    grid: tuple
    max_order: int
    records: tuple = field(repr=False)
    verdict: Outcome
    band: float
    skipped: tuple = ()

    @property
    def violations(self):
        return tuple(r for r in self.records if r.violated)

    def first_violation(self):
        v = self.violations
        return v[0] if v else None

    def to_dict(self, include_records=True):
        d = {
            "kind": self.kind.value,
            "interval": list(self.interval),
            "max_order": self.max_order,
            "band": self.band,
            "verdict": self.verdict.value,
            "grid": list(self.grid),
            "skipped": [{"x": x, "reason": why} for x, why in self.skipped],
            "violations": [r.to_dict() for r in self.violations],
        }
        if include_records:
            d["records"] = [r.to_dict() for r in self.records]
        return d


def _verdict(records, band, unresolved=False):
    if any(r.violated for r in records):
        return Outcome.FAIL
    if unresolved:
        return Outcome.INCONCLUSIVE
    for r in records:
        if r.abs_err > band and r.signed_value < ERROR_MULTIPLIER * r.abs_err:
            return Outcome.INCONCLUSIVE
    return Outcome.PASS


def _unresolved(skipped):
    return any(why.startswith(UNRESOLVED) for _, why in skipped)


def _grid(interval, grid_size):
    a, b = map(float, interval)
    if not b > a:
        raise DomainError(f"empty interval {interval}")
    if grid_size < 1:
        raise DomainError("grid_size must be >= 1")
    if grid_size == 1:
        return np.array([a])
    if a > 0:
        return np.geomspace(a, b, grid_size)
    return np.linspace(a, b, grid_size)


def _vectorize(f):
    def g(x):
        x = np.asarray(x, dtype=float)
        try:
            with np.errstate(all="ignore"):
                out = np.asarray(f(x), dtype=float)
            if out.shape == x.shape:
                return out
        except (TypeError, ValueError):
            pass
        return np.array([float(f(v)) for v in x.ravel()]).reshape(x.shape)

    return g


def _check_order(max_order, lowest):
    if not lowest <= int(max_order) <= MAX_DERIV_ORDER:
        raise DomainError(f"max_order must lie in [{lowest}, {MAX_DERIV_ORDER}]")
    return int(max_order)


WINDOW_SCALES = (1.0, 4.0, 16.0)
UNRESOLVED = "f not resolved on any derivative window"


def _windows(x, domain):
    """Candidate half widths: the default ``min(x/2, 1/2)`` rule and wider ones."""
    lo, hi = domain
    room = np.minimum((x - lo) / 2.0, (hi - x) / 2.0)
    base = np.minimum(room, 0.5)
    return [np.minimum(base * s, room) for s in WINDOW_SCALES], room > 0


def _derivative_records(g, grid, max_order, lowest, band, domain, noise, abs_noise):
    """Signed derivative records; each keeps the window with the smallest error bar."""
    widths, usable = _windows(grid, domain)
    skipped = [(float(x), "derivative window leaves the domain") for x in grid[~usable]]
    pts = grid[usable]
    records = []
    if not pts.size:
        return records, skipped
    best_v = best_e = None
    seen = []
    for h in widths:
        h = h[usable]
        if any(np.array_equal(h, s) for s in seen):
            continue
        seen.append(h)
        v, e = derivative_table(
            g, pts, max_order, half_width=h, domain=domain, noise=noise, abs_noise=abs_noise
        )
        e = np.where(np.isfinite(e), e, np.inf)
        if best_v is None:
            best_v, best_e = v, e
        else:
            better = e < best_e
            best_v = np.where(better, v, best_v)
            best_e = np.where(better, e, best_e)
    for j, x in enumerate(pts):
        for n in range(lowest, max_order + 1):
            sign = -1.0 if n % 2 else 1.0
            err = float(best_e[n, j])
            val = sign * float(best_v[n, j])
            if not np.isfinite(val):
                skipped.append((float(x), f"non-finite derivative of order {n}"))
                continue
            if not np.isfinite(err):
                skipped.append((float(x), f"{UNRESOLVED} at order {n}"))
                continue
            records.append(Record(float(x), n, val, band + ERROR_MULTIPLIER * err, err))
    return records, skipped


def cm_check(
    f, interval, max_order=6, grid_size=DEFAULT_GRID_SIZE, band=DEFAULT_BAND, *,
    domain=(0.0, np.inf), noise=1e-14,
):
    """Check ``(-1)^n f^(n)(x) >= 0`` for ``n = 0..max_order`` on a log-spaced grid.

    Derivatives come from degree-32 Chebyshev windows inside
    ``domain = (lo, hi)``, the set where ``f`` may be evaluated.  Half widths
    ``min(x/2, 1/2)`` (for ``lo = 0``) and 4x, 16x that, all capped at
    ``(x-lo)/2`` and ``(hi-x)/2``, are tried; each record keeps the estimate
    with the smallest error bar.  Grid points with no room for a window are
    skipped and listed in ``report.skipped``.
    """
    max_order = _check_order(max_order, 0)
    grid = _grid(interval, grid_size)
    g = _vectorize(f)
    records, skipped = _derivative_records(g, grid, max_order, 0, band, domain, noise, 0.0)
    return MonotonicityReport(
        Kind.CM, tuple(map(float, interval)), tuple(grid.tolist()), max_order,
        tuple(records), _verdict(records, band, _unresolved(skipped)), float(band), tuple(skipped),
    )


def lcm_check(
    f, interval, max_order=6, grid_size=DEFAULT_GRID_SIZE, band=DEFAULT_BAND, *,
    domain=(0.0, np.inf), noise=1e-14,
):
    """Check ``f > 0`` and ``(-1)^n [ln f]^(n)(x) >= 0`` for ``n = 1..max_order``.

    Positivity is tested at every grid point first; a nonpositive value is
    recorded as an order-0 violation.  ``ln f`` inherits an absolute noise
    of ``noise`` (the relative noise of ``f``).
    """
    max_order = _check_order(max_order, 1)
    grid = _grid(interval, grid_size)
    g = _vectorize(f)
    fx = g(grid)
    records = []
    skipped = []
    positive = fx > 0
    for x, v in zip(grid[~positive], fx[~positive]):
        records.append(Record(float(x), 0, float(v), 0.0, 0.0, "f must be positive"))

    def log_f(t):
        with np.errstate(all="ignore"):
            return np.log(g(t))

    ok_grid = grid[positive]
    recs, skipped = _derivative_records(log_f, ok_grid, max_order, 1, band, domain, noise, noise)
    records.extend(recs)
    return MonotonicityReport(
        Kind.LCM, tuple(map(float, interval)), tuple(grid.tolist()), max_order,
        tuple(records), _verdict(records, band, _unresolved(skipped)), float(band), tuple(skipped),
    )


def log_convexity_check(f, pairs, band=1e-12, *, relative=True):
    """Check ``f(l x + (1-l) y) <= f(x)^l f(y)^(1-l)`` for each ``(x, y, l)``.

    With ``relative=True`` the gap is divided by the right-hand side so that
    ``band`` is a relative tolerance.
    """
    g = _vectorize(f)
    arr = np.asarray(pairs, dtype=float).reshape(-1, 3)
    x, y, lam = arr.T
    if np.any((lam < 0) | (lam > 1)):
        raise DomainError("lambda must lie in [0, 1]")
    mid = lam * x + (1 - lam) * y
    fx, fy, fm = g(x), g(y), g(mid)
    records = []
    bad = (fx <= 0) | (fy <= 0) | (fm <= 0)
    for i in np.nonzero(bad)[0]:
        records.append(Record(float(mid[i]), 0, float(min(fx[i], fy[i], fm[i])), 0.0, 0.0, "f must be positive"))
    good = ~bad
    with np.errstate(all="ignore"):
        # endpoints are exact: f(x)^1 f(y)^0 is f(x) itself
        rhs = np.where(lam == 1, fx, np.where(lam == 0, fy, np.exp(lam * np.log(fx) + (1 - lam) * np.log(fy))))
    gap = rhs - fm
    if relative:
        gap = gap / np.where(good, rhs, 1.0)
    for i in np.nonzero(good)[0]:
        records.append(Record(float(mid[i]), 0, float(gap[i]), float(band), 0.0))
    verdict = _verdict(records, band)
    lo, hi = (float(np.min(arr[:, :2])), float(np.max(arr[:, :2]))) if arr.size else (0.0, 0.0)
    return MonotonicityReport(
        Kind.LOG_CONVEX, (lo, hi), tuple(mid.tolist()), 0, tuple(records), verdict, float(band)
    )


@dataclass(frozen=True)
class CrossCheckReport:
    """Paired LCM/CM reports; LCM implies CM, so LCM pass with CM fail is a defect."""

    lcm: MonotonicityReport
    cm: MonotonicityReport
    consistent: bool
    message: str

    def to_dict(self):
        return {
            "consistent": self.consistent,
            "message": self.message,
            "lcm": self.lcm.to_dict(include_records=False),
            "cm": self.cm.to_dict(include_records=False),
        }


def lcm_implies_cm_crosscheck(f, interval, max_order=6, grid_size=DEFAULT_GRID_SIZE, band=DEFAULT_BAND, **kw):
    """Run both checks on the same grid and flag an LCM pass paired with a CM fail."""
    lcm = lcm_check(f, interval, max_order, grid_size, band, **kw)
    cm = cm_check(f, interval, max_order, grid_size, band, **kw)
    consistent = not (lcm.verdict is Outcome.PASS and cm.verdict is Outcome.FAIL)
    msg = (
        f"LCM {lcm.verdict.value}, CM {cm.verdict.value}"
        + ("" if consistent else ": LCM pass with CM fail is a numerical defect")
    )
    return CrossCheckReport(lcm, cm, consistent, msg)
