"""Adaptive quadrature, Chebyshev-proxy differentiation and root bracketing.

Every integrator here takes a *vectorized* integrand: ``f(t)`` receives a
1-D array of abscissae and returns an array whose last axis matches ``t``.
Leading axes are carried through untouched, so one call integrates a whole
family of integrands (one per output point) on a shared set of nodes.  The
result's ``value`` then has the leading shape of ``f``'s output.

Integrators
-----------
integrate_finite
    Globally adaptive Gauss-Kronrod (10/21 points) on ``[a, b]``.
integrate_semi_infinite
    Double-exponential (exp-sinh) trapezoidal rule on ``[a, inf)``.
integrate_oscillatory / integrate_oscillatory_cos
    Panel sums between consecutive zeros of the oscillating factor,
    accelerated by Wynn's epsilon algorithm.
"""

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import chebyshev as _cheb
from numpy.polynomial import legendre as _leg
from scipy.optimize import brentq

from .exceptions import BracketError, DivergenceError, DomainError

__all__ = [
    "QuadResult",
    "DerivEstimate",
    "MAX_EVALUATIONS",
    "integrate_finite",
    "integrate_semi_infinite",
    "integrate_oscillatory",
    "integrate_oscillatory_cos",
    "differentiate",
    "derivative_table",
    "find_root",
]

MAX_EVALUATIONS = 1_000_000
EPS = float(np.finfo(float).eps)
_SUBNORMAL = float(np.finfo(float).tiny) / EPS


@dataclass(frozen=True)
class QuadResult:
    """Integral estimate with an a-posteriori absolute error estimate.

    ``converged`` is true only when ``abs_err`` met the requested tolerance;
    otherwise ``value`` is the best estimate available when the budget ran out.
    """

    value: object
    abs_err: float
    evaluations: int
    converged: bool

    def __float__(self):
        return float(self.value)


@dataclass(frozen=True)
class DerivEstimate:
    """Value of ``f^(order)(x)`` with its estimated absolute error."""

    order: int
    value: float
    abs_err: float


def _evaluate(f, t):
    with np.errstate(all="ignore"):
        out = np.asarray(f(t), dtype=float)
    if out.ndim == 0:
        return np.full(t.shape, float(out))
    if out.shape[-1] != t.shape[-1]:
        raise ValueError(
            f"integrand must be vectorized: got output shape {out.shape} for {t.size} nodes"
        )
    return out


def _target(tol, rtol, value):
    return np.maximum(tol, rtol * np.abs(value))


# ---------------------------------------------------------------------------
# Gauss-Kronrod 10/21
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _kronrod_rule(n=10):
    """Kronrod extension of the n-point Gauss-Legendre rule.

    The extra n+1 nodes are the zeros of the Stieltjes polynomial, expanded
    in the Legendre basis; weights follow from exactness on P_0..P_2n.
    """
    xg, _ = _leg.leggauss(n)
    xq, wq = _leg.leggauss(2 * n + 20)
    basis = np.array([_leg.legval(xq, np.eye(n + 2)[k]) for k in range(n + 2)])
    gram = np.einsum("kq,jq,q->kj", basis, basis * basis[n], wq)
    coef = np.linalg.lstsq(gram[: n + 1, : n + 1].T, -gram[n + 1, : n + 1], rcond=None)[0]
    extra = np.sort(_leg.legroots(np.r_[coef, 1.0]).real)
    nodes = np.sort(np.r_[xg, extra])
    nodes[np.abs(nodes) < 1e-14] = 0.0
    nodes = 0.5 * (nodes - nodes[::-1])  # enforce exact symmetry
    vander = np.array([_leg.legval(nodes, np.eye(2 * n + 1)[k]) for k in range(2 * n + 1)])
    moments = np.zeros(2 * n + 1)
    moments[0] = 2.0
    wk = np.linalg.solve(vander, moments)
    xg2, wg2 = _leg.leggauss(n)
    wg = np.zeros_like(wk)
    for x, w in zip(xg2, wg2):
        wg[np.argmin(np.abs(nodes - x))] = w
    return nodes, wk, wg


def _gk_panels(f, lo, hi, with_floor=False):
    """Apply the 21-point rule to each panel [lo_i, hi_i].

    Returns ``(kronrod, err, evaluations)``, plus a per-panel flag telling
    whether the error sits on the rounding floor when ``with_floor``.
    """
    xk, wk, wg = _kronrod_rule()
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    t = (mid[:, None] + half[:, None] * xk[None, :]).ravel()
    vals = _evaluate(f, t)
    vals = vals.reshape(vals.shape[:-1] + (lo.size, xk.size))
    if not np.all(np.isfinite(vals)):
        bad = t.reshape(lo.size, xk.size)[np.nonzero(~np.isfinite(vals))[-2:]]
        raise ValueError(f"integrand returned a non-finite value near t={bad.flat[0]!r}")
    kron = vals @ wk * half
    gauss = vals @ wg * half
    resabs = np.abs(vals) @ wk * np.abs(half)
    mean = kron / np.where(half == 0, 1.0, 2 * half)
    resasc = np.abs(vals - mean[..., None]) @ wk * np.abs(half)
    raw = np.abs(kron - gauss)
    with np.errstate(all="ignore"):
        scaled = np.where(
            (resasc > 0) & (raw > 0),
            resasc * np.minimum(1.0, (200.0 * raw / np.where(resasc > 0, resasc, 1.0)) ** 1.5),
            raw,
        )
    err = np.maximum(scaled, 50 * EPS * resabs)
    # collapse component axes: one error per panel
    axes = tuple(range(err.ndim - 1))
    err_panel = err.max(axis=axes) if axes else err
    if with_floor:
        # below TINY / EPS the samples are subnormal and carry no relative precision
        floor = (scaled <= 50 * EPS * resabs) | (np.abs(vals).max(axis=-1) <= _SUBNORMAL)
        floor = floor.all(axis=axes) if axes else floor
        return kron, err_panel, xk.size * lo.size, floor
    return kron, err_panel, xk.size * lo.size


def integrate_finite(f, a, b, tol=1e-10, *, rtol=0.0, breakpoints=(), max_evaluations=MAX_EVALUATIONS):
    """Integrate ``f`` over the finite interval ``[a, b]``.

    Globally adaptive bisection driven by the Gauss-Kronrod 10/21 error
    estimate.  Integrable algebraic endpoint singularities are handled by
    repeated bisection towards the endpoint (slowly for exponents near -1).

    Parameters
    ----------
    f : callable
        Vectorized integrand.
    a, b : float
        Integration limits, ``a < b``.
    tol, rtol : float
        Converged when ``abs_err <= max(tol, rtol * |value|)`` componentwise.
    breakpoints : sequence of float
        Interior points where the integrand is known to be rough.
    max_evaluations : int
        Budget of abscissae; exceeding it returns ``converged=False``.
    """
    a = float(a)
    b = float(b)
    if not a < b:
        raise DomainError(f"integrate_finite requires a < b, got a={a}, b={b}")
    if tol < 0 or rtol < 0 or (tol == 0 and rtol == 0):
        raise DomainError("tolerance must be positive")
    edges = np.unique(np.r_[a, [p for p in breakpoints if a < p < b], b])
    lo, hi = edges[:-1], edges[1:]
    vals, errs, evals, floors = _gk_panels(f, lo, hi, with_floor=True)
    # panel bookkeeping: values keyed by panel id; panels whose error is
    # pure rounding are frozen, since bisection cannot reduce it
    panels = {}
    heap = []
    for i in range(lo.size):
        panels[i] = (lo[i], hi[i], vals[..., i], errs[i])
        if not floors[i]:
            heapq.heappush(heap, (-errs[i], i))
    next_id = lo.size
    total = vals.sum(axis=-1)
    total_err = float(errs.sum())
    while True:
        target = _target(tol, rtol, total)
        if total_err <= np.min(target):
            converged = True
            break
        if not heap:
            # rounding-limited: nothing left to refine
            converged = False
            break
        if evals + 42 > max_evaluations:
            converged = False
            break
        _, pid = heapq.heappop(heap)
        p_lo, p_hi, p_val, p_err = panels.pop(pid)
        mid = 0.5 * (p_lo + p_hi)
        if not (p_lo < mid < p_hi) or (p_hi - p_lo) < 4 * EPS * max(abs(p_lo), abs(p_hi), 1e-300):
            # cannot bisect further; its error stays in the budget
            panels[-pid - 1] = (p_lo, p_hi, p_val, p_err)
            continue
        v2, e2, n2, f2 = _gk_panels(f, np.array([p_lo, mid]), np.array([mid, p_hi]), with_floor=True)
        evals += n2
        total = total - p_val + v2.sum(axis=-1)
        total_err = total_err - p_err + float(e2.sum())
        for j, (u, v) in enumerate(((p_lo, mid), (mid, p_hi))):
            panels[next_id] = (u, v, v2[..., j], e2[j])
            if not f2[j]:
                heapq.heappush(heap, (-e2[j], next_id))
            next_id += 1
    value = total if np.ndim(total) else float(total)
    return QuadResult(value, float(total_err), int(evals), bool(converged))


# ---------------------------------------------------------------------------
# Double-exponential rule on [a, inf)
# ---------------------------------------------------------------------------

_DE_H0 = 0.5
_DE_SMAX = 6.5


def _exp_sinh(s, a):
    e = np.exp(0.5 * np.pi * np.sinh(s))
    return a + e, 0.5 * np.pi * np.cosh(s) * e


def integrate_semi_infinite(
    f, a=0.0, tol=1e-10, *, rtol=0.0, min_level=2, max_level=8, max_evaluations=MAX_EVALUATIONS
):
    """Integrate ``f`` over ``[a, inf)`` with the exp-sinh transformation.

    ``t = a + exp(pi/2 sinh s)`` maps the half line onto the real ``s`` axis
    with doubly exponential decay of the transformed integrand at both ends,
    so the trapezoidal rule in ``s`` converges geometrically in the number of
    digits.  Algebraic singularities at ``t = a`` are absorbed by the map
    provided the caller puts them exactly at ``a`` (nodes approach ``a`` to
    within ~1e-226).

    The summation window is grown one node at a time until the transformed
    integrand is negligible and decreasing at both ends.  If it is still
    growing at the outermost admissible node a :class:`DivergenceError` is
    raised.  The error estimate is the difference between the last two
    halvings plus the truncated edge terms.
    """
    a = float(a)
    if tol < 0 or rtol < 0 or (tol == 0 and rtol == 0):
        raise DomainError("tolerance must be positive")
    h = _DE_H0
    kmax = int(round(_DE_SMAX / h))
    evals = 0

    def terms(s):
        nonlocal evals
        t, w = _exp_sinh(s, a)
        v = _evaluate(f, t)
        evals += s.size
        with np.errstate(all="ignore"):
            out = v * w
        out = np.where(w == 0.0, 0.0, out)
        if not np.all(np.isfinite(out)):
            bad = t[np.nonzero(~np.isfinite(out))[-1][0]]
            raise DivergenceError(f"non-finite integrand value at t={bad!r}")
        return out

    def mag(v):
        return float(np.max(np.abs(v))) if v.size else 0.0

    ks = np.arange(-3, 4)
    cols = {int(k): c for k, c in zip(ks, np.moveaxis(terms(ks * h), -1, 0))}

    def running_sum():
        return h * sum(cols.values())

    truncated = 0.0
    for direction in (1, -1):
        k = 3 * direction
        while True:
            s_now = running_sum()
            thr = 1e-3 * float(np.min(_target(tol, rtol, s_now)))
            last, prev = mag(cols[k]), mag(cols[k - direction])
            if h * last <= thr and last <= prev:
                truncated += h * last
                break
            if abs(k) >= kmax:
                tail = [mag(cols[k - direction * i]) for i in range(3)]
                if tail[0] > tail[1] > tail[2]:
                    raise DivergenceError("integrand does not decay on the half line")
                truncated += h * last
                break
            k += direction
            cols[k] = np.moveaxis(terms(np.array([k * h])), -1, 0)[0]
    k_lo, k_hi = min(cols), max(cols)
    level_sum = running_sum()
    abs_err = np.inf
    converged = False
    for level in range(1, max_level + 1):
        h_new = h / 2
        j = np.arange(2 * k_lo + 1, 2 * k_hi, 2)
        if evals + j.size > max_evaluations:
            break
        new = terms(j * h_new)
        refined = 0.5 * level_sum + h_new * new.sum(axis=-1)
        diff = np.abs(refined - level_sum)
        level_sum = refined
        h = h_new
        k_lo, k_hi = 2 * k_lo, 2 * k_hi
        abs_err = float(np.max(diff)) + truncated
        if level >= min_level and np.all(diff + truncated <= _target(tol, rtol, refined)):
            converged = True
            break
    value = level_sum if np.ndim(level_sum) else float(level_sum)
    return QuadResult(value, float(abs_err), int(evals), converged)


# ---------------------------------------------------------------------------
# Oscillatory tails
# ---------------------------------------------------------------------------


def _wynn_epsilon(partial_sums):
    """Wynn epsilon extrapolation of a sequence of partial sums (axis 0)."""
    seq = np.asarray(partial_sums, dtype=float)
    estimate = seq[-1].copy()
    prev = np.zeros((seq.shape[0] + 1,) + seq.shape[1:])
    cur = seq
    column = 0
    alive = np.ones(seq.shape[1:], dtype=bool)
    with np.errstate(all="ignore"):
        while cur.shape[0] > 1:
            nxt = prev[1 : cur.shape[0]] + 1.0 / (cur[1:] - cur[:-1])
            prev, cur = cur, nxt
            column += 1
            alive &= np.isfinite(cur[-1])
            if column % 2 == 0:
                estimate = np.where(alive, cur[-1], estimate)
    return estimate


def integrate_oscillatory(
    f, first_zero, half_period, tol=1e-10, *, rtol=0.0, min_panels=6, max_panels=400,
    max_evaluations=MAX_EVALUATIONS,
):
    """Integrate an oscillatory ``f`` over ``[0, inf)``.

    ``[0, first_zero]`` is integrated adaptively (with geometric breakpoints
    if it is long), then the panels ``[first_zero + k*half_period,
    first_zero + (k+1)*half_period]`` are summed and the sequence of partial
    sums is extrapolated with Wynn's epsilon algorithm.
    """
    if half_period <= 0 or first_zero <= 0:
        raise DomainError("panel geometry must be positive")
    if tol < 0 or rtol < 0 or (tol == 0 and rtol == 0):
        raise DomainError("tolerance must be positive")
    breaks = []
    b = 1.0
    while b < first_zero:
        breaks.append(b)
        b *= 2.0
    head = integrate_finite(f, 0.0, first_zero, tol=tol * 1e-2, rtol=rtol * 1e-2, breakpoints=breaks)
    evals = head.evaluations
    err_acc = head.abs_err
    partial = [np.asarray(head.value, dtype=float)]
    estimates = []
    converged = stalled = False
    quiet = 0
    start = first_zero
    batch = 16
    while len(partial) - 1 < max_panels:
        lo = start + half_period * np.arange(batch)
        hi = lo + half_period
        start = hi[-1]
        vals, errs, n = _gk_panels(f, lo, hi)
        evals += n
        for i in range(batch):
            v, e = vals[..., i], errs[i]
            # panel accuracy is judged against the whole integral, not the panel
            scale = float(np.max(np.abs(partial[-1] + v)))
            need = 1e-2 * max(tol, rtol * scale, EPS * scale)
            if e > need:
                sub = integrate_finite(f, lo[i], hi[i], tol=need)
                v, e = np.asarray(sub.value), sub.abs_err
                evals += sub.evaluations
            err_acc += e
            partial.append(partial[-1] + v)
            estimates.append(_wynn_epsilon(partial[-40:]))
            n_done = len(partial) - 1
            target = _target(tol, rtol, estimates[-1])
            small = np.all(np.abs(v) <= 1e-3 * target)
            quiet = quiet + 1 if small else 0
            if quiet >= 3 and n_done >= min_panels:
                estimates[-1] = partial[-1]
                converged = True
                break
            if n_done >= min_panels and len(estimates) >= 3:
                d1 = np.abs(estimates[-1] - estimates[-2])
                d2 = np.abs(estimates[-1] - estimates[-3])
                if np.all(d1 + d2 + err_acc <= target):
                    converged = True
                    break
                if np.all(d1 + d2 <= 1e-2 * err_acc):
                    # rounding-limited: more panels only add noise
                    stalled = True
                    break
        if converged or stalled or evals > max_evaluations:
            break
    value = estimates[-1] if estimates else partial[-1]
    if len(estimates) >= 3 and not (quiet >= 3):
        extrap_err = float(np.max(np.abs(estimates[-1] - estimates[-2]) + np.abs(estimates[-1] - estimates[-3])))
    else:
        extrap_err = 0.0
    abs_err = extrap_err + err_acc
    value = value if np.ndim(value) else float(value)
    return QuadResult(value, float(abs_err), int(evals), converged)


def integrate_oscillatory_cos(envelope, omega, tol=1e-10, *, rtol=0.0, max_panels=400):
    """Fourier cosine integral ``int_0^inf envelope(t) cos(omega t) dt``.

    ``envelope`` should be positive, decreasing and integrable (or at least
    tend to zero so that the panel sums alternate).  ``omega = 0`` reduces to
    :func:`integrate_semi_infinite`.
    """
    omega = float(omega)
    if omega < 0:
        raise DomainError(f"omega must be nonnegative, got {omega}")
    if omega == 0:
        return integrate_semi_infinite(envelope, 0.0, tol, rtol=rtol)

    def f(t):
        return _evaluate(envelope, t) * np.cos(omega * t)

    return integrate_oscillatory(
        f, 0.5 * np.pi / omega, np.pi / omega, tol, rtol=rtol, max_panels=max_panels
    )


# ---------------------------------------------------------------------------
# Differentiation via local Chebyshev proxies
# ---------------------------------------------------------------------------

CHEB_DEGREE = 32
MAX_DERIV_ORDER = 8


@lru_cache(maxsize=None)
def _cheb_tables(degree=CHEB_DEGREE, max_order=MAX_DERIV_ORDER):
    n = degree
    j = np.arange(n + 1)
    nodes = np.cos(np.pi * j / n)
    interp = np.cos(np.pi * np.outer(j, j) / n) * (2.0 / n)
    interp[:, 0] *= 0.5
    interp[:, -1] *= 0.5
    interp[0, :] *= 0.5
    interp[-1, :] *= 0.5
    at_center = np.empty((max_order + 1, n + 1))
    eye = np.eye(n + 1)
    for order in range(max_order + 1):
        for k in range(n + 1):
            at_center[order, k] = _cheb.chebval(0.0, _cheb.chebder(eye[k], order)) if order else _cheb.chebval(0.0, eye[k])
    return nodes, interp, at_center


def _default_half_width(x, domain):
    lo, hi = domain
    return np.minimum(np.minimum((x - lo) / 2.0, (hi - x) / 2.0), 0.5)


def derivative_table(
    f, xs, max_order, *, half_width=None, domain=(0.0, np.inf), noise=1e-14, abs_noise=0.0
):
    """Derivatives of orders ``0..max_order`` of ``f`` at each point of ``xs``.

    ``f`` is sampled once on every window (vectorized call) and replaced by
    its degree-32 Chebyshev interpolant, which is differentiated exactly at
    the window centre.

    Returns
    -------
    values, errors : ndarray, shape (max_order + 1, len(xs))
        The error combines the interpolant tail and the propagation of the
        sample noise ``noise * max|f| + abs_noise`` on each window.  It is
        ``inf`` when the interpolant does not resolve ``f`` on the window.
    """
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if not 0 <= max_order <= MAX_DERIV_ORDER:
        raise DomainError(f"derivative order must lie in [0, {MAX_DERIV_ORDER}]")
    lo, hi = domain
    h = _default_half_width(xs, domain) if half_width is None else np.broadcast_to(
        np.asarray(half_width, dtype=float), xs.shape
    )
    if np.any(~(h > 0)) or np.any(xs - h < lo) or np.any(xs + h > hi):
        raise DomainError(f"derivative window leaves the domain {domain}")
    nodes, interp, at_center = _cheb_tables()
    pts = xs[:, None] + h[:, None] * nodes[None, :]
    fv = np.asarray(f(pts.ravel()), dtype=float).reshape(pts.shape)
    coef = fv @ interp.T
    n = CHEB_DEGREE
    fmax = np.abs(fv).max(axis=1)
    declared = noise * fmax + abs_noise
    k = np.arange(n + 1)

    def chop(level):
        above = np.abs(coef) > level[:, None]
        return np.where(above.any(axis=1), n - np.argmax(above[:, ::-1], axis=1), 0)

    # Chop coefficients that sit on the noise plateau: differentiating them
    # only amplifies rounding (T_k^(n)(0) grows like k^n).  When the plateau
    # beyond the declared level is long enough, its RMS measures the actual
    # sample noise (coefficient noise is about sqrt(2/n) times it), which
    # may be far below the declared bound.
    last = chop(declared)
    tail = k[None, :] > last[:, None]
    count = tail.sum(axis=1)
    rms = np.sqrt(np.where(tail, coef**2, 0.0).sum(axis=1) / np.maximum(count, 1))
    measured = 3.0 * rms * np.sqrt(0.5 * n) + 4.0 * EPS * fmax
    level = np.where(count >= 8, np.minimum(declared, measured), declared)
    last = chop(level)
    resolved = last < n - 2
    keep = k[None, :] <= last[:, None]
    kept = np.where(keep, coef, 0.0)
    deriv = at_center[: max_order + 1]
    scale = h[None, :] ** np.arange(max_order + 1)[:, None]
    values = (deriv @ kept.T) / scale

    def mag(idx):
        return np.abs(np.take_along_axis(coef, np.clip(idx, 0, n)[:, None], 1)[:, 0])

    # Truncation (resolved windows): continue geometrically with the
    # two-step decay ratio of the last retained pair against the pair before
    # it, over every index beyond the cut.  Chopped coefficients are
    # indistinguishable from sample noise and are covered by the noise term.
    # An unresolved window may be aliased, so nothing bounds its error.
    pair = mag(last) + mag(last - 1)
    prev = mag(last - 2) + mag(last - 3)
    rho = np.clip(pair / np.where(prev > 0, prev, 1.0), 0.0, 1.0)
    # too few retained terms for a ratio: the chopped ones are at most ``level``
    rho = np.where(last >= 3, rho, np.minimum(1.0, level / np.where(pair > 0, pair, 1.0)))
    steps = (k[None, :] - last[:, None]) / np.where(last >= 3, 2.0, 1.0)[:, None]
    model = np.where(steps > 0, pair[:, None] * rho[:, None] ** np.maximum(steps, 0.0), 0.0)
    abs_deriv = np.abs(deriv)
    resolved_err = 2.0 * (model @ abs_deriv.T).T
    tail_err = np.where(resolved[None, :], resolved_err, np.inf)
    noise_gain = np.sqrt(np.cumsum(deriv**2, axis=1)[:, last] * 2.0 / n)
    errors = (tail_err + 3.0 * noise_gain * level[None, :]) / scale
    return values, errors


def differentiate(f, x, order, half_width=None, *, domain=(0.0, np.inf), noise=1e-14, abs_noise=0.0):
    """Estimate ``f^(order)(x)`` from a Chebyshev interpolant on ``[x-h, x+h]``.

    ``half_width`` defaults to ``min((x - lo)/2, (hi - x)/2, 0.5)`` for the
    function's domain ``(lo, hi)``, which for the default ``(0, inf)`` is
    ``min(x/2, 0.5)``.  Orders 1 through 8 are supported.
    """
    if not 1 <= int(order) <= MAX_DERIV_ORDER:
        raise DomainError(f"order must lie in [1, {MAX_DERIV_ORDER}], got {order}")
    order = int(order)
    values, errors = derivative_table(
        f, [x], order, half_width=half_width, domain=domain, noise=noise, abs_noise=abs_noise
    )
    return DerivEstimate(order, float(values[order, 0]), float(errors[order, 0]))


# ---------------------------------------------------------------------------
# Roots
# ---------------------------------------------------------------------------


def find_root(f, lo, hi, tol=1e-12):
    """Root of a continuous scalar ``f`` inside a sign-changing bracket.

    Brent's method (bisection safeguarding secant/inverse-quadratic steps).
    """
    flo, fhi = float(f(lo)), float(f(hi))
    if flo == 0.0:
        return float(lo)
    if fhi == 0.0:
        return float(hi)
    if not math.copysign(1.0, flo) != math.copysign(1.0, fhi):
        raise BracketError(f"f({lo})={flo} and f({hi})={fhi} do not bracket a root")
    return float(brentq(f, lo, hi, xtol=tol, rtol=4 * EPS, maxiter=500))
