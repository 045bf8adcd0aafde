"""Bessel-family special functions evaluated from series and integral forms.

Every evaluator returns an :class:`EvalResult` carrying the value, an
a-posteriori absolute error estimate and the route that produced it.  The
``x`` argument may be a scalar or an array (``alpha`` is always a scalar);
array inputs give array ``value``/``abs_err`` and ``method="mixed"`` when
different elements took different routes.

Conventions
-----------
``normalized_j(alpha, x)`` is ``Gamma(alpha+1) (2/x)^alpha J_alpha(x)``,
equal to 1 at the origin and even in ``x``.
``scaled_k(alpha, x)`` is the even extension of ``|x|^alpha K_alpha(|x|)``.
"""

import functools
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .exceptions import DomainError
from .quadrature import integrate_oscillatory_cos, integrate_semi_infinite

__all__ = [
    "Method",
    "EvalResult",
    "gamma",
    "normalized_j",
    "bessel_j",
    "bessel_y",
    "bessel_modulus_sq",
    "modified_i",
    "modified_k",
    "scaled_k",
    "kummer_1f1",
    "SERIES_CROSSOVER",
    "ASYMPTOTIC_CROSSOVER",
]

EPS = float(np.finfo(float).eps)
SERIES_CROSSOVER = 12.0
ASYMPTOTIC_CROSSOVER = 2000.0
BASSET_CROSSOVER = 0.25
TINY_X = 1e-150
MODULUS_CROSSOVER = 15.0
INTEGER_ORDER_OFFSET = 1e-6


class Method(str, Enum):
    SERIES = "series"
    INTEGRAL = "integral"
    CLOSED_FORM = "closed_form"
    ASYMPTOTIC = "asymptotic"
    MIXED = "mixed"


@dataclass(frozen=True)
class EvalResult:
    """A function value with its estimated absolute error and route."""

    value: object
    abs_err: object
    method: str

    def __float__(self):
        return float(self.value)


def _pack(values, errors, methods, scalar):
    values = np.asarray(values, dtype=float)
    errors = np.asarray(errors, dtype=float)
    kinds = set(np.atleast_1d(methods).tolist())
    method = kinds.pop() if len(kinds) == 1 else Method.MIXED.value
    if scalar:
        return EvalResult(float(values.reshape(-1)[0]), float(errors.reshape(-1)[0]), method)
    return EvalResult(values, errors, method)


def _elementwise(pos=1):
    """Let a 1-d implementation accept arrays of any shape in argument ``pos``."""

    def deco(func):
        @functools.wraps(func)
        def wrapper(*args, **kw):
            arr = np.asarray(args[pos], dtype=float)
            if arr.ndim <= 1:
                return func(*args, **kw)
            flat = args[:pos] + (arr.ravel(),) + args[pos + 1 :]
            res = func(*flat, **kw)
            return EvalResult(
                np.reshape(res.value, arr.shape), np.reshape(res.abs_err, arr.shape), res.method
            )

        return wrapper

    return deco


def _check_alpha(alpha):
    alpha = float(alpha)
    if not math.isfinite(alpha):
        raise DomainError(f"order must be finite, got {alpha}")
    return alpha


def _is_integer(a):
    return float(a).is_integer()


def gamma(x):
    """Euler's Gamma function; nonpositive integers are poles."""
    x = float(x)
    if math.isnan(x):
        raise DomainError("gamma of NaN")
    if x <= 0 and x.is_integer():
        raise DomainError(f"gamma has a pole at {x}")
    try:
        return math.gamma(x)
    except OverflowError:
        return math.inf


# ---------------------------------------------------------------------------
# Hypergeometric-type power series
# ---------------------------------------------------------------------------


def _power_series(coef_ratio, z, max_terms=5000):
    """Sum ``sum_n t_n`` with ``t_0 = 1`` and ``t_n = t_{n-1} * coef_ratio(n) * z``.

    Stops per element when the next term is below 1e-16 of the running sum
    (or below the accumulated rounding level) and the terms are decreasing.
    Returns ``(sum, abs_err)``; the error is the geometric tail bound plus a
    rounding term proportional to the sum of term magnitudes.
    """
    z = np.asarray(z, dtype=float)
    total = np.ones_like(z)
    term = np.ones_like(z)
    magnitude = np.ones_like(z)
    trunc = np.zeros_like(z)
    done = np.zeros(z.shape, dtype=bool)
    n = 0
    while not done.all():
        n += 1
        if n > max_terms:
            trunc = np.where(done, trunc, np.inf)
            break
        r = coef_ratio(n)
        new = term * (r * z)
        small = (np.abs(new) < 1e-16 * np.abs(total)) | (np.abs(new) < 1e-3 * EPS * magnitude)
        stop = ~done & small & (np.abs(new) <= np.abs(term))
        if stop.any():
            q = np.abs(coef_ratio(n + 1) * z)
            tail = np.where(q < 1, np.abs(new) / np.maximum(1 - q, 1e-300), np.abs(new))
            trunc = np.where(stop, tail, trunc)
            done |= stop
        live = ~done
        total = np.where(live, total + new, total)
        magnitude = np.where(live, magnitude + (n + 1) * np.abs(new), magnitude)
        term = new
    return total, trunc + 2 * EPS * magnitude


def _hyp0f1(b, z):
    return _power_series(lambda n: 1.0 / (n * (b + n - 1)), z)


def _j_series(alpha, x, max_terms=500):
    """J_alpha(x) summed term by term with log-gamma coefficients.

    Each term is formed directly, so orders whose Gamma(alpha+1) is near a
    pole (as needed by Y at near-integer orders) lose no accuracy.
    """
    lx = np.log(0.5 * x)
    total = np.zeros_like(x)
    magnitude = np.zeros_like(x)
    trunc = np.zeros_like(x)
    prev = np.full_like(x, np.inf)
    done = np.zeros(x.shape, dtype=bool)
    for k in range(max_terms):
        a = k + alpha + 1.0
        if a <= 0 and a.is_integer():
            prev = np.zeros_like(x)
            continue
        sign = (-1.0) ** k * _gamma_sign(a)
        with np.errstate(over="ignore"):
            term = sign * np.exp((2 * k + alpha) * lx - math.lgamma(k + 1.0) - math.lgamma(a))
        size = np.abs(term)
        stop = ~done & (k > 0) & (size <= prev) & (
            (size < 1e-16 * np.abs(total)) | (size < 1e-3 * EPS * magnitude)
        )
        trunc = np.where(stop, size, trunc)
        done |= stop
        if done.all():
            break
        total = np.where(done, total, total + term)
        magnitude = np.where(done, magnitude, magnitude + (k + 1) * size)
        prev = size
    return total, trunc + 4 * EPS * magnitude


# ---------------------------------------------------------------------------
# j_alpha and J_alpha
# ---------------------------------------------------------------------------


JACOBI_SNAP = 1e-14


@lru_cache(maxsize=128)
def _jacobi_rule(beta, n):
    # scipy's recurrence divides by zero for beta within rounding of -1/2
    if abs(beta + 0.5) < JACOBI_SNAP:
        beta = -0.5
    t, w = roots_jacobi(n, beta, beta)
    return t, w


def _jacobi_nodes_needed(x):
    n = 0.5 * x + 3.0 * np.cbrt(x) + 20.0
    return (np.ceil(n / 16.0) * 16).astype(int)


def _j_integral(alpha, x):
    """j_alpha(x) from the Poisson integral by Gauss-Jacobi quadrature.

    The weight (1-t^2)^(alpha-1/2) is absorbed exactly; cos(xt) is entire so
    the rule converges geometrically once n exceeds about x/2.  The error is
    the difference from a rule with 16 more nodes, plus rounding.
    """
    if alpha < 0:
        # the Jacobi rule degrades for weight exponents below -1/2; step down
        # from two better-conditioned orders instead
        v1, e1 = _j_integral(alpha + 1.0, x)
        v2, e2 = _j_integral(alpha + 2.0, x)
        c = 0.25 * x * x / ((alpha + 1.0) * (alpha + 2.0))
        v = v1 - c * v2
        return v, e1 + c * e2 + EPS * (np.abs(v1) + c * np.abs(v2))
    beta = alpha - 0.5
    values = np.empty_like(x)
    errors = np.empty_like(x)
    n_needed = _jacobi_nodes_needed(x)
    for n in np.unique(n_needed):
        sel = n_needed == n
        xs = x[sel]
        out = []
        for m in (int(n), int(n) + 16):
            t, w = _jacobi_rule(beta, m)
            c = np.cos(np.outer(xs, t))
            out.append((c @ w / w.sum(), np.abs(c) @ w / w.sum()))
        values[sel] = out[1][0]
        errors[sel] = np.abs(out[1][0] - out[0][0]) + 4 * EPS * out[1][1] * n
    if abs(beta + 0.5) < JACOBI_SNAP:
        # weight exponent moved by under 1e-14; |d/dbeta| of the mean is below 2
        errors += 2 * JACOBI_SNAP
    return values, errors


def _hankel_pq(alpha, x):
    """Hankel asymptotic P, Q and their truncation errors for large x."""
    mu = 4.0 * alpha * alpha
    p = np.ones_like(x)
    q = np.zeros_like(x)
    term = np.ones_like(x)
    err = np.zeros_like(x)
    prev = np.full_like(x, np.inf)
    done = np.zeros(x.shape, dtype=bool)
    for k in range(1, 60):
        term = term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * x)
        size = np.abs(term)
        stop = ~done & ((size > prev) | (size < EPS * 1e-3))
        err = np.where(stop, size, err)
        done |= stop
        if done.all():
            break
        sign = (-1) ** (k // 2)
        if k % 2:
            q = np.where(done, q, q + sign * term)
        else:
            p = np.where(done, p, p + sign * term)
        prev = size
    err = np.where(done, err, np.abs(term))
    return p, q, err


def _j_asymptotic(alpha, x):
    p, q, err = _hankel_pq(alpha, x)
    w = x - 0.5 * alpha * np.pi - 0.25 * np.pi
    amp = np.sqrt(2.0 / (np.pi * x))
    big_j = amp * (p * np.cos(w) - q * np.sin(w))
    big_y = amp * (p * np.sin(w) + q * np.cos(w))
    # phase rounding grows like x * eps
    big_err = amp * (2 * err + (4 + x) * EPS * (np.abs(p) + np.abs(q)))
    return big_j, big_y, big_err


def _j_factor(alpha, x):
    """Gamma(alpha+1) (2/x)^alpha, evaluated in logs."""
    return np.exp(math.lgamma(alpha + 1) + alpha * np.log(2.0 / x))


def _route_kinds(alpha, x):
    """0 = series, 1 = Jacobi quadrature, 2 = Hankel expansion.

    Beyond the series range the Hankel expansion is used wherever its own
    truncation estimate is already at rounding level (x large against
    alpha^2); quadrature covers the rest.
    """
    kind = np.where(x <= SERIES_CROSSOVER, 0, 1)
    far = x > SERIES_CROSSOVER
    if far.any():
        _, _, trunc = _hankel_pq(alpha, x[far])
        kind[far] = np.where(trunc <= 1e-16, 2, 1)
    return kind


@_elementwise()
def normalized_j(alpha, x, *, route=None):
    """Normalized Bessel function ``j_alpha(x)`` for ``alpha > -1/2``.

    Routes: ``series`` for ``|x| <= 12``; Gauss-Jacobi quadrature of the
    Poisson integral (``integral``) up to ``|x| = 2000``; Hankel expansion
    (``asymptotic``) beyond.  ``route`` forces one route for every element.
    """
    alpha = _check_alpha(alpha)
    if alpha <= -0.5:
        raise DomainError(f"normalized_j requires alpha > -1/2, got {alpha}")
    scalar = np.ndim(x) == 0
    ax = np.abs(np.atleast_1d(np.asarray(x, dtype=float)))
    if route is None:
        kind = _route_kinds(alpha, ax)
    else:
        try:
            kind = np.full(ax.shape, {"series": 0, "integral": 1, "asymptotic": 2}[route])
        except KeyError:
            raise DomainError(f"unknown route {route!r}") from None
    values = np.empty_like(ax)
    errors = np.empty_like(ax)
    sel = kind == 0
    if sel.any():
        values[sel], errors[sel] = _hyp0f1(alpha + 1.0, -0.25 * ax[sel] ** 2)
    sel = kind == 1
    if sel.any():
        values[sel], errors[sel] = _j_integral(alpha, ax[sel])
    sel = kind == 2
    if sel.any():
        xs = ax[sel]
        if np.any(xs == 0):
            raise DomainError("asymptotic route is undefined at x = 0")
        big_j, _, big_err = _j_asymptotic(alpha, xs)
        fac = _j_factor(alpha, xs)
        values[sel], errors[sel] = fac * big_j, fac * big_err
    names = np.array([Method.SERIES.value, Method.INTEGRAL.value, Method.ASYMPTOTIC.value])[kind]
    return _pack(values, errors, names, scalar)


def _bessel_j_array(alpha, x):
    """J_alpha on x > 0 for any real alpha; returns (value, err, kind)."""
    if alpha < 0 and _is_integer(alpha):
        v, e, k = _bessel_j_array(-alpha, x)
        return (-1.0) ** int(-alpha) * v, e, k
    values = np.empty_like(x)
    errors = np.empty_like(x)
    kind = _route_kinds(alpha, x)
    sel = kind == 0
    if sel.any():
        values[sel], errors[sel] = _j_series(alpha, x[sel])
    sel = kind == 1
    if sel.any():
        xs = x[sel]
        if alpha > -0.5:
            s, e = _j_integral(alpha, xs)
            lead = 1.0 / _j_factor(alpha, xs)
            values[sel], errors[sel] = lead * s, lead * e
        else:
            # downward recurrence from two orders above -1/2
            shift = int(math.ceil(-0.5 - alpha)) + 1
            hi_v, hi_e, _ = _bessel_j_array(alpha + shift + 1, xs)
            mid_v, mid_e, _ = _bessel_j_array(alpha + shift, xs)
            err = np.maximum(hi_e, mid_e)
            for k in range(shift, 0, -1):
                nu = alpha + k
                lo_v = (2 * nu / xs) * mid_v - hi_v
                err = err * (1 + np.abs(2 * nu / xs)) + EPS * np.abs(lo_v)
                hi_v, mid_v = mid_v, lo_v
            values[sel], errors[sel] = mid_v, err
    sel = kind == 2
    if sel.any():
        big_j, _, big_err = _j_asymptotic(alpha, x[sel])
        values[sel], errors[sel] = big_j, big_err
    return values, errors, kind


def _gamma_sign(a):
    """Sign of Gamma(a) for non-pole a."""
    if a > 0:
        return 1.0
    return -1.0 if math.floor(a) % 2 else 1.0


def _positive_x(x, name):
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(~(xs > 0)):
        raise DomainError(f"{name}: x must be positive")
    return xs, scalar


_KIND_NAMES = np.array([Method.SERIES.value, Method.INTEGRAL.value, Method.ASYMPTOTIC.value])


@_elementwise()
def bessel_j(alpha, x):
    """Bessel function of the first kind ``J_alpha(x)`` for ``x > 0``."""
    alpha = _check_alpha(alpha)
    xs, scalar = _positive_x(x, "bessel_j")
    v, e, kind = _bessel_j_array(alpha, xs)
    return _pack(v, e, _KIND_NAMES[kind], scalar)


def _bessel_y_array(alpha, x):
    values = np.empty_like(x)
    errors = np.empty_like(x)
    kind = _route_kinds(alpha, x)
    far = kind == 2
    if far.any():
        _, big_y, big_err = _j_asymptotic(alpha, x[far])
        values[far], errors[far] = big_y, big_err
    near = ~far
    if not near.any():
        return values, errors, kind
    xs = x[near]
    if _is_integer(alpha):
        # average over alpha +- d; comparing with +- 2d bounds the O(d^2) bias
        d = INTEGER_ORDER_OFFSET
        pairs = []
        for step in (d, 2 * d):
            lo = _y_reflection(alpha - step, xs)
            hi = _y_reflection(alpha + step, xs)
            pairs.append((0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1])))
        values[near] = pairs[0][0]
        errors[near] = pairs[0][1] + np.abs(pairs[0][0] - pairs[1][0]) / 3.0
    else:
        values[near], errors[near] = _y_reflection(alpha, xs)
    return values, errors, kind


def _sincospi(a):
    """sin(pi a) and cos(pi a) with the argument reduced exactly first."""
    n = round(a)
    r = math.pi * (a - n)
    sign = -1.0 if n % 2 else 1.0
    return sign * math.sin(r), sign * math.cos(r)


def _y_reflection(alpha, x):
    jp, ep, _ = _bessel_j_array(alpha, x)
    jm, em, _ = _bessel_j_array(-alpha, x)
    s, c = _sincospi(alpha)
    value = (jp * c - jm) / s
    error = (ep * abs(c) + em) / abs(s) + 2 * EPS * (np.abs(jp) + np.abs(jm)) / abs(s)
    return value, error


@_elementwise()
def bessel_y(alpha, x):
    """Bessel function of the second kind ``Y_alpha(x)`` for ``x > 0``.

    Non-integer orders use ``(J_alpha cos(alpha pi) - J_-alpha) / sin(alpha pi)``;
    integer orders average the values at ``alpha +- 1e-6``.
    """
    alpha = _check_alpha(alpha)
    xs, scalar = _positive_x(x, "bessel_y")
    v, e, kind = _bessel_y_array(alpha, xs)
    return _pack(v, e, _KIND_NAMES[kind], scalar)


def _modulus_asymptotic(alpha, x):
    """J^2 + Y^2 from its large-x asymptotic series."""
    mu = 4.0 * alpha * alpha
    total = np.ones_like(x)
    term = np.ones_like(x)
    prev = np.full_like(x, np.inf)
    err = np.zeros_like(x)
    done = np.zeros(x.shape, dtype=bool)
    for k in range(1, 80):
        term = term * (2 * k - 1) / (2 * k) * (mu - (2 * k - 1) ** 2) / (2 * x) ** 2
        size = np.abs(term)
        stop = ~done & ((size > prev) | (size < EPS * 1e-3))
        err = np.where(stop, size, err)
        done |= stop
        if done.all():
            break
        total = np.where(done, total, total + term)
        prev = size
    err = np.where(done, err, np.abs(term))
    scale = 2.0 / (np.pi * x)
    return scale * total, scale * (err + 4 * EPS * np.abs(total))


@_elementwise()
def bessel_modulus_sq(alpha, x):
    """``J_alpha(x)^2 + Y_alpha(x)^2`` for ``x > 0``.

    Direct products for ``x <= 15``; the modulus asymptotic series beyond,
    which is far more accurate there than squaring the individual values.
    """
    alpha = _check_alpha(alpha)
    xs, scalar = _positive_x(x, "bessel_modulus_sq")
    values = np.empty_like(xs)
    errors = np.empty_like(xs)
    near = xs <= MODULUS_CROSSOVER
    kind = np.where(near, 0, 2)
    if near.any():
        jv, je, _ = _bessel_j_array(alpha, xs[near])
        yv, ye, _ = _bessel_y_array(alpha, xs[near])
        values[near] = jv**2 + yv**2
        errors[near] = 2 * (np.abs(jv) * je + np.abs(yv) * ye) + je**2 + ye**2
    if (~near).any():
        values[~near], errors[~near] = _modulus_asymptotic(alpha, xs[~near])
    return _pack(values, errors, _KIND_NAMES[kind], scalar)


# ---------------------------------------------------------------------------
# Modified Bessel functions
# ---------------------------------------------------------------------------


@_elementwise()
def modified_i(alpha, x):
    """Modified Bessel function ``I_alpha(x)`` from its power series.

    Negative ``x`` is accepted for integer orders (``I_n(-x) = (-1)^n I_n(x)``).
    """
    alpha = _check_alpha(alpha)
    if alpha < 0 and _is_integer(alpha):
        raise DomainError(f"modified_i is undefined for negative integer order {alpha}")
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=float))
    if np.any(xs < 0) and not _is_integer(alpha):
        raise DomainError("modified_i with x < 0 requires an integer order")
    ax = np.abs(xs)
    s, e = _hyp0f1(alpha + 1.0, 0.25 * ax**2)
    with np.errstate(divide="ignore", invalid="ignore"):
        lead = np.exp(alpha * np.log(0.5 * ax) - math.lgamma(alpha + 1)) * _gamma_sign(alpha + 1)
    if alpha == 0:
        lead = np.ones_like(ax)
    if _is_integer(alpha):
        lead = np.where(xs < 0, (-1.0) ** int(alpha) * lead, lead)
    with np.errstate(invalid="ignore"):
        err = np.where(np.isfinite(lead), np.abs(lead) * e, 0.0)
    return _pack(lead * s, err, [Method.SERIES.value], scalar)


def _k_integral(alpha, x, rtol):
    """K_alpha(x) from the cosh integral, with the e^{-x} factor pulled out."""
    a = abs(alpha)

    def integrand(t):
        s = np.sinh(0.5 * t)
        g = -2.0 * x[:, None] * s * s
        return 0.5 * (np.exp(g + a * t) + np.exp(g - a * t))

    res = integrate_semi_infinite(integrand, 0.0, tol=1e-300, rtol=rtol)
    val = np.atleast_1d(res.value) * np.exp(-x)
    return val, np.atleast_1d(res.abs_err) * np.exp(-x) + 8 * EPS * np.abs(val), res.converged


def _k_bell(alpha, x, rtol):
    """K_alpha(x) from the integral over [1, inf) of e^{-xt}(t^2-1)^{alpha-1/2}."""
    a = abs(alpha)
    p = a - 0.5

    def integrand(u):
        return np.exp(-x[:, None] * u + p * np.log(u * (u + 2.0)))

    res = integrate_semi_infinite(integrand, 0.0, tol=1e-300, rtol=rtol)
    pref = np.exp(0.5 * math.log(math.pi) - math.lgamma(a + 0.5) + a * np.log(0.5 * x) - x)
    val = np.atleast_1d(res.value) * pref
    return val, np.atleast_1d(res.abs_err) * pref + 8 * EPS * np.abs(val), res.converged


@_elementwise()
def modified_k(alpha, x, *, route="integral", rtol=1e-14):
    """Modified Bessel function of the second kind ``K_alpha(x)``, ``x > 0``.

    ``route="integral"`` integrates ``e^{-x cosh t} cosh(alpha t)`` over the
    half line (valid for every real order); ``route="bell"`` integrates the
    representation over ``[1, inf)``.  Both use ``K_-alpha = K_alpha``.
    """
    alpha = _check_alpha(alpha)
    xs, scalar = _positive_x(x, "modified_k")
    if route == "integral":
        v, e, _ = _k_integral(alpha, xs, rtol)
    elif route == "bell":
        v, e, _ = _k_bell(alpha, xs, rtol)
    else:
        raise DomainError(f"unknown route {route!r}")
    return _pack(v, e, [Method.INTEGRAL.value], scalar)


def _basset(alpha, x, rtol):
    pref = math.exp(alpha * math.log(2.0) + math.lgamma(alpha + 0.5) - 0.5 * math.log(math.pi))
    p = alpha + 0.5
    res = integrate_oscillatory_cos(
        lambda t: np.exp(-p * np.log1p(t * t)), x, tol=1e-300, rtol=rtol
    )
    return pref * res.value, pref * res.abs_err + 8 * EPS * abs(pref * res.value)


@_elementwise()
def scaled_k(alpha, x, *, route=None, rtol=1e-13):
    """Even function ``|x|^alpha K_alpha(|x|)`` for ``alpha > 0``.

    ``x = 0`` returns the limit ``2^(alpha-1) Gamma(alpha)`` and
    ``0 < |x| < 1e-150`` its two-term small-argument expansion.  For
    ``0 < |x| < 0.25`` the Fourier cosine (Basset) integral is used, which
    stays accurate where the two factors of the direct product are extreme;
    otherwise the product of ``|x|^alpha`` and :func:`modified_k`.  ``route``
    (``"basset"`` or ``"product"``) forces one route for all nonzero ``x``.
    """
    alpha = _check_alpha(alpha)
    if alpha <= 0:
        raise DomainError(f"scaled_k requires alpha > 0, got {alpha}")
    scalar = np.ndim(x) == 0
    ax = np.abs(np.atleast_1d(np.asarray(x, dtype=float)))
    if np.any(np.isnan(ax)):
        raise DomainError("scaled_k of NaN")
    values = np.empty_like(ax)
    errors = np.empty_like(ax)
    names = np.empty(ax.shape, dtype=object)
    zero = ax == 0
    if zero.any():
        values[zero] = 2.0 ** (alpha - 1) * gamma(alpha)
        errors[zero] = 4 * EPS * values[zero]
        names[zero] = Method.CLOSED_FORM.value
    tiny = ~zero & (ax < TINY_X)
    if tiny.any():
        # two-term expansion; the next terms are O(x^2 log x), below rounding here
        xt = ax[tiny]
        lead = 2.0 ** (alpha - 1) * gamma(alpha)
        second = 2.0 ** (-alpha - 1) * gamma(-alpha) * xt ** (2 * alpha) if alpha < 1 else 0.0
        values[tiny] = lead + second
        errors[tiny] = lead * xt * xt * (np.abs(np.log(xt)) + 10.0) + 4 * EPS * values[tiny]
        names[tiny] = Method.SERIES.value
    zero = zero | tiny
    if route is None:
        basset = ~zero & (ax < BASSET_CROSSOVER)
    elif route in ("basset", "product"):
        basset = ~zero & (route == "basset")
    else:
        raise DomainError(f"unknown route {route!r}")
    product = ~zero & ~basset
    for i in np.nonzero(basset)[0]:
        values[i], errors[i] = _basset(alpha, ax[i], rtol)
        names[i] = Method.INTEGRAL.value
    if product.any():
        xs = ax[product]
        kv, ke, _ = _k_integral(alpha, xs, rtol)
        pw = xs**alpha
        values[product], errors[product] = pw * kv, pw * ke + 2 * EPS * pw * kv
        names[product] = Method.INTEGRAL.value
    return _pack(values, errors, names, scalar)


# ---------------------------------------------------------------------------
# Confluent hypergeometric function
# ---------------------------------------------------------------------------


@_elementwise(2)
def kummer_1f1(a, b, z):
    """Kummer's function ``1F1(a; b; z)`` from its power series.

    Negative ``z`` is mapped through ``1F1(a;b;z) = e^z 1F1(b-a;b;-z)`` so
    that the summed series has no cancellation when ``b > a``.
    """
    a = float(a)
    b = float(b)
    if b <= 0 and b.is_integer():
        raise DomainError(f"kummer_1f1 has a pole at b = {b}")
    scalar = np.ndim(z) == 0
    zs = np.atleast_1d(np.asarray(z, dtype=float))
    values = np.empty_like(zs)
    errors = np.empty_like(zs)
    neg = zs < 0
    if (~neg).any():
        values[~neg], errors[~neg] = _power_series(
            lambda n: (a + n - 1) / ((b + n - 1) * n), zs[~neg]
        )
    if neg.any():
        s, e = _power_series(lambda n: (b - a + n - 1) / ((b + n - 1) * n), -zs[neg])
        ez = np.exp(zs[neg])
        values[neg], errors[neg] = ez * s, ez * e + EPS * np.abs(ez * s)
    return _pack(values, errors, [Method.SERIES.value], scalar)
