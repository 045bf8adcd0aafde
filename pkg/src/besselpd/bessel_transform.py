"""Fourier-Bessel transform, Bessel translation, convolution and kernels.

Throughout, ``alpha > -1/2`` and functions live on ``[0, inf)`` (even
extensions implied) with the measure ``c_alpha t^(2 alpha + 1) dt`` where
``c_alpha = 1 / (2^alpha Gamma(alpha + 1))``.  With this normalization the
Gaussian ``exp(-t^2/2)`` is its own transform, so Plancherel holds with the
same constant on both sides and no symmetrizing factor is needed.

Functions are passed as callables.  Vectorized callables (accepting and
returning arrays of the same shape) are much faster; scalar-only callables
are detected and wrapped automatically.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .exceptions import DomainError
from .quadrature import (
    QuadResult,
    integrate_finite,
    integrate_oscillatory,
    integrate_semi_infinite,
)
from .special_fns import _hyp0f1, gamma, kummer_1f1, normalized_j, scaled_k

__all__ = [
    "FunctionClass",
    "WeightedFunction",
    "KernelParams",
    "c_alpha",
    "fourier_bessel",
    "translate",
    "convolve",
    "gauss_kernel",
    "poisson_kernel",
    "weighted_lp_norm",
    "gaussian_transform",
    "gaussian_translate",
    "gaussian_convolution",
    "rational_kernel",
    "gaussian_power_transform",
    "kummer_kernel",
]

EPS = float(np.finfo(float).eps)


class FunctionClass(str, Enum):
    L1_ALPHA = "L1_alpha"
    L2_ALPHA = "L2_alpha"
    LP_ALPHA = "Lp_alpha"
    CONTINUOUS = "continuous"


def _check_order(alpha):
    alpha = float(alpha)
    if not math.isfinite(alpha) or alpha <= -0.5:
        raise DomainError(f"alpha must be a finite number > -1/2, got {alpha}")
    return alpha


@dataclass(frozen=True)
class WeightedFunction:
    """A function on ``[0, inf)`` tagged with its order and declared class.

    ``declared_class`` is caller metadata; operations only check what they
    can compute (finiteness of norms) and echo the declaration in reports.
    """

    f: object
    alpha: float
    declared_class: FunctionClass = FunctionClass.CONTINUOUS
    p: float = None
    _vectorized: list = field(default_factory=list, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha", _check_order(self.alpha))
        object.__setattr__(self, "declared_class", FunctionClass(self.declared_class))
        if self.declared_class is FunctionClass.LP_ALPHA and (self.p is None or self.p < 1):
            raise DomainError("Lp_alpha functions need p >= 1")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if not self._vectorized:
            probe = np.array([0.5, 1.5])
            try:
                out = np.asarray(self.f(probe), dtype=float)
                self._vectorized.append(out.shape == probe.shape)
            except (TypeError, ValueError):
                self._vectorized.append(False)
        if self._vectorized[0]:
            with np.errstate(all="ignore"):
                return np.asarray(self.f(t), dtype=float).reshape(t.shape)
        flat = np.array([float(self.f(v)) for v in t.ravel()])
        return flat.reshape(t.shape)


@dataclass(frozen=True)
class KernelParams:
    """Time/scale parameter ``t > 0`` and order of the Gauss/Poisson kernels."""

    t: float
    alpha: float

    def __post_init__(self):
        if not float(self.t) > 0:
            raise DomainError(f"kernel time t must be positive, got {self.t}")
        object.__setattr__(self, "alpha", _check_order(self.alpha))


def c_alpha(alpha):
    """Normalizing constant ``1 / (2^alpha Gamma(alpha + 1))``."""
    return 1.0 / (2.0**alpha * gamma(alpha + 1.0))


def _j(alpha, u):
    shape = np.shape(u)
    return np.asarray(normalized_j(alpha, np.ravel(u)).value).reshape(shape)


def _wrap(f, alpha):
    return f if isinstance(f, WeightedFunction) else WeightedFunction(f, alpha)


# ---------------------------------------------------------------------------
# Transform
# ---------------------------------------------------------------------------

DE_SWITCH = 1.0


def fourier_bessel(wf, xi, tol=1e-10, *, rtol=0.0, switch=DE_SWITCH):
    """Fourier-Bessel transform ``c_alpha int_0^inf f(t) j_alpha(xi t) t^(2a+1) dt``.

    Small frequencies (``xi <= switch``) share one double-exponential
    quadrature; larger ones are summed panel by panel between approximate
    zeros of ``j_alpha(xi t)`` with epsilon-algorithm acceleration.  A
    small-frequency batch that fails to converge is retried panel-wise.

    Returns
    -------
    QuadResult
        ``value`` is a float for scalar ``xi`` and an array otherwise;
        ``abs_err`` is the maximum over frequencies.
    """
    alpha = wf.alpha
    scalar = np.ndim(xi) == 0
    xis = np.atleast_1d(np.asarray(xi, dtype=float))
    if np.any(~(xis >= 0)):
        raise DomainError("frequency xi must be >= 0")
    c = c_alpha(alpha)
    power = 2.0 * alpha + 1.0
    values = np.empty_like(xis)
    errors = np.empty_like(xis)
    evals = 0
    converged = True

    small = xis <= switch
    retry = np.zeros(xis.shape, dtype=bool)
    if small.any():
        xs = xis[small]

        def integrand(t):
            return c * wf(t) * _j(alpha, np.outer(xs, t)) * t**power

        res = integrate_semi_infinite(integrand, 0.0, tol, rtol=rtol)
        evals += res.evaluations
        values[small] = np.atleast_1d(res.value)
        errors[small] = res.abs_err
        if not res.converged:
            retry = small & (xis > 0)
            if not retry.any():
                converged = False
    for i in np.nonzero(~small | retry)[0]:
        w = xis[i]

        def g(t, w=w):
            return c * wf(t) * _j(alpha, w * t) * t**power

        res = integrate_oscillatory(g, (0.5 * alpha + 0.75) * np.pi / w, np.pi / w, tol, rtol=rtol)
        evals += res.evaluations
        values[i], errors[i] = res.value, res.abs_err
        converged &= res.converged
    value = float(values[0]) if scalar else values
    return QuadResult(value, float(errors.max()), int(evals), bool(converged))


# ---------------------------------------------------------------------------
# Translation and convolution
# ---------------------------------------------------------------------------


def translate(wf, x, y, tol=1e-10, *, rtol=0.0):
    """Bessel translation ``T_x f(y)`` as an angular average over ``[0, pi]``.

    ``T_x f(y) = k_alpha int_0^pi f(sqrt(x^2 + y^2 + 2xy cos t)) sin(t)^(2 alpha) dt``
    with ``k_alpha = Gamma(alpha+1) / (sqrt(pi) Gamma(alpha+1/2))``.  ``y``
    may be an array; ``x = 0`` returns ``f(y)`` exactly.
    """
    alpha = wf.alpha
    x = abs(float(x))
    scalar = np.ndim(y) == 0
    ys = np.abs(np.atleast_1d(np.asarray(y, dtype=float)))
    if x == 0.0:
        v = wf(ys)
        return QuadResult(float(v[0]) if scalar else v, 0.0, ys.size, True)
    k = math.exp(math.lgamma(alpha + 1.0) - 0.5 * math.log(math.pi) - math.lgamma(alpha + 0.5))
    d2 = ((x - ys) ** 2)[:, None]
    xy4 = (4.0 * x * ys)[:, None]

    def integrand(theta):
        # x^2 + y^2 + 2xy cos(t) written without cancellation
        r = np.sqrt(d2 + xy4 * np.cos(0.5 * theta) ** 2)
        return k * wf(r) * np.sin(theta) ** (2.0 * alpha)

    res = integrate_finite(integrand, 0.0, np.pi, tol, rtol=rtol)
    value = float(res.value[0]) if scalar else np.asarray(res.value)
    return QuadResult(value, res.abs_err, res.evaluations, res.converged)


def convolve(wf, wg, x, tol=1e-8, *, rtol=0.0):
    """Bessel convolution ``(f * g)(x) = c_alpha int_0^inf T_x f(y) g(y) y^(2a+1) dy``.

    Nested quadrature: the inner translation runs at ``tol / 10`` and its
    error is propagated through the outer weights.
    """
    if wf.alpha != wg.alpha:
        raise DomainError("convolution factors must share the same alpha")
    alpha = wf.alpha
    c = c_alpha(alpha)
    power = 2.0 * alpha + 1.0
    inner = {"err": 0.0, "evals": 0, "ok": True}

    def outer(y):
        tr = translate(wf, x, y, tol / 10.0, rtol=rtol / 10.0)
        inner["err"] = max(inner["err"], tr.abs_err)
        inner["evals"] += tr.evaluations
        inner["ok"] &= tr.converged
        w = c * wg(y) * y**power
        return np.stack([np.atleast_1d(tr.value) * w, np.abs(w)])

    res = integrate_semi_infinite(outer, 0.0, tol, rtol=rtol)
    value, mass = res.value
    err = res.abs_err + inner["err"] * mass
    return QuadResult(float(value), float(err), res.evaluations + inner["evals"], res.converged and inner["ok"])


# ---------------------------------------------------------------------------
# Kernels and norms
# ---------------------------------------------------------------------------


def gauss_kernel(params, x):
    """Heat kernel ``E_t(x) = exp(-x^2 / 4t) / (2t)^(alpha+1)``; its transform is ``exp(-t xi^2)``."""
    t, a = float(params.t), params.alpha
    x = np.asarray(x, dtype=float)
    out = np.exp(-(x**2) / (4.0 * t)) / (2.0 * t) ** (a + 1.0)
    return float(out) if out.ndim == 0 else out


def poisson_kernel(params, x):
    """Poisson kernel ``2^(a+1) Gamma(a+3/2)/sqrt(pi) * t / (t^2 + x^2)^(a+3/2)``.

    Its transform is ``exp(-t xi)``.
    """
    t, a = float(params.t), params.alpha
    x = np.asarray(x, dtype=float)
    const = math.exp((a + 1.0) * math.log(2.0) + math.lgamma(a + 1.5) - 0.5 * math.log(math.pi))
    out = const * t / (t * t + x * x) ** (a + 1.5)
    return float(out) if out.ndim == 0 else out


def weighted_lp_norm(wf, p, tol=1e-12, *, rtol=1e-12):
    """``(c_alpha int_0^inf |f|^p t^(2a+1) dt)^(1/p)`` for finite ``p >= 1``."""
    p = float(p)
    if not (1.0 <= p < math.inf):
        raise DomainError(f"p must be finite and >= 1, got {p}")
    c = c_alpha(wf.alpha)
    power = 2.0 * wf.alpha + 1.0
    res = integrate_semi_infinite(lambda t: c * np.abs(wf(t)) ** p * t**power, 0.0, tol, rtol=rtol)
    integral = float(res.value)
    if integral <= 0.0:
        return QuadResult(0.0, res.abs_err ** (1.0 / p), res.evaluations, res.converged)
    norm = integral ** (1.0 / p)
    err = norm * res.abs_err / (p * integral) + EPS * norm
    return QuadResult(norm, float(err), res.evaluations, res.converged)


# ---------------------------------------------------------------------------
# Closed forms used as oracles by the scenarios
# ---------------------------------------------------------------------------


def gaussian_transform(alpha, s, xi):
    """Transform of ``exp(-s t^2)``: ``(2s)^(-alpha-1) exp(-xi^2 / 4s)``."""
    xi = np.asarray(xi, dtype=float)
    return (2.0 * s) ** (-alpha - 1.0) * np.exp(-(xi**2) / (4.0 * s))


def gaussian_translate(alpha, s, x, y):
    """``T_x exp(-s t^2) (y) = exp(-s(x^2+y^2)) 0F1(; alpha+1; s^2 x^2 y^2)``."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    z = np.broadcast_to((s * x * y) ** 2, np.broadcast(x, y).shape).astype(float)
    series, _ = _hyp0f1(alpha + 1.0, z.ravel())
    return np.exp(-s * (x**2 + y**2)) * series.reshape(z.shape)


def gaussian_convolution(alpha, s, r, x):
    """``exp(-s t^2) * exp(-r t^2)`` evaluated at ``x``.

    Equals ``(2s)^(-a-1) (2r)^(-a-1) (2u)^(a+1) exp(-u x^2)`` with ``u = sr/(s+r)``.
    """
    u = s * r / (s + r)
    x = np.asarray(x, dtype=float)
    return (2 * s) ** (-alpha - 1) * (2 * r) ** (-alpha - 1) * (2 * u) ** (alpha + 1) * np.exp(-u * x**2)


def rational_kernel(alpha, beta, a, x, *, normalization="transform"):
    """``C * |x|^(beta-alpha) K_(beta-alpha)(a|x|)`` for ``0 < alpha < beta``, ``a > 0``.

    With ``normalization="transform"``, ``C = a^(2(alpha-beta)) / (2^beta Gamma(beta+1))``
    and the kernel equals the transform of ``(t^2 + a^2)^(-beta-1)``.
    ``normalization="alpha"`` uses ``C = a^(alpha-beta) / (2^alpha Gamma(alpha+1))``
    instead, a positive multiple of the same kernel.
    """
    if not 0 < alpha < beta or not a > 0:
        raise DomainError("rational_kernel requires 0 < alpha < beta and a > 0")
    nu = beta - alpha
    if normalization == "transform":
        const = a ** (2.0 * (alpha - beta)) * c_alpha(beta)
    elif normalization == "alpha":
        const = a ** (alpha - beta) * c_alpha(alpha)
    else:
        raise DomainError(f"unknown normalization {normalization!r}")
    xs = np.asarray(x, dtype=float)
    out = const * np.asarray(scaled_k(nu, a * np.ravel(xs)).value).reshape(xs.shape)
    return float(out) if out.ndim == 0 else out


def gaussian_power_transform(alpha, gamma_, a, x):
    """Transform of ``t^gamma exp(-t^2/a^2)`` (``gamma > -2 alpha - 2``).

    ``a^(g+2a+2) Gamma(g/2+alpha+1) / (2^(alpha+1) Gamma(alpha+1))
    * 1F1(g/2+alpha+1; alpha+1; -a^2 x^2 / 4)``.
    """
    if not gamma_ > -2.0 * alpha - 2.0:
        raise DomainError("t^gamma exp(-t^2/a^2) is not integrable for this gamma")
    m = 0.5 * gamma_ + alpha + 1.0
    const = abs(a) ** (gamma_ + 2 * alpha + 2) * gamma(m) / (2 ** (alpha + 1) * gamma(alpha + 1))
    xs = np.asarray(x, dtype=float)
    out = const * np.asarray(kummer_1f1(m, alpha + 1.0, -0.25 * a * a * np.ravel(xs) ** 2).value).reshape(xs.shape)
    return float(out) if out.ndim == 0 else out


def kummer_kernel(alpha, beta, a, x):
    """``a^(beta+2) 1F1(1 + beta/2; alpha + 1; -a^2 x^2 / 4)``.

    A positive multiple of the transform of ``t^(beta - 2 alpha) exp(-t^2/a^2)``.
    """
    xs = np.asarray(x, dtype=float)
    out = a ** (beta + 2) * np.asarray(
        kummer_1f1(1 + 0.5 * beta, alpha + 1.0, -0.25 * a * a * np.ravel(xs) ** 2).value
    ).reshape(xs.shape)
    return float(out) if out.ndim == 0 else out
