"""Replay of the positive-definiteness, monotonicity and inequality results as scenarios.

Each scenario combines the other modules on a fixed parameter set and
returns a :class:`ScenarioReport` with named residuals and a verdict.
Scenarios are deterministic: every random draw comes from a stream seeded
by ``SeedSequence([seed, crc32(scenario_id)])``.
"""

import math
import time
import zlib
from dataclasses import dataclass, field, replace

import numpy as np

from .bessel_transform import (
    KernelParams,
    WeightedFunction,
    convolve,
    fourier_bessel,
    gauss_kernel,
    gaussian_convolution,
    gaussian_power_transform,
    gaussian_transform,
    gaussian_translate,
    kummer_kernel,
    poisson_kernel,
    rational_kernel,
    translate,
    weighted_lp_norm,
)
from .definiteness import Verdict, certify_spd
from .exceptions import BracketError, ConfigurationError, DivergenceError, DomainError
from .monotonicity import Outcome, cm_check, lcm_check
from .quadrature import differentiate, find_root, integrate_semi_infinite
from .special_fns import bessel_modulus_sq, kummer_1f1, modified_k, normalized_j, scaled_k

__all__ = [
    "REGISTRY",
    "DEFAULT_TOLERANCES",
    "ScenarioConfig",
    "ScenarioReport",
    "run_scenarios",
    "scenario_seed",
    "verify_agm_inequality",
    "verify_log_inequality",
    "verify_ismail_representation",
    "verify_watson_derivative",
    "verify_monotone_k_derivative",
    "verify_schoenberg_wendland_bridge",
    "BridgeKernel",
    "bridge_kernels",
]

DEFAULT_TOLERANCES = {"identity": 1e-8, "quadrature": 1e-6, "ismail": 1e-4}
EQUALITY_TOL = 1e-12
CM_INTERVAL = (0.2, 10.0)
CM_ORDER = 6
CM_BAND = 1e-7


@dataclass(frozen=True)
class ScenarioConfig:
    """Parameters of one scenario run.

    ``alpha=None`` runs the scenario's default set of orders; a number
    restricts it to that order.  ``tol=None`` selects the scenario's
    default tolerance class.
    """

    scenario_id: str
    alpha: float = None
    seed: int = 0
    tol: float = None
    pairs: int = 10_000
    trials: int = 20
    nodes_per_trial: int = 8
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.scenario_id not in REGISTRY:
            raise ConfigurationError(f"unknown scenario id {self.scenario_id!r}")
        if self.pairs < 1 or self.trials < 1 or self.nodes_per_trial < 1:
            raise ConfigurationError("pairs, trials and nodes_per_trial must be >= 1")
        if self.tol is not None and not self.tol > 0:
            raise ConfigurationError("tol must be positive")

    def alphas(self, default):
        return (float(self.alpha),) if self.alpha is not None else tuple(default)

    def tolerance(self, kind):
        return float(self.tol) if self.tol is not None else DEFAULT_TOLERANCES[kind]

    def rng(self):
        return np.random.default_rng(scenario_seed(self.seed, self.scenario_id))


@dataclass(frozen=True)
class ScenarioReport:
    scenario_id: str
    citation: str
    parameters: dict
    residuals: dict
    verdict: Outcome
    runtime: float = 0.0
    notes: tuple = ()

    def to_dict(self, include_runtime=False):
        d = {
            "scenario_id": self.scenario_id,
            "citation": self.citation,
            "parameters": self.parameters,
            "residuals": self.residuals,
            "verdict": self.verdict.value,
        }
        if self.notes:
            d["notes"] = list(self.notes)
        if include_runtime:
            d["runtime"] = self.runtime
        return d


def scenario_seed(seed, scenario_id):
    """Seed sequence private to one scenario, derived from the global seed."""
    return np.random.SeedSequence([int(seed), zlib.crc32(scenario_id.encode())])


class _Tally:
    """Accumulates residuals and the worst verdict of a scenario."""

    def __init__(self):
        self.residuals = {}
        self.notes = []
        self.failed = False
        self.unsure = False

    def put(self, name, value):
        self.residuals[name] = float(value) if not isinstance(value, (bool, str)) else value

    def check(self, ok, note=None):
        if not ok:
            self.failed = True
            if note:
                self.notes.append(note)

    def doubt(self, flag=True, note=None):
        if flag:
            self.unsure = True
            if note:
                self.notes.append(note)

    def verdict(self):
        if self.failed:
            return Outcome.FAIL
        return Outcome.INCONCLUSIVE if self.unsure else Outcome.PASS


def _report(sid, params, tally, start):
    return ScenarioReport(
        sid, REGISTRY[sid][0], params, tally.residuals, tally.verdict(),
        time.perf_counter() - start, tuple(tally.notes),
    )


def _k_sqrt(alpha):
    return lambda x: np.asarray(modified_k(alpha, np.sqrt(x)).value)


def _rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


# ---------------------------------------------------------------------------
# Inequalities
# ---------------------------------------------------------------------------


def _pairs_array(pairs):
    arr = np.asarray(pairs, dtype=float).reshape(-1, 2)
    if np.any(~(arr > 0)):
        raise DomainError("inequality pairs must be positive")
    return arr[:, 0], arr[:, 1]


def verify_agm_inequality(alpha, pairs, tol=DEFAULT_TOLERANCES["identity"], *, equality_tol=EQUALITY_TOL):
    """Two-sided mean inequality for ``K_alpha(sqrt(.))`` on every pair.

    ``K(sqrt(m)) <= sqrt(K(sqrt x) K(sqrt y)) <= ((x+y)/(2 sqrt(xy)))^((a+1)/2) K(sqrt(m))``
    with ``m = (x+y)/2``.  Gaps are relative to the middle quantity; a gap
    below ``-tol`` is a violation.  Pairs with ``|x-y| <= tol (x+y)`` must
    have both gaps within ``equality_tol``.
    """
    start = time.perf_counter()
    if not alpha > 0:
        raise DomainError("the mean inequality needs alpha > 0")
    x, y = _pairs_array(pairs)
    k = _k_sqrt(alpha)
    kx, ky, km = k(x), k(y), k(0.5 * (x + y))
    mid = np.sqrt(kx * ky)
    # equal arguments make the three expressions identical
    factor = np.where(x == y, 1.0, ((x + y) / (2.0 * np.sqrt(x * y))) ** (0.5 * (alpha + 1.0)))
    left = (mid - km) / mid
    right = (factor * km - mid) / mid
    equal = np.abs(x - y) <= tol * (x + y)
    t = _Tally()
    t.put("pairs", x.size)
    t.put("violations_left", int(np.sum(left < -tol)))
    t.put("violations_right", int(np.sum(right < -tol)))
    t.put("min_gap_left", left.min())
    t.put("min_gap_right", right.min())
    eq_res = float(np.max(np.abs(np.concatenate([left[equal], right[equal]])))) if equal.any() else 0.0
    t.put("equality_pairs", int(equal.sum()))
    t.put("equality_residual", eq_res)
    t.check(t.residuals["violations_left"] == 0, "left inequality violated")
    if t.residuals["violations_right"]:
        i = int(np.argmin(right))
        t.check(False, f"right inequality violated, worst at x={float(x[i])!r}, y={float(y[i])!r}")
    t.check(eq_res <= equality_tol, "equality case not attained")
    params = {"alpha": float(alpha), "tol": float(tol), "equality_tol": float(equality_tol)}
    return _report("thm13_agm", params, t, start)


def _x0(alpha):
    """Root of ``K_alpha(sqrt(x)) = 1``."""
    g = lambda x: float(modified_k(alpha, math.sqrt(x)).value) - 1.0  # noqa: E731
    lo, hi = 1e-10, 1.0
    while g(hi) > 0:
        hi *= 2.0
        if hi > 1e4:
            raise ConfigurationError(f"no root of K_{alpha}(sqrt x) = 1 below 1e4")
    try:
        return find_root(g, lo, hi, tol=1e-14)
    except BracketError as exc:
        raise ConfigurationError(f"cannot bracket x0 for alpha={alpha}: {exc}") from exc


def verify_log_inequality(alpha, pairs, tol=DEFAULT_TOLERANCES["identity"], *, equality_tol=EQUALITY_TOL):
    """``sqrt(-ln K(sqrt x)) sqrt(-ln K(sqrt y)) <= -ln K(sqrt((x+y)/2))`` for ``x, y > x0``.

    Pairs with ``min(x, y) <= x0`` fall outside the hypothesis and are
    counted in ``gated_pairs``, not as failures.
    """
    start = time.perf_counter()
    if not alpha > 0:
        raise DomainError("the log inequality needs alpha > 0")
    x, y = _pairs_array(pairs)
    x0 = _x0(alpha)
    keep = np.minimum(x, y) > x0
    x, y = x[keep], y[keep]
    t = _Tally()
    t.put("x0", x0)
    t.put("gated_pairs", int((~keep).sum()))
    t.put("pairs", int(x.size))
    if x.size:
        k = _k_sqrt(alpha)
        lx, ly, lm = -np.log(k(x)), -np.log(k(y)), -np.log(k(0.5 * (x + y)))
        lhs = np.sqrt(lx) * np.sqrt(ly)
        gap = np.where(x == y, 0.0, (lm - lhs) / lm)
        equal = np.abs(x - y) <= tol * (x + y)
        eq_res = float(np.max(np.abs(gap[equal]))) if equal.any() else 0.0
        t.put("violations", int(np.sum(gap < -tol)))
        t.put("min_gap", gap.min())
        t.put("equality_pairs", int(equal.sum()))
        t.put("equality_residual", eq_res)
        t.check(t.residuals["violations"] == 0, "log inequality violated")
        t.check(eq_res <= equality_tol, "equality case not attained")
    else:
        t.doubt(note="every pair was outside the hypothesis")
    params = {"alpha": float(alpha), "tol": float(tol), "equality_tol": float(equality_tol)}
    return _report("thm13_log", params, t, start)


# ---------------------------------------------------------------------------
# Identities
# ---------------------------------------------------------------------------


def verify_ismail_representation(alpha, x, tol=DEFAULT_TOLERANCES["ismail"]):
    """Compare ``K_(a-1)(sqrt x) / (sqrt x K_a(sqrt x))`` with its integral over ``J^2 + Y^2``.

    The right side ``(4/pi^2) int_0^inf dt / (t (x + t^2) (J_a^2(t) + Y_a^2(t)))``
    is computed by semi-infinite quadrature; non-convergence makes the
    report inconclusive.
    """
    start = time.perf_counter()
    if not alpha >= 0 or not x > 0:
        raise DomainError("the representation needs alpha >= 0 and x > 0")
    s = math.sqrt(x)
    lhs = float(modified_k(alpha - 1.0, s).value) / (s * float(modified_k(alpha, s).value))

    def integrand(t):
        return 1.0 / (t * (x + t * t) * np.asarray(bessel_modulus_sq(alpha, t).value))

    t = _Tally()
    try:
        res = integrate_semi_infinite(integrand, 0.0, tol=1e-300, rtol=1e-10)
        rhs = 4.0 / math.pi**2 * float(res.value)
        t.put("lhs", lhs)
        t.put("rhs", rhs)
        t.put("rel_residual", _rel(rhs, lhs))
        t.put("quad_abs_err", 4.0 / math.pi**2 * res.abs_err)
        t.check(t.residuals["rel_residual"] < tol, "representation residual above tolerance")
        t.doubt(not res.converged, "quadrature did not converge")
    except DivergenceError as exc:
        t.put("lhs", lhs)
        t.doubt(note=f"quadrature diverged: {exc}")
    return _report("ismail", {"alpha": float(alpha), "x": float(x), "tol": float(tol)}, t, start)


def verify_watson_derivative(alpha, xs, tol=DEFAULT_TOLERANCES["identity"]):
    """``|K_a'(x) + (K_(a-1)(x) + K_(a+1)(x)) / 2| < tol`` with ``K_a'`` from the differentiation engine."""
    start = time.perf_counter()
    if not alpha >= 0:
        raise DomainError("the derivative identity is checked for alpha >= 0")
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    if np.any(~(xs > 0)):
        raise DomainError("x must be positive")
    k = lambda t: np.asarray(modified_k(alpha, t).value)  # noqa: E731
    rhs = -0.5 * (np.asarray(modified_k(alpha - 1.0, xs).value) + np.asarray(modified_k(alpha + 1.0, xs).value))
    res, errs = [], []
    for x, r in zip(xs, rhs):
        d = differentiate(k, float(x), 1)
        res.append(abs(d.value - r))
        errs.append(d.abs_err)
    t = _Tally()
    t.put("max_abs_residual", max(res))
    t.put("max_derivative_err", max(errs))
    t.check(max(res) < tol, "derivative identity residual above tolerance")
    params = {"alpha": float(alpha), "xs": xs.tolist(), "tol": float(tol)}
    return _report("watson", params, t, start)


def verify_monotone_k_derivative(alpha, tol=DEFAULT_TOLERANCES["quadrature"], xs=None):
    """``d/dx [x^(a+1) K_(a+1)(x)] = -x^(a+1) K_a(x)`` on a grid, relative residual.

    Also reports the derivative at ``x = 0.01``, which must be small and
    match the right side there.
    """
    start = time.perf_counter()
    if not alpha > 0:
        raise DomainError("the derivative identity is checked for alpha > 0")
    xs = np.geomspace(0.5, 10.0, 8) if xs is None else np.atleast_1d(np.asarray(xs, dtype=float))
    f = lambda u: np.asarray(scaled_k(alpha + 1.0, u).value)  # noqa: E731
    target = -xs * np.asarray(scaled_k(alpha, xs).value)
    rel = [_rel(differentiate(f, float(x), 1).value, tv) for x, tv in zip(xs, target)]
    small = 0.01
    d_small = differentiate(f, small, 1)
    t_small = -small * float(scaled_k(alpha, small).value)
    t = _Tally()
    t.put("max_rel_residual", max(rel))
    t.put("derivative_at_0.01", d_small.value)
    t.put("rel_residual_at_0.01", _rel(d_small.value, t_small))
    t.check(max(rel) < tol, "derivative identity residual above tolerance")
    t.check(t.residuals["rel_residual_at_0.01"] < tol, "small-x derivative mismatch")
    params = {"alpha": float(alpha), "xs": xs.tolist(), "tol": float(tol)}
    return _report("k_derivative", params, t, start)


# ---------------------------------------------------------------------------
# Schoenberg / Wendland bridge
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BridgeKernel:
    """Radial profile ``phi`` with the CM test function ``psi(u) = phi(sqrt u)``.

    ``expected`` is the Gram verdict a control must produce (``None`` means
    whatever the bridge predicts).  ``psi`` and ``domain`` may name an
    analytic continuation of ``phi(sqrt u)`` valid on a larger set, which
    lets the derivative windows widen near ``u = 0``.
    """

    phi: object
    expected: Verdict = None
    psi: object = None
    domain: tuple = (0.0, np.inf)

    def cm_function(self):
        if self.psi is not None:
            return self.psi
        return lambda u: self.phi(np.sqrt(u))


def bridge_kernels():
    """Kernels checked by the Schoenberg-Wendland bridge, keyed by name."""
    kernels = {}
    for a in (0.5, 1.0, 2.0):
        kernels[f"scaledK[alpha={a}]"] = BridgeKernel(lambda r, a=a: np.asarray(scaled_k(a, r).value))
    kernels["example1"] = BridgeKernel(lambda r: np.asarray(rational_kernel(0.5, 1.5, 1.0, r)))
    # 1F1(3/2; 3/2; -u/4) in u is entire, so windows may cross u = 0
    kernels["example2"] = BridgeKernel(
        lambda r: np.asarray(kummer_kernel(0.5, 1.0, 1.0, r)),
        psi=lambda u: np.asarray(kummer_1f1(1.5, 1.5, -0.25 * np.asarray(u, dtype=float)).value),
        domain=(-np.inf, np.inf),
    )
    kernels["control_constant"] = BridgeKernel(
        lambda r: np.ones_like(np.asarray(r, dtype=float)), Verdict.PSD_ONLY
    )
    kernels["control_square"] = BridgeKernel(lambda r: np.asarray(r, dtype=float) ** 2, Verdict.INDEFINITE)
    return kernels


def verify_schoenberg_wendland_bridge(
    alpha=None, *, kernels=None, trials=20, nodes_per_trial=8, seed=0, interval=CM_INTERVAL,
):
    """Cross-check ``cm_check(phi(sqrt .))`` against ``certify_spd(phi(|.|))`` per kernel.

    Predicted directions: CM and nonconstant implies an SPD verdict; an
    indefinite Gram counterexample implies a CM failure.  A disagreement
    fails the scenario and names both verdicts.  ``alpha`` restricts the
    kernel set to ``x^alpha K_alpha(x)`` for that order.
    """
    start = time.perf_counter()
    if kernels is None:
        kernels = bridge_kernels()
        if alpha is not None:
            if not alpha > 0:
                raise DomainError("the bridge needs alpha > 0")
            kernels = {f"scaledK[alpha={alpha}]": BridgeKernel(lambda r: np.asarray(scaled_k(alpha, r).value))}
    t = _Tally()
    for name, kern in kernels.items():
        phi, expected = kern.phi, kern.expected
        cm = cm_check(kern.cm_function(), interval, CM_ORDER, band=CM_BAND, domain=kern.domain)
        ends = phi(np.sqrt(np.array(interval, dtype=float)))
        nonconstant = bool(abs(ends[0] - ends[1]) > CM_BAND)
        cert = certify_spd(
            lambda d: phi(np.abs(d)), trials, nodes_per_trial, seed=seed
        )
        t.put(f"{name}.cm", cm.verdict.value)
        t.put(f"{name}.nonconstant", nonconstant)
        t.put(f"{name}.gram", cert.verdict.value)
        t.put(f"{name}.min_ratio", cert.min_ratio)
        if cm.verdict is Outcome.PASS and nonconstant and cert.verdict is not Verdict.SPD:
            t.check(False, f"{name}: CM and nonconstant but Gram verdict {cert.verdict.value}")
        if cert.verdict is Verdict.INDEFINITE and cm.verdict is Outcome.PASS:
            t.check(False, f"{name}: Gram counterexample but CM passed")
        if expected is not None:
            t.check(cert.verdict is expected, f"{name}: expected {expected.value}, got {cert.verdict.value}")
        t.doubt(cm.verdict is Outcome.INCONCLUSIVE, f"{name}: CM check inconclusive")
    params = {"interval": list(interval), "max_order": CM_ORDER, "band": CM_BAND,
              "trials": int(trials), "nodes_per_trial": int(nodes_per_trial), "seed": int(seed)}
    return _report("schoenberg_wendland", params, t, start)


# ---------------------------------------------------------------------------
# Registry runners
# ---------------------------------------------------------------------------


def _seed_int(cfg):
    return int(scenario_seed(cfg.seed, cfg.scenario_id).generate_state(1)[0])


def _spd_runner(cfg, kernels, accept):
    start = time.perf_counter()
    t = _Tally()
    seed = _seed_int(cfg)
    for name, f in kernels.items():
        cert = certify_spd(f, cfg.trials, cfg.nodes_per_trial, seed=seed)
        t.put(f"{name}.verdict", cert.verdict.value)
        t.put(f"{name}.min_ratio", cert.min_ratio)
        t.check(cert.verdict in accept, f"{name}: Gram verdict {cert.verdict.value}")
    params = {"trials": cfg.trials, "nodes_per_trial": cfg.nodes_per_trial, "seed": seed, "range": [-5.0, 5.0]}
    return params, t, start


def _run_j_pd(cfg):
    kernels = {
        f"j[alpha={a}]": (lambda d, a=a: np.asarray(normalized_j(a, d).value))
        for a in cfg.alphas((0.5, 1.0))
    }
    params, t, start = _spd_runner(cfg, kernels, (Verdict.SPD, Verdict.PSD_ONLY))
    return _report(cfg.scenario_id, params, t, start)


def _run_thm_k(cfg):
    kernels = {
        f"scaledK[alpha={a}]": (lambda d, a=a: np.asarray(scaled_k(a, d).value))
        for a in cfg.alphas((0.5, 1.0, 2.0))
    }
    params, t, start = _spd_runner(cfg, kernels, (Verdict.SPD,))
    return _report(cfg.scenario_id, params, t, start)


def _example_runner(cfg, f, printed, corrected, point, kernel, label):
    tol = cfg.tolerance("quadrature")
    alpha, x = point["alpha"], point["x"]
    res = fourier_bessel(WeightedFunction(f, alpha), x, tol=1e-13, rtol=1e-12)
    params, t, start = _spd_runner(cfg, {label: kernel}, (Verdict.SPD,))
    params.update(point)
    params["tol"] = tol
    t.put("transform", res.value)
    t.put("printed_form", printed)
    t.put("corrected_form", corrected)
    t.put("rel_residual_printed", _rel(printed, res.value))
    t.put("rel_residual_corrected", _rel(corrected, res.value))
    t.check(t.residuals["rel_residual_printed"] < tol, "printed closed form does not match the transform")
    t.doubt(not res.converged, "transform quadrature did not converge")
    return _report(cfg.scenario_id, params, t, start)


def _run_ex1(cfg):
    alpha = cfg.alpha if cfg.alpha is not None else 0.5
    beta, a, x = cfg.extra.get("beta", 1.5), cfg.extra.get("a", 1.0), cfg.extra.get("x", 2.0)
    f = lambda u: (u * u + a * a) ** (-beta - 1.0)  # noqa: E731
    return _example_runner(
        cfg, f,
        rational_kernel(alpha, beta, a, x, normalization="alpha"),
        rational_kernel(alpha, beta, a, x),
        {"alpha": alpha, "beta": beta, "a": a, "x": x},
        lambda d: np.asarray(rational_kernel(alpha, beta, a, np.abs(d), normalization="alpha")),
        "printed_kernel",
    )


def _run_ex2(cfg):
    alpha = cfg.alpha if cfg.alpha is not None else 0.5
    beta, a, x = cfg.extra.get("beta", 1.0), cfg.extra.get("a", 1.0), cfg.extra.get("x", 1.0)
    f = lambda u: u ** (beta - alpha) * np.exp(-((u / a) ** 2))  # noqa: E731
    return _example_runner(
        cfg, f,
        kummer_kernel(alpha, beta, a, x),
        gaussian_power_transform(alpha, beta - alpha, a, x),
        {"alpha": alpha, "beta": beta, "a": a, "x": x},
        lambda d: np.asarray(kummer_kernel(alpha, beta, a, d)),
        "printed_kernel",
    )


def _gaussian(alpha, s=1.0):
    return WeightedFunction(lambda u: np.exp(-s * u * u), alpha)


def _run_cor_translation(cfg):
    alpha = cfg.alpha if cfg.alpha is not None else 0.5
    shift = cfg.extra.get("x", 1.0)
    tol = cfg.tolerance("quadrature")
    g = _gaussian(alpha)
    shifted = WeightedFunction(lambda y: np.asarray(translate(g, shift, y, 1e-13).value), alpha)
    xis = np.array([0.5, 1.0, 2.0])
    num = fourier_bessel(shifted, xis, tol=1e-12)
    base = gaussian_transform(alpha, 1.0, xis)
    closed = np.asarray(normalized_j(alpha, shift * xis).value) * base
    kernel = lambda d: np.asarray(normalized_j(alpha, shift * d).value) * gaussian_transform(alpha, 1.0, d)  # noqa: E731
    params, t, start = _spd_runner(cfg, {"transform_of_translate": kernel}, (Verdict.SPD, Verdict.PSD_ONLY))
    params.update({"alpha": alpha, "x": shift, "xi": xis.tolist(), "tol": tol})
    t.put("max_rel_residual", np.max(np.abs(num.value - closed) / base))
    t.check(t.residuals["max_rel_residual"] < tol, "transform of translate mismatch")
    t.doubt(not num.converged, "quadrature did not converge")
    return _report(cfg.scenario_id, params, t, start)


def _run_cor_gauss_poisson(cfg):
    alpha = cfg.alpha if cfg.alpha is not None else 0.5
    time_t = cfg.extra.get("t", 0.5)
    tol = cfg.tolerance("quadrature")
    phi = _gaussian(alpha)
    kp = KernelParams(time_t, alpha)
    xs = np.array([0.0, 1.0, 2.0])
    s_gauss = 1.0 / (4.0 * time_t)

    def gauss_smooth(x):
        return gaussian_convolution(alpha, 1.0, s_gauss, x) / (2.0 * time_t) ** (alpha + 1.0)

    spectrum = WeightedFunction(lambda xi: np.exp(-time_t * xi) * gaussian_transform(alpha, 1.0, xi), alpha)

    def poisson_smooth(x):
        x = np.abs(np.atleast_1d(np.asarray(x, dtype=float)))
        return np.asarray(fourier_bessel(spectrum, x, tol=1e-13, switch=np.inf).value)

    t_g = [convolve(phi, WeightedFunction(lambda u: gauss_kernel(kp, u), alpha), x, 1e-11) for x in xs]
    t_p = [convolve(phi, WeightedFunction(lambda u: poisson_kernel(kp, u), alpha), x, 1e-11) for x in xs]
    g_res = max(_rel(r.value, gauss_smooth(x)) for r, x in zip(t_g, xs))
    p_res = max(_rel(r.value, float(poisson_smooth(x)[0])) for r, x in zip(t_p, xs))
    kernels = {
        "gauss_smoothing": lambda d: np.asarray(gauss_smooth(np.abs(d))),
        "poisson_smoothing": lambda d: poisson_smooth(np.ravel(d)).reshape(np.shape(d)),
    }
    params, t, start = _spd_runner(cfg, kernels, (Verdict.SPD,))
    params.update({"alpha": alpha, "t": time_t, "x": xs.tolist(), "tol": tol})
    t.put("gauss_rel_residual", g_res)
    t.put("poisson_rel_residual", p_res)
    t.check(g_res < tol, "Gauss smoothing: convolution and closed form disagree")
    t.check(p_res < tol, "Poisson smoothing: convolution and inverse transform disagree")
    t.doubt(not all(r.converged for r in t_g + t_p), "convolution quadrature did not converge")
    return _report(cfg.scenario_id, params, t, start)


def _numeric_transform(wf):
    return WeightedFunction(lambda xi: np.asarray(fourier_bessel(wf, xi, tol=1e-14, switch=np.inf).value), wf.alpha)


def _run_parseval(cfg):
    start = time.perf_counter()
    tol = cfg.tolerance("quadrature")
    t = _Tally()
    for a in cfg.alphas((0.5, 1.0)):
        f = _gaussian(a)
        n_f = weighted_lp_norm(f, 2)
        n_hat = weighted_lp_norm(_numeric_transform(f), 2, tol=1e-13, rtol=1e-10)
        ratio = n_hat.value / n_f.value
        t.put(f"norm_ratio[alpha={a}]", ratio)
        t.check(abs(ratio - 1.0) < tol, f"alpha={a}: transform is not an isometry")
        t.doubt(not (n_f.converged and n_hat.converged), "norm quadrature did not converge")
    t.put("symmetrizing_factor", 1.0)
    return _report(cfg.scenario_id, {"f": "exp(-t^2)", "tol": tol}, t, start)


def _run_hausdorff_young(cfg):
    start = time.perf_counter()
    tol = cfg.tolerance("quadrature")
    t = _Tally()
    for a in cfg.alphas((0.5, 1.0)):
        f1 = WeightedFunction(lambda u: np.exp(-u), a)
        xis = np.linspace(0.0, 10.0, 21)
        sup = float(np.max(np.abs(fourier_bessel(f1, xis, tol=1e-12).value)))
        l1 = weighted_lp_norm(f1, 1).value
        t.put(f"p1_margin[alpha={a}]", (l1 - sup) / l1)
        t.check(sup <= l1 * (1 + tol), f"alpha={a}: sup of transform exceeds L1 norm")
        g = _gaussian(a)
        lp = weighted_lp_norm(g, 4.0 / 3.0).value
        lq = weighted_lp_norm(_numeric_transform(g), 4.0, tol=1e-13, rtol=1e-10).value
        t.put(f"p4/3_margin[alpha={a}]", (lp - lq) / lp)
        t.check(lq <= lp * (1 + tol), f"alpha={a}: L4 norm of transform exceeds L4/3 norm")
    return _report(cfg.scenario_id, {"tol": tol, "p": [1.0, 4.0 / 3.0]}, t, start)


def _run_young(cfg):
    start = time.perf_counter()
    tol = cfg.tolerance("quadrature")
    t = _Tally()
    s, r = 1.0, 2.0
    xs = np.array([0.0, 1.0, 2.0])
    xis = np.array([0.5, 1.0, 2.0])
    for a in cfg.alphas((0.5,)):
        f, g = _gaussian(a, s), _gaussian(a, r)
        conv = [convolve(f, g, x, 1e-12) for x in xs]
        closed = gaussian_convolution(a, s, r, xs)
        t.put(f"conv_rel_residual[alpha={a}]", max(_rel(c.value, v) for c, v in zip(conv, closed)))
        fg = WeightedFunction(lambda u, a=a: gaussian_convolution(a, s, r, u), a)
        n_fg = weighted_lp_norm(fg, 1).value
        n_f, n_g = weighted_lp_norm(f, 1).value, weighted_lp_norm(g, 1).value
        t.put(f"young_margin[alpha={a}]", (n_f * n_g - n_fg) / (n_f * n_g))
        spec = fourier_bessel(fg, xis, tol=1e-13).value
        prod = gaussian_transform(a, s, xis) * gaussian_transform(a, r, xis)
        t.put(f"spectrum_rel_residual[alpha={a}]", np.max(np.abs(spec - prod) / prod))
        t.check(t.residuals[f"conv_rel_residual[alpha={a}]"] < tol, "convolution mismatch")
        t.check(n_fg <= n_f * n_g * (1 + tol), "Young bound violated")
        t.check(t.residuals[f"spectrum_rel_residual[alpha={a}]"] < tol, "convolution theorem mismatch")
        t.doubt(not all(c.converged for c in conv), "convolution quadrature did not converge")
    return _report(cfg.scenario_id, {"s": s, "r": r, "x": xs.tolist(), "xi": xis.tolist(), "tol": tol}, t, start)


GRID5 = np.linspace(0.5, 2.5, 5)


def _run_product_formula(cfg):
    start = time.perf_counter()
    tol = cfg.tolerance("identity")
    lam = cfg.extra.get("lambda", 0.7)
    t = _Tally()
    for a in cfg.alphas((1.0,)):
        f = WeightedFunction(lambda u, a=a: np.asarray(normalized_j(a, lam * u).value), a)
        worst = 0.0
        for x in GRID5:
            got = translate(f, x, GRID5, 1e-12)
            want = float(normalized_j(a, lam * x).value) * np.asarray(normalized_j(a, lam * GRID5).value)
            worst = max(worst, float(np.max(np.abs(got.value - want) / np.abs(want))))
            t.doubt(not got.converged, "translation quadrature did not converge")
        t.put(f"max_rel_residual[alpha={a}]", worst)
        t.check(worst < tol, f"alpha={a}: product formula residual above tolerance")
    return _report(cfg.scenario_id, {"lambda": lam, "grid": GRID5.tolist(), "tol": tol}, t, start)


def _run_transform_of_translation(cfg):
    start = time.perf_counter()
    tol = cfg.tolerance("quadrature")
    t = _Tally()
    for a in cfg.alphas((1.0,)):
        g = _gaussian(a)
        worst = 0.0
        for x in GRID5:
            shifted = WeightedFunction(lambda y, x=x: np.asarray(translate(g, x, y, 1e-14).value), a)
            got = fourier_bessel(shifted, GRID5, tol=1e-12)
            base = gaussian_transform(a, 1.0, GRID5)
            want = np.asarray(normalized_j(a, x * GRID5).value) * base
            # relative to the untranslated transform: j_alpha(x xi) has zeros on the grid
            worst = max(worst, float(np.max(np.abs(got.value - want) / base)))
            t.doubt(not got.converged, "transform quadrature did not converge")
        t.put(f"max_rel_residual[alpha={a}]", worst)
        t.check(worst < tol, f"alpha={a}: transform of translation residual above tolerance")
    return _report(cfg.scenario_id, {"x": GRID5.tolist(), "xi": GRID5.tolist(), "tol": tol}, t, start)


def _mono_runner(cfg, checks):
    start = time.perf_counter()
    t = _Tally()
    params = {"max_order": CM_ORDER, "band": CM_BAND, "intervals": {}}
    for name, (kind, f, interval, domain) in checks.items():
        check = cm_check if kind == "CM" else lcm_check
        rep = check(f, interval, CM_ORDER, band=CM_BAND, domain=domain)
        params["intervals"][name] = list(interval)
        t.put(f"{name}.verdict", rep.verdict.value)
        v = rep.first_violation()
        t.put(f"{name}.violations", len(rep.violations))
        if v is not None:
            t.check(False, f"{name}: (-1)^n d^n = {v.signed_value:.3e} at x={v.x:.6g}, n={v.n}")
        t.doubt(rep.verdict is Outcome.INCONCLUSIVE, f"{name}: inconclusive")
    return _report(cfg.scenario_id, params, t, start)


ALPHAS_MONO = (0.5, 1.0, 2.5)
POSITIVE = (0.0, np.inf)


def _run_scaled_k_cm(cfg):
    return _mono_runner(cfg, {
        f"alpha={a}": ("CM", lambda x, a=a: np.asarray(scaled_k(a, np.sqrt(x)).value), CM_INTERVAL, POSITIVE)
        for a in cfg.alphas(ALPHAS_MONO)
    })


def _run_inv_x_k_lcm(cfg):
    def f(a):
        return lambda x: 1.0 / (x ** (0.5 * (a + 1.0)) * np.asarray(modified_k(a, np.sqrt(x)).value))

    return _mono_runner(cfg, {
        f"alpha={a}": ("LCM", f(a), CM_INTERVAL, POSITIVE) for a in cfg.alphas(ALPHAS_MONO)
    })


def _run_k_ratio_cm(cfg):
    pairs = ((0.5, 0.5), (1.0, 1.0), (2.0, 0.5))
    if cfg.alpha is not None:
        pairs = tuple((float(cfg.alpha), b) for b in (0.5, 1.0))

    def g(a, b):
        return lambda x: (
            np.asarray(modified_k(a + 1.0, np.sqrt(x)).value)
            / (x**b * np.asarray(modified_k(a, np.sqrt(x)).value))
        )

    return _mono_runner(cfg, {
        f"alpha={a},beta={b}": ("CM", g(a, b), CM_INTERVAL, POSITIVE) for a, b in pairs
    })


def _run_k_sqrt_lcm(cfg):
    return _mono_runner(cfg, {
        f"alpha={a}": ("LCM", _k_sqrt(a), CM_INTERVAL, POSITIVE) for a in cfg.alphas(ALPHAS_MONO)
    })


def _run_neg_inv_log_k_lcm(cfg):
    checks = {}
    for a in cfg.alphas(ALPHAS_MONO):
        x0 = _x0(a)
        f = lambda x, a=a: -1.0 / np.log(np.asarray(modified_k(a, np.sqrt(x)).value))  # noqa: E731
        checks[f"alpha={a}"] = ("LCM", f, (x0 + 0.1, 20.0), (x0, np.inf))
    return _mono_runner(cfg, checks)


def _random_pairs(cfg, lo=0.1, hi=20.0):
    rng = cfg.rng()
    pairs = rng.uniform(lo, hi, size=(cfg.pairs, 2))
    diag = np.linspace(lo, hi, 16)
    return np.vstack([pairs, np.column_stack([diag, diag])])


def _merge(cfg, reports, params):
    """Fold per-alpha reports of one scenario into a single report."""
    t = _Tally()
    runtime = 0.0
    for a, rep in reports:
        for k, v in rep.residuals.items():
            t.put(f"{k}[alpha={a}]", v)
        t.notes.extend(f"alpha={a}: {n}" for n in rep.notes)
        t.failed |= rep.verdict is Outcome.FAIL
        t.unsure |= rep.verdict is Outcome.INCONCLUSIVE
        runtime += rep.runtime
    return ScenarioReport(
        cfg.scenario_id, REGISTRY[cfg.scenario_id][0], params, t.residuals, t.verdict(), runtime, tuple(t.notes)
    )


def _run_agm(cfg):
    pairs = _random_pairs(cfg)
    tol = cfg.tolerance("identity")
    reps = [(a, verify_agm_inequality(a, pairs, tol)) for a in cfg.alphas(ALPHAS_MONO)]
    return _merge(cfg, reps, {"pairs": cfg.pairs, "range": [0.1, 20.0], "tol": tol, "seed": cfg.seed})


def _run_log(cfg):
    pairs = _random_pairs(cfg)
    tol = cfg.tolerance("identity")
    reps = [(a, verify_log_inequality(a, pairs, tol)) for a in cfg.alphas(ALPHAS_MONO)]
    return _merge(cfg, reps, {"pairs": cfg.pairs, "range": [0.1, 20.0], "tol": tol, "seed": cfg.seed})


def _run_ismail(cfg):
    tol = cfg.tolerance("ismail")
    points = ((0.5, 1.0), (1.5, 4.0), (1.5, 100.0))
    if cfg.alpha is not None:
        points = tuple((float(cfg.alpha), x) for x in (1.0, 4.0, 100.0))
    reps = [(f"{a},x={x}", verify_ismail_representation(a, x, tol)) for a, x in points]
    return _merge(cfg, reps, {"points": [list(p) for p in points], "tol": tol})


def _run_watson(cfg):
    tol = cfg.tolerance("identity")
    cases = ((0.5, [1.0]), (2.0, np.geomspace(0.5, 10.0, 8).tolist()), (0.0, [0.5, 1.0, 4.0]))
    if cfg.alpha is not None:
        cases = ((float(cfg.alpha), np.geomspace(0.5, 10.0, 8).tolist()),)
    reps = [(a, verify_watson_derivative(a, xs, tol)) for a, xs in cases]
    return _merge(cfg, reps, {"cases": [[a, list(xs)] for a, xs in cases], "tol": tol})


def _run_k_derivative(cfg):
    tol = cfg.tolerance("quadrature")
    reps = [(a, verify_monotone_k_derivative(a, tol)) for a in cfg.alphas((0.5, 1.0))]
    return _merge(cfg, reps, {"grid": [0.5, 10.0], "tol": tol})


def _run_bridge(cfg):
    rep = verify_schoenberg_wendland_bridge(
        cfg.alpha, trials=cfg.trials, nodes_per_trial=cfg.nodes_per_trial, seed=_seed_int(cfg)
    )
    return replace(rep, scenario_id=cfg.scenario_id)


REGISTRY = {
    "prop1_j_pd": ("normalized Bessel function j_alpha is positive definite", _run_j_pd),
    "thm_k_spd": ("x^alpha K_alpha(|x|) is strictly positive definite for alpha > 0", _run_thm_k),
    "thm_falpha_spd_ex1": (
        "transform of (t^2+a^2)^(-beta-1): printed closed form and strict positive definiteness",
        _run_ex1,
    ),
    "thm_falpha_spd_ex2": (
        "transform of t^(beta-alpha) exp(-t^2/a^2): printed closed form and strict positive definiteness",
        _run_ex2,
    ),
    "cor_translation_pd": ("transform of a translate, j_alpha(x.) F(phi), is positive definite", _run_cor_translation),
    "cor_gauss_poisson": ("Gauss and Poisson smoothing preserve strict positive definiteness", _run_cor_gauss_poisson),
    "parseval": ("Fourier-Bessel transform is an isometry of L2_alpha", _run_parseval),
    "hausdorff_young_instance": ("Hausdorff-Young bound, p = 1 and p = 4/3 instances", _run_hausdorff_young),
    "young_instance": ("Young bound and convolution theorem for a Gaussian pair", _run_young),
    "product_formula": ("product formula T_x j_alpha(l.)(y) = j_alpha(lx) j_alpha(ly)", _run_product_formula),
    "transform_of_translation": ("F(T_x f)(xi) = j_alpha(x xi) F(f)(xi)", _run_transform_of_translation),
    "prop4_cm": ("x^(alpha/2) K_alpha(sqrt x) is completely monotonic", _run_scaled_k_cm),
    "thm6_1_lcm": ("1/(x^((alpha+1)/2) K_alpha(sqrt x)) is logarithmically completely monotonic", _run_inv_x_k_lcm),
    "prop5_g_cm": ("K_(alpha+1)(sqrt x)/(x^beta K_alpha(sqrt x)) is completely monotonic", _run_k_ratio_cm),
    "prop6_k_lcm": ("K_alpha(sqrt x) is logarithmically completely monotonic", _run_k_sqrt_lcm),
    "prop7_delta_lcm": ("-1/ln K_alpha(sqrt x) is logarithmically completely monotonic beyond x0", _run_neg_inv_log_k_lcm),
    "thm13_agm": ("two-sided mean inequality for K_alpha(sqrt x)", _run_agm),
    "thm13_log": ("geometric-mean inequality for -ln K_alpha(sqrt x) beyond x0", _run_log),
    "ismail": ("integral representation of K_(alpha-1)/(sqrt x K_alpha) over J^2+Y^2", _run_ismail),
    "watson": ("K_alpha' = -(K_(alpha-1) + K_(alpha+1))/2", _run_watson),
    "k_derivative": ("d/dx [x^(alpha+1) K_(alpha+1)(x)] = -x^(alpha+1) K_alpha(x)", _run_k_derivative),
    "schoenberg_wendland": (
        "complete monotonicity of phi(sqrt .) agrees with strict positive definiteness of phi",
        _run_bridge,
    ),
}


def run_scenarios(ids, *, seed=0, overrides=None, workers=1):
    """Run registry scenarios in order and return their reports.

    ``ids`` may contain ``"all"``.  ``overrides`` sets :class:`ScenarioConfig`
    fields (``alpha``, ``tol``, ``pairs``, ``trials``, ``nodes_per_trial``)
    for every scenario.  ``workers > 1`` runs scenarios on a thread pool;
    results keep the order of ``ids``.
    """
    ids = list(ids)
    if "all" in ids:
        ids = list(REGISTRY)
    unknown = [i for i in ids if i not in REGISTRY]
    if unknown:
        raise ConfigurationError(f"unknown scenario id(s): {', '.join(unknown)}")
    overrides = dict(overrides or {})
    allowed = {"alpha", "tol", "pairs", "trials", "nodes_per_trial", "extra"}
    bad = set(overrides) - allowed
    if bad:
        raise ConfigurationError(f"unknown override(s): {', '.join(sorted(bad))}")
    configs = [ScenarioConfig(i, seed=int(seed), **overrides) for i in ids]

    def run(cfg):
        return REGISTRY[cfg.scenario_id][1](cfg)

    if workers > 1 and len(configs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            return list(pool.map(run, configs))
    return [run(c) for c in configs]
