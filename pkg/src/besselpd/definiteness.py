"""Gram-matrix certification of (strict) positive definiteness.

A function ``f`` on the real line is positive definite when every matrix
``[f(x_i - x_j)]`` is positive semidefinite, and strictly so when those
matrices are positive definite for distinct nodes.  Sampling node sets can
falsify positive definiteness and provide evidence (not proof) of strictness.
"""

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .exceptions import ConfigurationError, DomainError, EvaluationError

__all__ = [
    "Verdict",
    "NodeSet",
    "GramReport",
    "SPDCertificate",
    "DEFAULT_EPS_REL",
    "gram_matrix",
    "sample_nodes",
    "certify_spd",
    "classify",
    "even_kernel",
]

DEFAULT_EPS_REL = 1e-10


class Verdict(str, Enum):
    SPD = "SPD"
    PSD_ONLY = "PSD_only"
    INDEFINITE = "indefinite"


@dataclass(frozen=True)
class NodeSet:
    """Distinct real nodes with a guaranteed minimum pairwise gap."""

    nodes: tuple
    seed: int = None
    min_separation: float = 0.0

    def __post_init__(self):
        nodes = tuple(float(v) for v in np.atleast_1d(self.nodes))
        if not nodes:
            raise ConfigurationError("a node set needs at least one node")
        if not all(np.isfinite(nodes)):
            raise ConfigurationError("nodes must be finite")
        object.__setattr__(self, "nodes", nodes)
        if len(nodes) > 1:
            gaps = np.diff(np.sort(nodes))
            if gaps.min() <= 0:
                raise ConfigurationError("nodes must be distinct")
            if self.min_separation and gaps.min() < self.min_separation * (1 - 1e-12):
                raise ConfigurationError("nodes violate the declared minimum separation")

    def __len__(self):
        return len(self.nodes)

    def as_array(self):
        return np.asarray(self.nodes)


@dataclass(frozen=True)
class GramReport:
    """Gram matrix with its extreme eigenvalues and a definiteness verdict."""

    matrix: np.ndarray = field(repr=False)
    min_eig: float
    max_eig: float
    verdict: Verdict
    eps_rel: float
    nodes: tuple = ()

    def to_dict(self):
        return {
            "nodes": list(self.nodes),
            "matrix": self.matrix.tolist(),
            "min_eig": self.min_eig,
            "max_eig": self.max_eig,
            "verdict": self.verdict.value,
            "eps_rel": self.eps_rel,
        }


def classify(min_eig, max_eig, eps_rel=DEFAULT_EPS_REL):
    """Verdict from extreme eigenvalues with a relative strictness band."""
    scale = max(abs(max_eig), 1.0)
    if min_eig > eps_rel * scale:
        return Verdict.SPD
    if min_eig < -eps_rel * scale:
        return Verdict.INDEFINITE
    return Verdict.PSD_ONLY


def _evaluate_differences(f, nodes):
    diff = nodes[:, None] - nodes[None, :]
    try:
        with np.errstate(all="ignore"):
            out = np.asarray(f(diff), dtype=float)
        if out.shape == diff.shape and np.all(np.isfinite(out)):
            return out
    except Exception:  # fall through to the elementwise pass that names the pair
        pass
    out = np.empty_like(diff)
    n = len(nodes)
    for i in range(n):
        for j in range(n):
            d = diff[i, j]
            try:
                with np.errstate(all="ignore"):
                    v = float(f(d))
            except Exception as exc:
                raise EvaluationError(
                    f"f failed at x_{i} - x_{j} = {d!r}: {exc}", pair=(i, j), difference=d
                ) from exc
            if not np.isfinite(v):
                raise EvaluationError(
                    f"f is not finite at x_{i} - x_{j} = {d!r}", pair=(i, j), difference=d
                )
            out[i, j] = v
    return out


def gram_matrix(f, nodes, *, eps_rel=DEFAULT_EPS_REL):
    """Gram matrix ``[f(x_i - x_j)]`` and its definiteness verdict.

    ``f`` should be even; it is called once on the full difference matrix
    and, if that fails, entry by entry so that the failing pair is named.
    The matrix is symmetrized (averaged with its transpose) before the
    symmetric eigensolver runs.
    """
    if not isinstance(nodes, NodeSet):
        nodes = NodeSet(nodes)
    x = nodes.as_array()
    g = _evaluate_differences(f, x)
    g = 0.5 * (g + g.T)
    eig = np.linalg.eigvalsh(g)
    lo, hi = float(eig[0]), float(eig[-1])
    return GramReport(g, lo, hi, classify(lo, hi, eps_rel), float(eps_rel), nodes.nodes)


def sample_nodes(n, lo, hi, seed, min_separation=None):
    """``n`` sorted random nodes in ``[lo, hi]`` with gaps ``>= min_separation``.

    Draws ``n`` uniform points in ``[lo, hi - (n-1) s]``, sorts them and adds
    ``k * s`` to the k-th, which is exact and deterministic for a seed.
    ``min_separation`` defaults to ``1e-3 (hi - lo)``.
    """
    n = int(n)
    if n < 1:
        raise ConfigurationError("need at least one node")
    if not hi > lo:
        raise ConfigurationError(f"empty node range [{lo}, {hi}]")
    s = 1e-3 * (hi - lo) if min_separation is None else float(min_separation)
    if s <= 0:
        raise ConfigurationError("min_separation must be positive")
    room = (hi - lo) - (n - 1) * s
    if room <= 0:
        raise ConfigurationError(
            f"{n} nodes with separation {s} do not fit in [{lo}, {hi}]"
        )
    rng = np.random.default_rng(seed)
    base = np.sort(rng.uniform(lo, lo + room, size=n))
    label = int(seed) if isinstance(seed, (int, np.integer)) else None
    return NodeSet(tuple(base + s * np.arange(n)), label, s)


@dataclass(frozen=True)
class SPDCertificate:
    """Aggregate of several Gram trials; ``verdict`` is SPD only if all are."""

    verdict: Verdict
    trials: int
    nodes_per_trial: int
    min_ratio: float
    reports: tuple = field(repr=False)
    counterexample: GramReport = None

    def to_dict(self):
        return {
            "verdict": self.verdict.value,
            "trials": self.trials,
            "nodes_per_trial": self.nodes_per_trial,
            "min_eig_over_max_eig": self.min_ratio,
            "counterexample": None if self.counterexample is None else self.counterexample.to_dict(),
        }


def certify_spd(
    f, trials=20, nodes_per_trial=8, range=(-5.0, 5.0), eps_rel=DEFAULT_EPS_REL, seed=0,
    min_separation=None,
):
    """Run ``trials`` independent Gram tests on seeded random node sets.

    Trial ``k`` draws its nodes from ``SeedSequence([seed, k])``.  The
    aggregate verdict is the worst verdict seen; the first trial attaining
    it is reported as the counterexample (``None`` when all trials are SPD).
    """
    if trials < 1:
        raise ConfigurationError("trials must be >= 1")
    lo, hi = range
    reports = []
    worst = Verdict.SPD
    rank = {Verdict.SPD: 0, Verdict.PSD_ONLY: 1, Verdict.INDEFINITE: 2}
    counter = None
    for k in np.arange(trials):
        ss = np.random.SeedSequence([int(seed), int(k)])
        nodes = sample_nodes(nodes_per_trial, lo, hi, ss, min_separation)
        rep = gram_matrix(f, nodes, eps_rel=eps_rel)
        reports.append(rep)
        if rank[rep.verdict] > rank[worst]:
            worst, counter = rep.verdict, rep
    ratio = min(r.min_eig / max(abs(r.max_eig), 1.0) for r in reports)
    return SPDCertificate(worst, int(trials), int(nodes_per_trial), float(ratio), tuple(reports), counter)


def even_kernel(f, at_zero=None):
    """Wrap a function of ``|x|``; ``at_zero`` supplies a removable-singularity limit."""
    if at_zero is not None and not np.isfinite(at_zero):
        raise DomainError("limit at zero must be finite")

    def g(x):
        ax = np.abs(np.asarray(x, dtype=float))
        if at_zero is None:
            return f(ax)
        safe = np.where(ax == 0, 1.0, ax)
        return np.where(ax == 0, at_zero, f(safe))

    return g
