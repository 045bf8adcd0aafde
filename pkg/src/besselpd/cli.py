"""Command-line front end.

Subcommands
-----------
eval       special function values on a point or grid (CSV)
transform  numerical Fourier-Bessel transform of a built-in family (CSV)
gram       seeded Gram-matrix certification of a built-in kernel (JSON)
cm, lcm    complete monotonicity checks of a built-in function (JSON)
verify     replay registered scenarios (JSON)

Every output carries a run manifest.  Exit codes: 0 success, 2 domain
error, 3 a check or scenario failed, 4 configuration error.
"""

import argparse
import csv
import io
import json
import os
import re
import sys
import tempfile
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

import numpy as np

from . import __version__
from .bessel_transform import WeightedFunction, fourier_bessel, kummer_kernel, rational_kernel
from .definiteness import Verdict, certify_spd
from .exceptions import BesselPDError, ConfigurationError
from .monotonicity import Outcome, cm_check, lcm_check
from .special_fns import (
    bessel_j,
    bessel_y,
    kummer_1f1,
    modified_i,
    modified_k,
    normalized_j,
    scaled_k,
)
from .verification import REGISTRY, _x0, run_scenarios

__all__ = ["RunManifest", "main", "build_parser", "read_manifest", "manifest_argv"]

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_FAIL = 3
EXIT_CONFIG = 4


@dataclass(frozen=True)
class RunManifest:
    """Reproducibility header written into every output file."""

    command: str
    parameters: dict
    seed: int = 0
    tool_version: str = __version__
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat(timespec="seconds")
    )

    def to_dict(self):
        return asdict(self)


# ---------------------------------------------------------------------------
# Output
# ---------------------------------------------------------------------------


def _write(text, out):
    """Write ``text`` to stdout (``out`` is None or '-') or atomically to a file."""
    if out in (None, "-"):
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".besselpd-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def format_csv(manifest, x, value, abs_err):
    """CSV with a ``# manifest:`` comment line, then ``x,value,abs_err`` rows."""
    buf = io.StringIO()
    buf.write("# manifest: " + json.dumps(manifest.to_dict(), sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["x", "value", "abs_err"])
    for row in zip(np.ravel(x), np.ravel(value), np.ravel(abs_err)):
        w.writerow([repr(float(v)) for v in row])
    return buf.getvalue()


def format_json(manifest, reports):
    payload = {"manifest": manifest.to_dict(), "reports": reports}
    return json.dumps(payload, indent=2, allow_nan=True) + "\n"


def read_manifest(path):
    """Manifest dictionary embedded in a CSV or JSON output file."""
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.startswith("# manifest: "):
        return json.loads(text.splitlines()[0][len("# manifest: "):])
    return json.loads(text)["manifest"]


_POSITIONAL = {"eval": "fn", "transform": "family"}


def manifest_argv(manifest):
    """Command line that reproduces the run recorded in ``manifest`` (a dict)."""
    command = manifest["command"]
    params = dict(manifest["parameters"])
    argv = [command]
    if command in _POSITIONAL:
        argv.append(str(params.pop(_POSITIONAL[command])))
    for key, value in params.items():
        flag = "--" + key.replace("_", "-")
        if value is None or value is False:
            continue
        if value is True:
            argv.append(flag)
        elif isinstance(value, (list, tuple)):
            argv.append(f"{flag}={','.join(v if isinstance(v, str) else repr(v) for v in value)}")
        else:
            argv.append(f"{flag}={value if isinstance(value, str) else repr(value)}")
    argv.append(f"--seed={manifest['seed']}")
    return argv


# ---------------------------------------------------------------------------
# Argument helpers
# ---------------------------------------------------------------------------


def _pair(text):
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'lo,hi', got {text!r}") from None
    return lo, hi


def _points(args):
    """Evaluation points from ``--x`` (comma list) or ``--range`` with ``--num``."""
    if args.x is not None and args.range is not None:
        raise ConfigurationError("give either --x or --range, not both")
    if args.x is not None:
        try:
            return np.array([float(v) for v in args.x.split(",")])
        except ValueError:
            raise ConfigurationError(f"cannot parse --x {args.x!r}") from None
    if args.range is None:
        raise ConfigurationError("one of --x or --range is required")
    if args.num < 1:
        raise ConfigurationError("--num must be >= 1")
    return np.linspace(args.range[0], args.range[1], args.num)


_NEGATIVE_VALUE = re.compile(r"-(\d|\.\d)[\d.eE+-]*(,[\d.eE+-]+)*")


def _glue_negative(argv):
    """Attach values like ``-5,5`` to their option, which argparse would reject."""
    out = []
    for tok in argv:
        if out and out[-1].startswith("--") and "=" not in out[-1] and _NEGATIVE_VALUE.fullmatch(tok):
            out[-1] = f"{out[-1]}={tok}"
        else:
            out.append(tok)
    return out


class _Parser(argparse.ArgumentParser):
    """Usage errors are configuration errors (exit 4), not domain errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# Built-in functions
# ---------------------------------------------------------------------------

EVAL_FUNCTIONS = {
    "j": lambda a, x, p: normalized_j(a, x),
    "J": lambda a, x, p: bessel_j(a, x),
    "Y": lambda a, x, p: bessel_y(a, x),
    "I": lambda a, x, p: modified_i(a, x),
    "K": lambda a, x, p: modified_k(a, x),
    "scaledK": lambda a, x, p: scaled_k(a, x),
    "1F1": lambda a, x, p: kummer_1f1(p.a, p.b, x),
}

TRANSFORM_FAMILIES = {
    "gauss": lambda p: (lambda t: np.exp(-p.s * t * t)),
    "rational": lambda p: (lambda t: (t * t + p.a * p.a) ** (-p.beta - 1.0)),
    "gauss_power": lambda p: (lambda t: t**p.gamma * np.exp(-((t / p.a) ** 2))),
}


def _kernel(name, p):
    """Even kernel ``f(x)`` on the real line for ``gram``."""
    a = p.alpha
    kernels = {
        "scaledK": lambda x: np.asarray(scaled_k(a, x).value),
        "j": lambda x: np.asarray(normalized_j(a, x).value),
        "gauss": lambda x: np.exp(-p.s * np.asarray(x) ** 2),
        "example1": lambda x: np.asarray(rational_kernel(a, p.beta, p.a, x)),
        "example2": lambda x: np.asarray(kummer_kernel(a, p.beta, p.a, x)),
        "constant": lambda x: np.ones_like(np.asarray(x, dtype=float)),
        "square": lambda x: np.asarray(x, dtype=float) ** 2,
    }
    return kernels[name]


def _monotone_fn(name, p):
    """Function of ``x > 0`` and the domain it may be evaluated on."""
    a = p.alpha

    def k(x):
        return np.asarray(modified_k(a, np.sqrt(x)).value)

    fns = {
        "scaledK_sqrt": lambda x: np.asarray(scaled_k(a, np.sqrt(x)).value),
        "k_sqrt": k,
        "inv_x_k": lambda x: 1.0 / (x ** (0.5 * (a + 1.0)) * k(x)),
        "k_ratio": lambda x: np.asarray(modified_k(a + 1.0, np.sqrt(x)).value) / (x**p.beta * k(x)),
        "neg_inv_log_k": lambda x: -1.0 / np.log(k(x)),  # defined above x0, K(sqrt x0) = 1
        "exp": lambda x: np.exp(-x),
        "inv": lambda x: 1.0 / x,
        "x": lambda x: np.asarray(x, dtype=float),
        "one_plus_x": lambda x: 1.0 + np.asarray(x, dtype=float),
    }
    if name == "neg_inv_log_k":
        domain = (_x0(a), np.inf)
    elif name in ("exp", "x", "one_plus_x"):
        domain = (-np.inf, np.inf)  # entire: windows may cross zero
    else:
        domain = (0.0, np.inf)
    return fns[name], domain


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def _params(args, *names):
    return {n: getattr(args, n) for n in names}


def cmd_eval(args):
    x = _points(args)
    res = EVAL_FUNCTIONS[args.fn](args.alpha, x, args)
    params = _params(args, "fn", "alpha", "x", "range", "num")
    if args.fn == "1F1":
        params.update(a=args.a, b=args.b)
    manifest = RunManifest("eval", params, args.seed)
    _write(format_csv(manifest, x, res.value, res.abs_err), args.out)
    return EXIT_OK


def cmd_transform(args):
    xi = _points(args)
    wf = WeightedFunction(TRANSFORM_FAMILIES[args.family](args), args.alpha)
    tol = 1e-10 if args.tol is None else args.tol
    values = np.empty_like(xi)
    errors = np.empty_like(xi)
    for i, w in enumerate(xi):
        res = fourier_bessel(wf, w, tol, rtol=tol)
        values[i], errors[i] = res.value, res.abs_err
    params = _params(args, "family", "alpha", "s", "beta", "a", "gamma", "x", "range", "num", "tol")
    manifest = RunManifest("transform", params, args.seed)
    _write(format_csv(manifest, xi, values, errors), args.out)
    return EXIT_OK


def cmd_gram(args):
    f = _kernel(args.kernel, args)
    cert = certify_spd(f, args.trials, args.n, args.range, args.eps_rel, seed=args.seed)
    params = _params(args, "kernel", "alpha", "beta", "a", "s", "n", "trials", "range", "eps_rel")
    manifest = RunManifest("gram", params, args.seed)
    _write(format_json(manifest, [cert.to_dict()]), args.out)
    return EXIT_FAIL if cert.verdict is Verdict.INDEFINITE else EXIT_OK


def _cmd_monotone(args, check):
    f, domain = _monotone_fn(args.fn, args)
    rep = check(f, args.interval, args.max_order, args.grid_size, args.band, domain=domain)
    params = _params(args, "fn", "alpha", "beta", "interval", "max_order", "grid_size", "band", "records")
    manifest = RunManifest(args.command, params, args.seed)
    _write(format_json(manifest, [rep.to_dict(include_records=args.records)]), args.out)
    return EXIT_FAIL if rep.verdict is Outcome.FAIL else EXIT_OK


def cmd_cm(args):
    return _cmd_monotone(args, cm_check)


def cmd_lcm(args):
    return _cmd_monotone(args, lcm_check)


def cmd_verify(args):
    ids = [i for chunk in args.scenario for i in chunk.split(",") if i]
    overrides = {
        k: v
        for k, v in (
            ("alpha", args.alpha),
            ("tol", args.tol),
            ("pairs", args.pairs),
            ("trials", args.trials),
            ("nodes_per_trial", args.nodes_per_trial),
        )
        if v is not None
    }
    reports = run_scenarios(ids, seed=args.seed, overrides=overrides, workers=args.workers)
    params = {"scenario": ids, **overrides}
    manifest = RunManifest("verify", params, args.seed)
    _write(format_json(manifest, [r.to_dict() for r in reports]), args.out)
    return EXIT_FAIL if any(r.verdict is Outcome.FAIL for r in reports) else EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _common(p):
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.add_argument("--seed", type=int, default=0, help="random seed recorded in the manifest")


def _grid_args(p, what):
    p.add_argument("--x", default=None, help=f"{what} point or comma-separated list")
    p.add_argument("--range", type=_pair, default=None, help=f"{what} range as lo,hi")
    p.add_argument("--num", type=int, default=101, help="grid size for --range")


def build_parser():
    parser = _Parser(prog="besselpd", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate a special function")
    p.add_argument("fn", choices=sorted(EVAL_FUNCTIONS))
    p.add_argument("--alpha", type=float, default=0.0, help="order")
    p.add_argument("--a", type=float, default=1.0, help="1F1 numerator parameter")
    p.add_argument("--b", type=float, default=1.0, help="1F1 denominator parameter")
    _grid_args(p, "argument")
    _common(p)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("transform", help="Fourier-Bessel transform of a built-in family")
    p.add_argument("family", choices=sorted(TRANSFORM_FAMILIES))
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--s", type=float, default=0.5, help="gauss: exp(-s t^2)")
    p.add_argument("--beta", type=float, default=1.0, help="rational: (t^2 + a^2)^(-beta-1)")
    p.add_argument("--a", type=float, default=1.0, help="scale parameter")
    p.add_argument("--gamma", type=float, default=1.0, help="gauss_power: t^gamma exp(-t^2/a^2)")
    p.add_argument("--tol", type=float, default=None)
    _grid_args(p, "frequency")
    _common(p)
    p.set_defaults(handler=cmd_transform)

    p = sub.add_parser("gram", help="seeded Gram-matrix certification")
    p.add_argument("--kernel", required=True, choices=["scaledK", "j", "gauss", "example1", "example2", "constant", "square"])
    p.add_argument("--alpha", type=float, default=1.0)
    p.add_argument("--beta", type=float, default=1.5)
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--s", type=float, default=1.0)
    p.add_argument("--n", type=int, default=8, help="nodes per trial")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--range", type=_pair, default=(-5.0, 5.0))
    p.add_argument("--eps-rel", dest="eps_rel", type=float, default=1e-10)
    _common(p)
    p.set_defaults(handler=cmd_gram)

    fns = ["scaledK_sqrt", "k_sqrt", "inv_x_k", "k_ratio", "neg_inv_log_k", "exp", "inv", "x", "one_plus_x"]
    for name, handler, lowest in (("cm", cmd_cm, 0), ("lcm", cmd_lcm, 1)):
        p = sub.add_parser(name, help=f"{name.upper()} check of a built-in function")
        p.add_argument("--fn", required=True, choices=fns)
        p.add_argument("--alpha", type=float, default=1.0)
        p.add_argument("--beta", type=float, default=0.5, help="k_ratio exponent")
        p.add_argument("--interval", type=_pair, default=(0.2, 10.0))
        p.add_argument("--max-order", dest="max_order", type=int, default=6)
        p.add_argument("--grid-size", dest="grid_size", type=int, default=32)
        p.add_argument("--band", type=float, default=1e-7)
        p.add_argument("--records", action="store_true", help="include every derivative record")
        _common(p)
        p.set_defaults(handler=handler)

    p = sub.add_parser("verify", help="replay registered scenarios")
    p.add_argument("--scenario", action="append", required=True,
                   help=f"scenario id, comma list or 'all'; one of {', '.join(REGISTRY)}")
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--pairs", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--nodes-per-trial", dest="nodes_per_trial", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    _common(p)
    p.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(_glue_negative(sys.argv[1:] if argv is None else list(argv)))
    try:
        with np.errstate(all="ignore"):
            return args.handler(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except BesselPDError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
