"""Command-line front end.

Output is plain text, one ``key = value`` per line; matrices follow a
``key =`` line as an indented block in the matrix file format, so they can
be cut out and parsed again.  Eigen-indices are 1-based.

Exit status: 0 on success, 2 for usage or input errors, 3 for numerical
failures (defective matrix, negative radicand, unmet condition, ...).
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, field

import numpy as np

from .bounds import eigen_bounds, identity_residuals
from .errors import GenlevError, NumericalError
from .geninv import spectral_geninv, verify_geninv
from .levinger import LevingerParams, transform
from .matrix import cartesian_split, eigensystem, format_complex, format_matrix, parse_complex, parse_matrix
from .normality import normality_distance, perturbed_normality_identity, rank_one_normality
from .numrange import nr_boundary
from .perturbation import (
    exact_eigenpairs,
    first_order,
    kernel_condition,
    match_eigenvalues,
    perturbed_matrix,
    second_order_geninv,
)

SUBCOMMANDS = ("split", "transform", "nr", "bounds", "geninv", "perturb", "normality")


class UsageError(GenlevError, ValueError):
    pass


@dataclass
class CliConfig:
    subcommand: str
    inputs: list[str]
    alpha: float = 1.0
    beta: float = 1.0
    samples: int = 360
    lam: complex | None = None
    power: int = 1
    order: int = 2
    indices: list[int] = field(default_factory=list)
    output: str | None = None
    precision: int = 17
    exact: bool = False
    vector: list[float] | None = None
    perturbation: str | None = None
    transformed: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="genlev", description="Generalized Levinger transformation toolkit.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p, params=True):
        p.add_argument("--precision", type=int, default=17, help="significant digits (default 17)")
        if params:
            p.add_argument("--alpha", type=float, default=1.0)
            p.add_argument("--beta", type=float, default=1.0)

    p = sub.add_parser("split", help="print the Hermitian and skew-Hermitian parts")
    p.add_argument("matrix")
    common(p, params=False)

    p = sub.add_parser("transform", help="print L(A, alpha, beta)")
    p.add_argument("matrix")
    common(p)

    p = sub.add_parser("nr", help="write the numerical-range boundary as CSV")
    p.add_argument("matrix")
    common(p)
    p.add_argument("--samples", type=int, default=360)
    p.add_argument("--transformed", action="store_true",
                   help="sample L(A, alpha, beta) instead of A (implied when alpha or beta is given)")
    p.add_argument("--out", dest="output")

    p = sub.add_parser("bounds", help="eigenvalue enclosures for L(A, alpha, beta)")
    p.add_argument("matrix")
    common(p)

    p = sub.add_parser("geninv", help="spectral generalized inverse of (A - lambda I)^mu")
    p.add_argument("matrix")
    common(p, params=False)
    p.add_argument("--lambda", dest="lam", required=True, type=_complex_arg)
    p.add_argument("--power", type=int, default=1)

    p = sub.add_parser("perturb", help="approximate eigenpairs of A + L(E, alpha, beta)")
    p.add_argument("matrix")
    p.add_argument("perturbation_matrix")
    common(p)
    p.add_argument("--order", type=int, choices=(1, 2), default=2)
    p.add_argument("--index", dest="indices", type=int, action="append", default=[])
    p.add_argument("--lambda", dest="lam", type=_complex_arg)
    p.add_argument("--exact", action="store_true")

    p = sub.add_parser("normality", help="normality distance")
    p.add_argument("matrix")
    common(p, params=False)
    p.add_argument("--vector", type=_vector_arg, help="x for the rank-one perturbation N + x x^T")
    p.add_argument("--perturbation", help="matrix E for the N + E identity")
    return parser


def _complex_arg(text: str) -> complex:
    try:
        return parse_complex(text.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _vector_arg(text: str) -> list[float]:
    try:
        return [float(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad vector {text!r}") from exc


def parse_args(argv) -> CliConfig:
    ns = _build_parser().parse_args(argv)
    inputs = [ns.matrix]
    if getattr(ns, "perturbation_matrix", None):
        inputs.append(ns.perturbation_matrix)
    flags = set(argv)
    return CliConfig(
        subcommand=ns.subcommand,
        inputs=inputs,
        alpha=getattr(ns, "alpha", 1.0),
        beta=getattr(ns, "beta", 1.0),
        samples=getattr(ns, "samples", 360),
        lam=getattr(ns, "lam", None),
        power=getattr(ns, "power", 1),
        order=getattr(ns, "order", 2),
        indices=getattr(ns, "indices", []),
        output=getattr(ns, "output", None),
        precision=ns.precision,
        exact=getattr(ns, "exact", False),
        vector=getattr(ns, "vector", None),
        perturbation=getattr(ns, "perturbation", None),
        transformed=getattr(ns, "transformed", False) or bool(flags & {"--alpha", "--beta"}),
    )


def _read_matrix(path: str) -> np.ndarray:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_matrix(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


class _Writer:
    def __init__(self, stream, digits: int):
        self.stream = stream
        self.digits = digits

    def num(self, z) -> str:
        return format_complex(z, self.digits)

    def kv(self, key: str, value) -> None:
        if isinstance(value, bool):
            text = "true" if value else "false"
        elif isinstance(value, (int, np.integer)):
            text = str(int(value))
        elif isinstance(value, str):
            text = value
        elif np.ndim(value) == 1:
            text = " ".join(self.num(z) for z in value)
        else:
            text = self.num(value)
        self.stream.write(f"{key} = {text}\n")

    def matrix(self, key: str, m) -> None:
        self.stream.write(f"{key} =\n")
        self.stream.write(format_matrix(m, self.digits, indent="    ") + "\n")


def _cmd_split(cfg: CliConfig, out: _Writer) -> None:
    parts = cartesian_split(_read_matrix(cfg.inputs[0]))
    out.matrix("H", parts.h_part)
    out.matrix("S", parts.s_part)


def _cmd_transform(cfg: CliConfig, out: _Writer) -> None:
    a = _read_matrix(cfg.inputs[0])
    out.kv("alpha", cfg.alpha)
    out.kv("beta", cfg.beta)
    out.matrix("L", transform(a, (cfg.alpha, cfg.beta)))


def _cmd_nr(cfg: CliConfig, out: _Writer) -> None:
    a = _read_matrix(cfg.inputs[0])
    if cfg.transformed:
        a = transform(a, (cfg.alpha, cfg.beta))
    curve = nr_boundary(a, cfg.samples)
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(["theta", "support", "re", "im"])
    fmt = f".{cfg.precision}g"
    for th, h, z in zip(curve.theta, curve.support, curve.points):
        wr.writerow([format(th, fmt), format(h, fmt), format(z.real, fmt), format(z.imag, fmt)])
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(buf.getvalue())
        out.kv("samples", len(curve))
        out.kv("output", cfg.output)
    else:
        out.stream.write(buf.getvalue())


def _cmd_bounds(cfg: CliConfig, out: _Writer) -> None:
    a = _read_matrix(cfg.inputs[0])
    p = (cfg.alpha, cfg.beta)
    b = eigen_bounds(a, p)
    out.kv("n", b.n)
    out.kv("re_center", b.re_center)
    out.kv("re_radius", b.re_radius)
    out.kv("im_radius", b.im_radius)
    res = identity_residuals(a, p)
    for key, val in res.items():
        out.kv(f"identity.{key}", val)
    out.kv("identities_ok", all(v <= 1e-12 for v in res.values()))
    lam = np.linalg.eigvals(transform(a, p))
    out.kv("eigenvalues", np.sort_complex(lam))
    out.kv("enclosed", b.contains(lam, slack=1e-9))


def _cmd_geninv(cfg: CliConfig, out: _Writer) -> None:
    a = _read_matrix(cfg.inputs[0])
    es = eigensystem(a)
    gi = spectral_geninv(es, cfg.lam, cfg.power)
    out.kv("lambda", gi.source_lambda)
    out.kv("power", gi.power)
    out.kv("excluded", " ".join(str(k + 1) for k in gi.excluded_indices))
    out.matrix("geninv", gi.matrix)
    chk = verify_geninv(a, gi.source_lambda, gi.power, gi.matrix)
    out.kv("residual.bxb", chk.bxb_residual)
    out.kv("residual.xbx", chk.xbx_residual)
    out.kv("verified", chk.passed)


def _cmd_perturb(cfg: CliConfig, out: _Writer) -> None:
    a = _read_matrix(cfg.inputs[0])
    e = _read_matrix(cfg.inputs[1])
    p = LevingerParams(cfg.alpha, cfg.beta)
    es = eigensystem(a)
    m = perturbed_matrix(a, e, p)
    if cfg.indices:
        idx = [k - 1 for k in cfg.indices]
        bad = [k + 1 for k in idx if not 0 <= k < es.order]
        if bad:
            raise UsageError(f"index out of range 1..{es.order}: {bad}")
    elif cfg.lam is not None:
        idx = [es.index_of(cfg.lam)]
    else:
        idx = list(range(es.order))
    exact_w, exact_v = exact_eigenpairs(m) if cfg.exact else (None, None)
    out.kv("alpha", p.alpha)
    out.kv("beta", p.beta)
    for i in idx:
        out.kv("index", i + 1)
        out.kv("lambda", es.values[i])
        out.kv("simple", es.is_simple(i))
        fo = first_order(es, i, e, p)
        out.kv("first_order.lambda", fo.lambda_approx)
        out.kv("first_order.vector", fo.unit_vector)
        out.kv("first_order.residual", fo.residual_norm)
        if fo.flags:
            out.kv("flags", " ".join(sorted(fo.flags)))
        best = fo
        if cfg.order == 2:
            so = second_order_geninv(es, i, e, p)
            out.kv("second_order.lambda", so.lambda_approx)
            out.kv("second_order.vector", so.unit_vector)
            out.kv("second_order.residual", so.residual_norm)
            best = so
        out.kv("kernel_condition", kernel_condition(es, i, e, p).in_kernel)
        if cfg.exact:
            k = match_eigenvalues(best.lambda_approx, exact_w, exact_v, best.vector_approx)
            out.kv("exact.lambda", exact_w[k])
            out.kv("exact.vector", exact_v[:, k])
            out.kv("exact.error", abs(best.lambda_approx - exact_w[k]))


def _cmd_normality(cfg: CliConfig, out: _Writer) -> None:
    n = _read_matrix(cfg.inputs[0])
    if cfg.vector is not None:
        rep = rank_one_normality(n, cfg.vector)
        out.kv("distance", rep.distance)
        out.kv("closed_form", rep.closed_form)
        out.kv("is_normal", rep.is_normal)
        out.kv("real_eigenvector", bool(rep.real_eigenvector))
        return
    if cfg.perturbation is not None:
        lhs, rhs = perturbed_normality_identity(n, _read_matrix(cfg.perturbation))
        out.kv("distance", lhs)
        out.kv("identity_rhs", rhs)
        return
    dist = normality_distance(n)
    out.kv("distance", dist)
    out.kv("is_normal", dist <= 1e-9 * float(np.linalg.norm(n, "fro")) ** 2)


_COMMANDS = {
    "split": _cmd_split,
    "transform": _cmd_transform,
    "nr": _cmd_nr,
    "bounds": _cmd_bounds,
    "geninv": _cmd_geninv,
    "perturb": _cmd_perturb,
    "normality": _cmd_normality,
}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        cfg = parse_args(argv)
    except UsageError as exc:
        stderr.write(f"genlev: error: {exc}\n")
        return 2
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if cfg.precision < 1:
        stderr.write("genlev: error: --precision must be positive\n")
        return 2
    buf = io.StringIO()
    try:
        _COMMANDS[cfg.subcommand](cfg, _Writer(buf, cfg.precision))
    except NumericalError as exc:
        stderr.write(f"genlev: numerical failure: {exc}\n")
        return 3
    except (GenlevError, ValueError) as exc:
        stderr.write(f"genlev: error: {exc}\n")
        return 2
    stdout.write(buf.getvalue())
    return 0


def main() -> int:
    return run()
