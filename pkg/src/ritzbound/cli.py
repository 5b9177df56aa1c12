"""Command-line front end.

Exit codes: 0 ok, 1 usage error, 2 bound violation, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Optional, TextIO

import numpy as np

from . import models, oracle, report, rrvm
from .symmat import EigensolverError

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION, EXIT_NUMERICAL = 0, 1, 2, 3

PHYSICAL_FLAGS = ("mass", "charge", "field", "length", "hbar")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class CliConfig:
    subcommand: str = "solve"
    lam: float = 1.0
    n_max: int = 14
    n_step: int = 2
    levels: int = 4
    tol: float = 5e-10
    format: str = "table"
    seed: int = 0
    model: str = "tilted-box"
    matrix: Optional[str] = None
    physical: Optional[models.PhysicalParams] = None
    sig_figs: int = 10
    dash_policy: str = "absent_and_converged"
    rounding: str = "truncate"
    slack: float = rrvm.DEFAULT_SLACK
    oracle_slack: float = 1e-8
    grid_points: int = oracle.DEFAULT_GRID

    def __post_init__(self) -> None:
        if self.levels < 1:
            raise UsageError(f"--levels must be >= 1, got {self.levels}")
        if self.format not in ("table", "csv", "json"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.model == "matrix-file" and not self.matrix:
            raise UsageError("--model matrix-file requires --matrix PATH")
        if self.slack < 0 or self.oracle_slack < 0:
            raise UsageError("slack values must be >= 0")
        try:
            self.policy()
            report.TableLayout(self.sig_figs, self.dash_policy, self.rounding)
        except ValueError as exc:
            raise UsageError(str(exc)) from None

    def policy(self) -> rrvm.ConvergencePolicy:
        return rrvm.ConvergencePolicy(tol=self.tol, n_max=self.n_max, n_step=self.n_step)

    def layout(self) -> report.TableLayout:
        return report.TableLayout(self.sig_figs, self.dash_policy, self.rounding)

    def build_model(self) -> models.OperatorModel:
        if self.model == "matrix-file":
            return models.MatrixFileModel.from_file(self.matrix)
        return models.tilted_box(self.lam)


def _common_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--lambda", dest="lam", type=float, default=None,
                   help="dimensionless field strength (default 1)")
    p.add_argument("--n-max", type=int, default=14)
    p.add_argument("--n-step", type=int, default=2)
    p.add_argument("--levels", type=int, default=4)
    p.add_argument("--tol", type=float, default=5e-10, help="successive-difference convergence threshold")
    p.add_argument("--format", choices=("table", "csv", "json"), default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--model", choices=("tilted-box", "free-box", "matrix-file"), default="tilted-box")
    p.add_argument("--matrix", default=None, help="path of a 'dim n' / 'i j value' matrix file")
    p.add_argument("--sig-figs", type=int, default=10)
    p.add_argument("--dash-policy", choices=("absent_only", "absent_and_converged"),
                   default="absent_and_converged")
    p.add_argument("--rounding", choices=("truncate", "nearest"), default="truncate")
    p.add_argument("--slack", type=float, default=rrvm.DEFAULT_SLACK)
    p.add_argument("--grid-points", type=int, default=oracle.DEFAULT_GRID,
                   help="coarse finite-difference grid for the oracle")
    for name in PHYSICAL_FLAGS:
        p.add_argument(f"--{name}", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ritzbound", description="Rayleigh-Ritz bounds for the tilted box and other operators.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)
    helps = {
        "solve": "Ritz values over a ladder of truncation sizes",
        "reproduce-table": "the lambda=1 convergence table (same as bare 'solve')",
        "verify": "check monotonicity, interlacing and the oracle lower bound",
        "oracle": "finite-difference + Richardson reference eigenvalues",
    }
    for name, text in helps.items():
        _common_options(sub.add_parser(name, help=text))
    return parser


def config_from_args(ns: argparse.Namespace) -> CliConfig:
    phys_given = {k: getattr(ns, k) for k in PHYSICAL_FLAGS if getattr(ns, k) is not None}
    physical = None
    lam = ns.lam
    if phys_given:
        if lam is not None:
            raise UsageError("give either --lambda or physical parameters, not both")
        if ns.model != "tilted-box":
            raise UsageError("physical parameters apply only to --model tilted-box")
        try:
            physical = models.PhysicalParams(**phys_given)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        lam = models.lambda_from_physical(physical)
    if ns.model == "free-box":
        if lam not in (None, 0.0):
            raise UsageError("--model free-box fixes lambda = 0")
        lam = 0.0
    elif ns.model == "matrix-file" and lam is not None:
        raise UsageError("--lambda does not apply to --model matrix-file")
    if lam is None:
        lam = 1.0
    if not np.isfinite(lam):
        raise UsageError("lambda must be finite")

    default_format = "table" if ns.subcommand in ("solve", "reproduce-table") else "json"
    return CliConfig(
        subcommand=ns.subcommand, lam=lam, n_max=ns.n_max, n_step=ns.n_step, levels=ns.levels,
        tol=ns.tol, format=ns.format or default_format, seed=ns.seed, model=ns.model,
        matrix=ns.matrix, physical=physical, sig_figs=ns.sig_figs, dash_policy=ns.dash_policy,
        rounding=ns.rounding, slack=ns.slack, grid_points=ns.grid_points,
    )


def _physical_extra(cfg: CliConfig, seq: rrvm.RitzSequence) -> Optional[dict]:
    if cfg.physical is None:
        return None
    scale = models.energy_scale(cfg.physical)
    return {"physical": {
        **{k: getattr(cfg.physical, k) for k in PHYSICAL_FLAGS},
        "lambda": cfg.lam,
        "energy_scale": scale,
        "rows": [{"n": n, "energies": [float(v) * scale for v in vals]}
                 for n, vals in zip(seq.n_values, seq.values)],
    }}


def render(cfg: CliConfig, seq: rrvm.RitzSequence, bounds: Optional[rrvm.BoundReport] = None,
           extra: Optional[dict] = None) -> str:
    scale = models.energy_scale(cfg.physical) if cfg.physical is not None else None
    if cfg.format == "table":
        return report.emit_table(seq, cfg.layout(), energy_scale=scale)
    if cfg.format == "csv":
        return report.emit_csv(seq, energy_scale=scale)
    merged = dict(_physical_extra(cfg, seq) or {})
    merged.update(extra or {})
    return report.emit_json(seq, bounds, extra=merged or None)


def cmd_solve(cfg: CliConfig, out: TextIO = sys.stdout) -> int:
    seq = rrvm.run(cfg.build_model(), cfg.policy(), cfg.levels)
    out.write(render(cfg, seq))
    return EXIT_OK


def _oracle_for(cfg: CliConfig, levels: int) -> Optional[oracle.OracleEstimate]:
    if cfg.model == "matrix-file":
        return None
    if cfg.lam == 0.0:
        exact = np.array([models.free_box_exact(k) for k in range(1, levels + 1)])
        return oracle.OracleEstimate(exact, np.zeros(levels))
    if levels > 16:
        return None
    return oracle.estimate(cfg.lam, levels, cfg.grid_points)


def verify_sequence(cfg: CliConfig, seq: rrvm.RitzSequence) -> rrvm.BoundReport:
    bounds = rrvm.verify_monotonicity(seq, cfg.slack).merge(rrvm.verify_interlacing(seq, cfg.slack))
    levels = max(len(v) for v in seq.values)
    est = _oracle_for(cfg, levels)
    if est is not None:
        bounds = bounds.merge(oracle.cross_validate(seq, est, cfg.oracle_slack))
    return bounds


def cmd_verify(cfg: CliConfig, out: TextIO = sys.stdout) -> int:
    seq = rrvm.run(cfg.build_model(), cfg.policy(), cfg.levels)
    bounds = verify_sequence(cfg, seq)
    n = seq.n_values[-1]
    quotients = [
        {"n": n, "k": k,
         "min_quotient": rrvm.constrained_quotient_bound(seq, n, k, trials=20, seed=cfg.seed),
         "ritz_value": float(seq.values[-1][k - 1])}
        for k in range(1, len(seq.values[-1]) + 1)
    ]
    extra = {"seed": cfg.seed, "constrained_quotients": quotients}
    if cfg.format == "json":
        out.write(render(cfg, seq, bounds, extra))
    else:
        out.write(render(cfg, seq))
        out.write(f"monotonic={bounds.monotonicity_ok} interlacing={bounds.interlacing_ok} "
                  f"lower_bound={bounds.lower_bound_ok} violations={len(bounds.violations)}\n")
    return EXIT_OK if bounds.ok else EXIT_VIOLATION


def cmd_oracle(cfg: CliConfig, out: TextIO = sys.stdout) -> int:
    if cfg.model == "matrix-file":
        raise UsageError("oracle unavailable for user matrices")
    try:
        spec = oracle.FdSpec(cfg.lam, cfg.grid_points, cfg.levels)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    est = oracle.richardson(oracle.fd_eigenvalues(spec), oracle.fd_eigenvalues(spec.refined()))
    out.write(report.emit_oracle_json(est, cfg.model, cfg.lam, (spec.grid_points, spec.refined().grid_points)))
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "reproduce-table": cmd_solve,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
}


def main(argv=None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        ns = build_parser().parse_args(argv)
        cfg = config_from_args(ns)
        return COMMANDS[cfg.subcommand](cfg, out)
    except UsageError as exc:
        err.write(f"ritzbound: error: {exc}\n")
        return EXIT_USAGE
    except (EigensolverError, FloatingPointError) as exc:
        err.write(f"ritzbound: numerical failure: {exc}\n")
        return EXIT_NUMERICAL
    except (ValueError, IndexError, OSError) as exc:
        err.write(f"ritzbound: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
