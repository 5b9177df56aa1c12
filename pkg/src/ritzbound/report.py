"""Text, CSV and JSON renderings of Ritz sequences and bound reports."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from decimal import ROUND_DOWN, ROUND_HALF_EVEN, Decimal
from typing import Optional

from .oracle import OracleEstimate
from .rrvm import BoundReport, RitzSequence

DASH = "-"


@dataclass(frozen=True)
class TableLayout:
    """How :func:`emit_table` prints values.

    ``rounding="truncate"`` drops digits past ``sig_figs`` instead of
    rounding, which is how the published convergence table was printed.
    ``dash_policy="absent_and_converged"`` also blanks a level once its
    printed value has already repeated on two consecutive rows.
    """

    sig_figs: int = 10
    dash_policy: str = "absent_and_converged"
    rounding: str = "truncate"
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if not 4 <= self.sig_figs <= 17:
            raise ValueError(f"sig_figs must lie in [4, 17], got {self.sig_figs}")
        if self.dash_policy not in ("absent_only", "absent_and_converged"):
            raise ValueError(f"unknown dash_policy {self.dash_policy!r}")
        if self.rounding not in ("truncate", "nearest"):
            raise ValueError(f"unknown rounding {self.rounding!r}")


def format_sig(x: float, sig: int, rounding: str = "truncate") -> str:
    """``x`` to ``sig`` significant figures, trailing zeros kept."""
    if not math.isfinite(x):
        return str(x)
    if x == 0:
        return "0." + "0" * (sig - 1)
    mode = ROUND_DOWN if rounding == "truncate" else ROUND_HALF_EVEN
    d = Decimal(repr(float(x)))
    exp = d.adjusted()
    r = d.quantize(Decimal(1).scaleb(exp - sig + 1), rounding=mode)
    if r.adjusted() > exp:  # rounded up across a power of ten
        exp += 1
        r = d.quantize(Decimal(1).scaleb(exp - sig + 1), rounding=mode)
    if exp >= sig or exp < -5:
        return f"{r:.{sig - 1}e}"
    return format(r, "f")


def _check_nonempty(seq: RitzSequence) -> None:
    if not seq.n_values or seq.levels < 1 or not seq.values:
        raise ValueError("cannot render an empty Ritz sequence")


def table_cells(seq: RitzSequence, layout: TableLayout = TableLayout()) -> list[list[str]]:
    """Printed cells, one list per N (without the N column)."""
    _check_nonempty(seq)
    printed: list[list[Optional[str]]] = []
    for vals in seq.values:
        row = [format_sig(float(vals[k]), layout.sig_figs, layout.rounding) if k < len(vals) else None
               for k in range(seq.levels)]
        printed.append(row)

    cells = []
    for r, row in enumerate(printed):
        out = []
        for k, text in enumerate(row):
            if text is None:
                out.append(DASH)
            elif (layout.dash_policy == "absent_and_converged" and r >= 2
                  and printed[r - 1][k] == text and printed[r - 2][k] == text):
                out.append(DASH)
            else:
                out.append(text)
        cells.append(out)
    return cells


def emit_table(seq: RitzSequence, layout: TableLayout = TableLayout(),
               energy_scale: Optional[float] = None) -> str:
    labels = layout.labels or tuple(f"E{k}" for k in range(1, seq.levels + 1))
    cells = table_cells(seq, layout)
    header = ["N", *labels]
    body = [[str(n), *row] for n, row in zip(seq.n_values, cells)]
    widths = [max(len(r[c]) for r in [header, *body]) for c in range(len(header))]
    lines = ["  ".join(s.rjust(w) for s, w in zip(r, widths)).rstrip() for r in [header, *body]]
    if energy_scale is not None:
        lines.append("")
        lines.append(f"physical energies (scale hbar^2/(m L^2) = {energy_scale!r})")
        for n, vals in zip(seq.n_values, seq.values):
            lines.append("  ".join([str(n), *(repr(float(v) * energy_scale) for v in vals)]))
    return "\n".join(lines) + "\n"


def emit_csv(seq: RitzSequence, energy_scale: Optional[float] = None) -> str:
    """Shortest round-trip decimals; absent levels are empty fields."""
    _check_nonempty(seq)
    cols = ["N", *(f"E{k}" for k in range(1, seq.levels + 1))]
    if energy_scale is not None:
        cols += [f"P{k}" for k in range(1, seq.levels + 1)]
    lines = [",".join(cols)]
    for n, vals in zip(seq.n_values, seq.values):
        fields = [str(n)] + [repr(float(vals[k])) if k < len(vals) else "" for k in range(seq.levels)]
        if energy_scale is not None:
            fields += [repr(float(vals[k]) * energy_scale) if k < len(vals) else ""
                       for k in range(seq.levels)]
        lines.append(",".join(fields))
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> tuple[list[int], list[list[Optional[float]]]]:
    lines = text.rstrip("\n").split("\n")
    ns, rows = [], []
    for ln in lines[1:]:
        parts = ln.split(",")
        ns.append(int(parts[0]))
        rows.append([float(p) if p else None for p in parts[1:]])
    return ns, rows


def _finite_or_none(x: float) -> Optional[float]:
    return float(x) if math.isfinite(x) else None


def report_dict(report: BoundReport) -> dict:
    return {
        "monotonic": report.monotonicity_ok,
        "violations": [
            {"kind": v.kind, "k": v.k, "n": v.n, "lhs": v.lhs, "rhs": v.rhs, "slack": v.margin}
            for v in report.violations
        ],
        "interlacing": report.interlacing_ok,
        "lower_bound": report.lower_bound_ok,
        "worst_slack": _finite_or_none(report.worst_slack),
        "ok": report.ok,
    }


def sequence_dict(seq: RitzSequence, report: Optional[BoundReport] = None) -> dict:
    _check_nonempty(seq)
    return {
        "model": seq.model_name,
        "lambda": seq.params.get("lambda"),
        "levels": seq.levels,
        "rows": [{"n": n, "values": [float(v) for v in vals]}
                 for n, vals in zip(seq.n_values, seq.values)],
        "bounds": report_dict(report) if report is not None else None,
    }


def emit_json(seq: RitzSequence, report: Optional[BoundReport] = None,
              extra: Optional[dict] = None) -> str:
    doc = sequence_dict(seq, report)
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2) + "\n"


def emit_oracle_json(est: OracleEstimate, model: str, lam: float, grids: tuple[int, int]) -> str:
    doc = {
        "model": model,
        "lambda": lam,
        "grid_points": list(grids),
        "values": [float(v) for v in est.values],
        "error_bar": [float(e) for e in est.error_bar],
    }
    return json.dumps(doc, indent=2) + "\n"
