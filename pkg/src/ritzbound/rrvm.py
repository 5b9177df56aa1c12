"""Rayleigh-Ritz engine over nested basis truncations.

For each truncation size N the leading N x N block H_N of the operator
matrix is diagonalized. Ritz values E_K^(N) can only move down as N grows
and always stay above the exact eigenvalue; :func:`verify_monotonicity`
and :func:`verify_interlacing` check that numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import models
from .models import OperatorModel
from .symmat import EigensolverError, SymMatrix, eigensolve, rayleigh_quotient

DEFAULT_SLACK = 1e-10


@dataclass(frozen=True)
class ConvergencePolicy:
    tol: float = 5e-10
    n_max: int = 14
    n_step: int = 2
    n_min: int = 2

    def __post_init__(self) -> None:
        if not (self.tol > 0):
            raise ValueError(f"tol must be > 0, got {self.tol}")
        if self.n_max < 2:
            raise ValueError(f"n_max must be >= 2, got {self.n_max}")
        if self.n_step < 1:
            raise ValueError(f"n_step must be >= 1, got {self.n_step}")
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError(f"n_min must lie in [1, n_max], got {self.n_min}")

    def grid(self) -> list[int]:
        return list(range(self.n_min, self.n_max + 1, self.n_step))


@dataclass(frozen=True)
class RitzSequence:
    """Ritz values and vectors for a ladder of truncation sizes.

    ``values[r]`` holds the lowest ``min(levels, n_values[r])`` Ritz values of
    H_N for ``N = n_values[r]``; ``coefficients[r]`` holds the matching
    eigenvector columns c_{ij}^(N).
    """

    model_name: str
    params: dict
    n_values: tuple[int, ...]
    levels: int
    values: tuple[np.ndarray, ...]
    coefficients: tuple[np.ndarray, ...]
    matrices: tuple[SymMatrix, ...] = ()
    model: Optional[OperatorModel] = field(default=None, compare=False, repr=False)

    def row(self, n: int) -> int:
        try:
            return self.n_values.index(n)
        except ValueError:
            raise ValueError(f"N={n} is not in the sequence {self.n_values}") from None

    def value(self, k: int, n: int) -> Optional[float]:
        """E_k^(n) with 1-based k, or None when level k is not tracked at n."""
        vals = self.values[self.row(n)]
        return float(vals[k - 1]) if 1 <= k <= len(vals) else None

    def table(self) -> np.ndarray:
        """Rows = N, columns = K; NaN where K > N."""
        out = np.full((len(self.n_values), self.levels), np.nan)
        for r, vals in enumerate(self.values):
            out[r, : len(vals)] = vals
        return out

    def with_value(self, k: int, n: int, new: float) -> RitzSequence:
        """Copy with one entry replaced; used to build failure fixtures."""
        r = self.row(n)
        vals = list(self.values)
        v = np.array(vals[r])
        v[k - 1] = new
        vals[r] = v
        return RitzSequence(self.model_name, self.params, self.n_values, self.levels,
                            tuple(vals), self.coefficients, self.matrices, self.model)


@dataclass(frozen=True)
class Violation:
    """One failed inequality ``lhs <= rhs``; ``margin = rhs - lhs`` is negative."""

    kind: str
    k: int
    n: int
    lhs: float
    rhs: float
    margin: float


@dataclass(frozen=True)
class BoundReport:
    """Outcome of bound checks. ``None`` flags mean that family was not checked.

    ``worst_slack`` is the smallest ``rhs - lhs`` over every inequality
    examined (``inf`` if none were).
    """

    monotonicity_ok: Optional[bool] = None
    interlacing_ok: Optional[bool] = None
    lower_bound_ok: Optional[bool] = None
    violations: tuple[Violation, ...] = ()
    worst_slack: float = math.inf

    @property
    def ok(self) -> bool:
        return all(flag is not False for flag in
                   (self.monotonicity_ok, self.interlacing_ok, self.lower_bound_ok))

    def merge(self, other: BoundReport) -> BoundReport:
        def pick(a, b):
            if a is None:
                return b
            if b is None:
                return a
            return a and b

        return BoundReport(
            monotonicity_ok=pick(self.monotonicity_ok, other.monotonicity_ok),
            interlacing_ok=pick(self.interlacing_ok, other.interlacing_ok),
            lower_bound_ok=pick(self.lower_bound_ok, other.lower_bound_ok),
            violations=self.violations + other.violations,
            worst_slack=min(self.worst_slack, other.worst_slack),
        )


class _Checker:
    def __init__(self, slack: float):
        if slack < 0:
            raise ValueError(f"slack must be >= 0, got {slack}")
        self.slack = slack
        self.violations: list[Violation] = []
        self.worst = math.inf

    def le(self, kind: str, k: int, n: int, lhs: float, rhs: float) -> None:
        margin = rhs - lhs
        self.worst = min(self.worst, margin)
        if margin < -self.slack:
            self.violations.append(Violation(kind, k, n, float(lhs), float(rhs), float(margin)))

    def failed(self, kind: str) -> bool:
        return any(v.kind == kind for v in self.violations)


class RitzSolveError(EigensolverError):
    pass


def run(model: OperatorModel, policy: ConvergencePolicy = ConvergencePolicy(),
        levels: int = 4) -> RitzSequence:
    """Solve H_N for every N on the policy grid and collect the lowest ``levels`` pairs."""
    if levels < 1:
        raise ValueError(f"levels must be >= 1, got {levels}")
    n_values = policy.grid()
    # Assemble once at the largest size; every H_N is its leading block.
    full = models.assemble(model, n_values[-1]).array
    vals, coefs, mats = [], [], []
    for n in n_values:
        h = SymMatrix(full[:n, :n])
        try:
            dec = eigensolve(h)
        except EigensolverError as exc:
            raise RitzSolveError(exc.off_norm, exc.sweeps, n) from exc
        k = min(levels, n)
        v = dec.values[:k].copy()
        c = dec.vectors[:, :k].copy()
        v.setflags(write=False)
        c.setflags(write=False)
        vals.append(v)
        coefs.append(c)
        mats.append(h)
    return RitzSequence(
        model_name=model.name,
        params=dict(model.params),
        n_values=tuple(n_values),
        levels=levels,
        values=tuple(vals),
        coefficients=tuple(coefs),
        matrices=tuple(mats),
        model=model,
    )


def _require_pairs(seq: RitzSequence) -> None:
    if len(seq.n_values) < 2:
        raise ValueError("need at least two truncation sizes to compare")


def verify_monotonicity(seq: RitzSequence, slack: float = DEFAULT_SLACK) -> BoundReport:
    """Check E_K^(N) <= E_K^(N') + slack for consecutive N' < N in the sequence."""
    _require_pairs(seq)
    chk = _Checker(slack)
    for r in range(1, len(seq.n_values)):
        prev, cur = seq.values[r - 1], seq.values[r]
        for k in range(1, min(len(prev), len(cur)) + 1):
            chk.le("monotonicity", k, seq.n_values[r], cur[k - 1], prev[k - 1])
    return BoundReport(
        monotonicity_ok=not chk.failed("monotonicity"),
        violations=tuple(chk.violations),
        worst_slack=chk.worst,
    )


def verify_interlacing(seq: RitzSequence, slack: float = DEFAULT_SLACK) -> BoundReport:
    """Cauchy interlacing between successive truncations.

    For a step s = N - N' this checks E_K^(N) <= E_K^(N') <= E_{K+s}^(N);
    with s = 1 that is ordinary interlacing of an (N-1)-block inside H_N.
    """
    _require_pairs(seq)
    chk = _Checker(slack)
    for r in range(1, len(seq.n_values)):
        n_prev, n = seq.n_values[r - 1], seq.n_values[r]
        s = n - n_prev
        prev, cur = seq.values[r - 1], seq.values[r]
        for k in range(1, len(prev) + 1):
            if k <= len(cur):
                chk.le("interlacing", k, n, cur[k - 1], prev[k - 1])
            if k + s <= len(cur):
                chk.le("interlacing", k, n, prev[k - 1], cur[k + s - 1])
    failed = chk.failed("interlacing")
    return BoundReport(
        interlacing_ok=not failed,
        violations=tuple(chk.violations),
        worst_slack=chk.worst,
    )


def converged_levels(seq: RitzSequence, tol: float) -> list[tuple[int, int, float]]:
    """First N at which each level moved by at most ``tol`` since the previous N."""
    if tol < 0:
        raise ValueError(f"tol must be >= 0, got {tol}")
    out = []
    for k in range(1, seq.levels + 1):
        prev = None
        for n, vals in zip(seq.n_values, seq.values):
            if k > len(vals):
                prev = None
                continue
            v = float(vals[k - 1])
            if prev is not None and abs(v - prev) <= tol:
                out.append((k, n, v))
                break
            prev = v
    return out


def ritz_vector(seq: RitzSequence, n: int, j: int) -> np.ndarray:
    """Coefficients c_{ij}^(n) of the j-th Ritz vector (1-based j)."""
    r = seq.row(n)
    c = seq.coefficients[r]
    if not 1 <= j <= c.shape[1]:
        raise ValueError(f"j must lie in [1, {c.shape[1]}] at N={n}, got {j}")
    return np.array(c[:, j - 1])


def constrained_quotient_bound(seq: RitzSequence, n: int, k: int, trials: int = 100,
                               seed: int = 0, max_failures: int = 100) -> float:
    """Minimum Rayleigh quotient over random trial vectors orthogonal to the first k-1 Ritz vectors.

    Each trial is a random combination of |n,1>..|n,k>, Gram-Schmidt
    projected off |n,1>..|n,k-1>. What survives is a multiple of |n,k>, so
    the minimum should reproduce E_k^(n).
    """
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    r = seq.row(n)
    if not 1 <= k <= min(n, seq.coefficients[r].shape[1]):
        raise ValueError(f"k must lie in [1, {seq.coefficients[r].shape[1]}], got {k}")
    h = seq.matrices[r]
    basis = seq.coefficients[r][:, :k]
    rng = np.random.default_rng(seed)
    best = math.inf
    failures = 0
    done = 0
    while done < trials:
        a = rng.standard_normal(k)
        phi = basis @ a
        scale = float(np.linalg.norm(phi))
        for i in range(k - 1):
            u = basis[:, i]
            phi = phi - (u @ phi) * u
        if float(np.linalg.norm(phi)) <= 1e-8 * scale:
            failures += 1
            if failures >= max_failures:
                raise RuntimeError(f"degenerate trial span after {failures} attempts")
            continue
        best = min(best, rayleigh_quotient(h, phi))
        done += 1
    return best


def ritz_residual(model: OperatorModel, n: int, j: int, m: Optional[int] = None) -> float:
    """||H_M v - E_j^(n) v|| with v the n-Ritz vector zero-padded to M (default 2n)."""
    m = 2 * n if m is None else m
    big = models.assemble(model, m).array
    dec = eigensolve(SymMatrix(big[:n, :n]))
    v = np.zeros(m)
    v[:n] = dec.vectors[:, j - 1]
    return float(np.linalg.norm(big @ v - dec.values[j - 1] * v))
