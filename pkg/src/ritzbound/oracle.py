"""Finite-difference reference eigenvalues for the tilted box.

Second-order central differences on a uniform interior grid plus one
Richardson step. Shares nothing with the sine-basis Ritz route, so it can
serve as an independent check of the lower half of the bound chain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .rrvm import BoundReport, RitzSequence, _Checker

DEFAULT_GRID = 2000


@dataclass(frozen=True)
class FdSpec:
    lam: float
    grid_points: int
    levels: int = 4

    def __post_init__(self) -> None:
        if self.grid_points < 16:
            raise ValueError(f"grid_points must be >= 16, got {self.grid_points}")
        if not 1 <= self.levels <= min(self.grid_points, 16):
            raise ValueError(f"levels must lie in [1, 16], got {self.levels}")
        if not np.isfinite(self.lam):
            raise ValueError("lambda must be finite")

    @property
    def h(self) -> float:
        return 1.0 / (self.grid_points + 1)

    def refined(self) -> FdSpec:
        """Grid with exactly half the spacing: M -> 2M + 1 interior points."""
        return FdSpec(self.lam, 2 * self.grid_points + 1, self.levels)


@dataclass(frozen=True)
class OracleEstimate:
    values: np.ndarray
    error_bar: np.ndarray

    @property
    def levels(self) -> int:
        return len(self.values)


def fd_eigenvalues(spec: FdSpec) -> np.ndarray:
    """Lowest ``spec.levels`` eigenvalues of the discretized -(1/2) d2/dz2 + lam z."""
    m, h = spec.grid_points, spec.h
    z = h * np.arange(1, m + 1)
    diag = 1.0 / h**2 + spec.lam * z
    off = np.full(m - 1, -0.5 / h**2)
    return eigh_tridiagonal(diag, off, eigvals_only=True,
                            select="i", select_range=(0, spec.levels - 1))


def richardson(coarse, fine) -> OracleEstimate:
    """Cancel the h^2 term given results on grids with spacing h and h/2."""
    coarse = np.asarray(coarse, dtype=float)
    fine = np.asarray(fine, dtype=float)
    if coarse.shape != fine.shape:
        raise ValueError(f"length mismatch: {coarse.shape} vs {fine.shape}")
    values = (4.0 * fine - coarse) / 3.0
    return OracleEstimate(values, np.abs(fine - values))


def estimate(lam: float, levels: int = 4, grid_points: int = DEFAULT_GRID) -> OracleEstimate:
    coarse = FdSpec(lam, grid_points, levels)
    return richardson(fd_eigenvalues(coarse), fd_eigenvalues(coarse.refined()))


def cross_validate(seq: RitzSequence, est: OracleEstimate, slack: float = 1e-8) -> BoundReport:
    """Check E_K^(N) >= oracle_K - error_bar_K - slack for every tracked (K, N)."""
    if est.levels < min(seq.levels, max(len(v) for v in seq.values)):
        raise ValueError("oracle tracks fewer levels than the sequence")
    chk = _Checker(slack)
    for n, vals in zip(seq.n_values, seq.values):
        for k, e in enumerate(vals, start=1):
            floor = est.values[k - 1] - est.error_bar[k - 1]
            chk.le("lower_bound", k, n, floor, e)
    return BoundReport(
        lower_bound_ok=not chk.failed("lower_bound"),
        violations=tuple(chk.violations),
        worst_slack=chk.worst,
    )
