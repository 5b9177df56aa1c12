"""Operator models: analytic matrix elements in an orthonormal basis.

All indices are 1-based, matching the basis labels j = 1, 2, ...
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

import numpy as np

from .symmat import SymMatrix

PI2 = math.pi * math.pi


def _check_index(*idx: int) -> None:
    for i in idx:
        if int(i) != i or i < 1:
            raise ValueError(f"basis indices are 1-based positive integers, got {i}")


def tilted_box_element(lam: float, i: int, j: int) -> float:
    """<i|H|j> for -(1/2) d^2/dz^2 + lam*z on [0, 1] in the sqrt(2) sin(j pi z) basis."""
    _check_index(i, j)
    if i == j:
        return PI2 * i * i / 2.0 + lam / 2.0
    if (i + j) % 2 == 0:
        return 0.0
    # 4ij[(-1)^(i+j) - 1] = -8ij for odd i + j
    d = i * i - j * j
    return -8.0 * i * j * lam / (PI2 * d * d)


def free_box_exact(n: int) -> float:
    """Exact n-th eigenvalue of the field-free box, pi^2 n^2 / 2."""
    _check_index(n)
    return PI2 * n * n / 2.0


@dataclass(frozen=True)
class OperatorModel:
    """Supplier of symmetric matrix elements ``element(i, j)``.

    ``exact_eigenvalue`` is set only when a closed form is known.
    """

    name: str
    element: Callable[[int, int], float]
    description: str = ""
    exact_eigenvalue: Optional[Callable[[int], float]] = None
    params: dict = field(default_factory=dict)
    max_index: Optional[int] = None


@dataclass(frozen=True)
class TiltedBoxModel(OperatorModel):
    lam: float = 1.0

    @classmethod
    def create(cls, lam: float = 1.0) -> TiltedBoxModel:
        lam = float(lam)
        if not math.isfinite(lam):
            raise ValueError("lambda must be finite")
        name = "free-box" if lam == 0.0 else "tilted-box"
        return cls(
            name=name,
            element=lambda i, j: tilted_box_element(lam, i, j),
            description="particle in [0,1] with linear potential lambda*z, sine basis",
            exact_eigenvalue=free_box_exact if lam == 0.0 else None,
            params={"lambda": lam},
            lam=lam,
        )


def tilted_box(lam: float = 1.0) -> TiltedBoxModel:
    return TiltedBoxModel.create(lam)


def free_box() -> TiltedBoxModel:
    return TiltedBoxModel.create(0.0)


@dataclass(frozen=True)
class PhysicalParams:
    """Dimensional inputs of the tilted well. All must be strictly positive."""

    mass: float = 1.0
    charge: float = 1.0
    field: float = 1.0
    length: float = 1.0
    hbar: float = 1.0

    def __post_init__(self) -> None:
        for name in ("mass", "charge", "field", "length", "hbar"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be finite and > 0, got {v}")


def lambda_from_physical(p: PhysicalParams) -> float:
    """m* |e| F L^3 / hbar^2."""
    return p.mass * p.charge * p.field * p.length**3 / p.hbar**2


def physical_energy(e_tilde: float, p: PhysicalParams) -> float:
    """Convert a dimensionless eigenvalue back to physical units."""
    return p.hbar**2 * e_tilde / (p.mass * p.length**2)


def energy_scale(p: PhysicalParams) -> float:
    return physical_energy(1.0, p)


class MatrixFileModel(OperatorModel):
    """Model backed by an explicit symmetric table, e.g. loaded from disk."""

    def __init__(self, table, name: str = "matrix-file", description: str = ""):
        m = table if isinstance(table, SymMatrix) else SymMatrix(table)
        a = m.array
        dim = m.dim

        def element(i: int, j: int) -> float:
            _check_index(i, j)
            if i > dim or j > dim:
                raise IndexError(f"index ({i}, {j}) beyond declared dimension {dim}")
            return float(a[i - 1, j - 1])

        super().__init__(
            name=name,
            element=element,
            description=description or f"explicit {dim}x{dim} symmetric matrix",
            params={"dim": dim},
            max_index=dim,
        )
        object.__setattr__(self, "table", m)

    @classmethod
    def from_file(cls, path) -> MatrixFileModel:
        return cls(parse_matrix_file(Path(path).read_text(encoding="utf-8")),
                   description=f"loaded from {path}")


def parse_matrix_file(text: str) -> SymMatrix:
    """Parse ``dim n`` followed by ``i j value`` lines (1 <= i <= j <= n).

    Unlisted pairs are zero; repeated pairs are an error.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty matrix file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "dim":
        raise ValueError(f"first line must be 'dim <n>', got {lines[0]!r}")
    try:
        n = int(head[1])
    except ValueError:
        raise ValueError(f"bad dimension {head[1]!r}") from None
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")

    a = np.zeros((n, n))
    seen: set[tuple[int, int]] = set()
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'i j value', got {ln!r}")
        try:
            i, j, v = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise ValueError(f"line {lineno}: cannot parse {ln!r}") from None
        if not (1 <= i <= j <= n):
            raise ValueError(f"line {lineno}: need 1 <= i <= j <= {n}, got ({i}, {j})")
        if not math.isfinite(v):
            raise ValueError(f"line {lineno}: value must be finite")
        if (i, j) in seen:
            raise ValueError(f"line {lineno}: duplicate entry ({i}, {j})")
        seen.add((i, j))
        a[i - 1, j - 1] = v
        a[j - 1, i - 1] = v
    return SymMatrix(a)


def assemble(model: OperatorModel, n: int) -> SymMatrix:
    """n x n matrix of ``model.element``; only i <= j is evaluated, then mirrored."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if model.max_index is not None and n > model.max_index:
        raise IndexError(f"{model.name} only defines indices up to {model.max_index}, asked for {n}")
    a = np.zeros((n, n))
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            v = model.element(i, j)
            a[i - 1, j - 1] = v
            a[j - 1, i - 1] = v
    if not np.all(np.isfinite(a)):
        raise FloatingPointError(f"non-finite matrix element in {model.name} at n={n}")
    return SymMatrix(a)
