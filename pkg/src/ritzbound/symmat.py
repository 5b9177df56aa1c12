"""Dense real symmetric linear algebra.

Storage, a cyclic Jacobi eigensolver, Rayleigh quotients and the diagonal
projector matrices used to build nested truncations of an operator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

JACOBI_MAX_SWEEPS = 100
JACOBI_REL_TOL = 1e-14
ROTATION_FLOOR = 1e-300


class EigensolverError(RuntimeError):
    """Raised when the Jacobi iteration hits its sweep cap."""

    def __init__(self, off_norm: float, sweeps: int, n: int | None = None):
        self.off_norm = off_norm
        self.sweeps = sweeps
        self.n = n
        where = f" (N={n})" if n is not None else ""
        super().__init__(
            f"eigensolver did not converge{where}: off-diagonal norm {off_norm:.3e} "
            f"after {sweeps} sweeps"
        )


class SymMatrix:
    """Immutable dense symmetric matrix.

    Construction rejects non-square, asymmetric or non-finite input. Use
    :meth:`from_upper` to mirror an upper triangle instead.
    """

    __slots__ = ("_a",)

    def __init__(self, entries):
        a = np.array(entries, dtype=np.float64, copy=True)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise ValueError(f"expected a non-empty square matrix, got shape {a.shape}")
        if not np.all(np.isfinite(a)):
            raise ValueError("matrix entries must be finite")
        if not np.array_equal(a, a.T):
            raise ValueError("matrix is not symmetric")
        a.setflags(write=False)
        self._a = a

    @classmethod
    def from_upper(cls, entries) -> SymMatrix:
        a = np.array(entries, dtype=np.float64)
        upper = np.triu(a)
        return cls(upper + np.triu(a, 1).T)

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    @property
    def dim(self) -> int:
        return self._a.shape[0]

    def frobenius(self) -> float:
        return frobenius_norm(self._a)

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._a
        return self._a.astype(dtype)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymMatrix):
            return NotImplemented
        return np.array_equal(self._a, other._a)

    def __hash__(self):
        return hash(self._a.tobytes())

    def __matmul__(self, other):
        if isinstance(other, SymMatrix):
            return self._a @ other._a
        return self._a @ np.asarray(other)

    def __repr__(self) -> str:
        return f"SymMatrix(dim={self.dim})"


def as_symmat(a) -> SymMatrix:
    return a if isinstance(a, SymMatrix) else SymMatrix(a)


def frobenius_norm(a: np.ndarray) -> float:
    # Scaled so entries near the float limit do not overflow the sum of squares.
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    if scale == 0.0:
        return 0.0
    return scale * float(np.sqrt(np.sum((a / scale) ** 2)))


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues; column ``j`` of ``vectors`` belongs to ``values[j]``."""

    values: np.ndarray
    vectors: np.ndarray
    sweeps: int = 0

    def __iter__(self):
        yield self.values
        yield self.vectors


def _off_norm(a: np.ndarray) -> float:
    return frobenius_norm(a - np.diag(np.diag(a)))


def fix_signs(vectors: np.ndarray) -> np.ndarray:
    """Flip columns so each one's largest-magnitude entry is positive.

    Ties go to the lowest row index (``argmax`` returns the first maximum).
    """
    v = np.array(vectors, dtype=np.float64)
    if v.size == 0:
        return v
    rows = np.argmax(np.abs(v), axis=0)
    signs = np.where(v[rows, np.arange(v.shape[1])] < 0, -1.0, 1.0)
    return v * signs


def eigensolve(a, max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigenDecomposition:
    """Full eigendecomposition by cyclic-by-row Jacobi rotations.

    Sweeps visit (p, q) with p < q in row order. A pair is rotated whenever
    ``|a_pq| > 1e-300``; iteration stops once the off-diagonal Frobenius norm
    drops to ``1e-14 * ||A||_F``. Raises :class:`EigensolverError` after
    ``max_sweeps`` sweeps without reaching that threshold.
    """
    m = as_symmat(a)
    n = m.dim
    # Exact power-of-two rescale to max |a_ij| in [0.5, 1); keeps the absolute
    # rotation floor meaningful for tiny or huge matrices.
    peak = float(np.max(np.abs(m.array)))
    scale = math.ldexp(1.0, -math.frexp(peak)[1]) if peak > 0 else 1.0
    A = m.array * scale
    V = np.eye(n)
    target = JACOBI_REL_TOL * frobenius_norm(A)

    sweeps = 0
    off = _off_norm(A)
    while off > target:
        if sweeps >= max_sweeps:
            raise EigensolverError(off / scale, sweeps)
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= ROTATION_FLOOR:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                if np.isinf(theta):
                    t = 1.0 / (2.0 * theta)
                else:
                    t = np.copysign(1.0, theta) / (abs(theta) + np.hypot(theta, 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c

                ap = A[:, p].copy()
                aq = A[:, q].copy()
                new_p = c * ap - s * aq
                new_q = s * ap + c * aq
                new_p[p] = A[p, p] - t * apq
                new_q[q] = A[q, q] + t * apq
                new_p[q] = 0.0
                new_q[p] = 0.0
                A[:, p] = new_p
                A[:, q] = new_q
                A[p, :] = new_p
                A[q, :] = new_q

                vp = V[:, p].copy()
                vq = V[:, q].copy()
                V[:, p] = c * vp - s * vq
                V[:, q] = s * vp + c * vq
        sweeps += 1
        off = _off_norm(A)

    values = np.diag(A) / scale
    order = np.argsort(values, kind="stable")
    values = values[order]
    vectors = fix_signs(V[:, order])
    values.setflags(write=False)
    vectors.setflags(write=False)
    return EigenDecomposition(values, vectors, sweeps)


def rayleigh_quotient(a, v) -> float:
    """(v^T A v) / (v^T v)."""
    m = as_symmat(a)
    v = np.asarray(v, dtype=np.float64)
    if v.shape != (m.dim,):
        raise ValueError(f"vector of shape {v.shape} does not match dim {m.dim}")
    norm2 = float(v @ v)
    if norm2 == 0.0:
        raise ValueError("undefined Rayleigh quotient for the zero vector")
    return float(v @ (m.array @ v)) / norm2


def projector(full_dim: int, rank: int) -> SymMatrix:
    """Matrix of the projector onto the first ``rank`` basis vectors."""
    if full_dim < 1 or not 1 <= rank <= full_dim:
        raise ValueError(f"rank must satisfy 1 <= rank <= full_dim, got rank={rank}, full_dim={full_dim}")
    d = np.zeros(full_dim)
    d[:rank] = 1.0
    return SymMatrix(np.diag(d))


def project_leading(a, n: int) -> SymMatrix:
    """Leading n x n principal block, i.e. P_n A P_n restricted to its range."""
    m = as_symmat(a)
    if not 1 <= n <= m.dim:
        raise ValueError(f"n must satisfy 1 <= n <= {m.dim}, got {n}")
    return SymMatrix(m.array[:n, :n])


def secular_residual(a, e: float) -> float:
    """Smallest |eigenvalue| of A - eI, a stand-in for |det(A - eI)|.

    Computed as the smallest singular value through LAPACK, which keeps this
    check on a different code path from :func:`eigensolve`.
    """
    m = as_symmat(a)
    if not np.isfinite(e):
        raise ValueError("shift must be finite")
    shifted = m.array - e * np.eye(m.dim)
    return float(np.linalg.svd(shifted, compute_uv=False).min())


def random_symmetric(dim: int, rng: np.random.Generator) -> SymMatrix:
    """Symmetric matrix with upper-triangle entries uniform in [-1, 1]."""
    return SymMatrix.from_upper(rng.uniform(-1.0, 1.0, size=(dim, dim)))
