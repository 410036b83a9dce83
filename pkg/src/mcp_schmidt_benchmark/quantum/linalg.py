"""
복소 행렬 커널

All operators, states and Kraus maps are dense ``complex128`` numpy arrays
(row-major). Functions here never mutate their inputs.
"""

import logging
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np

from mcp_schmidt_benchmark.config import numerics_config
from mcp_schmidt_benchmark.quantum.errors import (
    BenchmarkError,
    DimensionError,
    HermiticityError,
    NormalizationError,
    NumericalError,
)

logger = logging.getLogger(__name__)

# rows/cols 상한 (d <= 32 의 d^2 x d^2 Choi 행렬보다 충분히 큼)
MAX_DIMENSION = 4096

# 2-D complex128 배열 (as_matrix 로 검증)
ComplexMatrix = np.ndarray


def as_matrix(a, name: str = "matrix") -> ComplexMatrix:
    """Coerce ``a`` to a finite 2-D complex128 array (copy)."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim == 1:
        raise DimensionError(f"{name}: expected a 2-D matrix, got a vector of length {m.shape[0]}")
    if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionError(f"{name}: expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise BenchmarkError(f"{name}: entries must be finite (no NaN/Inf)")
    return m


def as_vector(v, name: str = "vector") -> np.ndarray:
    x = np.array(v, dtype=np.complex128).reshape(-1)
    if x.size < 1:
        raise DimensionError(f"{name}: empty vector")
    if not np.all(np.isfinite(x)):
        raise BenchmarkError(f"{name}: entries must be finite (no NaN/Inf)")
    return x


def frozen(a: np.ndarray) -> np.ndarray:
    """Mark an array read-only; used for cached operators shared between callers."""
    a.setflags(write=False)
    return a


def kron(a, b) -> np.ndarray:
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > MAX_DIMENSION or cols > MAX_DIMENSION:
        raise DimensionError(f"kron result {rows}x{cols} exceeds the supported size {MAX_DIMENSION}")
    return np.kron(a, b)


def kron_all(factors: Sequence) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.complex128)
    for f in factors:
        out = kron(out, f)
    return out


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"trace of non-square {m.shape} matrix")
    return complex(np.trace(m))


def frobenius_distance(a, b) -> float:
    a = as_matrix(a, "a")
    b = as_matrix(b, "b")
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def projector(v) -> np.ndarray:
    x = as_vector(v)
    return np.outer(x, x.conj())


def is_hermitian(a, tol: Optional[float] = None) -> bool:
    tol = numerics_config.herm_tol if tol is None else tol
    m = as_matrix(a)
    return m.shape[0] == m.shape[1] and float(np.abs(m - m.conj().T).max()) <= tol


def is_unitary(u, tol: Optional[float] = None) -> bool:
    tol = numerics_config.unitary_tol if tol is None else tol
    m = as_matrix(u)
    if m.shape[0] != m.shape[1]:
        return False
    return float(np.abs(m.conj().T @ m - np.eye(m.shape[0])).max()) <= tol


def partial_trace(rho, dims: Tuple[int, int], keep: int) -> np.ndarray:
    """Trace out one factor of a bipartite operator on C^dims[0] (x) C^dims[1]; ``keep`` is 0 or 1."""
    m = as_matrix(rho, "rho")
    d_a, d_b = dims
    if m.shape != (d_a * d_b, d_a * d_b):
        raise DimensionError(f"operator shape {m.shape} does not match dims {dims}")
    t = m.reshape(d_a, d_b, d_a, d_b)
    if keep == 0:
        return np.einsum("ijkj->ik", t)
    if keep == 1:
        return np.einsum("ijil->jl", t)
    raise DimensionError(f"keep must be 0 or 1, got {keep}")


class Eigensystem(NamedTuple):
    eigenvalues: np.ndarray   # real, descending
    eigenvectors: np.ndarray  # columns match eigenvalues


def hermitian_eigensystem(a, tol: Optional[float] = None) -> Eigensystem:
    """Eigen-decomposition of a Hermitian matrix with eigenvalues sorted descending.

    Raises HermiticityError if ``a`` is not square or deviates from its adjoint by more
    than ``tol`` (max-abs). The symmetrised part is diagonalised, and the reconstruction
    residual is checked against ``eig_tol``.
    """
    tol = numerics_config.herm_tol if tol is None else tol
    m = as_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise HermiticityError(f"eigensystem of non-square {m.shape} matrix")
    asym = float(np.abs(m - m.conj().T).max())
    if asym > tol:
        raise HermiticityError(f"matrix is not Hermitian (max |A - A^dag| = {asym:.3e} > {tol:.1e})")
    h = (m + m.conj().T) / 2
    w, v = np.linalg.eigh(h)
    w = np.asarray(w[::-1], dtype=np.float64)
    v = v[:, ::-1]
    residual = float(np.linalg.norm(h - (v * w) @ v.conj().T))
    if residual >= numerics_config.eig_tol * max(1.0, float(np.linalg.norm(h))):
        raise NumericalError(f"eigen-reconstruction residual {residual:.3e} too large")
    return Eigensystem(w, v)


def min_eigenvalue(a) -> float:
    return float(hermitian_eigensystem(a).eigenvalues[-1])


class SchmidtDecomposition(NamedTuple):
    coefficients: np.ndarray  # nonnegative, descending
    left: np.ndarray          # columns: left Schmidt vectors in C^d_A
    right: np.ndarray         # columns: right Schmidt vectors in C^d_B

    def rank(self, tol: Optional[float] = None) -> int:
        tol = numerics_config.rank_tol if tol is None else tol
        return int(np.count_nonzero(self.coefficients > tol))


def schmidt_decompose(psi, d_a: int, d_b: int, tol: Optional[float] = None) -> SchmidtDecomposition:
    """psi = sum_i c_i left[:, i] (x) right[:, i], from the SVD of the d_a x d_b reshaping."""
    tol = numerics_config.norm_tol if tol is None else tol
    x = as_vector(psi, "psi")
    if x.size != d_a * d_b:
        raise DimensionError(f"state of length {x.size} does not match {d_a}x{d_b}")
    norm = float(np.linalg.norm(x))
    if abs(norm - 1.0) > tol:
        raise NormalizationError(f"state is not normalized (|psi| = {norm:.12f})")
    u, s, vh = np.linalg.svd(x.reshape(d_a, d_b))
    return SchmidtDecomposition(np.asarray(s, dtype=np.float64), u[:, : s.size], vh[: s.size, :].T)


def schmidt_rank(psi, d_a: int, d_b: int, tol: Optional[float] = None) -> int:
    return schmidt_decompose(psi, d_a, d_b).rank(tol)


def random_isometry(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """rows x cols matrix with orthonormal columns, from QR of a complex Gaussian (phase-fixed)."""
    if cols > rows:
        raise DimensionError(f"isometry needs cols <= rows, got {rows}x{cols}")
    g = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    q, r = np.linalg.qr(g)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def haar_unitary(d: int, rng: np.random.Generator) -> np.ndarray:
    return random_isometry(d, d, rng)


def polar_isometry(m) -> np.ndarray:
    """Closest isometry U V^dag to ``m`` (rows >= cols); maximises Re Tr(m^dag W) over isometries W."""
    a = as_matrix(m)
    u, _, vh = np.linalg.svd(a, full_matrices=False)
    return u @ vh
