"""
기저 상태, 일반화 Pauli 연산자, Bell 상태 및 상관 연산자

Conventions:
- X-basis |k̄> = (1/sqrt d) sum_j exp(+2 pi i k j / d) |j>.
- "-j" in |-j̄> is (d - j) mod d.
- Z = sum_j exp(2 pi i j / d)|j><j|, X = sum_j |j+1><j| (cyclic), so X Z = exp(-2 pi i / d) Z X.
- Bell states |Phi_{l,m}> = (X^l (x) Z^m)|Phi_00>.
- Multi-qubit bit lists and Pauli masks are ordered qubit-N first, i.e. the first entry
  is the leftmost tensor factor.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Sequence, Tuple

import numpy as np

from mcp_schmidt_benchmark.quantum.errors import DimensionError, IndexRangeError
from mcp_schmidt_benchmark.quantum.linalg import frozen, kron, kron_all, projector

logger = logging.getLogger(__name__)


class BasisKind(str, Enum):
    Z = "Z"
    X = "X"


@dataclass(frozen=True)
class BasisLabel:
    kind: BasisKind
    index: int

    def validate(self, d: int) -> "BasisLabel":
        if not 0 <= self.index < d:
            raise IndexRangeError(f"basis index {self.index} out of range for d={d}")
        return self

    def __str__(self) -> str:
        return f"{self.kind.value}{self.index}"


@dataclass(frozen=True)
class BellLabel:
    l: int  # noqa: E741
    m: int

    def validate(self, d: int) -> "BellLabel":
        if not (0 <= self.l < d and 0 <= self.m < d):
            raise IndexRangeError(f"Bell label ({self.l}, {self.m}) out of range for d={d}")
        return self


def _check_dimension(d: int) -> None:
    if int(d) != d or d < 2:
        raise DimensionError(f"dimension must be an integer >= 2, got {d}")


def _check_index(d: int, j: int) -> None:
    if not 0 <= j < d:
        raise IndexRangeError(f"index {j} out of range [0, {d})")


def z_basis_state(d: int, j: int) -> np.ndarray:
    _check_dimension(d)
    _check_index(d, j)
    v = np.zeros(d, dtype=np.complex128)
    v[j] = 1.0
    return v


def x_basis_state(d: int, k: int) -> np.ndarray:
    _check_dimension(d)
    _check_index(d, k)
    j = np.arange(d)
    return np.exp(2j * np.pi * k * j / d) / np.sqrt(d)


def basis_state(d: int, label: BasisLabel) -> np.ndarray:
    label.validate(d)
    if label.kind == BasisKind.Z:
        return z_basis_state(d, label.index)
    return x_basis_state(d, label.index)


def basis_matrix(d: int, kind: BasisKind) -> np.ndarray:
    """Columns are the basis vectors of the requested kind."""
    make = z_basis_state if kind == BasisKind.Z else x_basis_state
    return np.stack([make(d, j) for j in range(d)], axis=1)


@lru_cache(maxsize=64)
def _pauli_pair(d: int) -> Tuple[np.ndarray, np.ndarray]:
    x = np.roll(np.eye(d, dtype=np.complex128), 1, axis=0)
    z = np.diag(np.exp(2j * np.pi * np.arange(d) / d))
    return frozen(x), frozen(z)


def generalized_pauli(d: int) -> Tuple[np.ndarray, np.ndarray]:
    """Return (X̂, Ẑ): cyclic shift and clock operators on C^d."""
    _check_dimension(d)
    x, z = _pauli_pair(int(d))
    return x.copy(), z.copy()


def weyl_operator(d: int, a: int, b: int) -> np.ndarray:
    x, z = generalized_pauli(d)
    return np.linalg.matrix_power(x, a % d) @ np.linalg.matrix_power(z, b % d)


def phi_plus(d: int) -> np.ndarray:
    """|Phi_00> = (1/sqrt d) sum_j |j>|j>."""
    _check_dimension(d)
    return np.eye(d, dtype=np.complex128).reshape(-1) / np.sqrt(d)


def bell_state(d: int, l: int, m: int) -> np.ndarray:  # noqa: E741
    BellLabel(l, m).validate(d)
    x, z = generalized_pauli(d)
    op = kron(np.linalg.matrix_power(x, l), np.linalg.matrix_power(z, m))
    return op @ phi_plus(d)


def bell_projector(d: int, l: int, m: int) -> np.ndarray:  # noqa: E741
    return projector(bell_state(d, l, m))


def correlation_operator_for_bases(bases: Sequence[np.ndarray]) -> np.ndarray:
    """sum over basis vectors e of |e><e| (x) |e*><e*|.

    For a Choi state J = E (x) I(|Phi_00><Phi_00|), <e|E(|e><e|)|e> = d Tr[J (|e><e| (x) |e*><e*|)],
    so half the expectation of this operator is the two-basis average fidelity.
    """
    dim = bases[0].shape[0]
    out = np.zeros((dim * dim, dim * dim), dtype=np.complex128)
    for basis in bases:
        if basis.shape != (dim, dim):
            raise DimensionError(f"basis matrix shape {basis.shape} does not match {dim}")
        for col in range(dim):
            e = basis[:, col]
            out += kron(projector(e), projector(e.conj()))
    return out


@lru_cache(maxsize=32)
def _correlation_operator(d: int) -> np.ndarray:
    out = np.zeros((d * d, d * d), dtype=np.complex128)
    for j in range(d):
        zj = projector(z_basis_state(d, j))
        out += kron(zj, zj)
        out += kron(projector(x_basis_state(d, j)), projector(x_basis_state(d, (d - j) % d)))
    return frozen(out)


def correlation_operator(d: int) -> np.ndarray:
    """Ĉ_d = sum_j (|j><j| (x) |j><j| + |j̄><j̄| (x) |-j̄><-j̄|)."""
    _check_dimension(d)
    return _correlation_operator(int(d)).copy()


def correlation_operator_bell_form(d: int) -> np.ndarray:
    """sum_l Φ̂_{l,0} + sum_m Φ̂_{0,m}."""
    _check_dimension(d)
    out = np.zeros((d * d, d * d), dtype=np.complex128)
    for l in range(d):  # noqa: E741
        out += bell_projector(d, l, 0)
    for m in range(d):
        out += bell_projector(d, 0, m)
    return out


def correlation_identity_form(d: int) -> np.ndarray:
    """I + Φ̂_{0,0} - sum_{l,m >= 1} Φ̂_{l,m}."""
    _check_dimension(d)
    out = np.eye(d * d, dtype=np.complex128) + bell_projector(d, 0, 0)
    for l in range(1, d):  # noqa: E741
        for m in range(1, d):
            out -= bell_projector(d, l, m)
    return out


def _check_bits(n_qubits: int, bits: Sequence[int], what: str) -> List[int]:
    if n_qubits < 1:
        raise DimensionError(f"n_qubits must be >= 1, got {n_qubits}")
    bits = [int(b) for b in bits]
    if len(bits) != n_qubits:
        raise DimensionError(f"{what} has length {len(bits)}, expected {n_qubits}")
    if any(b not in (0, 1) for b in bits):
        raise IndexRangeError(f"{what} entries must be 0 or 1, got {bits}")
    return bits


def product_basis_state(n_qubits: int, kind: BasisKind, bits: Sequence[int]) -> np.ndarray:
    bits = _check_bits(n_qubits, bits, "bits")
    make = z_basis_state if BasisKind(kind) == BasisKind.Z else x_basis_state
    out = np.ones(1, dtype=np.complex128)
    for b in bits:
        out = np.kron(out, make(2, b))
    return out


def product_basis_matrix(n_qubits: int, kind: BasisKind) -> np.ndarray:
    """Columns ordered by the integer value of the bit list (qubit N most significant)."""
    cols = []
    for idx in range(2 ** n_qubits):
        bits = [(idx >> (n_qubits - 1 - q)) & 1 for q in range(n_qubits)]
        cols.append(product_basis_state(n_qubits, kind, bits))
    return np.stack(cols, axis=1)


def product_pauli(n_qubits: int, which: BasisKind, mask: Sequence[int]) -> np.ndarray:
    """sigma_x (or sigma_z) on qubits whose mask bit is 1, identity elsewhere."""
    mask = _check_bits(n_qubits, mask, "mask")
    x, z = generalized_pauli(2)
    sigma = x if BasisKind(which) == BasisKind.X else z
    eye = np.eye(2, dtype=np.complex128)
    return kron_all([sigma if b else eye for b in mask])


def product_bell_state(n_qubits: int, l_mask: Sequence[int], m_mask: Sequence[int]) -> np.ndarray:
    op = kron(product_pauli(n_qubits, BasisKind.X, l_mask), product_pauli(n_qubits, BasisKind.Z, m_mask))
    return op @ phi_plus(2 ** n_qubits)
