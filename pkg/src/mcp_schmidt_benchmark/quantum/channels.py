"""
양자 채널 (Kraus 표현), Choi 행렬 및 채널 모음

Channels hold Kraus operators only; the Choi matrix is computed on demand.
``choi`` uses the state normalisation J_E = (E (x) I)(|Phi_00><Phi_00|), so Tr J_E = 1.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Optional, Sequence, Tuple, Union

import numpy as np

from mcp_schmidt_benchmark.config import numerics_config
from mcp_schmidt_benchmark.quantum.errors import (
    DimensionError,
    IndexRangeError,
    NormalizationError,
    PositivityError,
    ProbabilityRangeError,
    SchemaError,
    TracePreservationError,
    UnitarityError,
)
from mcp_schmidt_benchmark.quantum.linalg import (
    as_matrix,
    frozen,
    hermitian_eigensystem,
    is_unitary,
    kron,
    partial_trace,
    projector,
)
from mcp_schmidt_benchmark.quantum.states import generalized_pauli, phi_plus, weyl_operator
from mcp_schmidt_benchmark.utils.serialization import (
    ChannelFile,
    UnitaryFile,
    load_model,
    matrix_from_json,
    matrix_to_json,
    parse_model,
)

logger = logging.getLogger(__name__)


def tp_residual(kraus: Sequence[np.ndarray]) -> float:
    """Frobenius norm of sum K^dag K - I."""
    d_in = kraus[0].shape[1]
    total = sum(k.conj().T @ k for k in kraus)
    return float(np.linalg.norm(total - np.eye(d_in)))


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    d_in: int
    d_out: int
    kraus: Tuple[np.ndarray, ...]
    name: str = field(default="channel", compare=False)

    def __post_init__(self):
        if len(self.kraus) == 0:
            raise DimensionError("a channel needs at least one Kraus operator")
        ops = []
        for i, k in enumerate(self.kraus):
            m = as_matrix(k, f"kraus[{i}]")
            if m.shape != (self.d_out, self.d_in):
                raise DimensionError(f"kraus[{i}] has shape {m.shape}, expected ({self.d_out}, {self.d_in})")
            ops.append(frozen(m))
        residual = tp_residual(ops)
        if residual > numerics_config.tp_tol:
            raise TracePreservationError(
                f"Kraus operators of '{self.name}' are not trace preserving (residual {residual:.3e})", residual
            )
        object.__setattr__(self, "kraus", tuple(ops))

    @classmethod
    def from_kraus(cls, kraus: Sequence, name: str = "channel") -> "QuantumChannel":
        ops = [as_matrix(k, f"kraus[{i}]") for i, k in enumerate(kraus)]
        if not ops:
            raise DimensionError("a channel needs at least one Kraus operator")
        d_out, d_in = ops[0].shape
        return cls(d_in=d_in, d_out=d_out, kraus=tuple(ops), name=name)

    @property
    def tp_residual(self) -> float:
        return tp_residual(self.kraus)

    @property
    def is_square(self) -> bool:
        return self.d_in == self.d_out

    def __call__(self, rho) -> np.ndarray:
        return apply(self, rho)


@dataclass(frozen=True, eq=False)
class ChoiMatrix:
    d: int
    matrix: np.ndarray

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def min_eigenvalue(self) -> float:
        return float(hermitian_eigensystem(self.matrix).eigenvalues[-1])

    def reduced_input(self) -> np.ndarray:
        """Tr_A J_E; equals I/d for trace-preserving channels."""
        return partial_trace(self.matrix, (self.d, self.d), keep=1)

    def check(self) -> None:
        """Raise if J_E violates positivity, unit trace or the Tr_A J_E = I/d identity."""
        if self.min_eigenvalue < -numerics_config.psd_tol:
            raise PositivityError(f"Choi matrix has negative eigenvalue {self.min_eigenvalue:.3e}")
        if abs(self.trace - 1.0) > numerics_config.norm_tol:
            raise NormalizationError(f"Choi matrix trace {self.trace:.12f} != 1")
        defect = float(np.linalg.norm(self.reduced_input() - np.eye(self.d) / self.d))
        if defect > numerics_config.tp_tol:
            raise TracePreservationError(f"Tr_A J_E deviates from I/d by {defect:.3e}", defect)


def _check_density(rho: np.ndarray, d: int) -> None:
    if rho.shape != (d, d):
        raise DimensionError(f"state shape {rho.shape} does not match channel input dimension {d}")
    lam = hermitian_eigensystem(rho).eigenvalues
    if lam[-1] < -numerics_config.psd_tol:
        raise PositivityError(f"input state has negative eigenvalue {lam[-1]:.3e}")
    tr = float(np.trace(rho).real)
    if abs(tr - 1.0) > numerics_config.norm_tol:
        raise NormalizationError(f"input state has trace {tr:.12f}")


def apply(channel: QuantumChannel, rho) -> np.ndarray:
    """E(rho) = sum_l K_l rho K_l^dag."""
    r = as_matrix(rho, "rho")
    _check_density(r, channel.d_in)
    return sum(k @ r @ k.conj().T for k in channel.kraus)


def apply_to_pure(channel: QuantumChannel, psi) -> np.ndarray:
    return apply(channel, projector(psi))


def choi(channel: QuantumChannel) -> ChoiMatrix:
    if not channel.is_square:
        raise DimensionError(f"Choi matrix needs d_in = d_out, got {channel.d_in} -> {channel.d_out}")
    d = channel.d_in
    phi = phi_plus(d)
    eye = np.eye(d, dtype=np.complex128)
    mat = np.zeros((d * d, d * d), dtype=np.complex128)
    for k in channel.kraus:
        v = kron(k, eye) @ phi
        mat += np.outer(v, v.conj())
    return ChoiMatrix(d=d, matrix=mat)


def compose(after: QuantumChannel, before: QuantumChannel) -> QuantumChannel:
    """(after o before)(rho) = after(before(rho)); Kraus set {A_i B_j}."""
    if before.d_out != after.d_in:
        raise DimensionError(f"cannot compose: {before.d_out}-dim output into {after.d_in}-dim input")
    ops = [a @ b for a in after.kraus for b in before.kraus]
    return QuantumChannel(d_in=before.d_in, d_out=after.d_out, kraus=tuple(ops),
                          name=f"{after.name}∘{before.name}")


def tensor(a: QuantumChannel, b: QuantumChannel) -> QuantumChannel:
    ops = [kron(x, y) for x in a.kraus for y in b.kraus]
    return QuantumChannel(d_in=a.d_in * b.d_in, d_out=a.d_out * b.d_out, kraus=tuple(ops),
                          name=f"{a.name}⊗{b.name}")


def identity_channel(d: int) -> QuantumChannel:
    _check_dim(d)
    return QuantumChannel(d_in=d, d_out=d, kraus=(np.eye(d, dtype=np.complex128),), name="identity")


def unitary_channel(u, name: str = "unitary") -> QuantumChannel:
    m = as_matrix(u, "unitary")
    if not is_unitary(m):
        raise UnitarityError(f"{name}: matrix is not unitary")
    return QuantumChannel(d_in=m.shape[1], d_out=m.shape[0], kraus=(m,), name=name)


def eb_measure_prepare(d: int) -> QuantumChannel:
    """E_Z^EB(rho) = sum_j |j><j| rho |j><j|."""
    _check_dim(d)
    ops = [np.diag(np.eye(d, dtype=np.complex128)[j]) for j in range(d)]
    return QuantumChannel(d_in=d, d_out=d, kraus=tuple(ops), name="ebz")


def measure_prepare(measurement, preparations) -> QuantumChannel:
    """E(rho) = sum_i <m_i|rho|m_i> |phi_i><phi_i|.

    ``measurement`` has the POVM vectors m_i as rows (an n x d isometry: sum_i |m_i><m_i| = I);
    ``preparations`` has the prepared pure states phi_i as rows.
    """
    meas = as_matrix(measurement, "measurement")
    prep = as_matrix(preparations, "preparations")
    if meas.shape[0] != prep.shape[0]:
        raise DimensionError(f"{meas.shape[0]} outcomes but {prep.shape[0]} preparations")
    ops = [np.outer(prep[i] / np.linalg.norm(prep[i]), meas[i].conj()) for i in range(meas.shape[0])]
    return QuantumChannel(d_in=meas.shape[1], d_out=prep.shape[1], kraus=tuple(ops), name="mp")


def saturating_channel(d: int, k: int) -> QuantumChannel:
    """E_k(rho) = (1/k) sum_l K_l rho K_l^dag, K_l = X^l (sum_{m<k} |m><m|) X^dag^l."""
    _check_dim(d)
    if not 1 <= k <= d:
        raise IndexRangeError(f"k must satisfy 1 <= k <= d={d}, got {k}")
    x, _ = generalized_pauli(d)
    base = np.diag([1.0 if m < k else 0.0 for m in range(d)]).astype(np.complex128)
    ops = []
    for l in range(d):  # noqa: E741
        xl = np.linalg.matrix_power(x, l)
        ops.append(xl @ base @ xl.conj().T / np.sqrt(k))
    return QuantumChannel(d_in=d, d_out=d, kraus=tuple(ops), name=f"satur:{k}")


def _check_probability(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ProbabilityRangeError(f"probability must lie in [0, 1], got {p}")


def _check_dim(d: int) -> None:
    if int(d) != d or d < 2:
        raise DimensionError(f"dimension must be an integer >= 2, got {d}")


def depolarizing(d: int, p: float) -> QuantumChannel:
    """rho -> (1-p) rho + p I/d, via the d^2 Weyl operators X^a Z^b.

    Weight of the identity is 1 - p + p/d^2, every other Weyl operator gets p/d^2;
    zero-weight operators are dropped.
    """
    _check_dim(d)
    _check_probability(p)
    ops = []
    for a in range(d):
        for b in range(d):
            w = (1.0 - p + p / d ** 2) if (a, b) == (0, 0) else p / d ** 2
            if w > 0.0:
                ops.append(np.sqrt(w) * weyl_operator(d, a, b))
    return QuantumChannel(d_in=d, d_out=d, kraus=tuple(ops), name=f"depol:{p:g}")


def dephasing(d: int, p: float) -> QuantumChannel:
    """rho -> (1-p) rho + p sum_j |j><j| rho |j><j|."""
    _check_dim(d)
    _check_probability(p)
    ops = []
    if p < 1.0:
        ops.append(np.sqrt(1.0 - p) * np.eye(d, dtype=np.complex128))
    if p > 0.0:
        ops.extend(np.sqrt(p) * k for k in eb_measure_prepare(d).kraus)
    return QuantumChannel(d_in=d, d_out=d, kraus=tuple(ops), name=f"dephase:{p:g}")


def cnot() -> np.ndarray:
    """Controlled-NOT with the leftmost qubit (qubit N) as control."""
    u = np.eye(4, dtype=np.complex128)
    u[[2, 3]] = u[[3, 2]]
    return u


def kraus_schmidt_upper_bound(channel: QuantumChannel, tol: Optional[float] = None) -> int:
    """Largest Kraus-operator rank.

    (K (x) I)|Phi_00> has Schmidt rank equal to rank K, so J_E is a mixture of vectors of
    at most this Schmidt rank.
    """
    tol = numerics_config.rank_tol if tol is None else tol
    return max(int(np.linalg.matrix_rank(k, tol=tol)) for k in channel.kraus)


# --- 이름으로 지정하는 기본 채널 ---

BUILTIN_CHANNELS = ("identity", "ebz", "satur:k", "depol:p", "dephase:p", "cnot", "cnot-depol:p")


def _parameter(label: str, arg: str, cast):
    try:
        return cast(arg)
    except ValueError:
        raise SchemaError(f"bad parameter in channel name '{label}'", [f"cannot read {arg!r} as {cast.__name__}"])


def builtin_channel(label: str, d: int) -> QuantumChannel:
    """Resolve one of BUILTIN_CHANNELS for dimension ``d``."""
    name, _, arg = label.partition(":")
    name = name.strip().lower()
    if name == "identity":
        return identity_channel(d)
    if name == "ebz":
        return eb_measure_prepare(d)
    if name == "satur":
        return saturating_channel(d, _parameter(label, arg, int))
    if name == "depol":
        return depolarizing(d, _parameter(label, arg, float))
    if name == "dephase":
        return dephasing(d, _parameter(label, arg, float))
    if name in ("cnot", "cnot-depol"):
        if d != 4:
            raise DimensionError(f"'{name}' is a two-qubit channel (d=4), got d={d}")
        gate = unitary_channel(cnot(), name="cnot")
        if name == "cnot":
            return gate
        return compose(depolarizing(4, _parameter(label, arg, float)), gate)
    raise SchemaError(f"unknown channel name '{label}'", [f"expected one of: {', '.join(BUILTIN_CHANNELS)}"])


# --- JSON 채널 파일 ---

def channel_to_dict(channel: QuantumChannel) -> Dict:
    out: Dict = {"d": channel.d_in, "kraus": [matrix_to_json(k) for k in channel.kraus]}
    if not channel.is_square:
        out["d_out"] = channel.d_out
    return out


def _channel_from_model(model: ChannelFile, source: str) -> QuantumChannel:
    ops = [matrix_from_json(k) for k in model.kraus]
    residual = tp_residual(ops)
    logger.debug(f"{source}: {len(ops)} Kraus operators, TP residual {residual:.3e}")
    return QuantumChannel(d_in=model.d, d_out=model.d_out or model.d, kraus=tuple(ops), name=Path(source).stem)


def channel_from_dict(payload: Union[Dict, str], source: str = "channel") -> QuantumChannel:
    return _channel_from_model(parse_model(ChannelFile, payload, source=source), source)


def load_channel(path: Union[str, Path]) -> QuantumChannel:
    return _channel_from_model(load_model(ChannelFile, path), str(path))


def load_unitary(path: Union[str, Path]) -> np.ndarray:
    model = load_model(UnitaryFile, path)
    u = matrix_from_json(model.matrix)
    if not is_unitary(u):
        raise UnitarityError(f"{path}: matrix is not unitary within {numerics_config.unitary_tol:g}")
    return u
