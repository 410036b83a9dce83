"""
수치 오라클: Schmidt rank-k 상태 및 측정-준비(MP) 방식에 대한 최대화

Heuristic random-restart maximizers that witness the analytic ceilings from below.
They never prove an upper bound; the ceiling checks only catch bugs.

Rank-k states are parametrised as psi = sum_i c_i u_i (x) v_i with orthonormal frames
U, V (d x k). The objective <psi|A|psi> is quadratic in each frame block, so fixing V
and maximising over W = U diag(c) is an exact eigenproblem (and likewise for U); the
new frames come from re-factorising the d x d coefficient matrix by SVD.

MP schemes use a rank-one POVM held as an n x d isometry R (row r_k = <m_k|) and pure
preparations phi_k. For fixed R each phi_k is a top eigenvector; for fixed phi_k the
objective is convex in R, so R <- polar(gradient) never decreases it.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, List, NamedTuple, Optional, Tuple

import numpy as np

from mcp_schmidt_benchmark.config import oracle_settings
from mcp_schmidt_benchmark.quantum.errors import BenchmarkError, DimensionError, IndexRangeError, NormalizationError
from mcp_schmidt_benchmark.quantum.linalg import hermitian_eigensystem, polar_isometry, random_isometry
from mcp_schmidt_benchmark.quantum.states import basis_matrix, BasisKind, correlation_operator, phi_plus

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = oracle_settings.restarts
    max_iters: int = oracle_settings.max_iters
    tolerance: float = oracle_settings.tolerance
    seed: int = oracle_settings.seed
    workers: int = oracle_settings.workers

    def __post_init__(self):
        if self.restarts < 1:
            raise BenchmarkError(f"restarts must be >= 1, got {self.restarts}")
        if self.max_iters < 1:
            raise BenchmarkError(f"max_iters must be >= 1, got {self.max_iters}")
        if not self.tolerance > 0:
            raise BenchmarkError(f"tolerance must be > 0, got {self.tolerance}")
        if not 0 <= self.seed < 2 ** 64:
            raise BenchmarkError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if self.workers < 1:
            raise BenchmarkError(f"workers must be >= 1, got {self.workers}")

    def rng(self, restart: int) -> np.random.Generator:
        return np.random.default_rng([self.seed, restart])


@dataclass(frozen=True, eq=False)
class RankKState:
    d: int
    k: int
    coefficients: np.ndarray  # length k, nonnegative, squares sum to 1
    left: np.ndarray          # d x k, orthonormal columns
    right: np.ndarray         # d x k, orthonormal columns

    def __post_init__(self):
        if not 1 <= self.k <= self.d:
            raise IndexRangeError(f"rank k={self.k} out of range for d={self.d}")
        if self.left.shape != (self.d, self.k) or self.right.shape != (self.d, self.k):
            raise DimensionError("frames must be d x k")
        eye = np.eye(self.k)
        if (np.abs(self.left.conj().T @ self.left - eye).max() > 1e-9
                or np.abs(self.right.conj().T @ self.right - eye).max() > 1e-9):
            raise NormalizationError("Schmidt frames are not orthonormal")
        if np.any(self.coefficients < 0) or abs(float(np.sum(self.coefficients ** 2)) - 1.0) > 1e-10:
            raise NormalizationError("Schmidt coefficients must be nonnegative with unit 2-norm")

    def vector(self) -> np.ndarray:
        return ((self.left * self.coefficients) @ self.right.T).reshape(-1)


class OracleResult(NamedTuple):
    value: float
    argmax: RankKState


class MPScheme(NamedTuple):
    value: float
    measurement: np.ndarray   # rows are POVM vectors m_k
    preparations: np.ndarray  # rows are prepared states phi_k


def objective_rank_k(operator: np.ndarray, state: RankKState) -> float:
    psi = state.vector()
    return float(np.real(psi.conj() @ operator @ psi))


def _check_rank(d: int, k: int) -> None:
    if int(d) != d or d < 2:
        raise DimensionError(f"dimension must be an integer >= 2, got {d}")
    if not 1 <= k <= d:
        raise IndexRangeError(f"k must satisfy 1 <= k <= d={d}, got {k}")


def _top_eigvec(h: np.ndarray) -> Tuple[float, np.ndarray]:
    es = hermitian_eigensystem(h)
    return float(es.eigenvalues[0]), es.eigenvectors[:, 0]


def _refactor(m: np.ndarray, k: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    u, s, vh = np.linalg.svd(m)
    c = s[:k] / np.linalg.norm(s[:k])
    return c, u[:, :k], vh[:k, :].T


def _rank_k_restart(operator: np.ndarray, d: int, k: int, cfg: OptimizerConfig, restart: int) -> RankKState:
    rng = cfg.rng(restart)
    eye = np.eye(d, dtype=np.complex128)
    v = random_isometry(d, k, rng)
    value = -np.inf
    u = c = None
    for it in range(cfg.max_iters):
        # fix right frame: psi = (I (x) V) w
        iso = np.kron(eye, v)
        _, w = _top_eigvec(iso.conj().T @ operator @ iso)
        c, u, v = _refactor(w.reshape(d, k) @ v.T, k)
        # fix left frame: psi = (U (x) I) y
        iso = np.kron(u, eye)
        new_value, y = _top_eigvec(iso.conj().T @ operator @ iso)
        c, u, v = _refactor(u @ y.reshape(k, d), k)
        if new_value - value < cfg.tolerance:
            value = new_value
            break
        value = new_value
    logger.debug(f"rank-{k} restart {restart}: {value:.12f} after {it + 1} iterations")
    return RankKState(d=d, k=k, coefficients=c, left=u, right=v)


def _best_of(candidates: List, score: Callable) -> Tuple[int, object, float]:
    """Deterministic argmax: highest score, ties to the lowest restart index."""
    best_i, best, best_val = 0, candidates[0], score(candidates[0])
    for i, cand in enumerate(candidates[1:], start=1):
        val = score(cand)
        if val > best_val:
            best_i, best, best_val = i, cand, val
    return best_i, best, best_val


def _run_restarts(task: Callable[[int], object], cfg: OptimizerConfig) -> List:
    if cfg.workers > 1:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            return list(pool.map(task, range(cfg.restarts)))
    return [task(r) for r in range(cfg.restarts)]


def maximize_rank_k(operator: np.ndarray, d: int, k: int, cfg: Optional[OptimizerConfig] = None) -> OracleResult:
    """Best <psi|A|psi> over Schmidt-rank-k pure states on C^d (x) C^d."""
    cfg = cfg or OptimizerConfig()
    _check_rank(d, k)
    states = _run_restarts(lambda r: _rank_k_restart(operator, d, k, cfg, r), cfg)
    best_i, best, value = _best_of(states, lambda s: objective_rank_k(operator, s))
    logger.debug(f"rank-{k} maximum {value:.12f} from restart {best_i}")
    return OracleResult(value, best)


def max_entangled_fraction_rank_k(d: int, k: int, cfg: Optional[OptimizerConfig] = None) -> OracleResult:
    """max <Phi_00|psi><psi|Phi_00> over Schmidt-rank-k psi; ceiling k/d."""
    _check_rank(d, k)
    phi = phi_plus(d)
    return maximize_rank_k(np.outer(phi, phi.conj()), d, k, cfg)


def max_correlation_rank_k(d: int, k: int, cfg: Optional[OptimizerConfig] = None) -> float:
    """max <C_d> over Schmidt-rank-k psi; ceiling 1 + k/d."""
    _check_rank(d, k)
    return maximize_rank_k(correlation_operator(d), d, k, cfg).value


# --- 측정-준비 방식 ---

def _mp_inputs(d: int) -> np.ndarray:
    """Rows are the 2d input states (Z then X); each carries prior 1/(2d)."""
    return np.concatenate([basis_matrix(d, BasisKind.Z).T, basis_matrix(d, BasisKind.X).T], axis=0)


def mp_fidelity(inputs: np.ndarray, measurement: np.ndarray, preparations: np.ndarray) -> float:
    """sum_i sum_k p_i <psi_i|M_k|psi_i> |<psi_i|phi_k>|^2 with identity targets, p_i = 1/len(inputs)."""
    probs = np.abs(inputs @ measurement.conj().T) ** 2   # [i, k] = |<m_k|psi_i>|^2
    overlaps = np.abs(inputs.conj() @ preparations.T) ** 2  # [i, k] = |<psi_i|phi_k>|^2
    return float(np.sum(probs * overlaps) / inputs.shape[0])


def _mp_restart(d: int, outcomes: int, cfg: OptimizerConfig, restart: int) -> MPScheme:
    rng = cfg.rng(restart)
    inputs = _mp_inputs(d)
    p = 1.0 / inputs.shape[0]
    proj = np.einsum("ia,ib->iab", inputs, inputs.conj())  # |psi_i><psi_i|
    r = random_isometry(outcomes, d, rng)  # rows r_k = <m_k|
    phis = np.zeros((outcomes, d), dtype=np.complex128)
    value = -np.inf
    for it in range(cfg.max_iters):
        weights = np.abs(inputs @ r.T) ** 2 * p  # [i, k] = p_i |<m_k|psi_i>|^2
        for k in range(outcomes):
            _, phis[k] = _top_eigvec(np.einsum("i,iab->ab", weights[:, k], proj))
        gains = np.abs(inputs.conj() @ phis.T) ** 2 * p  # [i, k] = p_i |<psi_i|phi_k>|^2
        grad = np.stack([r[k] @ np.einsum("i,iab->ab", gains[:, k], proj) for k in range(outcomes)])
        r = polar_isometry(grad)
        new_value = mp_fidelity(inputs, r.conj(), phis)
        if new_value - value < cfg.tolerance:
            value = new_value
            break
        value = new_value
    logger.debug(f"MP restart {restart}: {value:.12f} after {it + 1} iterations")
    return MPScheme(value, r.conj(), phis.copy())


def optimize_mp_scheme(d: int, cfg: Optional[OptimizerConfig] = None, outcomes: Optional[int] = None) -> MPScheme:
    """Best two-basis average fidelity over MP schemes with ``outcomes`` rank-one POVM elements."""
    cfg = cfg or OptimizerConfig()
    if int(d) != d or d < 2:
        raise DimensionError(f"dimension must be an integer >= 2, got {d}")
    outcomes = 2 * d if outcomes is None else outcomes
    if outcomes < d:
        raise DimensionError(f"a rank-one POVM on C^{d} needs at least {d} outcomes, got {outcomes}")
    inputs = _mp_inputs(d)
    schemes = _run_restarts(lambda r: _mp_restart(d, outcomes, cfg, r), cfg)
    best_i, best, value = _best_of(schemes, lambda s: mp_fidelity(inputs, s.measurement, s.preparations))
    logger.debug(f"MP maximum {value:.12f} from restart {best_i}")
    return MPScheme(value, best.measurement, best.preparations)


def max_fidelity_mp_scheme(d: int, cfg: Optional[OptimizerConfig] = None) -> float:
    """Best F_E over measure-and-prepare schemes; ceiling (1 + 1/d) / 2."""
    return optimize_mp_scheme(d, cfg).value
