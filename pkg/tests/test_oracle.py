import numpy as np
import pytest

from mcp_schmidt_benchmark.quantum.benchmark import GateTask, fidelity_direct, schmidt_threshold
from mcp_schmidt_benchmark.quantum.channels import measure_prepare
from mcp_schmidt_benchmark.quantum.errors import BenchmarkError, DimensionError, IndexRangeError, NormalizationError
from mcp_schmidt_benchmark.quantum.linalg import schmidt_rank
from mcp_schmidt_benchmark.quantum.oracle import (
    OptimizerConfig,
    RankKState,
    max_correlation_rank_k,
    max_entangled_fraction_rank_k,
    max_fidelity_mp_scheme,
    maximize_rank_k,
    objective_rank_k,
    optimize_mp_scheme,
)
from mcp_schmidt_benchmark.quantum.states import bell_projector, correlation_operator

FAST = OptimizerConfig(restarts=4, max_iters=200)


def test_optimizer_config_validation():
    with pytest.raises(BenchmarkError):
        OptimizerConfig(restarts=0)
    with pytest.raises(BenchmarkError):
        OptimizerConfig(seed=-1)
    with pytest.raises(BenchmarkError):
        OptimizerConfig(seed=2 ** 64)
    OptimizerConfig(seed=2 ** 64 - 1)


def test_rank_k_state_validation():
    eye = np.eye(3)[:, :2].astype(complex)
    state = RankKState(d=3, k=2, coefficients=np.array([0.6, 0.8]), left=eye, right=eye)
    assert schmidt_rank(state.vector(), 3, 3) == 2
    with pytest.raises(NormalizationError):
        RankKState(d=3, k=2, coefficients=np.array([0.6, 0.6]), left=eye, right=eye)
    with pytest.raises(IndexRangeError):
        RankKState(d=3, k=4, coefficients=np.ones(4) / 2, left=eye, right=eye)


def test_objective_of_maximally_entangled_state():
    d = 3
    state = RankKState(d=d, k=d, coefficients=np.ones(d) / np.sqrt(d), left=np.eye(d, dtype=complex),
                       right=np.eye(d, dtype=complex))
    assert abs(objective_rank_k(bell_projector(d, 0, 0), state) - 1) < 1e-12


def test_entangled_fraction_oracle_small_config():
    result = max_entangled_fraction_rank_k(3, 2, FAST)
    assert abs(result.value - 2 / 3) < 1e-6
    assert result.argmax.k == 2
    assert schmidt_rank(result.argmax.vector(), 3, 3) <= 2


def test_entangled_fraction_ceilings_default_config():
    for d in range(2, 6):
        for k in range(1, d + 1):
            value = max_entangled_fraction_rank_k(d, k).value
            assert value <= k / d + 1e-6
            assert value >= k / d - 1e-5


def test_correlation_oracle_ceilings():
    for d in (2, 3, 4):
        for k in range(1, d + 1):
            value = max_correlation_rank_k(d, k, FAST)
            assert value <= 1 + k / d + 1e-6
            assert value >= 1 + k / d - 1e-5


def test_mp_scheme_ceiling_default_config():
    for d in (2, 3, 4):
        value = max_fidelity_mp_scheme(d)
        ceiling = schmidt_threshold(d, 1)
        assert value <= ceiling + 1e-6
        assert value >= ceiling - 1e-4


def test_mp_scheme_is_a_sound_channel():
    d = 3
    scheme = optimize_mp_scheme(d, FAST)
    m = scheme.measurement
    assert np.abs(m.conj().T @ m - np.eye(d)).max() < 1e-10
    channel = measure_prepare(scheme.measurement, scheme.preparations)
    assert abs(fidelity_direct(channel, GateTask(d)).f_avg - scheme.value) < 1e-10


def test_oracles_are_deterministic():
    a = max_entangled_fraction_rank_k(4, 2, FAST)
    b = max_entangled_fraction_rank_k(4, 2, FAST)
    assert a.value == b.value
    assert np.array_equal(a.argmax.vector(), b.argmax.vector())
    threaded = OptimizerConfig(restarts=4, max_iters=200, workers=3)
    assert max_entangled_fraction_rank_k(4, 2, threaded).value == a.value


def test_oracle_argument_errors():
    with pytest.raises(IndexRangeError):
        max_entangled_fraction_rank_k(3, 0, FAST)
    with pytest.raises(DimensionError):
        max_correlation_rank_k(1, 1, FAST)
    with pytest.raises(DimensionError):
        optimize_mp_scheme(3, FAST, outcomes=2)


@pytest.mark.parametrize("d", [2, 3, 4])
def test_oracle_values_non_decreasing_in_k(d):
    fractions = [max_entangled_fraction_rank_k(d, k, FAST).value for k in range(1, d + 1)]
    correlations = [max_correlation_rank_k(d, k, FAST) for k in range(1, d + 1)]
    for values in (fractions, correlations):
        assert all(b >= a - 1e-9 for a, b in zip(values, values[1:]))


@pytest.mark.parametrize("d", [2, 3, 4])
def test_rank_k_value_is_objective_at_argmax(d):
    for operator in (bell_projector(d, 0, 0), correlation_operator(d)):
        for k in range(1, d + 1):
            result = maximize_rank_k(operator, d, k, FAST)
            assert abs(result.value - objective_rank_k(operator, result.argmax)) < 1e-12
            assert schmidt_rank(result.argmax.vector(), d, d) <= k
    result = max_entangled_fraction_rank_k(d, 1, FAST)
    assert abs(result.value - objective_rank_k(bell_projector(d, 0, 0), result.argmax)) < 1e-12
