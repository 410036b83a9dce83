import numpy as np
import pytest

from mcp_schmidt_benchmark.quantum.channels import QuantumChannel
from mcp_schmidt_benchmark.quantum.linalg import random_isometry


def random_channel(d: int, n_kraus: int, rng: np.random.Generator) -> QuantumChannel:
    # stacked Kraus operators form an isometry C^d -> C^(n d)
    v = random_isometry(d * n_kraus, d, rng)
    return QuantumChannel.from_kraus([v[i * d:(i + 1) * d] for i in range(n_kraus)], name="random")


@pytest.fixture
def rng():
    return np.random.default_rng(2024)
