# src/mcp_schmidt_benchmark/__init__.py
from mcp_schmidt_benchmark.quantum.benchmark import (
    Certificate,
    FidelityReport,
    GateTask,
    certify,
    fidelity_direct,
    fidelity_via_choi,
    schmidt_threshold,
)
from mcp_schmidt_benchmark.quantum.channels import QuantumChannel, choi

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "FidelityReport",
    "GateTask",
    "QuantumChannel",
    "certify",
    "choi",
    "fidelity_direct",
    "fidelity_via_choi",
    "schmidt_threshold",
]
