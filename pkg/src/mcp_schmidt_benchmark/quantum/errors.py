"""
예외 정의
"""

from typing import List, Optional


class BenchmarkError(ValueError):
    """Root of every input/validation error raised by the toolkit."""


class DimensionError(BenchmarkError):
    pass


class IndexRangeError(BenchmarkError):
    pass


class HermiticityError(BenchmarkError):
    pass


class NormalizationError(BenchmarkError):
    pass


class PositivityError(BenchmarkError):
    pass


class UnitarityError(BenchmarkError):
    pass


class ProbabilityRangeError(BenchmarkError):
    pass


class TracePreservationError(BenchmarkError):
    """Kraus set violates sum K^dag K = I; ``residual`` is the Frobenius norm of the defect."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class SchemaError(BenchmarkError):
    """Input file does not match its schema; ``problems`` lists one message per violation."""

    def __init__(self, message: str, problems: Optional[List[str]] = None):
        self.problems = problems or []
        if self.problems:
            message = message + "\n" + "\n".join(f"  - {p}" for p in self.problems)
        super().__init__(message)


class NumericalError(RuntimeError):
    """A numerical post-condition failed (e.g. eigen-reconstruction residual too large)."""
