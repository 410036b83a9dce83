"""
해석적 상한 검증 스위트 (verify-bounds)
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from mcp_schmidt_benchmark.quantum.benchmark import (
    GateTask,
    fidelity_direct,
    fidelity_via_choi,
    schmidt_threshold,
)
from mcp_schmidt_benchmark.quantum.channels import saturating_channel
from mcp_schmidt_benchmark.quantum.errors import DimensionError
from mcp_schmidt_benchmark.quantum.linalg import frobenius_distance, min_eigenvalue
from mcp_schmidt_benchmark.quantum.oracle import (
    OptimizerConfig,
    max_correlation_rank_k,
    max_entangled_fraction_rank_k,
    max_fidelity_mp_scheme,
)
from mcp_schmidt_benchmark.quantum.states import (
    bell_projector,
    correlation_identity_form,
    correlation_operator,
    correlation_operator_bell_form,
)

logger = logging.getLogger(__name__)

PASS, MISS, VIOLATION = "pass", "miss", "violation"

IDENTITY_TOL = 1e-10
SATURATION_TOL = 1e-12
CEILING_SLACK = 1e-6
FRACTION_REACH = 1e-5
CORRELATION_REACH = 1e-5
MP_REACH = 1e-4
# MP 최적화 반복 상한 (verify-bounds 실행 시간 제한)
MP_MAX_ITERS = 150

COLUMNS = ["check", "d", "k", "achieved", "analytic", "status"]


@dataclass
class VerificationReport:
    d_max: int
    config: OptimizerConfig
    rows: List[Dict] = field(default_factory=list)

    def add(self, check: str, d: int, k: Optional[int], achieved: float, analytic: float, status: str) -> None:
        row = {"check": check, "d": d, "k": k, "achieved": float(achieved), "analytic": float(analytic),
               "status": status}
        if status == VIOLATION:
            logger.error(f"❌ {check} d={d} k={k}: achieved {achieved!r} vs analytic {analytic!r}")
        elif status == MISS:
            logger.warning(f"⚠️ {check} d={d} k={k}: optimizer stopped at {achieved!r} (analytic {analytic!r})")
        else:
            logger.debug(f"{check} d={d} k={k}: {achieved!r}")
        self.rows.append(row)

    @property
    def frame(self) -> pd.DataFrame:
        return pd.DataFrame(self.rows, columns=COLUMNS)

    @property
    def violations(self) -> int:
        return sum(1 for r in self.rows if r["status"] == VIOLATION)

    @property
    def misses(self) -> int:
        return sum(1 for r in self.rows if r["status"] == MISS)

    @property
    def passed(self) -> bool:
        return self.violations == 0

    @property
    def rank_pairs(self) -> int:
        """Number of (d, k) pairs covered by the rank-k oracle."""
        df = self.frame
        return int(df[df["check"] == "entangled_fraction"][["d", "k"]].drop_duplicates().shape[0])

    def summary(self) -> Dict[str, int]:
        counts = self.frame.groupby("status").size().to_dict()
        return {status: int(counts.get(status, 0)) for status in (PASS, MISS, VIOLATION)}

    def to_dict(self) -> Dict:
        return {
            "d_max": self.d_max,
            "seed": self.config.seed,
            "restarts": self.config.restarts,
            "passed": self.passed,
            "rank_pairs": self.rank_pairs,
            "summary": self.summary(),
            "checks": self.rows,
        }


def _ceiling_status(achieved: float, ceiling: float, reach: float) -> str:
    if achieved > ceiling + CEILING_SLACK:
        return VIOLATION
    if achieved < ceiling - reach:
        return MISS
    return PASS


def _operator_checks(report: VerificationReport, d: int) -> None:
    c = correlation_operator(d)
    diff = frobenius_distance(c, correlation_operator_bell_form(d))
    report.add("bell_diagonal_form", d, None, diff, 0.0, PASS if diff < IDENTITY_TOL else VIOLATION)
    diff = frobenius_distance(c, correlation_identity_form(d))
    report.add("identity_form", d, None, diff, 0.0, PASS if diff < IDENTITY_TOL else VIOLATION)
    gap = min_eigenvalue(np.eye(d * d) + bell_projector(d, 0, 0) - c)
    report.add("operator_inequality", d, None, gap, 0.0, PASS if gap >= -IDENTITY_TOL else VIOLATION)


def _saturation_checks(report: VerificationReport, d: int) -> None:
    task = GateTask(d)
    for k in range(1, d + 1):
        channel = saturating_channel(d, k)
        target = schmidt_threshold(d, k)
        direct = fidelity_direct(channel, task).f_avg
        via_choi = fidelity_via_choi(channel, task)
        worst = max(abs(direct - target), abs(via_choi - target))
        report.add("saturation", d, k, direct, target, PASS if worst < SATURATION_TOL else VIOLATION)


def _monotone_checks(report: VerificationReport, check: str, d: int, values: List[float]) -> None:
    # rank-(k-1) states are rank-k feasible, so values[k-1] >= values[k-2]
    for k in range(2, d + 1):
        step = values[k - 1] - values[k - 2]
        report.add(check, d, k, step, 1.0 / d, PASS if step >= -CEILING_SLACK else MISS)


def _oracle_checks(report: VerificationReport, d: int, cfg: OptimizerConfig) -> None:
    fractions, correlations = [], []
    for k in range(1, d + 1):
        value = max_entangled_fraction_rank_k(d, k, cfg).value
        ceiling = k / d
        report.add("entangled_fraction", d, k, value, ceiling, _ceiling_status(value, ceiling, FRACTION_REACH))
        fractions.append(value)
        value = max_correlation_rank_k(d, k, cfg)
        ceiling = 1 + k / d
        report.add("correlation", d, k, value, ceiling, _ceiling_status(value, ceiling, CORRELATION_REACH))
        correlations.append(value)
    _monotone_checks(report, "fraction_monotone", d, fractions)
    _monotone_checks(report, "correlation_monotone", d, correlations)
    value = max_fidelity_mp_scheme(d, replace(cfg, max_iters=min(cfg.max_iters, MP_MAX_ITERS)))
    ceiling = schmidt_threshold(d, 1)
    report.add("mp_scheme", d, 1, value, ceiling, _ceiling_status(value, ceiling, MP_REACH))


def run_verification(d_max: int = 6, cfg: Optional[OptimizerConfig] = None) -> VerificationReport:
    """Operator identities, E_k saturation and oracle ceilings for every 2 <= d <= d_max."""
    if int(d_max) != d_max or d_max < 2:
        raise DimensionError(f"d_max must be an integer >= 2, got {d_max}")
    cfg = cfg or OptimizerConfig()
    report = VerificationReport(d_max=d_max, config=cfg)
    for d in range(2, d_max + 1):
        logger.info(f"Verifying bounds for d={d}")
        _operator_checks(report, d)
        _saturation_checks(report, d)
        _oracle_checks(report, d, cfg)
    logger.info(f"✅ verification finished: {report.summary()}")
    return report
