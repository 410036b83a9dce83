"""
환경변수 및 설정 관리
"""

import os
import logging
from typing import Literal, cast
from dataclasses import dataclass
from dotenv import load_dotenv

# .env 파일 로드
load_dotenv()

logger = logging.getLogger(__name__)


def _env_float(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning(f"환경변수 {name}={raw!r} 값을 해석할 수 없어 기본값 {default}을 사용합니다.")
        return default


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"환경변수 {name}={raw!r} 값을 해석할 수 없어 기본값 {default}을 사용합니다.")
        return default


@dataclass(frozen=True)
class NumericsConfig:
    """Numerical tolerances shared by the linear-algebra, channel and benchmark layers."""
    herm_tol: float = 1e-9
    norm_tol: float = 1e-9
    eig_tol: float = 1e-8
    rank_tol: float = 1e-7
    tp_tol: float = 1e-8
    psd_tol: float = 1e-9
    unitary_tol: float = 1e-9

    @classmethod
    def from_env(cls) -> "NumericsConfig":
        return cls(
            herm_tol=_env_float("SCHMIDT_HERM_TOL", 1e-9),
            norm_tol=_env_float("SCHMIDT_NORM_TOL", 1e-9),
            eig_tol=_env_float("SCHMIDT_EIG_TOL", 1e-8),
            rank_tol=_env_float("SCHMIDT_RANK_TOL", 1e-7),
            tp_tol=_env_float("SCHMIDT_TP_TOL", 1e-8),
            psd_tol=_env_float("SCHMIDT_PSD_TOL", 1e-9),
            unitary_tol=_env_float("SCHMIDT_UNITARY_TOL", 1e-9),
        )


@dataclass(frozen=True)
class OracleSettings:
    """Default random-restart optimizer settings for the numerical oracles."""
    restarts: int = 32
    max_iters: int = 500
    tolerance: float = 1e-10
    seed: int = 42
    workers: int = 1

    @classmethod
    def from_env(cls) -> "OracleSettings":
        return cls(
            restarts=_env_int("ORACLE_RESTARTS", 32),
            max_iters=_env_int("ORACLE_MAX_ITERS", 500),
            tolerance=_env_float("ORACLE_TOLERANCE", 1e-10),
            seed=_env_int("ORACLE_SEED", 42),
            workers=_env_int("ORACLE_WORKERS", 1),
        )


@dataclass
class MCPConfig:
    host: str = "0.0.0.0"
    port: int = 8001
    log_level: str = "INFO"
    server_name: str = "schmidt-benchmark-mcp"
    transport: Literal["stdio", "sse", "streamable-http"] = "stdio"

    @classmethod
    def from_env(cls) -> "MCPConfig":
        return cls(
            host=os.getenv("HOST", "0.0.0.0"),
            port=_env_int("PORT", 8001),
            log_level=os.getenv("LOG_LEVEL", "INFO"),
            server_name=os.getenv("MCP_SERVER_NAME", "schmidt-benchmark-mcp"),
            transport=cast(Literal["stdio", "sse", "streamable-http"], os.getenv("TRANSPORT", "stdio"))
        )


LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

# 설정 인스턴스 생성
numerics_config = NumericsConfig.from_env()
oracle_settings = OracleSettings.from_env()
mcp_config = MCPConfig.from_env()
