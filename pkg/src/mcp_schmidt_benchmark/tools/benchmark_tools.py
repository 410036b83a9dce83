"""
Schmidt 수 벤치마크 MCP 도구
"""

import dataclasses
import logging
from typing import Annotated, List, Optional

from fastmcp import Context
from mcp.types import TextContent
from pydantic import Field

from mcp_schmidt_benchmark.commands import (
    CommandRequest,
    CommandResult,
    Subcommand,
    dispatch,
    run_certify_payload,
)
from mcp_schmidt_benchmark.server import BenchmarkContext, mcp, tool_registry
from mcp_schmidt_benchmark.utils.ctx_helper import with_context
from mcp_schmidt_benchmark.utils.serialization import dumps

logger = logging.getLogger(__name__)


def _text(result: CommandResult) -> TextContent:
    payload = dict(result.payload)
    payload["exit_code"] = result.exit_code
    return TextContent(type="text", text=dumps(payload))


def _error(tool: str, e: Exception) -> TextContent:
    logger.warning(f"⚠️ {tool} 실패: {e}")
    return TextContent(type="text", text=dumps({"error": str(e)}))


@mcp.tool(
    name="schmidt_thresholds",
    description=tool_registry.description_for("schmidt_thresholds"),
    tags={"schmidt", "threshold"}
)
def schmidt_thresholds(
    d: Annotated[int, Field(description="차원 d >= 2", ge=2)],
    mode: Annotated[str, Field(description="qudit 또는 qubits")] = "qudit"
) -> TextContent:
    try:
        return _text(dispatch(CommandRequest(Subcommand.THRESHOLDS, {"d": d, "mode": mode})))
    except Exception as e:
        return _error("schmidt_thresholds", e)


@mcp.tool(
    name="evaluate_channel",
    description=tool_registry.description_for("evaluate_channel"),
    tags={"schmidt", "channel", "fidelity"}
)
def evaluate_channel(
    channel: Annotated[str, Field(description="채널 JSON 경로 또는 내장 채널 이름 (예: depol:0.1)")],
    target: Annotated[str, Field(description="identity, cnot 또는 유니터리 JSON 경로")] = "identity",
    mode: Annotated[str, Field(description="qudit 또는 qubits")] = "qudit",
    d: Annotated[Optional[int], Field(description="내장 채널의 차원")] = None
) -> TextContent:
    options = {"channel": channel, "target": target, "mode": mode, "d": d}
    try:
        return _text(dispatch(CommandRequest(Subcommand.EVAL, options)))
    except Exception as e:
        return _error("evaluate_channel", e)


@mcp.tool(
    name="certify_fidelity",
    description=tool_registry.description_for("certify_fidelity"),
    tags={"schmidt", "certificate"}
)
def certify_fidelity(
    d: Annotated[int, Field(description="차원 d >= 2")],
    f_avg: Annotated[Optional[float], Field(description="측정된 평균 충실도")] = None,
    z_fidelities: Annotated[Optional[List[float]], Field(description="Z 기저 입력별 충실도")] = None,
    x_fidelities: Annotated[Optional[List[float]], Field(description="X 기저 입력별 충실도")] = None
) -> TextContent:
    payload = {"d": d, "f_avg": f_avg, "z_fidelities": z_fidelities, "x_fidelities": x_fidelities}
    try:
        return _text(run_certify_payload({k: v for k, v in payload.items() if v is not None}))
    except Exception as e:
        return _error("certify_fidelity", e)


@mcp.tool(
    name="verify_bounds",
    description=tool_registry.description_for("verify_bounds"),
    tags={"schmidt", "oracle", "verification"}
)
def verify_bounds(
    d_max: Annotated[int, Field(description="최대 차원", ge=2, le=16)] = 6,
    seed: Annotated[Optional[int], Field(description="난수 시드", ge=0)] = None,
    restarts: Annotated[Optional[int], Field(description="재시작 횟수", ge=1)] = None,
    ctx: Context = None,  # type: ignore[assignment]
) -> TextContent:
    overrides = {k: v for k, v in (("seed", seed), ("restarts", restarts)) if v is not None}

    def call(context: BenchmarkContext) -> CommandResult:
        cfg = dataclasses.replace(context.optimizer, **overrides)
        return dispatch(CommandRequest(Subcommand.VERIFY_BOUNDS, {"d_max": d_max, "cfg": cfg}))

    try:
        return _text(with_context(ctx, "verify_bounds", call))
    except Exception as e:
        return _error("verify_bounds", e)


@mcp.tool(
    name="reproduce_paper_table",
    description=tool_registry.description_for("reproduce_paper_table"),
    tags={"schmidt", "experiment"}
)
def reproduce_paper_table() -> TextContent:
    try:
        return _text(dispatch(CommandRequest(Subcommand.REPRODUCE_PAPER)))
    except Exception as e:
        return _error("reproduce_paper_table", e)
