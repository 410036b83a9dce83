"""
컨텍스트 헬퍼
"""

import logging
from typing import Any, Callable, Optional

logger = logging.getLogger(__name__)


def with_context(
    context: Optional[Any],
    tool_name: str,
    func: Callable[[Any], Any]
) -> Any:
    """
    MCP 요청의 lifespan 컨텍스트로 func 를 실행하고, 접근할 수 없으면 서버 전역 컨텍스트를 사용.
    Args:
        context: MCP Context 또는 None
        tool_name: 도구명 (로깅용)
        func: BenchmarkContext 를 받는 로직
    """
    from mcp_schmidt_benchmark.server import ctx

    logger.info(f"📌 Tool: {tool_name} 호출됨")
    if context is not None:
        try:
            lifespan_ctx = context.request_context.lifespan_context
        except Exception as e:
            logger.warning(f"⚠️ MCPContext 접근 실패: {e}")
        else:
            return func(lifespan_ctx)
    logger.debug("Fallback 전역 컨텍스트 사용")
    return func(ctx)
