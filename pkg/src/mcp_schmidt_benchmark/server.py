"""
FastMCP 서버 메인 엔트리포인트
"""

import asyncio
import importlib
import logging
import sys
from collections.abc import AsyncIterator
from contextlib import asynccontextmanager
from dataclasses import dataclass, field
from typing import Literal

from fastmcp import FastMCP

from mcp_schmidt_benchmark.config import LOG_FORMAT, NumericsConfig, mcp_config, numerics_config
from mcp_schmidt_benchmark.quantum.oracle import OptimizerConfig
from mcp_schmidt_benchmark.registry.initialize_registry import initialize_registry

# 로깅 설정
level = getattr(logging, mcp_config.log_level.upper(), logging.INFO)
logger = logging.getLogger("mcp-schmidt-benchmark")
logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)


@dataclass
class BenchmarkContext:
    numerics: NumericsConfig = field(default_factory=lambda: numerics_config)
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)

    async def __aenter__(self):
        logger.info("🔁 BenchmarkContext entered")
        return self

    async def __aexit__(self, *args):
        logger.info("🔁 BenchmarkContext exited")


ctx = BenchmarkContext()


@asynccontextmanager
async def benchmark_lifespan(app: FastMCP) -> AsyncIterator[BenchmarkContext]:
    logger.info("Initializing Schmidt benchmark FastMCP server...")
    try:
        logger.info(f"Server Name: {mcp_config.server_name}")
        logger.info(f"Transport: {mcp_config.transport}")
        logger.info(f"Log Level: {mcp_config.log_level}")
        lifespan_ctx = BenchmarkContext()
        logger.info(f"Oracle defaults: restarts={lifespan_ctx.optimizer.restarts}, seed={lifespan_ctx.optimizer.seed}")
        await asyncio.sleep(0)
        yield lifespan_ctx
    except Exception as e:
        logger.error(f"Failed to initialize benchmark context: {e}", exc_info=True)
        raise
    finally:
        logger.info("Shutting down Schmidt benchmark FastMCP server...")


tool_registry = initialize_registry()
mcp = FastMCP(
    "Schmidt Benchmark MCP",
    instructions="Qudit channel fidelity benchmarks and Schmidt-number certification.\n"
                 + tool_registry.export_brief_summary(),
    lifespan=benchmark_lifespan,
)

for module_name in ["benchmark_tools"]:
    importlib.import_module(f"mcp_schmidt_benchmark.tools.{module_name}")


def main():
    logger.info("✅ Initializing Schmidt benchmark FastMCP server...")
    if mcp_config.transport in ("sse", "streamable-http"):
        asyncio.run(run_server(transport=mcp_config.transport, port=mcp_config.port))
    else:
        mcp.run()


async def run_server(
    transport: Literal["stdio", "sse", "streamable-http"] = "stdio",
    port: int = 8001,
) -> None:
    if transport == "stdio":
        await mcp.run_stdio_async()
    else:
        logger.info(f"Starting server with {transport} transport on http://{mcp_config.host}:{port}")
        await mcp.run_sse_async(host=mcp_config.host, port=port)


if __name__ == "__main__":
    main()
