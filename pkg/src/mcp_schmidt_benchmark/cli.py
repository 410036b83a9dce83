"""
명령줄 진입점 (schmidt-bench)
"""

import logging
import sys
from typing import Optional

import click

from mcp_schmidt_benchmark.commands import (
    EXIT_INPUT_ERROR,
    CommandRequest,
    CommandResult,
    Subcommand,
    dispatch,
)
from mcp_schmidt_benchmark.config import LOG_FORMAT
from mcp_schmidt_benchmark.quantum.errors import BenchmarkError
from mcp_schmidt_benchmark.quantum.oracle import OptimizerConfig
from mcp_schmidt_benchmark.utils.serialization import dumps

logger = logging.getLogger(__name__)

MODES = click.Choice(["qudit", "qubits"])
LOG_LEVELS = click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False)


def _run(request: CommandRequest, as_json: bool) -> None:
    ctx = click.get_current_context()
    try:
        result: CommandResult = dispatch(request)
    except (BenchmarkError, OSError) as e:
        click.echo(f"error: {e}", err=True)
        ctx.exit(EXIT_INPUT_ERROR)
    click.echo(dumps(result.payload) if as_json else result.text)
    ctx.exit(result.exit_code)


@click.group()
@click.option("--log-level", type=LOG_LEVELS, default="WARNING", show_default=True,
              help="Log level for messages on stderr.")
def main(log_level: str):
    """Schmidt-number benchmark: thresholds, channel evaluation and certification."""
    level = getattr(logging, log_level.upper(), logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)


@main.command()
@click.option("--d", "d", type=int, required=True, help="Dimension (2^n in qubits mode).")
@click.option("--mode", type=MODES, default="qudit", show_default=True)
@click.option("--json", "as_json", is_flag=True, help="Print JSON instead of the table.")
def thresholds(d: int, mode: str, as_json: bool):
    """F^(k) ladder with the uniform and process limits for k = 1..d-1."""
    _run(CommandRequest(Subcommand.THRESHOLDS, {"d": d, "mode": mode}), as_json)


@main.command(name="eval")
@click.option("--channel", required=True,
              help="Channel JSON file, or a built-in name: identity, ebz, satur:k, depol:p, dephase:p, "
                   "cnot, cnot-depol:p.")
@click.option("--target", default="identity", show_default=True, help="identity, cnot or a unitary JSON file.")
@click.option("--mode", type=MODES, default="qudit", show_default=True)
@click.option("--d", "d", type=int, default=None, help="Dimension for built-in channels.")
@click.option("--json", "as_json", is_flag=True)
def eval_channel(channel: str, target: str, mode: str, d: Optional[int], as_json: bool):
    """Fidelities by both paths and the certified Schmidt number of a channel.

    Exit code 0 when the channel certifies Schmidt number >= 2, else 3.
    """
    _run(CommandRequest(Subcommand.EVAL, {"channel": channel, "target": target, "mode": mode, "d": d}), as_json)


@main.command()
@click.option("--data", "data_file", type=click.Path(exists=True, dir_okay=False), required=True,
              help='Measured-data JSON: {"d", "f_avg"} or per-state "z_fidelities"/"x_fidelities".')
@click.option("--json", "as_json", is_flag=True)
def certify(data_file: str, as_json: bool):
    """Certificate from measured fidelities (exit 0 if Schmidt number >= 2, else 3)."""
    _run(CommandRequest(Subcommand.CERTIFY, {"data_file": data_file}), as_json)


@main.command(name="verify-bounds")
@click.option("--d-max", type=click.IntRange(2, 16), default=6, show_default=True)
@click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=None, help="Oracle seed (unsigned 64-bit).")
@click.option("--restarts", type=click.IntRange(min=1), default=None, help="Random restarts per oracle call.")
@click.option("--json", "as_json", is_flag=True)
def verify_bounds(d_max: int, seed: Optional[int], restarts: Optional[int], as_json: bool):
    """Check the analytic ceilings with the numerical oracles (exit 4 on a violation)."""
    overrides = {k: v for k, v in (("seed", seed), ("restarts", restarts)) if v is not None}
    try:
        cfg = OptimizerConfig(**overrides)
    except BenchmarkError as e:
        raise click.BadParameter(str(e))
    _run(CommandRequest(Subcommand.VERIFY_BOUNDS, {"d_max": d_max, "cfg": cfg}), as_json)


@main.command(name="reproduce-paper")
@click.option("--json", "as_json", is_flag=True)
def reproduce_paper(as_json: bool):
    """Certify the three reported experiments (one-qubit memory, two CNOT runs)."""
    _run(CommandRequest(Subcommand.REPRODUCE_PAPER), as_json)


@main.command()
def serve():
    """Run the MCP server (transport from the TRANSPORT environment variable)."""
    from mcp_schmidt_benchmark.server import main as server_main

    server_main()


if __name__ == "__main__":
    main()
