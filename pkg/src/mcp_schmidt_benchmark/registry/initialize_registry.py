"""
레지스트리 초기화
"""

from mcp_schmidt_benchmark.registry.tool_registry import ToolRegistry


def initialize_registry() -> ToolRegistry:
    registry = ToolRegistry()

    registry.register_tool(
        name="schmidt_thresholds",
        korean_name="Schmidt 수 임계 충실도 표",
        description="""
Fidelity thresholds F^(k) = (1 + k/d)/2 for k = 1..d-1. A channel whose two-basis average
fidelity strictly exceeds F^(k) has Schmidt number at least k+1. Also lists the
informational uniform-average limit (1+k)/(1+d) and process-fidelity limit k/d.
""",
        parameters={
            "type": "object",
            "properties": {
                "d": {"type": "integer", "description": "차원 d >= 2 (qubits 모드에서는 2^n)"},
                "mode": {"type": "string", "description": "qudit 또는 qubits"}
            },
            "required": ["d"]
        },
        cli_command="thresholds",
        linked_tools=["certify_fidelity"]
    )

    registry.register_tool(
        name="evaluate_channel",
        korean_name="채널 충실도 평가 및 인증",
        description="""
Simulates a channel on the 2d Z- and X-basis inputs, returns F_Z, F_X and F_E by direct
evolution and via the Choi matrix, the process fidelity, the Kraus-rank upper bound on
the Schmidt number and the certificate.

Channel: path to a Kraus JSON file or a built-in name (identity, ebz, satur:k, depol:p,
dephase:p, cnot, cnot-depol:p). Target: identity, cnot or a unitary JSON file.
""",
        parameters={
            "type": "object",
            "properties": {
                "channel": {"type": "string", "description": "채널 JSON 경로 또는 내장 채널 이름"},
                "target": {"type": "string", "description": "identity, cnot 또는 유니터리 JSON 경로"},
                "mode": {"type": "string", "description": "qudit 또는 qubits"},
                "d": {"type": "integer", "description": "내장 채널의 차원"}
            },
            "required": ["channel"]
        },
        cli_command="eval",
        linked_tools=["schmidt_thresholds"]
    )

    registry.register_tool(
        name="certify_fidelity",
        korean_name="측정 충실도로 Schmidt 수 인증",
        description="""
Certified Schmidt-number lower bound from measured data: either an average fidelity
f_avg, or d Z-basis and d X-basis per-state fidelities. Thresholds must be strictly
exceeded.
""",
        parameters={
            "type": "object",
            "properties": {
                "d": {"type": "integer", "description": "차원 d >= 2"},
                "f_avg": {"type": "number", "description": "측정된 평균 충실도 F_E"},
                "z_fidelities": {"type": "array", "description": "Z 기저 입력별 충실도 (길이 d)"},
                "x_fidelities": {"type": "array", "description": "X 기저 입력별 충실도 (길이 d)"}
            },
            "required": ["d"]
        },
        cli_command="certify",
        linked_tools=["schmidt_thresholds", "reproduce_paper_table"]
    )

    registry.register_tool(
        name="verify_bounds",
        korean_name="해석적 상한 수치 검증",
        description="""
Runs the numerical oracles (rank-k entangled fraction, correlation operator, classical
measure-and-prepare schemes) and the operator identities for 2 <= d <= d_max. Reports
achieved against analytic values; any ceiling violation fails the run.
""",
        parameters={
            "type": "object",
            "properties": {
                "d_max": {"type": "integer", "description": "검증할 최대 차원 (2..16)"},
                "seed": {"type": "integer", "description": "난수 시드"},
                "restarts": {"type": "integer", "description": "재시작 횟수"}
            },
            "required": []
        },
        cli_command="verify-bounds"
    )

    registry.register_tool(
        name="reproduce_paper_table",
        korean_name="실험 결과 인증 재현",
        description="""
Certifies the three reported experiments: a one-qubit memory at F_E = 0.90 and two
two-qubit CNOT gates at F_E = 0.86 and 0.89, with their conclusions and the number of
measurement settings against full process tomography.
""",
        parameters={"type": "object", "properties": {}, "required": []},
        cli_command="reproduce-paper",
        linked_tools=["certify_fidelity"]
    )

    return registry
