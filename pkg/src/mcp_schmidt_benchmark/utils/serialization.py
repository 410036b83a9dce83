"""
JSON 입출력 및 파일 스키마
"""

import json
import logging
from pathlib import Path
from typing import Annotated, Any, List, Literal, Optional, Tuple, Type, TypeVar, Union

import numpy as np
from pydantic import BaseModel, Field, ValidationError, model_validator

from mcp_schmidt_benchmark.quantum.errors import SchemaError

logger = logging.getLogger(__name__)

Fraction01 = Annotated[float, Field(ge=0.0, le=1.0)]
ComplexPair = Tuple[float, float]
MatrixJSON = List[List[ComplexPair]]

M = TypeVar("M", bound=BaseModel)


def default_serializer(o):
    """JSON 직렬화를 위한 기본 serializer. numpy 타입을 python 타입으로 변환합니다."""
    if isinstance(o, (np.integer, np.floating)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, complex):
        return [o.real, o.imag]
    raise TypeError(f"Object of type {o.__class__.__name__} is not JSON serializable")


def dumps(payload: Any, indent: Optional[int] = 2) -> str:
    return json.dumps(payload, default=default_serializer, indent=indent, ensure_ascii=False)


def matrix_to_json(m: np.ndarray) -> MatrixJSON:
    return [[(float(z.real), float(z.imag)) for z in row] for row in np.asarray(m, dtype=np.complex128)]


def matrix_from_json(rows: MatrixJSON) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)


class ChannelFile(BaseModel):
    """`{"d": int, "kraus": [ [[ [re, im], ... ] per row ] per operator ]}`; ``d_out`` optional."""
    d: int = Field(ge=1)
    d_out: Optional[int] = Field(default=None, ge=1)
    kraus: List[MatrixJSON] = Field(min_length=1)

    @model_validator(mode="after")
    def _shapes(self) -> "ChannelFile":
        rows = self.d_out or self.d
        for i, op in enumerate(self.kraus):
            if len(op) != rows or any(len(r) != self.d for r in op):
                raise ValueError(f"kraus[{i}] must be {rows}x{self.d}")
        return self


class UnitaryFile(BaseModel):
    d: int = Field(ge=1)
    matrix: MatrixJSON

    @model_validator(mode="after")
    def _shape(self) -> "UnitaryFile":
        if len(self.matrix) != self.d or any(len(r) != self.d for r in self.matrix):
            raise ValueError(f"matrix must be {self.d}x{self.d}")
        return self


class MeasuredData(BaseModel):
    """Either per-basis fidelity lists or a single averaged fidelity."""
    d: int = Field(ge=2)
    mode: Literal["qudit", "qubits"] = "qudit"
    z_fidelities: Optional[List[Fraction01]] = None
    x_fidelities: Optional[List[Fraction01]] = None
    f_avg: Optional[Fraction01] = None

    @model_validator(mode="after")
    def _one_form(self) -> "MeasuredData":
        lists = self.z_fidelities is not None or self.x_fidelities is not None
        if lists and self.f_avg is not None:
            raise ValueError("give either z_fidelities/x_fidelities or f_avg, not both")
        if not lists and self.f_avg is None:
            raise ValueError("missing fidelities: need z_fidelities and x_fidelities, or f_avg")
        if lists:
            for name in ("z_fidelities", "x_fidelities"):
                values = getattr(self, name)
                if values is None:
                    raise ValueError(f"{name} is required when per-state fidelities are given")
                if len(values) != self.d:
                    raise ValueError(f"{name} has {len(values)} entries, expected d={self.d}")
        if self.mode == "qubits" and self.d & (self.d - 1):
            raise ValueError(f"qubits mode needs d = 2^n, got d={self.d}")
        return self


def _format_errors(exc: ValidationError) -> List[str]:
    problems = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err.get("loc", ())) or "<root>"
        problems.append(f"{loc}: {err.get('msg')}")
    return problems


def parse_model(model: Type[M], payload: Union[str, bytes, dict], source: str = "<input>") -> M:
    """Validate ``payload`` (JSON text or dict) against ``model``; failures become SchemaError."""
    if isinstance(payload, (str, bytes)):
        try:
            payload = json.loads(payload)
        except json.JSONDecodeError as e:
            raise SchemaError(f"{source}: invalid JSON", [f"line {e.lineno}, column {e.colno}: {e.msg}"])
    try:
        return model.model_validate(payload)
    except ValidationError as e:
        raise SchemaError(f"{source}: does not match the {model.__name__} schema", _format_errors(e))


def load_model(model: Type[M], path: Union[str, Path]) -> M:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"{p}: cannot read file ({e})")
    logger.debug(f"Loading {model.__name__} from {p}")
    return parse_model(model, text, source=str(p))
