"""
도구 메타데이터 관리

Tool descriptions are rendered once from the metadata below and handed to
``@mcp.tool(description=...)``; the server instructions use the brief summary.
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

logger = logging.getLogger(__name__)

CLI_NAME = "schmidt-bench"


@dataclass(frozen=True)
class ToolMetadata:
    name: str
    description: str
    parameters: Dict[str, Any]
    korean_name: Optional[str] = None
    cli_command: Optional[str] = None
    linked_tools: List[str] = field(default_factory=list)

    @property
    def summary_line(self) -> str:
        return self.description.strip().splitlines()[0] if self.description.strip() else ""

    def _parameter_lines(self) -> List[str]:
        required = set(self.parameters.get("required", []))
        return [
            f"- `{key}`: {schema.get('description', '')}{' (필수)' if key in required else ''}"
            for key, schema in self.parameters.get("properties", {}).items()
        ]

    def rich_description(self) -> str:
        sections: List[str] = []
        if self.korean_name:
            sections.append(f"[도구 이름] {self.korean_name}")
        sections.append(f"[설명] {self.description.strip()}")
        params = self._parameter_lines()
        if params:
            sections += ["[입력 파라미터]", *params]
        if self.cli_command:
            sections.append(f"[CLI] {CLI_NAME} {self.cli_command}")
        if self.linked_tools:
            sections.append("[연관 도구] " + ", ".join(self.linked_tools))
        return "\n".join(sections)

    def to_mcp_tool(self) -> Dict[str, Any]:
        return {"name": self.name, "description": self.rich_description(), "inputSchema": self.parameters}

    def brief_summary(self) -> str:
        label = f"{self.name} ({self.korean_name})" if self.korean_name else self.name
        return f"- {label}: {self.summary_line}"


class ToolRegistry:
    """Ordered name -> ToolMetadata map; names are unique."""

    def __init__(self):
        self.tools: Dict[str, ToolMetadata] = {}

    def register_tool(self, name: str, description: str, parameters: dict, **extra) -> ToolMetadata:
        if name in self.tools:
            raise ValueError(f"tool '{name}' is already registered")
        meta = ToolMetadata(name=name, description=description, parameters=parameters,
                            linked_tools=list(extra.pop("linked_tools", None) or []), **extra)
        self.tools[name] = meta
        logger.debug(f"registered tool {name}")
        return meta

    def list_tools(self) -> List[dict]:
        return [meta.to_mcp_tool() for meta in self.tools.values()]

    def export_brief_summary(self) -> str:
        return "\n".join(meta.brief_summary() for meta in self.tools.values())

    def get_tool(self, name: str) -> Optional[ToolMetadata]:
        return self.tools.get(name)

    def description_for(self, name: str) -> str:
        meta = self.get_tool(name)
        if meta is None:
            logger.warning(f"⚠️ 등록되지 않은 도구: {name}")
            return ""
        return meta.rich_description()
