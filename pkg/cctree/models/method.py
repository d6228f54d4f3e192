# File path: cctree/models/method.py
from dataclasses import dataclass

from cctree.models.ast import Ast


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    column: int
    message: str

    def __post_init__(self):
        if self.line < 1 or self.column < 1:
            raise ValueError("diagnostic positions are 1-based")


@dataclass(frozen=True)
class MethodUnit:
    qualified_name: str
    ast: Ast
    source_text: str

    @property
    def name(self) -> str:
        """Simple method name without class or arity."""
        return self.qualified_name.split(".")[-1].split("(")[0]
