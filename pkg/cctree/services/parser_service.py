# File path: cctree/services/parser_service.py
import logging
from dataclasses import replace
from typing import List, Optional

from cctree.core.exceptions import MethodNotFoundError, ParseError
from cctree.models.ast import Ast, AstNode
from cctree.models.method import MethodUnit, ParseDiagnostic
from cctree.parsing.java_parser import parse_java
from cctree.parsing.lexer import Lexer

logger = logging.getLogger(__name__)

# Class name used when a bare method declaration is wrapped for parsing
WRAPPER_CLASS = "Record"
_CLASS_MODIFIERS = frozenset({"public", "private", "protected", "abstract", "final", "static"})


def declares_class(source: str) -> bool:
    """True when the first declaration in the source, past comments and modifiers, is a class."""
    try:
        tokens = Lexer(source).tokenize()
    except ParseError:
        return False
    for token in tokens:
        if token.type == "KEYWORD" and token.text in _CLASS_MODIFIERS:
            continue
        return token.type == "KEYWORD" and token.text == "class"
    return False


def _first_child(node: AstNode, kind: str) -> Optional[AstNode]:
    return next((child for child in node.children if child.kind == kind), None)


def parameter_count(method: AstNode) -> int:
    params = _first_child(method, "formal_parameters")
    if params is None or params.is_terminal:
        return 0
    return sum(1 for child in params.children if child.kind == "formal_parameter")


class ParserService:
    @staticmethod
    def parse_compilation_unit(source: str) -> Ast:
        """Parse Java source of the supported subset into an Ast."""
        return parse_java(source)

    @staticmethod
    def extract_methods(ast: Ast) -> List[MethodUnit]:
        """One MethodUnit per method_declaration, in document order."""
        text = ast.source_text or ""
        root = ast.root
        classes = [root] if root.kind == "class_declaration" else [
            child for child in root.children if child.kind == "class_declaration"
        ]
        methods = []
        for class_node in classes:
            name_node = _first_child(class_node, "identifier")
            class_name = name_node.token if name_node is not None else ""
            body = _first_child(class_node, "class_body")
            if body is None or body.is_terminal:
                continue
            for member in body.children:
                if member.kind != "method_declaration":
                    continue
                method_name = _first_child(member, "identifier").token
                qualified_name = f"{class_name}.{method_name}({parameter_count(member)})"
                span = member.span
                source_text = text[span[0]:span[1]] if span is not None and text else ""
                methods.append(MethodUnit(
                    qualified_name=qualified_name,
                    ast=Ast(root=replace(member, child_rank=0), source_span=span, source_text=source_text),
                    source_text=source_text,
                ))
        logger.debug("Extracted %d method(s)", len(methods))
        return methods

    @staticmethod
    def find_method(ast: Ast, name: str) -> MethodUnit:
        """Select a method by qualified name, `Class.method`, or simple name."""
        methods = ParserService.extract_methods(ast)
        for method in methods:
            if name in (method.qualified_name, method.name, method.qualified_name.split("(")[0]):
                return method
        raise MethodNotFoundError(f"method '{name}' not found")

    @staticmethod
    def parse_method(source: str) -> MethodUnit:
        """Parse one function state: a class with one method, or a bare method declaration."""
        wrapped = not declares_class(source)
        text = f"class {WRAPPER_CLASS} {{\n{source}\n}}" if wrapped else source
        try:
            ast = ParserService.parse_compilation_unit(text)
        except ParseError as e:
            if not wrapped:
                raise
            d = e.diagnostic
            # Report positions against the unwrapped source
            raise ParseError(ParseDiagnostic(max(d.line - 1, 1), d.column, d.message))
        methods = ParserService.extract_methods(ast)
        if len(methods) != 1:
            raise ParseError(ParseDiagnostic(1, 1, f"expected exactly one method, found {len(methods)}"))
        return methods[0]
