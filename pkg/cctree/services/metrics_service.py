# File path: cctree/services/metrics_service.py
import logging
from typing import List, Optional, Set, Tuple

from cctree.models.ast import AstNode
from cctree.models.method import MethodUnit
from cctree.models.record import MetricSet
from cctree.services.parser_service import parameter_count

logger = logging.getLogger(__name__)

STATEMENT_KINDS = frozenset({
    "local_variable_declaration", "expression_statement", "if_statement", "while_statement",
    "for_statement", "enhanced_for_statement", "return_statement", "break_statement",
    "continue_statement", "throw_statement", "empty_statement",
})
LOOP_KINDS = frozenset({"while_statement", "for_statement", "enhanced_for_statement"})
CONDITIONAL_KINDS = frozenset({"if_statement", "ternary_expression"})
NESTING_KINDS = LOOP_KINDS | {"if_statement"}
SHORT_CIRCUIT_OPERATORS = frozenset({"&&", "||"})


def _is_short_circuit(node: AstNode) -> bool:
    return (
        node.kind == "binary_expression"
        and len(node.children) == 3
        and node.children[1].token in SHORT_CIRCUIT_OPERATORS
    )


def _invoked_name(node: AstNode) -> Optional[str]:
    # method_invocation is [receiver?, identifier, argument_list]
    identifiers = [child for child in node.children if child.kind == "identifier"]
    return identifiers[-1].token if identifiers else None


class MetricsService:
    @staticmethod
    def compute_metrics(method: MethodUnit) -> MetricSet:
        """Size, complexity and coupling metrics of one method."""
        root = method.ast.root
        origin = method.ast.source_span[0] if method.ast.source_span is not None else 0
        text = method.source_text

        def line_of(offset: int) -> int:
            return text.count("\n", 0, max(offset - origin, 0)) + 1

        statements = 0
        statement_lines: Set[int] = set()
        branches = 0
        conditionals = 0
        loops = 0
        invoked: Set[str] = set()
        max_nesting = 0
        max_nesting_else_if = 0

        # (node, parent, nesting level, nesting level with else-if chains flattened)
        stack: List[Tuple[AstNode, Optional[AstNode], int, int]] = [(root, None, 0, 0)]
        while stack:
            node, parent, level, level_else_if = stack.pop()
            kind = node.kind

            # The init declaration of a for header is not a statement of its own
            is_statement = kind in STATEMENT_KINDS and not (
                kind == "local_variable_declaration" and parent is not None and parent.kind == "for_statement"
            )
            if is_statement:
                statements += 1
                if node.span is not None and text:
                    statement_lines.add(line_of(node.span[0]))

            if kind in NESTING_KINDS:
                level += 1
                is_else_if = (
                    kind == "if_statement" and parent is not None and parent.kind == "if_statement"
                    and len(parent.children) == 3 and parent.children[2] is node
                )
                if not is_else_if:
                    level_else_if += 1
                max_nesting = max(max_nesting, level)
                max_nesting_else_if = max(max_nesting_else_if, level_else_if)
            if kind in LOOP_KINDS:
                loops += 1
                branches += 1
            if kind in CONDITIONAL_KINDS:
                conditionals += 1
                branches += 1
            if _is_short_circuit(node):
                branches += 1
            if kind == "method_invocation":
                name = _invoked_name(node)
                if name is not None:
                    invoked.add(name)

            for child in reversed(node.children):
                stack.append((child, node, level, level_else_if))

        if text and method.ast.source_span is not None:
            lines_of_code = line_of(method.ast.source_span[1]) - line_of(method.ast.source_span[0]) + 1
        else:
            lines_of_code = len(text.splitlines())

        metrics = MetricSet(
            LLOC=len(statement_lines),
            LOC=lines_of_code,
            McCC=1 + branches,
            NL=max_nesting,
            NLE=max_nesting_else_if,
            NOC=conditionals,
            NOI=len(invoked),
            NOL=loops,
            NOS=statements,
            NUMPAR=parameter_count(root),
        )
        logger.debug("Metrics of %s: %s", method.qualified_name, metrics)
        return metrics
