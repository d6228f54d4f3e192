# File path: cctree/parsing/java_parser.py
"""Recursive-descent parser for the Java subset used by the pipeline.

Node kinds follow the naming of the tree-sitter Java grammar so that trees
imported from a full parser stay comparable. Braces, parentheses, semicolons
and dots are not emitted; only value-bearing tokens become terminals.
Containers that end up empty (an empty block, parameter list or argument
list) become terminals whose token is their canonical text.
"""
import logging
from typing import List, Optional

from cctree.core.exceptions import ParseError
from cctree.models.ast import Ast, AstNode
from cctree.models.method import ParseDiagnostic
from cctree.parsing.lexer import Lexer, Token

logger = logging.getLogger(__name__)

MODIFIERS = frozenset({
    "public", "private", "protected", "static", "final", "abstract",
    "synchronized", "native", "transient", "volatile",
})
INTEGRAL_TYPES = frozenset({"int", "long", "short", "byte", "char"})
FLOATING_TYPES = frozenset({"float", "double"})
PRIMITIVE_TYPES = INTEGRAL_TYPES | FLOATING_TYPES | {"boolean"}
ASSIGNMENT_OPERATORS = frozenset({
    "=", "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<=", ">>=", ">>>=",
})
BINARY_PRECEDENCE = {
    "||": 1,
    "&&": 2,
    "|": 3,
    "^": 4,
    "&": 5,
    "==": 6, "!=": 6,
    "<": 7, ">": 7, "<=": 7, ">=": 7, "instanceof": 7,
    "+": 9, "-": 9,
    "*": 10, "/": 10, "%": 10,
}
UNARY_OPERATORS = frozenset({"!", "-", "+", "~"})
UPDATE_OPERATORS = frozenset({"++", "--"})


class JavaParser:
    def __init__(self, source: str):
        self.source = source
        self.lexer = Lexer(source)
        self.tokens: List[Token] = self.lexer.tokenize()
        self.pos = 0
        self._last_end = 0

    # Token helpers

    @property
    def token(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, ahead: int = 1) -> Token:
        index = min(self.pos + ahead, len(self.tokens) - 1)
        return self.tokens[index]

    def at(self, *texts: str) -> bool:
        tok = self.token
        return tok.type in ("OP", "KEYWORD") and tok.text in texts

    def advance(self) -> Token:
        tok = self.token
        if tok.type != "EOF":
            self.pos += 1
            self._last_end = tok.end
        return tok

    def accept(self, text: str) -> Optional[Token]:
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text: str) -> Token:
        if not self.at(text):
            self.error(f"expected '{text}'")
        return self.advance()

    def expect_identifier(self) -> Token:
        if self.token.type != "IDENT":
            self.error("expected identifier")
        return self.advance()

    def error(self, message: str):
        tok = self.token
        found = "end of input" if tok.type == "EOF" else repr(tok.text)
        raise ParseError(ParseDiagnostic(tok.line, tok.column, f"{message}, got {found}"))

    # Node helpers

    def leaf(self, kind: str, tok: Token, text: Optional[str] = None) -> AstNode:
        return AstNode(kind=kind, token=tok.text if text is None else text, span=(tok.start, tok.end))

    def node(self, kind: str, children, start: int, empty_token: Optional[str] = None) -> AstNode:
        present = [child for child in children if child is not None]
        span = (start, self._last_end)
        if not present:
            if empty_token is None:
                raise ParseError(ParseDiagnostic(*self.lexer.position(start), f"empty {kind}"))
            return AstNode(kind=kind, token=empty_token, span=span)
        return AstNode.build(kind, present, span=span)

    # Declarations

    def parse_compilation_unit(self) -> Ast:
        classes = []
        while self.token.type != "EOF":
            classes.append(self.parse_class_declaration())
        if not classes:
            self.error("expected class declaration")
        root = classes[0] if len(classes) == 1 else self.node("program", classes, 0)
        logger.debug("Parsed compilation unit with %d class(es)", len(classes))
        return Ast(root=root, source_span=(0, len(self.source)), source_text=self.source)

    def parse_modifiers(self) -> Optional[AstNode]:
        start = self.token.start
        modifiers = []
        while self.token.type == "KEYWORD" and self.token.text in MODIFIERS:
            modifiers.append(self.leaf("modifier", self.advance()))
        if not modifiers:
            return None
        return self.node("modifiers", modifiers, start)

    def parse_class_declaration(self) -> AstNode:
        start = self.token.start
        modifiers = self.parse_modifiers()
        self.expect("class")
        name = self.leaf("identifier", self.expect_identifier())
        children = [modifiers, name]
        if self.accept("extends"):
            children.append(self.node("superclass", [self.parse_type()], start))
        if self.accept("implements"):
            list_start = self.token.start
            types = [self.parse_type()]
            while self.accept(","):
                types.append(self.parse_type())
            children.append(self.node("super_interfaces", [self.node("type_list", types, list_start)], list_start))
        children.append(self.parse_class_body())
        return self.node("class_declaration", children, start)

    def parse_class_body(self) -> AstNode:
        start = self.expect("{").start
        members = []
        while not self.at("}"):
            if self.token.type == "EOF":
                self.error("expected '}'")
            if self.accept(";"):
                continue
            members.append(self.parse_member())
        self.expect("}")
        return self.node("class_body", members, start, empty_token="{}")

    def parse_member(self) -> AstNode:
        start = self.token.start
        modifiers = self.parse_modifiers()
        if self.at("class"):
            self.error("nested classes are not supported")
        if self.token.type == "IDENT" and self.peek().text == "(":
            name = self.leaf("identifier", self.advance())
            params = self.parse_formal_parameters()
            body = self.parse_block(kind="constructor_body")
            return self.node("constructor_declaration", [modifiers, name, params, body], start)
        member_type = self.parse_type(allow_void=True)
        name_tok = self.expect_identifier()
        if self.at("("):
            params = self.parse_formal_parameters()
            body = None if self.accept(";") else self.parse_block()
            return self.node(
                "method_declaration",
                [modifiers, member_type, self.leaf("identifier", name_tok), params, body],
                start,
            )
        declarators = self.parse_variable_declarators(name_tok)
        self.expect(";")
        return self.node("field_declaration", [modifiers, member_type] + declarators, start)

    def parse_formal_parameters(self) -> AstNode:
        start = self.expect("(").start
        params = []
        if not self.at(")"):
            params.append(self.parse_formal_parameter())
            while self.accept(","):
                params.append(self.parse_formal_parameter())
        self.expect(")")
        return self.node("formal_parameters", params, start, empty_token="()")

    def parse_formal_parameter(self) -> AstNode:
        start = self.token.start
        modifiers = self.parse_modifiers()
        param_type = self.parse_type()
        name = self.leaf("identifier", self.expect_identifier())
        return self.node("formal_parameter", [modifiers, param_type, name], start)

    # Types

    def parse_type(self, allow_void: bool = False) -> AstNode:
        tok = self.token
        start = tok.start
        if tok.type == "KEYWORD" and tok.text == "void":
            if not allow_void:
                self.error("'void' is not allowed here")
            return self.leaf("void_type", self.advance())
        if tok.type == "KEYWORD" and tok.text in PRIMITIVE_TYPES:
            base = self.parse_primitive_type()
        elif tok.type == "IDENT":
            base = self.leaf("type_identifier", self.advance())
            while self.at(".") and self.peek().type == "IDENT":
                self.advance()
                part = self.leaf("type_identifier", self.advance())
                base = self.node("scoped_type_identifier", [base, part], start)
            if self.at("<"):
                base = self.node("generic_type", [base, self.parse_type_arguments()], start)
        else:
            self.error("expected type")
        dims = 0
        while self.at("[") and self.peek().text == "]":
            self.advance()
            self.advance()
            dims += 1
        if dims:
            dimensions = AstNode(kind="dimensions", token="[]" * dims)
            base = self.node("array_type", [base, dimensions], start)
        return base

    def parse_primitive_type(self) -> AstNode:
        tok = self.advance()
        if tok.text in INTEGRAL_TYPES:
            return self.leaf("integral_type", tok)
        if tok.text in FLOATING_TYPES:
            return self.leaf("floating_point_type", tok)
        return self.leaf("boolean_type", tok)

    def parse_type_arguments(self) -> AstNode:
        start = self.expect("<").start
        args = []
        if not self.at(">"):
            args.append(self.parse_type())
            while self.accept(","):
                args.append(self.parse_type())
        self.expect(">")
        return self.node("type_arguments", args, start, empty_token="<>")

    def looks_like_declaration(self) -> bool:
        """Speculatively parse `Type identifier` without consuming input."""
        if self.at("final"):
            return True
        tok = self.token
        if tok.type == "KEYWORD" and tok.text in PRIMITIVE_TYPES:
            return True
        if tok.type != "IDENT":
            return False
        saved = (self.pos, self._last_end)
        try:
            self.parse_type()
            return self.token.type == "IDENT"
        except ParseError:
            return False
        finally:
            self.pos, self._last_end = saved

    # Statements

    def parse_block(self, kind: str = "block") -> AstNode:
        start = self.expect("{").start
        statements = []
        while not self.at("}"):
            if self.token.type == "EOF":
                self.error("expected '}'")
            statement = self.parse_statement()
            if statement is not None:
                statements.append(statement)
        self.expect("}")
        return self.node(kind, statements, start, empty_token="{}")

    def parse_statement(self) -> Optional[AstNode]:
        tok = self.token
        start = tok.start
        if self.at("{"):
            return self.parse_block()
        if self.accept(";"):
            return None
        if self.accept("if"):
            condition = self.parse_parenthesized()
            consequence = self.parse_embedded_statement()
            alternative = self.parse_embedded_statement() if self.accept("else") else None
            return self.node("if_statement", [condition, consequence, alternative], start)
        if self.accept("while"):
            condition = self.parse_parenthesized()
            body = self.parse_embedded_statement()
            return self.node("while_statement", [condition, body], start)
        if self.accept("for"):
            return self.parse_for_statement(start)
        if self.at("return"):
            ret = self.advance()
            if self.accept(";"):
                return self.leaf("return_statement", ret)
            value = self.parse_expression()
            self.expect(";")
            return self.node("return_statement", [value], start)
        if self.at("break", "continue"):
            keyword = self.advance()
            self.expect(";")
            return self.leaf(f"{keyword.text}_statement", keyword)
        if self.accept("throw"):
            value = self.parse_expression()
            self.expect(";")
            return self.node("throw_statement", [value], start)
        if self.looks_like_declaration():
            declaration = self.parse_local_variable_declaration()
            self.expect(";")
            return declaration
        expression = self.parse_expression()
        self.expect(";")
        return self.node("expression_statement", [expression], start)

    def parse_embedded_statement(self) -> AstNode:
        start = self.token.start
        statement = self.parse_statement()
        if statement is None:
            return AstNode(kind="empty_statement", token=";", span=(start, self._last_end))
        return statement

    def parse_local_variable_declaration(self) -> AstNode:
        start = self.token.start
        modifiers = self.parse_modifiers()
        var_type = self.parse_type()
        declarators = self.parse_variable_declarators(self.expect_identifier())
        return self.node("local_variable_declaration", [modifiers, var_type] + declarators, start)

    def parse_variable_declarators(self, first_name: Token) -> List[AstNode]:
        declarators = [self.parse_variable_declarator(first_name)]
        while self.accept(","):
            declarators.append(self.parse_variable_declarator(self.expect_identifier()))
        return declarators

    def parse_variable_declarator(self, name_tok: Token) -> AstNode:
        name = self.leaf("identifier", name_tok)
        value = self.parse_variable_initializer() if self.accept("=") else None
        return self.node("variable_declarator", [name, value], name_tok.start)

    def parse_variable_initializer(self) -> AstNode:
        if not self.at("{"):
            return self.parse_expression()
        start = self.advance().start
        values = []
        while not self.at("}"):
            values.append(self.parse_variable_initializer())
            if not self.accept(","):
                break
        self.expect("}")
        return self.node("array_initializer", values, start, empty_token="{}")

    def parse_for_statement(self, start: int) -> AstNode:
        self.expect("(")
        parts = []
        if self.looks_like_declaration():
            decl_start = self.token.start
            modifiers = self.parse_modifiers()
            var_type = self.parse_type()
            name_tok = self.expect_identifier()
            if self.accept(":"):
                iterable = self.parse_expression()
                self.expect(")")
                body = self.parse_embedded_statement()
                return self.node(
                    "enhanced_for_statement",
                    [modifiers, var_type, self.leaf("identifier", name_tok), iterable, body],
                    start,
                )
            declarators = self.parse_variable_declarators(name_tok)
            parts.append(self.node("local_variable_declaration", [modifiers, var_type] + declarators, decl_start))
        elif not self.at(";"):
            parts.extend(self.parse_expression_list())
        self.expect(";")
        if not self.at(";"):
            parts.append(self.parse_expression())
        self.expect(";")
        if not self.at(")"):
            parts.extend(self.parse_expression_list())
        self.expect(")")
        parts.append(self.parse_embedded_statement())
        return self.node("for_statement", parts, start)

    def parse_expression_list(self) -> List[AstNode]:
        expressions = [self.parse_expression()]
        while self.accept(","):
            expressions.append(self.parse_expression())
        return expressions

    # Expressions

    def parse_parenthesized(self) -> AstNode:
        start = self.expect("(").start
        inner = self.parse_expression()
        self.expect(")")
        return self.node("parenthesized_expression", [inner], start)

    def parse_expression(self) -> AstNode:
        start = self.token.start
        left = self.parse_ternary()
        if self.token.type == "OP" and self.token.text in ASSIGNMENT_OPERATORS:
            operator = self.leaf("operator", self.advance())
            right = self.parse_expression()
            return self.node("assignment_expression", [left, operator, right], start)
        return left

    def parse_ternary(self) -> AstNode:
        start = self.token.start
        condition = self.parse_binary(1)
        if not self.accept("?"):
            return condition
        consequence = self.parse_expression()
        self.expect(":")
        alternative = self.parse_ternary()
        return self.node("ternary_expression", [condition, consequence, alternative], start)

    def parse_binary(self, min_precedence: int) -> AstNode:
        start = self.token.start
        left = self.parse_unary()
        while True:
            tok = self.token
            precedence = BINARY_PRECEDENCE.get(tok.text) if tok.type in ("OP", "KEYWORD") else None
            if precedence is None or precedence < min_precedence:
                return left
            self.advance()
            if tok.text == "instanceof":
                left = self.node("instanceof_expression", [left, self.parse_type()], start)
                continue
            right = self.parse_binary(precedence + 1)
            left = self.node("binary_expression", [left, self.leaf("operator", tok), right], start)

    def parse_unary(self) -> AstNode:
        tok = self.token
        start = tok.start
        if tok.type == "OP" and tok.text in UNARY_OPERATORS:
            self.advance()
            operand = self.parse_unary()
            return self.node("unary_expression", [self.leaf("operator", tok), operand], start)
        if tok.type == "OP" and tok.text in UPDATE_OPERATORS:
            self.advance()
            operand = self.parse_unary()
            return self.node("update_expression", [self.leaf("operator", tok), operand], start)
        if self.at("(") and self.peek().type == "KEYWORD" and self.peek().text in PRIMITIVE_TYPES:
            self.advance()
            cast_type = self.parse_type()
            self.expect(")")
            operand = self.parse_unary()
            return self.node("cast_expression", [cast_type, operand], start)
        return self.parse_postfix()

    def parse_postfix(self) -> AstNode:
        start = self.token.start
        expression = self.parse_primary()
        while True:
            if self.at(".") and self.peek().type == "IDENT":
                self.advance()
                name = self.leaf("identifier", self.advance())
                if self.at("("):
                    arguments = self.parse_arguments()
                    expression = self.node("method_invocation", [expression, name, arguments], start)
                else:
                    expression = self.node("field_access", [expression, name], start)
            elif self.at("["):
                self.advance()
                index = self.parse_expression()
                self.expect("]")
                expression = self.node("array_access", [expression, index], start)
            elif self.token.type == "OP" and self.token.text in UPDATE_OPERATORS:
                operator = self.leaf("operator", self.advance())
                expression = self.node("update_expression", [expression, operator], start)
            else:
                return expression

    def parse_arguments(self) -> AstNode:
        start = self.expect("(").start
        arguments = []
        if not self.at(")"):
            arguments = self.parse_expression_list()
        self.expect(")")
        return self.node("argument_list", arguments, start, empty_token="()")

    def parse_primary(self) -> AstNode:
        tok = self.token
        start = tok.start
        if tok.type == "INT":
            self.advance()
            kind = "hex_integer_literal" if tok.text[:2] in ("0x", "0X") else "decimal_integer_literal"
            return self.leaf(kind, tok)
        if tok.type == "FLOAT":
            return self.leaf("decimal_floating_point_literal", self.advance())
        if tok.type == "STRING":
            return self.leaf("string_literal", self.advance(), text=tok.text[1:-1])
        if tok.type == "CHAR":
            return self.leaf("character_literal", self.advance(), text=tok.text[1:-1])
        if tok.type == "KEYWORD":
            if tok.text in ("true", "false"):
                return self.leaf("boolean_literal", self.advance())
            if tok.text == "null":
                return self.leaf("null_literal", self.advance())
            if tok.text == "this":
                return self.leaf("this", self.advance())
            if tok.text == "new":
                return self.parse_creation()
        if tok.type == "IDENT":
            name = self.leaf("identifier", self.advance())
            if self.at("("):
                arguments = self.parse_arguments()
                return self.node("method_invocation", [name, arguments], start)
            return name
        if self.at("("):
            return self.parse_parenthesized()
        self.error("expected expression")

    def parse_creation(self) -> AstNode:
        start = self.expect("new").start
        tok = self.token
        if tok.type == "KEYWORD" and tok.text in PRIMITIVE_TYPES:
            created = self.parse_primitive_type()
        else:
            created = self.leaf("type_identifier", self.expect_identifier())
            if self.at("<"):
                created = self.node("generic_type", [created, self.parse_type_arguments()], start)
        if self.at("["):
            dims = []
            while self.accept("["):
                dim_start = self._last_end
                dims.append(self.node("dimensions_expr", [self.parse_expression()], dim_start))
                self.expect("]")
            return self.node("array_creation_expression", [created] + dims, start)
        arguments = self.parse_arguments()
        return self.node("object_creation_expression", [created, arguments], start)


def parse_java(source: str) -> Ast:
    """Parse a compilation unit of the supported Java subset."""
    return JavaParser(source).parse_compilation_unit()


NODE_KINDS_VERSION = 1
# Every kind the parser can emit; mirrored in docs/node_kinds.txt
NODE_KINDS = (
    "program", "class_declaration", "class_body", "superclass", "super_interfaces", "type_list",
    "modifiers", "modifier", "method_declaration", "constructor_declaration", "constructor_body",
    "field_declaration", "formal_parameters", "formal_parameter",
    "void_type", "integral_type", "floating_point_type", "boolean_type", "type_identifier",
    "scoped_type_identifier", "generic_type", "type_arguments", "array_type", "dimensions",
    "block", "local_variable_declaration", "variable_declarator", "array_initializer",
    "expression_statement", "if_statement", "while_statement", "for_statement", "enhanced_for_statement",
    "return_statement", "break_statement", "continue_statement", "throw_statement", "empty_statement",
    "assignment_expression", "ternary_expression", "binary_expression", "instanceof_expression",
    "unary_expression", "update_expression", "cast_expression", "method_invocation", "field_access",
    "array_access", "argument_list", "parenthesized_expression", "object_creation_expression",
    "array_creation_expression", "dimensions_expr",
    "identifier", "operator", "decimal_integer_literal", "hex_integer_literal",
    "decimal_floating_point_literal", "string_literal", "character_literal", "boolean_literal",
    "null_literal", "this",
)
