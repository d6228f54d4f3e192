# File path: cctree/parsing/lexer.py
import bisect
import re
from typing import List, NamedTuple

from cctree.core.exceptions import ParseError
from cctree.models.method import ParseDiagnostic

KEYWORDS = frozenset({
    "abstract", "boolean", "break", "byte", "char", "class", "continue", "do",
    "double", "else", "extends", "final", "float", "for", "if", "implements",
    "instanceof", "int", "long", "native", "new", "private", "protected",
    "public", "return", "short", "static", "synchronized", "this", "throw",
    "transient", "void", "volatile", "while", "true", "false", "null",
})

_TOKEN_SPEC = [
    ("WS", r"\s+"),
    ("COMMENT", r"//[^\n]*|/\*.*?\*/"),
    ("STRING", r'"(?:[^"\\\n]|\\.)*"'),
    ("CHAR", r"'(?:[^'\\\n]|\\.)+'"),
    ("FLOAT", r"\d+\.\d+(?:[eE][+-]?\d+)?[fFdD]?|\d+[fFdD]\b"),
    ("INT", r"0[xX][0-9a-fA-F_]+[lL]?|\d[\d_]*[lL]?"),
    ("IDENT", r"[A-Za-z_$][A-Za-z0-9_$]*"),
    ("OP", r">>>=|<<=|>>=|\+\+|--|&&|\|\||==|!=|<=|>=|\+=|-=|\*=|/=|%=|&=|\|=|\^="
           r"|[{}()\[\];,.=<>!~?:+\-*/%&|^]"),
]
_MASTER = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC), re.DOTALL)


class Token(NamedTuple):
    type: str
    text: str
    start: int
    end: int
    line: int
    column: int


class Lexer:
    """Splits Java source into tokens, dropping whitespace and comments."""

    def __init__(self, source: str):
        self.source = source
        self._line_starts = [0] + [m.end() for m in re.finditer("\n", source)]

    def position(self, offset: int):
        line = bisect.bisect_right(self._line_starts, offset)
        return line, offset - self._line_starts[line - 1] + 1

    def tokenize(self) -> List[Token]:
        tokens = []
        offset = 0
        while offset < len(self.source):
            match = _MASTER.match(self.source, offset)
            if match is None:
                line, column = self.position(offset)
                raise ParseError(ParseDiagnostic(
                    line, column, f"unexpected character {self.source[offset]!r}"
                ))
            kind = match.lastgroup
            text = match.group()
            if kind not in ("WS", "COMMENT"):
                if kind == "IDENT" and text in KEYWORDS:
                    kind = "KEYWORD"
                line, column = self.position(offset)
                tokens.append(Token(kind, text, offset, match.end(), line, column))
            offset = match.end()
        line, column = self.position(offset)
        tokens.append(Token("EOF", "", offset, offset, line, column))
        return tokens
