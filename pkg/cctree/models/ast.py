# File path: cctree/models/ast.py
"""Abstract syntax tree data model shared by the parser, the importer and the differ."""
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional, Sequence, Tuple

# Separates a terminal's kind from its token inside a flattened item.
SEPARATOR = "|"


def escape_token(token: str) -> str:
    """Escape backslashes and separators so a flattened item stays atomic."""
    return token.replace("\\", "\\\\").replace(SEPARATOR, "\\" + SEPARATOR)


def render_item(kind: str, token: Optional[str]) -> str:
    """Render one node the way flattening emits it."""
    if token is None:
        return kind
    return kind + SEPARATOR + escape_token(token)


@dataclass(frozen=True)
class AstNode:
    kind: str
    token: Optional[str] = None
    children: Tuple["AstNode", ...] = ()
    child_rank: int = 0
    span: Optional[Tuple[int, int]] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not self.kind:
            raise ValueError("node kind must be a non-empty string")
        if not isinstance(self.children, tuple):
            object.__setattr__(self, "children", tuple(self.children))
        if self.children and self.token is not None:
            raise ValueError(f"non-terminal '{self.kind}' cannot carry a token")
        if not self.children and self.token is None:
            raise ValueError(f"terminal '{self.kind}' must carry a token")
        for rank, child in enumerate(self.children):
            if child.child_rank != rank:
                raise ValueError(
                    f"child {rank} of '{self.kind}' has child_rank {child.child_rank}"
                )

    @property
    def is_terminal(self) -> bool:
        return not self.children

    @staticmethod
    def build(kind: str, children: Sequence["AstNode"] = (), token: Optional[str] = None,
              span: Optional[Tuple[int, int]] = None) -> "AstNode":
        """Create a node, assigning child ranks from the order of `children`."""
        ranked = tuple(
            child if child.child_rank == rank else replace(child, child_rank=rank)
            for rank, child in enumerate(children)
        )
        return AstNode(kind=kind, token=token, children=ranked, span=span)

    def walk(self) -> Iterator["AstNode"]:
        """Pre-order depth-first traversal."""
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


@dataclass(frozen=True)
class TokenSequence:
    items: Tuple[str, ...] = ()

    def __post_init__(self):
        if not isinstance(self.items, tuple):
            object.__setattr__(self, "items", tuple(self.items))
        if any(item == "" for item in self.items):
            raise ValueError("token sequences cannot contain empty items")

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator[str]:
        return iter(self.items)

    def __getitem__(self, index):
        return self.items[index]


@dataclass(frozen=True)
class Ast:
    root: AstNode
    source_span: Optional[Tuple[int, int]] = field(default=None, compare=False)
    source_text: Optional[str] = field(default=None, compare=False, repr=False)
    node_count: int = field(init=False, compare=False)

    def __post_init__(self):
        seen = set()
        for node in self.root.walk():
            if id(node) in seen:
                raise ValueError(f"node '{node.kind}' is reachable twice; not a tree")
            seen.add(id(node))
        if self.root.child_rank != 0:
            object.__setattr__(self, "root", replace(self.root, child_rank=0))
        object.__setattr__(self, "node_count", len(seen))

    def nodes(self) -> Iterator[AstNode]:
        return self.root.walk()

    def terminals(self) -> Iterator[AstNode]:
        return (node for node in self.root.walk() if node.is_terminal)
