# File path: cctree/models/change_tree.py
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

from cctree.models.ast import Ast
from cctree.models.enums import RankMode


@dataclass(frozen=True)
class NodeDescriptor:
    kind: str
    child_rank: int
    token: Optional[str] = None

    @property
    def is_terminal(self) -> bool:
        return self.token is not None


@dataclass(frozen=True)
class NodeIdentifier:
    # Self-delimiting encoding of the whole ancestor chain; see ChangeTreeService.extend_id
    value: str

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RootPath:
    nodes: Tuple[NodeDescriptor, ...]
    ids: Tuple[NodeIdentifier, ...]

    def __post_init__(self):
        if not self.nodes:
            raise ValueError("a root path has at least one node")
        if len(self.nodes) != len(self.ids):
            raise ValueError("every node of a root path needs an identifier")
        if not self.nodes[-1].is_terminal:
            raise ValueError("a root path ends at a terminal")

    @property
    def key(self) -> NodeIdentifier:
        """The terminal's identifier; it already encodes every ancestor."""
        return self.ids[-1]

    def __len__(self) -> int:
        return len(self.nodes)


@dataclass
class RootPathSet:
    mode: RankMode
    paths: Dict[NodeIdentifier, RootPath] = field(default_factory=dict)

    def add(self, path: RootPath) -> None:
        self.paths.setdefault(path.key, path)

    def keys(self):
        return self.paths.keys()

    def __contains__(self, key) -> bool:
        if isinstance(key, RootPath):
            key = key.key
        return key in self.paths

    def __iter__(self) -> Iterator[RootPath]:
        return iter(self.paths.values())

    def __len__(self) -> int:
        return len(self.paths)

    @staticmethod
    def of(mode: RankMode, paths: Iterable[RootPath]) -> "RootPathSet":
        result = RootPathSet(mode=mode)
        for path in paths:
            result.add(path)
        return result


@dataclass
class ChangeTreeNode:
    kind: str
    child_rank: int
    identifier: NodeIdentifier
    token: Optional[str] = None
    children: List["ChangeTreeNode"] = field(default_factory=list)
    # id -> child, kept in step with `children` while the tree is built
    index: Dict[NodeIdentifier, "ChangeTreeNode"] = field(default_factory=dict, repr=False, compare=False)

    def walk(self) -> Iterator["ChangeTreeNode"]:
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


@dataclass
class ChangeTree:
    mode: RankMode
    root: Optional[ChangeTreeNode] = None

    @property
    def is_empty(self) -> bool:
        return self.root is None

    @property
    def node_count(self) -> int:
        if self.root is None:
            return 0
        return sum(1 for _ in self.root.walk())

    def leaf_paths(self) -> Iterator[Tuple[NodeIdentifier, ...]]:
        """Enumerate the identifier sequence of every root-to-leaf path."""
        if self.root is None:
            return
        stack = [(self.root, (self.root.identifier,))]
        while stack:
            node, ids = stack.pop()
            if not node.children:
                yield ids
                continue
            for child in reversed(node.children):
                stack.append((child, ids + (child.identifier,)))


@dataclass
class StateDiff:
    """Both states of a change and their Code Change Trees; an absent state is None."""

    pre: Optional[Ast]
    post: Optional[Ast]
    pre_tree: ChangeTree
    post_tree: ChangeTree
