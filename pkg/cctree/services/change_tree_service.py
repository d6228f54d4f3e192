# File path: cctree/services/change_tree_service.py
"""Root-path extraction, root-path difference and Code Change Tree construction."""
import logging
from typing import Iterable, List, Optional, Sequence, Tuple

from cctree.core.exceptions import InconsistentRootsError, MethodNotFoundError, ModeMismatchError
from cctree.models.ast import Ast, AstNode, TokenSequence, render_item
from cctree.models.change_tree import (
    ChangeTree,
    ChangeTreeNode,
    NodeDescriptor,
    NodeIdentifier,
    RootPath,
    RootPathSet,
    StateDiff,
)
from cctree.models.enums import RankMode
from cctree.services.parser_service import ParserService

logger = logging.getLogger(__name__)

DescriptorLike = Tuple  # (kind, child_rank) or (kind, child_rank, token)


def _as_descriptor(item) -> NodeDescriptor:
    if isinstance(item, NodeDescriptor):
        return item
    kind, rank, *rest = item
    return NodeDescriptor(kind=kind, child_rank=rank, token=rest[0] if rest else None)


class ChangeTreeService:
    @staticmethod
    def extend_id(parent: Optional[NodeIdentifier], node: NodeDescriptor, mode: RankMode) -> NodeIdentifier:
        """id(node) = id(parent) + one length-prefixed segment for the node itself."""
        segment = f"/{len(node.kind)}:{node.kind}"
        if mode == RankMode.POSITIONAL:
            segment += f"#{node.child_rank}"
        if node.token is not None:
            segment += f"={len(node.token)}:{node.token}"
        return NodeIdentifier((parent.value if parent is not None else "") + segment)

    @staticmethod
    def node_id(path_to_node: Sequence[DescriptorLike], mode: RankMode = RankMode.NONE) -> NodeIdentifier:
        """Identifier of the last node of a root-first descriptor path."""
        if not path_to_node:
            raise ValueError("path_to_node must contain at least the root")
        identifier = None
        for item in path_to_node:
            identifier = ChangeTreeService.extend_id(identifier, _as_descriptor(item), mode)
        return identifier

    @staticmethod
    def root_paths(ast: Ast, mode: RankMode = RankMode.NONE) -> RootPathSet:
        """One root path per terminal; duplicate keyed paths collapse."""
        root = ast.root if isinstance(ast, Ast) else ast
        result = RootPathSet(mode=mode)
        root_desc = NodeDescriptor(root.kind, 0, root.token)
        root_id = ChangeTreeService.extend_id(None, root_desc, mode)
        stack: List[Tuple[AstNode, Tuple[NodeDescriptor, ...], Tuple[NodeIdentifier, ...]]] = [
            (root, (root_desc,), (root_id,))
        ]
        while stack:
            node, descriptors, ids = stack.pop()
            if node.is_terminal:
                result.add(RootPath(nodes=descriptors, ids=ids))
                continue
            for child in reversed(node.children):
                desc = NodeDescriptor(child.kind, child.child_rank, child.token)
                child_id = ChangeTreeService.extend_id(ids[-1], desc, mode)
                stack.append((child, descriptors + (desc,), ids + (child_id,)))
        return result

    @staticmethod
    def path_difference(reference: RootPathSet, target: RootPathSet) -> RootPathSet:
        """Paths of `reference` whose key is absent from `target`."""
        if reference.mode != target.mode:
            raise ModeMismatchError(
                f"cannot compare paths built with {reference.mode.value} and {target.mode.value} rank modes"
            )
        return RootPathSet.of(reference.mode, (p for p in reference if p.key not in target))

    @staticmethod
    def build_change_tree(paths: RootPathSet) -> ChangeTree:
        """Prefix-merge root paths into a tree, matching children by identifier."""
        tree = ChangeTree(mode=paths.mode)
        for path in paths:
            if tree.root is None:
                first = path.nodes[0]
                tree.root = ChangeTreeNode(
                    kind=first.kind, child_rank=first.child_rank, identifier=path.ids[0], token=first.token
                )
            elif tree.root.identifier != path.ids[0]:
                raise InconsistentRootsError(
                    f"path starts at {path.ids[0].value!r}, tree root is {tree.root.identifier.value!r}"
                )
            current = tree.root
            for desc, identifier in zip(path.nodes[1:], path.ids[1:]):
                child = current.index.get(identifier)
                if child is None:
                    child = ChangeTreeNode(
                        kind=desc.kind, child_rank=desc.child_rank, identifier=identifier, token=desc.token
                    )
                    current.children.append(child)
                    current.index[identifier] = child
                current = child
        return tree

    @staticmethod
    def change_trees(pre: Ast, post: Ast, mode: RankMode = RankMode.NONE) -> Tuple[ChangeTree, ChangeTree]:
        """Code Change Trees of the before and after states relative to each other."""
        pre_paths = ChangeTreeService.root_paths(pre, mode)
        post_paths = ChangeTreeService.root_paths(post, mode)
        pre_tree = ChangeTreeService.build_change_tree(ChangeTreeService.path_difference(pre_paths, post_paths))
        post_tree = ChangeTreeService.build_change_tree(ChangeTreeService.path_difference(post_paths, pre_paths))
        logger.debug(
            "Change trees (%s): pre %d/%d nodes, post %d/%d nodes", mode.value,
            pre_tree.node_count, pre.node_count, post_tree.node_count, post.node_count,
        )
        return pre_tree, post_tree

    @staticmethod
    def change_trees_of_states(pre: Optional[Ast], post: Optional[Ast],
                               mode: RankMode = RankMode.NONE) -> Tuple[ChangeTree, ChangeTree]:
        """Like change_trees, where an absent state has no paths at all."""
        if pre is not None and post is not None:
            return ChangeTreeService.change_trees(pre, post, mode)
        if pre is None and post is None:
            raise ValueError("at least one state is required")
        whole = ChangeTreeService.build_change_tree(ChangeTreeService.root_paths(pre or post, mode))
        return (whole, ChangeTree(mode=mode)) if post is None else (ChangeTree(mode=mode), whole)

    @staticmethod
    def diff_sources(pre_source: str, post_source: str, method: Optional[str] = None,
                     mode: RankMode = RankMode.NONE) -> StateDiff:
        """Change trees of two Java files, whole units or one named method.

        A method found on one side only is an added or deleted function.
        """
        pre_unit = ParserService.parse_compilation_unit(pre_source)
        post_unit = ParserService.parse_compilation_unit(post_source)
        if method is None:
            pre, post = pre_unit, post_unit
        else:
            pre, post = (ChangeTreeService._find_or_none(unit, method) for unit in (pre_unit, post_unit))
            if pre is None and post is None:
                raise MethodNotFoundError(f"method '{method}' not found in either file")
        pre_tree, post_tree = ChangeTreeService.change_trees_of_states(pre, post, mode)
        return StateDiff(pre=pre, post=post, pre_tree=pre_tree, post_tree=post_tree)

    @staticmethod
    def _find_or_none(unit: Ast, method: str) -> Optional[Ast]:
        try:
            return ParserService.find_method(unit, method).ast
        except MethodNotFoundError:
            return None

    @staticmethod
    def flatten_change_tree(tree: ChangeTree) -> TokenSequence:
        """Same DFS rule as Ast flattening; an empty tree flattens to []."""
        if tree.root is None:
            return TokenSequence(())
        return TokenSequence(tuple(render_item(node.kind, node.token) for node in tree.root.walk()))

    @staticmethod
    def enumerate_paths(tree: ChangeTree) -> Iterable[NodeIdentifier]:
        """Keys of every root-to-leaf path of a change tree."""
        return (ids[-1] for ids in tree.leaf_paths())
