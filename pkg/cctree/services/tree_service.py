# File path: cctree/services/tree_service.py
import json
import logging
from typing import Any, Dict, List, Tuple, Union

from pydantic import ValidationError

from cctree.core.exceptions import SchemaError
from cctree.dto.request.tree_dto import TreeNodeDocument
from cctree.models.ast import Ast, AstNode, TokenSequence, render_item
from cctree.models.change_tree import ChangeTreeNode

logger = logging.getLogger(__name__)


def _json_path(path: str, loc) -> str:
    for part in loc:
        if part == "__root__":
            continue
        path += f"[{part}]" if isinstance(part, int) else f".{part}"
    return path


class TreeService:
    @staticmethod
    def flatten(ast: Union[Ast, AstNode]) -> TokenSequence:
        """Serialize a tree by pre-order DFS: kinds for inner nodes, kind|token for leaves."""
        root = ast.root if isinstance(ast, Ast) else ast
        return TokenSequence(tuple(render_item(node.kind, node.token) for node in root.walk()))

    @staticmethod
    def import_tree(serialized: Union[str, bytes, Dict[str, Any]]) -> Ast:
        """Build an Ast from a generic tree JSON document."""
        if isinstance(serialized, (str, bytes)):
            try:
                serialized = json.loads(serialized)
            except json.JSONDecodeError as e:
                raise SchemaError(f"invalid JSON: {e.msg}")
            except RecursionError:
                raise SchemaError("JSON text is nested too deeply to decode; pass the decoded object")

        order = TreeService._validate_nodes(serialized)
        # Children precede their parents when the pre-order is reversed
        built: Dict[int, AstNode] = {}
        for raw, document in reversed(order):
            children = [built.pop(id(child)) for child in document.children or []]
            built[id(raw)] = AstNode.build(document.kind, children, token=None if children else document.token)
        root = built[id(serialized)]
        logger.debug("Imported tree of %d nodes rooted at %s", len(order), root.kind)
        return Ast(root=root)

    @staticmethod
    def _validate_nodes(serialized: Any) -> List[Tuple[Dict[str, Any], TreeNodeDocument]]:
        """Validate every node object with an explicit stack, returning them in pre-order."""
        order = []
        seen = set()
        stack: List[Tuple[Any, str]] = [(serialized, "$")]
        while stack:
            raw, path = stack.pop()
            if not isinstance(raw, dict):
                raise SchemaError("a tree node must be a JSON object", path=path)
            if id(raw) in seen:
                raise SchemaError("node is shared between parents; not a tree", path=path)
            seen.add(id(raw))
            try:
                document = TreeNodeDocument.parse_obj(raw)
            except ValidationError as e:
                raise SchemaError(e.errors()[0]["msg"], path=_json_path(path, e.errors()[0]["loc"]))
            order.append((raw, document))
            children = document.children or []
            stack.extend((children[i], f"{path}.children[{i}]") for i in reversed(range(len(children))))
        return order

    @staticmethod
    def export_tree(ast: Union[Ast, AstNode, ChangeTreeNode]) -> Dict[str, Any]:
        """Serialize to the generic tree schema; empty children lists are omitted."""
        root = ast.root if isinstance(ast, Ast) else ast
        root_document: Dict[str, Any] = {}
        stack = [(root, root_document)]
        while stack:
            node, document = stack.pop()
            document["kind"] = node.kind
            if node.token is not None:
                document["token"] = node.token
            if node.children:
                document["children"] = [{} for _ in node.children]
                stack.extend(zip(node.children, document["children"]))
        return root_document
