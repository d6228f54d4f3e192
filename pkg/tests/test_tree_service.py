import json

import pytest

from cctree.core.exceptions import SchemaError
from cctree.models.ast import Ast, AstNode, TokenSequence
from cctree.services.change_tree_service import ChangeTreeService
from cctree.services.parser_service import ParserService
from cctree.services.tree_service import TreeService


def test_flatten_single_terminal():
    ast = Ast(root=AstNode(kind="identifier", token="x"))
    assert list(TreeService.flatten(ast)) == ["identifier|x"]


def test_flatten_is_preorder():
    root = AstNode.build("binary_expression", [
        AstNode(kind="identifier", token="a"),
        AstNode(kind="operator", token="+"),
        AstNode(kind="identifier", token="b"),
    ])
    assert list(TreeService.flatten(Ast(root=root))) == [
        "binary_expression", "identifier|a", "operator|+", "identifier|b",
    ]


def test_flatten_escapes_separator_in_tokens():
    root = AstNode.build("argument_list", [AstNode(kind="string_literal", token="a|b\\c")])
    assert list(TreeService.flatten(Ast(root=root))) == ["argument_list", "string_literal|a\\|b\\\\c"]


def test_flatten_length_equals_node_count(hello_before):
    ast = ParserService.parse_compilation_unit(hello_before)
    assert len(TreeService.flatten(ast)) == ast.node_count == sum(1 for _ in ast.nodes())


def test_ast_rejects_malformed_nodes():
    with pytest.raises(ValueError):
        AstNode(kind="identifier")
    with pytest.raises(ValueError):
        AstNode(kind="block", token="x", children=(AstNode(kind="identifier", token="y"),))
    with pytest.raises(ValueError):
        AstNode(kind="", token="x")


def test_ast_rejects_shared_subtree():
    leaf = AstNode(kind="identifier", token="x")
    with pytest.raises(ValueError):
        Ast(root=AstNode(kind="block", children=(leaf, leaf)))


def test_token_sequence_rejects_empty_items():
    with pytest.raises(ValueError):
        TokenSequence(("identifier|x", ""))


def test_import_single_leaf():
    ast = TreeService.import_tree({"kind": "identifier", "token": "x"})
    assert ast.node_count == 1
    assert ast.root.token == "x"


def test_import_assigns_child_ranks():
    ast = TreeService.import_tree(json.dumps({
        "kind": "block",
        "children": [{"kind": "identifier", "token": "x"}, {"kind": "identifier", "token": "y"}],
    }))
    assert ast.node_count == 3
    assert [child.child_rank for child in ast.root.children] == [0, 1]


def test_import_rejects_token_on_inner_node():
    with pytest.raises(SchemaError):
        TreeService.import_tree({"kind": "block", "token": "x", "children": [{"kind": "identifier", "token": "y"}]})


def test_import_rejects_leaf_without_token():
    with pytest.raises(SchemaError):
        TreeService.import_tree({"kind": "block", "children": [{"kind": "identifier"}]})


def test_import_reports_path_of_bad_node():
    with pytest.raises(SchemaError) as info:
        TreeService.import_tree({"kind": "block", "children": [{"kind": "identifier", "token": "x"}, {"kind": 3}]})
    assert info.value.path.startswith("$.children[1]")


def test_import_rejects_invalid_json_and_non_objects():
    with pytest.raises(SchemaError):
        TreeService.import_tree("{not json")
    with pytest.raises(SchemaError):
        TreeService.import_tree("[1, 2]")


def test_import_rejects_shared_node_objects():
    shared = {"kind": "identifier", "token": "x"}
    with pytest.raises(SchemaError):
        TreeService.import_tree({"kind": "block", "children": [shared, shared]})


def test_import_rejects_unknown_fields_and_bad_kinds():
    with pytest.raises(SchemaError):
        TreeService.import_tree({"kind": "identifier", "token": "x", "extra": 1})
    with pytest.raises(SchemaError):
        TreeService.import_tree({"kind": "has space", "token": "x"})
    with pytest.raises(SchemaError):
        TreeService.import_tree({"kind": "<OOV>", "token": "x"})


def test_export_single_leaf_omits_children():
    assert TreeService.export_tree(Ast(root=AstNode(kind="identifier", token="x"))) == {
        "kind": "identifier", "token": "x",
    }


def test_export_import_round_trip_on_parsed_sources(hello_before, hello_after):
    for source in (hello_before, hello_after, "class A { int f(int a) { return a > 0 ? a : -a; } }"):
        ast = ParserService.parse_compilation_unit(source)
        restored = TreeService.import_tree(json.dumps(TreeService.export_tree(ast)))
        assert restored == ast
        assert restored.node_count == ast.node_count



DEEP = 5000


def _deep_document(depth):
    document = {"kind": "leaf", "token": "x"}
    for _ in range(depth - 1):
        document = {"kind": "b", "children": [document]}
    return document


def _deep_ast(depth):
    node = AstNode(kind="leaf", token="x")
    for _ in range(depth - 1):
        node = AstNode.build("b", [node])
    return Ast(root=node)


def _document_depth(document):
    depth = 0
    while document is not None:
        depth += 1
        document = (document.get("children") or [None])[0]
    return depth


def test_import_deep_document():
    ast = TreeService.import_tree(_deep_document(DEEP))
    assert ast.node_count == DEEP
    tokens = TreeService.flatten(ast)
    assert len(tokens) == DEEP
    assert tokens[-1] == "leaf|x"


def test_import_reports_path_deep_inside_a_document():
    document = _deep_document(3)
    document["children"][0]["children"][0]["kind"] = ""
    with pytest.raises(SchemaError) as info:
        TreeService.import_tree(document)
    assert info.value.path == "$.children[0].children[0].kind"


def test_import_rejects_non_object_children():
    with pytest.raises(SchemaError) as info:
        TreeService.import_tree({"kind": "block", "children": [{"kind": "identifier", "token": "x"}, 7]})
    assert info.value.path == "$.children[1]"


def test_export_deep_tree():
    document = TreeService.export_tree(_deep_ast(DEEP))
    assert _document_depth(document) == DEEP


def test_export_import_round_trip_on_deep_tree():
    ast = _deep_ast(DEEP)
    restored = TreeService.import_tree(TreeService.export_tree(ast))
    assert restored.node_count == DEEP
    assert list(TreeService.flatten(restored)) == list(TreeService.flatten(ast))


def test_export_deep_change_tree():
    tree = ChangeTreeService.build_change_tree(ChangeTreeService.root_paths(_deep_ast(3000)))
    assert tree.node_count == 3000
    assert _document_depth(TreeService.export_tree(tree.root)) == 3000
