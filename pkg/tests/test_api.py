import pytest
from fastapi.testclient import TestClient

from cctree.main import app

client = TestClient(app)

TWO_METHODS = "class A {\n    void f() {}\n    int g(int x) {\n        return x;\n    }\n}"


def test_root():
    response = client.get("/")
    assert response.status_code == 200
    assert response.json()["name"] == "cctree"
    assert response.json()["changes"] == "/api/v1/changes"


def test_parse_source(hello_before):
    response = client.post("/api/v1/trees/parse", json={"source": hello_before})
    assert response.status_code == 200
    body = response.json()
    assert body["node_count"] == 24
    assert body["tree"]["kind"] == "class_declaration"
    assert body["methods"] == ["HelloWorld.main(1)"]


def test_parse_error_is_unprocessable():
    response = client.post("/api/v1/trees/parse", json={"source": "class A { void f( {} }"})
    assert response.status_code == 422
    assert "line 1" in response.json()["detail"]


def test_flatten_tree():
    tree = {"kind": "block", "children": [{"kind": "identifier", "token": "x"}, {"kind": "operator", "token": "|"}]}
    response = client.post("/api/v1/trees/flatten", json={"tree": tree})
    assert response.status_code == 200
    assert response.json() == {"tokens": ["block", "identifier|x", "operator|\\|"], "length": 3}


@pytest.mark.parametrize("tree", [
    {"kind": "identifier"},
    {"kind": "block", "token": "x", "children": [{"kind": "identifier", "token": "y"}]},
    {"kind": "a|b", "token": "x"},
])
def test_flatten_rejects_malformed_documents(tree):
    assert client.post("/api/v1/trees/flatten", json={"tree": tree}).status_code == 422


def test_diff_worked_example(hello_before, hello_after):
    response = client.post("/api/v1/changes/diff", json={"pre_source": hello_before, "post_source": hello_after})
    assert response.status_code == 200
    body = response.json()
    assert body["rank_mode"] == "none"
    assert body["pre_tree"] is None
    assert body["pre_tokens"] == []
    assert len(body["post_tokens"]) == body["sizes"]["post_change_tree_nodes"] == 16
    assert (body["sizes"]["pre_ast_nodes"], body["sizes"]["post_ast_nodes"]) == (24, 40)


def test_diff_positional_keeps_a_pre_tree(hello_before, hello_after):
    response = client.post("/api/v1/changes/diff", json={
        "pre_source": hello_before, "post_source": hello_after, "rank_mode": "positional",
    })
    assert response.status_code == 200
    assert response.json()["pre_tree"] is not None


def test_diff_of_unknown_method_is_not_found():
    response = client.post("/api/v1/changes/diff", json={
        "pre_source": TWO_METHODS, "post_source": TWO_METHODS, "method": "h",
    })
    assert response.status_code == 404


def test_metrics_of_named_method():
    response = client.post("/api/v1/changes/metrics", json={"source": TWO_METHODS, "method": "g"})
    assert response.status_code == 200
    body = response.json()
    assert body["method"] == "A.g(1)"
    assert body["metrics"]["NUMPAR"] == 1
    assert body["metrics"]["NOS"] == 1
    assert len(body["vector"]) == len(body["metrics"])


def test_metrics_of_bare_method():
    response = client.post("/api/v1/changes/metrics", json={"source": "void f() {}"})
    assert response.status_code == 200
    assert response.json()["metrics"]["McCC"] == 1


def test_metrics_errors():
    assert client.post("/api/v1/changes/metrics", json={"source": "void f( {"}).status_code == 422
    assert client.post("/api/v1/changes/metrics", json={"source": TWO_METHODS, "method": "h"}).status_code == 404
