import json
import random

import pytest

from cctree.models.ast import Ast, AstNode
from cctree.services.corpus_service import CorpusService
from cctree.services.demo_service import HELLO_WORLD_AFTER, HELLO_WORLD_BEFORE

INNER_KINDS = ("block", "expression_statement", "method_invocation", "argument_list", "if_statement")
LEAF_KINDS = ("identifier", "operator", "string_literal", "decimal_integer_literal")
TOKENS = ("x", "y", "+", "0", "Hello, World!", "a|b", "\\")


def _random_node(rng: random.Random, budget: int, depth: int):
    if budget <= 1 or depth >= 8 or rng.random() < 0.35:
        return AstNode(kind=rng.choice(LEAF_KINDS), token=rng.choice(TOKENS)), 1
    used = 1
    children = []
    for _ in range(rng.randint(1, 4)):
        if used >= budget:
            break
        child, size = _random_node(rng, budget - used, depth + 1)
        children.append(child)
        used += size
    return AstNode.build(rng.choice(INNER_KINDS), children), used


def random_ast(rng: random.Random, max_nodes: int = 200) -> Ast:
    """A tree of at most `max_nodes` nodes over a small alphabet, so paths repeat often."""
    root, _ = _random_node(rng, rng.randint(1, max_nodes), 0)
    return Ast(root=root)


@pytest.fixture
def hello_before() -> str:
    return HELLO_WORLD_BEFORE


@pytest.fixture
def hello_after() -> str:
    return HELLO_WORLD_AFTER


@pytest.fixture
def random_asts():
    rng = random.Random(20240501)
    return [random_ast(rng) for _ in range(1000)]


@pytest.fixture(scope="session")
def change_corpus():
    return CorpusService.synthetic_changes(count=500, seed=7)


@pytest.fixture(scope="session")
def small_planted():
    return CorpusService.planted_vulnerabilities(count=100, positive_rate=0.2, seed=3)


@pytest.fixture
def tiny_records(tmp_path):
    path = tmp_path / "tiny.jsonl"
    lines = [
        json.dumps({
            "id": f"tiny-{i}",
            "pre_source": f"int f(int x) {{\n    return x + {i};\n}}",
            "post_source": f"int f(int x) {{\n    if (x > {i}) {{\n        return x;\n    }}\n    return {i};\n}}",
            "label": i % 2 == 0,
        })
        for i in range(8)
    ]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
