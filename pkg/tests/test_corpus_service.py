import pytest

from cctree.core.exceptions import EmptyCorpusError, RecordError
from cctree.models.enums import RankMode
from cctree.models.record import ChangeRecord
from cctree.services.corpus_service import MAX_METHOD_NODES, MIN_METHOD_NODES, CorpusService
from cctree.services.demo_service import DemoService
from cctree.services.parser_service import ParserService


def test_synthetic_changes_are_single_edits_of_mid_sized_methods(change_corpus):
    assert len(change_corpus) == 500
    assert len({record.id for record in change_corpus}) == 500
    for record in change_corpus[:100]:
        pre = ParserService.parse_method(record.pre_source)
        assert MIN_METHOD_NODES <= pre.ast.node_count <= MAX_METHOD_NODES
        assert record.pre_source != record.post_source


def test_synthetic_changes_are_seeded():
    assert CorpusService.synthetic_changes(20, seed=4) == CorpusService.synthetic_changes(20, seed=4)
    assert CorpusService.synthetic_changes(20, seed=4) != CorpusService.synthetic_changes(20, seed=5)


def test_change_trees_halve_the_corpus(change_corpus):
    stats = CorpusService.corpus_stats(change_corpus)
    assert stats.states == 1000
    assert stats.mean_change_tree_nodes <= 0.5 * stats.mean_ast_nodes
    assert stats.reduction == pytest.approx(1 - stats.mean_change_tree_nodes / stats.mean_ast_nodes)


def test_corpus_stats_errors():
    with pytest.raises(EmptyCorpusError):
        CorpusService.corpus_stats([])
    with pytest.raises(RecordError):
        CorpusService.corpus_stats([ChangeRecord(id="bad", pre_source="void f( {", label=False)])


def test_planted_corpus_shape():
    records = CorpusService.planted_vulnerabilities(count=200, positive_rate=0.2, seed=9)
    assert sum(record.label for record in records) == 40
    for record in records:
        if record.label:
            assert "if (conn != null)" in record.pre_source
            assert "if (conn != null)" not in record.post_source
        else:
            assert "if (conn != null)" in record.post_source
        assert record.pre_source != record.post_source


def test_token_clusters_use_disjoint_vocabularies():
    documents = CorpusService.token_clusters(per_cluster=10, clusters=2, seed=1)
    assert len(documents) == 20
    vocabularies = [set(), set()]
    for cluster, sequence in documents:
        assert 20 <= len(sequence) <= 40
        vocabularies[cluster].update(sequence)
    assert not vocabularies[0] & vocabularies[1]


def test_change_size_of_absent_state():
    method = ParserService.parse_method("int f() {\n    return 1;\n}").ast
    size = CorpusService.change_size(None, method)
    assert size.pre_ast_nodes == 0
    assert size.post_ast_nodes == size.post_change_tree_nodes == method.node_count
    assert size.reduction == 0.0


def test_training_sequences_normalize_string_literals():
    sequences = CorpusService.training_sequences([("m", "void f() {\n    log(\"a b\");\n}")])
    assert "string_literal|a_b" in sequences[0]


def test_demo_reproduces_the_worked_example():
    outcome = DemoService.run(RankMode.NONE)
    assert outcome.pre_tree_empty
    assert outcome.pre_tokens == []
    assert (outcome.sizes.pre_ast_nodes, outcome.sizes.post_ast_nodes) == (24, 40)
    assert outcome.sizes.post_change_tree_nodes == 16
    assert len(outcome.post_tokens) < outcome.sizes.post_ast_nodes
    assert outcome.sizes.reduction == pytest.approx(0.75)
    assert outcome.sizes.reduction >= 0.4


def test_demo_in_positional_mode_keeps_a_pre_tree():
    outcomes = DemoService.run_all()
    assert [outcome.rank_mode for outcome in outcomes] == [RankMode.NONE, RankMode.POSITIONAL]
    assert not outcomes[1].pre_tree_empty
    assert "before-state change tree is empty" in DemoService.render(outcomes[0])
    assert "before-state change tree is not empty" in DemoService.render(outcomes[1])
