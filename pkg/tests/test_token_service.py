import random

import pytest

from cctree.core.exceptions import CorruptFileError, EmptyCorpusError
from cctree.models.ast import TokenSequence
from cctree.models.vocabulary import OovPolicy, Vocabulary, document_frequency_threshold
from cctree.repositories.vocabulary_repository import VocabularyRepository
from cctree.services.token_service import TokenService


def _seq(*items):
    return TokenSequence(items)


def test_normalize_replaces_whitespace_in_string_literals():
    assert list(TokenService.normalize_sequence(_seq("string_literal|Hello, World!"))) == [
        "string_literal|Hello,_World!"
    ]
    assert list(TokenService.normalize_sequence(_seq("string_literal|a\tb c"))) == ["string_literal|a_b_c"]


def test_normalize_leaves_other_items_alone():
    seq = _seq("expression_statement", "identifier|msg", "character_literal| ")
    assert TokenService.normalize_sequence(seq) == seq


def test_threshold_arithmetic():
    assert document_frequency_threshold(10, 0.2) == 2
    assert document_frequency_threshold(2_000_000, 0.01) == 20_000
    assert document_frequency_threshold(3, 1.0) == 3
    assert document_frequency_threshold(7, 0.01) == 1


def test_build_vocabulary_drops_rare_terms():
    corpus = [_seq("block", "identifier|rare")] + [_seq("block", "identifier|x")] * 9
    vocab = TokenService.build_vocabulary(corpus, 0.2)
    assert "identifier|rare" not in vocab
    assert "block" in vocab and "identifier|x" in vocab
    assert vocab.terms == {"block": 10, "identifier|x": 9}


def test_build_vocabulary_full_fraction_keeps_common_terms_only():
    corpus = [_seq("block", "identifier|a"), _seq("block", "identifier|b"), _seq("block", "identifier|a")]
    vocab = TokenService.build_vocabulary(corpus, 1.0)
    assert set(vocab.retained) == {"block"}


def test_build_vocabulary_counts_documents_not_occurrences():
    corpus = [_seq("identifier|x", "identifier|x", "identifier|x"), _seq("block")]
    vocab = TokenService.build_vocabulary(corpus, 0.5)
    assert vocab.terms["identifier|x"] == 1


def test_build_vocabulary_sharded_equals_sequential():
    corpus = [_seq("block", f"identifier|v{i % 7}", f"operator|{i % 3}") for i in range(50)]
    sequential = TokenService.build_vocabulary(corpus, 0.1)
    sharded = TokenService.build_vocabulary(corpus, 0.1, threads=4, shard_size=6)
    assert sequential == sharded
    assert sequential.fingerprint() == sharded.fingerprint()


def test_build_vocabulary_rejects_empty_corpus_and_bad_fraction():
    with pytest.raises(EmptyCorpusError):
        TokenService.build_vocabulary([], 0.01)
    with pytest.raises(ValueError):
        TokenService.build_vocabulary([_seq("block")], 0.0)


def test_apply_oov():
    vocab = Vocabulary(terms={"block": 2, "identifier|x": 2}, corpus_size=2, min_df_fraction=0.5)
    seq = _seq("block", "identifier|x")
    assert TokenService.apply_oov(seq, vocab) == seq
    assert list(TokenService.apply_oov(_seq("identifier|y", "operator|+"), vocab)) == ["<OOV>", "<OOV>"]
    assert list(TokenService.apply_oov(_seq("identifier|y"), vocab, OovPolicy("<UNK>"))) == ["<UNK>"]


def test_oov_symbol_cannot_collide_with_items():
    with pytest.raises(ValueError):
        OovPolicy("OOV")
    with pytest.raises(ValueError):
        OovPolicy("<a|b>")


def test_preprocess_normalizes_before_vocabulary_lookup():
    vocab = Vocabulary(terms={"string_literal|Hello,_World!": 1}, corpus_size=1, min_df_fraction=1.0)
    assert list(TokenService.preprocess(_seq("string_literal|Hello, World!", "block"), vocab)) == [
        "string_literal|Hello,_World!", "<OOV>",
    ]


def test_vocabulary_file_round_trip(tmp_path):
    corpus = [_seq("block", "string_literal|tab\there", "identifier|back\\slash")] * 3 + [_seq("block")]
    vocab = TokenService.build_vocabulary(corpus, 0.5)
    path = tmp_path / "vocab.tsv"
    VocabularyRepository.save(vocab, path)
    loaded = VocabularyRepository.load(path)
    assert loaded == vocab
    assert loaded.fingerprint() == vocab.fingerprint()
    assert "string_literal|tab\there" in loaded


def test_vocabulary_file_rejects_garbage(tmp_path):
    path = tmp_path / "vocab.tsv"
    path.write_text("block\t3\n", encoding="utf-8")
    with pytest.raises(CorruptFileError):
        VocabularyRepository.load(path)
    path.write_text("# corpus_size=3\tmin_df_fraction=0.5\nblock three\n", encoding="utf-8")
    with pytest.raises(CorruptFileError):
        VocabularyRepository.load(path)


def test_build_vocabulary_ignores_corpus_order():
    corpus = [_seq("block", f"identifier|v{i % 5}", f"operator|{i % 4}") for i in range(40)]
    shuffled = list(corpus)
    random.Random(3).shuffle(shuffled)
    original = TokenService.build_vocabulary(corpus, 0.1)
    permuted = TokenService.build_vocabulary(shuffled, 0.1)
    assert original == permuted
    assert original.fingerprint() == permuted.fingerprint()


def test_apply_oov_is_idempotent():
    vocab = Vocabulary(terms={"block": 2, "identifier|x": 1}, corpus_size=2, min_df_fraction=0.5)
    for policy in (OovPolicy(), OovPolicy("<UNK>")):
        once = TokenService.apply_oov(_seq("block", "identifier|x", "identifier|y", "operator|+"), vocab, policy)
        assert TokenService.apply_oov(once, vocab, policy) == once
