# File path: cctree/services/corpus_service.py
"""Seeded synthetic corpora and corpus-level size statistics."""
import logging
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from cctree.core.exceptions import CCTreeError, EmptyCorpusError, RecordError
from cctree.models.ast import Ast, TokenSequence
from cctree.models.enums import RankMode
from cctree.models.record import ChangeRecord
from cctree.models.statistics import ChangeSize, CorpusStats
from cctree.services.change_tree_service import ChangeTreeService
from cctree.services.parser_service import ParserService
from cctree.services.token_service import TokenService
from cctree.services.tree_service import TreeService

logger = logging.getLogger(__name__)

MIN_METHOD_NODES = 30
MAX_METHOD_NODES = 80
_INDENT = "    "
_LOCALS = ("x", "y", "total")


def _pick(rng: np.random.Generator, options: Sequence):
    return options[int(rng.integers(len(options)))]


def _number(rng: np.random.Generator) -> int:
    return int(rng.integers(1, 10))


def _random_statement(rng: np.random.Generator) -> str:
    """One statement over the method's locals; compound statements span several lines."""
    v, w = _pick(rng, _LOCALS), _pick(rng, _LOCALS)
    n, m = _number(rng), _number(rng)
    templates = (
        lambda: f"{v} = {w} + {n};",
        lambda: f"{v} = {v} * {n};",
        lambda: f"log(\"step {n}\");",
        lambda: f"System.out.println({v});",
        lambda: f"if ({v} > {n}) {{\n{_INDENT * 2}{w} = {w} - {m};\n{_INDENT}}}",
        lambda: f"while ({v} < {n}) {{\n{_INDENT * 2}{v} = {v} + 1;\n{_INDENT}}}",
        lambda: f"for (int i = 0; i < {n}; i++) {{\n{_INDENT * 2}total = total + i;\n{_INDENT}}}",
    )
    return _pick(rng, templates)()


def _render(signature: str, body: Sequence[str]) -> str:
    return signature + " {\n" + "".join(f"{_INDENT}{statement}\n" for statement in body) + "}"


def _node_count(source: str) -> int:
    return ParserService.parse_method(source).ast.node_count


class CorpusService:
    @staticmethod
    def synthetic_changes(count: int = 500, seed: int = 1) -> List[ChangeRecord]:
        """Single-edit records: one statement inserted into, or modified in, a 30-80 node method."""
        rng = np.random.default_rng(seed)
        signature = "int compute(int a, int b)"
        head = ["int x = a;", "int y = b;", "int total = 0;"]
        tail = ["return total + x;"]
        records = []
        while len(records) < count:
            middle = [_random_statement(rng) for _ in range(int(rng.integers(1, 7)))]
            pre = _render(signature, head + middle + tail)
            if not MIN_METHOD_NODES <= _node_count(pre) <= MAX_METHOD_NODES:
                continue

            edited = list(middle)
            if rng.random() < 0.5:
                edited.insert(int(rng.integers(len(edited) + 1)), _random_statement(rng))
            else:
                position = int(rng.integers(len(edited)))
                replacement = _random_statement(rng)
                if replacement == edited[position]:
                    continue
                edited[position] = replacement
            post = _render(signature, head + edited + tail)
            records.append(ChangeRecord(
                id=f"change-{len(records):04d}", pre_source=pre, post_source=post, label=False
            ))
        logger.info("Generated %d single-edit change records (seed %d)", len(records), seed)
        return records

    @staticmethod
    def planted_vulnerabilities(count: int = 500, positive_rate: float = 0.2, seed: int = 1,
                                guard_removal_share: float = 0.6) -> List[ChangeRecord]:
        """Records where positives drop a null check around a call.

        A share of the negatives drops a numeric guard around an assignment
        instead, which changes the method metrics exactly as a positive does.
        """
        rng = np.random.default_rng(seed)
        signature = "void process(Connection conn, String data, int count)"
        null_guard = f"if (conn != null) {{\n{_INDENT * 2}conn.send(data);\n{_INDENT}}}"
        unguarded_call = "conn.send(data);"
        numeric_guard = f"if (count > 0) {{\n{_INDENT * 2}total = total + count;\n{_INDENT}}}"
        unguarded_assignment = "total = total + count;"

        positives = int(round(count * positive_rate))
        labels = np.array([True] * positives + [False] * (count - positives))
        rng.shuffle(labels)

        records = []
        for index, label in enumerate(labels):
            before = [_random_statement(rng) for _ in range(int(rng.integers(0, 3)))]
            after = [_random_statement(rng) for _ in range(int(rng.integers(0, 3)))]
            guards = [null_guard, numeric_guard]
            if rng.random() < 0.5:
                guards.reverse()
            pre_body = ["int x = count;", "int y = 0;", "int total = 0;"] + before + guards + after

            post_body = list(pre_body)
            if label:
                post_body[post_body.index(null_guard)] = unguarded_call
            elif rng.random() < guard_removal_share:
                post_body[post_body.index(numeric_guard)] = unguarded_assignment
            elif rng.random() < 0.5:
                post_body.insert(int(rng.integers(3, len(post_body) + 1)), _random_statement(rng))
            else:
                position = int(rng.integers(3, len(post_body)))
                if post_body[position] in guards:
                    post_body.insert(position, _random_statement(rng))
                else:
                    post_body[position] = _random_statement(rng)
                    if post_body == pre_body:
                        post_body.insert(position, "log(\"retry\");")

            records.append(ChangeRecord(
                id=f"planted-{index:04d}",
                pre_source=_render(signature, pre_body),
                post_source=_render(signature, post_body),
                label=bool(label),
            ))
        logger.info("Generated %d planted records, %d positive (seed %d)", len(records), positives, seed)
        return records

    @staticmethod
    def token_clusters(per_cluster: int = 50, clusters: int = 2, vocabulary_size: int = 20,
                       seed: int = 1) -> List[Tuple[int, TokenSequence]]:
        """Documents drawn from disjoint per-cluster vocabularies, as (cluster, sequence)."""
        rng = np.random.default_rng(seed)
        # Zipf-like term weights within each cluster
        weights = 1.0 / np.arange(1, vocabulary_size + 1)
        weights /= weights.sum()
        documents = []
        for cluster in range(clusters):
            terms = [f"identifier|c{cluster}_t{i}" for i in range(vocabulary_size)]
            for _ in range(per_cluster):
                length = int(rng.integers(20, 41))
                drawn = rng.choice(vocabulary_size, size=length, p=weights)
                documents.append((cluster, TokenSequence(tuple(terms[i] for i in drawn))))
        logger.info("Generated %d cluster documents (seed %d)", len(documents), seed)
        return documents

    @staticmethod
    def record_documents(records: Sequence[ChangeRecord]) -> List[Tuple[str, str]]:
        """Every present function state of the records, as (id, source)."""
        documents = []
        for record in records:
            if record.pre_source is not None:
                documents.append((f"{record.id}:pre", record.pre_source))
            if record.post_source is not None:
                documents.append((f"{record.id}:post", record.post_source))
        return documents

    @staticmethod
    def training_sequences(documents: Sequence[Tuple[str, Union[str, TokenSequence]]]) -> List[TokenSequence]:
        """Normalized flattened sequences for embedding; sources are parsed as single methods."""
        sequences = []
        for document_id, document in documents:
            if isinstance(document, str):
                try:
                    document = TreeService.flatten(ParserService.parse_method(document).ast)
                except CCTreeError as e:
                    raise RecordError(document_id, e)
            sequences.append(TokenService.normalize_sequence(document))
        return sequences

    @staticmethod
    def change_size(pre: Optional[Ast], post: Optional[Ast], rank_mode: RankMode = RankMode.NONE) -> ChangeSize:
        """Node counts of both states and of their change trees; an absent state counts as empty."""
        pre_tree, post_tree = ChangeTreeService.change_trees_of_states(pre, post, rank_mode)
        return ChangeSize(
            pre_ast_nodes=pre.node_count if pre is not None else 0,
            post_ast_nodes=post.node_count if post is not None else 0,
            pre_change_tree_nodes=pre_tree.node_count,
            post_change_tree_nodes=post_tree.node_count,
        )

    @staticmethod
    def corpus_stats(records: Sequence[ChangeRecord], rank_mode: RankMode = RankMode.NONE) -> CorpusStats:
        """Mean node count per function state for full ASTs and for Code Change Trees."""
        if not records:
            raise EmptyCorpusError("no records to measure")
        states = ast_nodes = change_tree_nodes = 0
        for record in records:
            try:
                pre = ParserService.parse_method(record.pre_source).ast if record.pre_source is not None else None
                post = ParserService.parse_method(record.post_source).ast if record.post_source is not None else None
            except CCTreeError as e:
                raise RecordError(record.id, e)
            size = CorpusService.change_size(pre, post, rank_mode)
            states += (pre is not None) + (post is not None)
            ast_nodes += size.ast_nodes
            change_tree_nodes += size.change_tree_nodes

        mean_ast = ast_nodes / states
        mean_change_tree = change_tree_nodes / states
        stats = CorpusStats(
            rank_mode=rank_mode,
            records=len(records),
            states=states,
            mean_ast_nodes=mean_ast,
            mean_change_tree_nodes=mean_change_tree,
            reduction=1.0 - mean_change_tree / mean_ast if mean_ast else 0.0,
        )
        logger.info(
            "Corpus of %d records: %.1f AST nodes vs %.1f change-tree nodes per state (%.0f%% reduction)",
            stats.records, mean_ast, mean_change_tree, stats.reduction * 100,
        )
        return stats
