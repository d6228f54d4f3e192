# File path: cctree/services/feature_service.py
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np

from cctree.core.exceptions import CCTreeError, RecordError
from cctree.models.ast import TokenSequence
from cctree.models.embedding import EmbeddingModel
from cctree.models.enums import RankMode, RepresentationMode
from cctree.models.method import MethodUnit
from cctree.models.record import METRIC_NAMES, ChangeRecord, FeatureVector
from cctree.models.vocabulary import OovPolicy, Vocabulary
from cctree.services.change_tree_service import ChangeTreeService
from cctree.services.embedding_service import EmbeddingService
from cctree.services.metrics_service import MetricsService
from cctree.services.parser_service import ParserService
from cctree.services.token_service import TokenService
from cctree.services.tree_service import TreeService

logger = logging.getLogger(__name__)


def parse_states(record: ChangeRecord) -> Tuple[Optional[MethodUnit], Optional[MethodUnit]]:
    """Parse the before and after states; an absent state stays None."""
    pre = ParserService.parse_method(record.pre_source) if record.pre_source is not None else None
    post = ParserService.parse_method(record.post_source) if record.post_source is not None else None
    return pre, post


def state_width(mode: RepresentationMode, model: Optional[EmbeddingModel]) -> int:
    if mode == RepresentationMode.METRICS:
        return len(METRIC_NAMES)
    if model is None:
        raise ValueError(f"representation mode '{mode.value}' needs an embedding model")
    return model.dim


class FeatureService:
    @staticmethod
    def state_sequences(pre: Optional[MethodUnit], post: Optional[MethodUnit], mode: RepresentationMode,
                        rank_mode: RankMode = RankMode.NONE) -> Tuple[Optional[TokenSequence], Optional[TokenSequence]]:
        """Flattened token sequences fed to the embedder for each state."""
        if mode == RepresentationMode.SIMPLE:
            return (
                TreeService.flatten(pre.ast) if pre is not None else None,
                TreeService.flatten(post.ast) if post is not None else None,
            )
        pre_tree, post_tree = ChangeTreeService.change_trees_of_states(
            pre.ast if pre is not None else None, post.ast if post is not None else None, rank_mode
        )
        return (
            ChangeTreeService.flatten_change_tree(pre_tree) if pre is not None else None,
            ChangeTreeService.flatten_change_tree(post_tree) if post is not None else None,
        )

    @staticmethod
    def represent(record: ChangeRecord, mode: RepresentationMode, model: Optional[EmbeddingModel] = None,
                  rank_mode: RankMode = RankMode.NONE, vocab: Optional[Vocabulary] = None,
                  policy: Optional[OovPolicy] = None) -> FeatureVector:
        """pre || post feature vector of one record; absent states contribute zeros."""
        width = state_width(mode, model)
        try:
            pre, post = parse_states(record)
        except CCTreeError as e:
            raise RecordError(record.id, e)

        if mode == RepresentationMode.METRICS:
            halves = [
                MetricsService.compute_metrics(state).as_vector() if state is not None
                else np.zeros(width, dtype=np.float32)
                for state in (pre, post)
            ]
        else:
            halves = []
            for sequence in FeatureService.state_sequences(pre, post, mode, rank_mode):
                if sequence is None:
                    halves.append(np.zeros(width, dtype=np.float32))
                    continue
                prepared = TokenService.preprocess(sequence, vocab, policy)
                halves.append(EmbeddingService.infer(model, prepared))

        return FeatureVector(record_id=record.id, label=record.label, mode=mode, values=np.concatenate(halves))

    @staticmethod
    def featurize_records(records: Sequence[ChangeRecord], mode: RepresentationMode,
                          model: Optional[EmbeddingModel] = None, rank_mode: RankMode = RankMode.NONE,
                          vocab: Optional[Vocabulary] = None, policy: Optional[OovPolicy] = None,
                          threads: int = 1) -> List[FeatureVector]:
        """represent() over a corpus, record-parallel when threads > 1; output keeps input order."""
        def work(record: ChangeRecord) -> FeatureVector:
            return FeatureService.represent(record, mode, model, rank_mode, vocab, policy)

        if threads > 1:
            with ThreadPoolExecutor(max_workers=threads) as pool:
                vectors = list(pool.map(work, records))
        else:
            vectors = [work(record) for record in records]
        logger.info("Featurized %d records in %s mode (width %d)", len(vectors), mode.value,
                    vectors[0].dim if vectors else 0)
        return vectors

    @staticmethod
    def as_matrix(vectors: Sequence[FeatureVector]) -> Tuple[np.ndarray, np.ndarray]:
        """Stack feature vectors into (X, y)."""
        X = np.vstack([v.values for v in vectors]).astype(np.float64)
        y = np.array([int(v.label) for v in vectors], dtype=np.int64)
        return X, y
