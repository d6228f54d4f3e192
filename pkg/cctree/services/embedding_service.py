# File path: cctree/services/embedding_service.py
"""Paragraph-vector (distributed bag-of-words) training and inference on gensim's Doc2Vec."""
import logging
import zlib
from collections import Counter
from typing import Iterable, Optional

import numpy as np
from gensim.models.doc2vec import TaggedDocument

from cctree.core.exceptions import DegenerateVocabularyError, EmptyCorpusError
from cctree.models.ast import TokenSequence
from cctree.models.embedding import NO_FINGERPRINT, EmbedConfig, EmbeddingModel
from cctree.models.vocabulary import Vocabulary

logger = logging.getLogger(__name__)

REAL = np.float32


class EmbeddingService:
    @staticmethod
    def train(corpus: Iterable[TokenSequence], config: Optional[EmbedConfig] = None,
              vocab: Optional[Vocabulary] = None) -> EmbeddingModel:
        """Train term output vectors on a preprocessed corpus; document vectors are discarded."""
        config = config or EmbedConfig()
        documents = [TaggedDocument(list(seq), [i]) for i, seq in enumerate(corpus)]
        if not documents:
            raise EmptyCorpusError("cannot train an embedding on an empty corpus")
        distinct = len(Counter(token for doc in documents for token in doc.words))
        if distinct < 2:
            raise DegenerateVocabularyError(f"need at least 2 distinct terms, found {distinct}")

        doc2vec = config.doc2vec()
        doc2vec.build_vocab(documents)
        logger.info(
            "Training embedding: %d documents, %d terms, dim %d, %d epochs",
            len(documents), len(doc2vec.wv), config.dim, config.epochs,
        )
        doc2vec.train(documents, total_examples=doc2vec.corpus_count, epochs=doc2vec.epochs)
        return EmbeddingModel(
            doc2vec=doc2vec,
            config=config,
            vocab_fingerprint=vocab.fingerprint() if vocab is not None else NO_FINGERPRINT,
        )

    @staticmethod
    def infer(model: EmbeddingModel, seq: TokenSequence) -> np.ndarray:
        """Fit a fresh document vector against the frozen term vectors."""
        words = [token for token in seq if model.knows(token)]
        if not words:
            return np.zeros(model.dim, dtype=REAL)

        # Seeded by content so inference is independent of call order
        seed = model.config.gensim_seed ^ zlib.crc32("\n".join(seq).encode("utf-8"))
        with model.lock:
            model.doc2vec.random = np.random.RandomState(seed)
            return model.doc2vec.infer_vector(words, epochs=model.config.infer_epochs)
