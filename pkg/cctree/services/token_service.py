# File path: cctree/services/token_service.py
import logging
import re
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, List, Optional, Tuple

from cctree.core.exceptions import EmptyCorpusError
from cctree.models.ast import SEPARATOR, TokenSequence
from cctree.models.vocabulary import OovPolicy, Vocabulary, document_frequency_threshold

logger = logging.getLogger(__name__)

STRING_LITERAL_KINDS = frozenset({"string_literal"})
_WHITESPACE = re.compile(r"\s", re.UNICODE)


def count_document_frequencies(corpus: Iterable[TokenSequence]) -> Tuple[Counter, int]:
    """Count, per term, the number of sequences containing it, plus the sequence count."""
    counts: Counter = Counter()
    size = 0
    for seq in corpus:
        counts.update(set(seq))
        size += 1
    return counts, size


class TokenService:
    @staticmethod
    def normalize_sequence(seq: TokenSequence) -> TokenSequence:
        """Replace whitespace inside string-literal tokens with underscores."""
        items = []
        for item in seq:
            kind, sep, token = item.partition(SEPARATOR)
            if sep and kind in STRING_LITERAL_KINDS:
                item = kind + sep + _WHITESPACE.sub("_", token)
            items.append(item)
        return TokenSequence(tuple(items))

    @staticmethod
    def build_vocabulary(corpus: Iterable[TokenSequence], min_df_fraction: float,
                         threads: int = 1, shard_size: int = 1000) -> Vocabulary:
        """Keep the terms present in at least ceil(fraction * corpus_size) sequences."""
        if not 0 < min_df_fraction <= 1:
            raise ValueError("min_df_fraction must be in (0, 1]")
        if threads > 1:
            sequences = list(corpus)
            shards = [sequences[i:i + shard_size] for i in range(0, len(sequences), shard_size)]
            with ThreadPoolExecutor(max_workers=threads) as pool:
                partials = list(pool.map(count_document_frequencies, shards))
        else:
            partials = [count_document_frequencies(corpus)]

        document_frequencies: Counter = Counter()
        corpus_size = 0
        for counts, size in partials:
            document_frequencies.update(counts)
            corpus_size += size
        if corpus_size == 0:
            raise EmptyCorpusError("cannot build a vocabulary from an empty corpus")

        threshold = document_frequency_threshold(corpus_size, min_df_fraction)
        vocabulary = Vocabulary(
            terms={term: df for term, df in document_frequencies.items() if df >= threshold},
            corpus_size=corpus_size,
            min_df_fraction=min_df_fraction,
        )
        logger.info(
            "Vocabulary: %d of %d terms retained (threshold %d over %d sequences)",
            len(vocabulary), len(document_frequencies), threshold, corpus_size,
        )
        return vocabulary

    @staticmethod
    def apply_oov(seq: TokenSequence, vocab: Vocabulary, policy: Optional[OovPolicy] = None) -> TokenSequence:
        """Replace every item the vocabulary does not retain with the OOV symbol."""
        policy = policy or OovPolicy()
        return TokenSequence(tuple(item if item in vocab else policy.oov_symbol for item in seq))

    @staticmethod
    def preprocess(seq: TokenSequence, vocab: Optional[Vocabulary] = None,
                   policy: Optional[OovPolicy] = None) -> TokenSequence:
        """normalize_sequence followed by apply_oov when a vocabulary is given."""
        normalized = TokenService.normalize_sequence(seq)
        if vocab is None:
            return normalized
        return TokenService.apply_oov(normalized, vocab, policy)

    @staticmethod
    def preprocess_corpus(corpus: Iterable[TokenSequence], vocab: Vocabulary,
                          policy: Optional[OovPolicy] = None) -> List[TokenSequence]:
        return [TokenService.apply_oov(seq, vocab, policy) for seq in corpus]
