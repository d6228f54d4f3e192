# File path: cctree/models/vocabulary.py
import hashlib
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet

DEFAULT_OOV_SYMBOL = "<OOV>"


def document_frequency_threshold(corpus_size: int, min_df_fraction: float) -> int:
    """ceil(fraction * corpus_size), computed exactly on the decimal fraction."""
    return math.ceil(Fraction(str(min_df_fraction)) * corpus_size)


@dataclass(frozen=True)
class OovPolicy:
    oov_symbol: str = DEFAULT_OOV_SYMBOL

    def __post_init__(self):
        # Flattened kinds never start with '<' and terminals always contain '|'
        if not self.oov_symbol.startswith("<") or "|" in self.oov_symbol:
            raise ValueError("the OOV symbol must start with '<' and contain no '|'")


@dataclass(frozen=True)
class Vocabulary:
    terms: Dict[str, int]
    corpus_size: int
    min_df_fraction: float
    retained: FrozenSet[str] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not 0 < self.min_df_fraction <= 1:
            raise ValueError("min_df_fraction must be in (0, 1]")
        for term, df in self.terms.items():
            if not 1 <= df <= self.corpus_size:
                raise ValueError(f"document frequency of {term!r} out of range: {df}")
        threshold = self.threshold
        object.__setattr__(self, "retained", frozenset(t for t, df in self.terms.items() if df >= threshold))

    @property
    def threshold(self) -> int:
        return document_frequency_threshold(self.corpus_size, self.min_df_fraction)

    def __contains__(self, term: str) -> bool:
        return term in self.retained

    def __len__(self) -> int:
        return len(self.retained)

    def fingerprint(self) -> bytes:
        """SHA-256 over the retained terms and their document frequencies."""
        digest = hashlib.sha256()
        digest.update(f"{self.corpus_size}\t{self.min_df_fraction!r}\n".encode("utf-8"))
        for term in sorted(self.retained):
            digest.update(f"{term}\t{self.terms[term]}\n".encode("utf-8"))
        return digest.digest()
