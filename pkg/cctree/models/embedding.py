# File path: cctree/models/embedding.py
import threading
import zlib
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from gensim.models.doc2vec import Doc2Vec
from pydantic import BaseModel, confloat, conint

FINGERPRINT_SIZE = 32
NO_FINGERPRINT = bytes(FINGERPRINT_SIZE)


def stable_hash(text: str) -> int:
    """Process-independent replacement for the builtin str hash."""
    return zlib.crc32(text.encode("utf-8"))


class EmbedConfig(BaseModel):
    """Hyperparameters of the distributed bag-of-words document embedder."""

    dim: conint(ge=1) = 100
    epochs: conint(ge=1) = 20
    negative: conint(ge=1) = 5
    learning_rate: confloat(gt=0) = 0.025
    # Learning rate decays linearly to this fraction of the initial value
    min_lr_fraction: confloat(gt=0, le=1) = 0.1
    seed: conint(ge=0, lt=2 ** 64) = 1
    infer_epochs: conint(ge=1) = 50
    # More than one worker trades determinism for speed
    workers: conint(ge=1) = 1

    class Config:
        allow_mutation = False

    @property
    def gensim_seed(self) -> int:
        # gensim seeds numpy RandomState, which takes 32 bits
        return (self.seed ^ (self.seed >> 32)) & 0xFFFFFFFF

    def doc2vec(self) -> Doc2Vec:
        """An untrained PV-DBOW Doc2Vec carrying these hyperparameters."""
        return Doc2Vec(
            dm=0,
            vector_size=self.dim,
            negative=self.negative,
            hs=0,
            min_count=1,
            sample=0,
            alpha=self.learning_rate,
            min_alpha=self.learning_rate * self.min_lr_fraction,
            epochs=self.epochs,
            seed=self.gensim_seed,
            workers=self.workers,
            hashfxn=stable_hash,
        )


@dataclass(eq=False)
class EmbeddingModel:
    """A trained Doc2Vec whose term output weights are frozen for inference."""
    doc2vec: Doc2Vec
    config: EmbedConfig
    vocab_fingerprint: bytes = NO_FINGERPRINT
    # Inference reseeds the shared gensim RNG, so calls are serialized
    lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        if len(self.vocab_fingerprint) != FINGERPRINT_SIZE:
            raise ValueError(f"vocabulary fingerprint must be {FINGERPRINT_SIZE} bytes")

    @property
    def dim(self) -> int:
        return self.config.dim

    @property
    def terms(self) -> Tuple[str, ...]:
        return tuple(self.doc2vec.wv.index_to_key)

    @property
    def counts(self) -> np.ndarray:
        wv = self.doc2vec.wv
        return np.array([wv.get_vecattr(term, "count") for term in wv.index_to_key], dtype=np.uint64)

    @property
    def syn1neg(self) -> np.ndarray:
        # Output (hidden -> term) weights, one float32 row per term
        return self.doc2vec.syn1neg

    def knows(self, term: str) -> bool:
        return term in self.doc2vec.wv.key_to_index
