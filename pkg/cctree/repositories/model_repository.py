# File path: cctree/repositories/model_repository.py
"""CCTV model files.

Layout (little-endian):
    magic "CCTV" | u16 format version | config block | 32-byte vocabulary fingerprint
    | u32 term count | per term: u32 byte length, UTF-8 bytes, u64 count
    | float32 vectors, term-major | 32-byte SHA-256 of everything before it
"""
import hashlib
import logging
import struct
from pathlib import Path
from typing import List, Union

import numpy as np
from gensim.models.doc2vec import Doc2Vec, TaggedDocument

from cctree.core.exceptions import CorruptFileError, VersionMismatchError
from cctree.models.embedding import FINGERPRINT_SIZE, EmbedConfig, EmbeddingModel

logger = logging.getLogger(__name__)

MAGIC = b"CCTV"
FORMAT_VERSION = 2
_VERSION = struct.Struct("<H")
_CONFIG = struct.Struct("<IIIddQII")
_U32 = struct.Struct("<I")
_U64 = struct.Struct("<Q")
_CHECKSUM_SIZE = 32


class ModelRepository:
    @staticmethod
    def dumps(model: EmbeddingModel) -> bytes:
        config = model.config
        parts = [
            MAGIC,
            _VERSION.pack(FORMAT_VERSION),
            _CONFIG.pack(
                config.dim, config.epochs, config.negative, config.learning_rate, config.min_lr_fraction,
                config.seed, config.infer_epochs, config.workers,
            ),
            model.vocab_fingerprint,
            _U32.pack(len(model.terms)),
        ]
        for term, count in zip(model.terms, model.counts):
            encoded = term.encode("utf-8")
            parts.extend((_U32.pack(len(encoded)), encoded, _U64.pack(int(count))))
        parts.append(model.syn1neg.astype("<f4").tobytes())
        body = b"".join(parts)
        return body + hashlib.sha256(body).digest()

    @staticmethod
    def loads(data: bytes) -> EmbeddingModel:
        if data[:len(MAGIC)] != MAGIC:
            raise CorruptFileError("not a CCTV model file")
        offset = len(MAGIC)
        if len(data) < offset + _VERSION.size:
            raise CorruptFileError("model file truncated")
        (version,) = _VERSION.unpack_from(data, offset)
        if version != FORMAT_VERSION:
            raise VersionMismatchError(f"model format version {version}, expected {FORMAT_VERSION}")
        offset += _VERSION.size

        body, checksum = data[:-_CHECKSUM_SIZE], data[-_CHECKSUM_SIZE:]
        if len(data) < offset + _CHECKSUM_SIZE or hashlib.sha256(body).digest() != checksum:
            raise CorruptFileError("model file checksum mismatch (truncated or modified)")

        try:
            (dim, epochs, negative, learning_rate, min_lr_fraction,
             seed, infer_epochs, workers) = _CONFIG.unpack_from(body, offset)
            offset += _CONFIG.size
            fingerprint = body[offset:offset + FINGERPRINT_SIZE]
            offset += FINGERPRINT_SIZE
            (term_count,) = _U32.unpack_from(body, offset)
            offset += _U32.size
            terms, counts = [], []
            for _ in range(term_count):
                (length,) = _U32.unpack_from(body, offset)
                offset += _U32.size
                terms.append(body[offset:offset + length].decode("utf-8"))
                offset += length
                (count,) = _U64.unpack_from(body, offset)
                offset += _U64.size
                counts.append(count)
            vectors = np.frombuffer(body, dtype="<f4", offset=offset).reshape(term_count, dim)
            if len(set(terms)) != term_count or not np.all(np.isfinite(vectors)):
                raise ValueError("duplicate terms or non-finite vectors")
            config = EmbedConfig(
                dim=dim, epochs=epochs, negative=negative, learning_rate=learning_rate,
                min_lr_fraction=min_lr_fraction, seed=seed, infer_epochs=infer_epochs, workers=workers,
            )
        except (struct.error, UnicodeDecodeError, ValueError) as e:
            raise CorruptFileError(f"malformed model file: {e}")
        return EmbeddingModel(
            doc2vec=ModelRepository._restore(config, terms, counts, vectors),
            config=config,
            vocab_fingerprint=fingerprint,
        )

    @staticmethod
    def _restore(config: EmbedConfig, terms: List[str], counts: List[int], vectors: np.ndarray) -> Doc2Vec:
        """Rebuild the Doc2Vec state inference needs: vocabulary order, counts, noise table, output weights."""
        doc2vec = config.doc2vec()
        # Unsorted so the vocabulary keeps the file's term order
        doc2vec.sorted_vocab = 0
        doc2vec.build_vocab([TaggedDocument(terms, [0])])
        for term, count in zip(terms, counts):
            doc2vec.wv.set_vecattr(term, "count", count)
        doc2vec.make_cum_table()
        doc2vec.syn1neg[:] = vectors
        return doc2vec

    @staticmethod
    def save(model: EmbeddingModel, path: Union[str, Path]) -> None:
        """Write the model to `path`."""
        Path(path).write_bytes(ModelRepository.dumps(model))
        logger.info("Saved embedding model (%d terms, dim %d) to %s", len(model.terms), model.dim, path)

    @staticmethod
    def load(path: Union[str, Path]) -> EmbeddingModel:
        """Read a model, checking magic, version and checksum."""
        try:
            return ModelRepository.loads(Path(path).read_bytes())
        except CorruptFileError as e:
            raise CorruptFileError(f"{path}: {e}")
