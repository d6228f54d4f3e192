# File path: cctree/core/exceptions.py
from typing import Optional


class CCTreeError(Exception):
    """Base class for every error raised by the pipeline."""


class SchemaError(CCTreeError):
    """A generic-tree document or a record does not match its schema."""

    def __init__(self, message: str, path: str = "$"):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}")


class ParseError(CCTreeError):
    """Java source outside the supported subset, or malformed."""

    def __init__(self, diagnostic):
        self.diagnostic = diagnostic
        super().__init__(f"line {diagnostic.line}, column {diagnostic.column}: {diagnostic.message}")


class MethodNotFoundError(CCTreeError):
    pass


class ModeMismatchError(CCTreeError):
    """Root-path sets built with different rank modes were combined."""


class InconsistentRootsError(CCTreeError):
    """Root paths handed to the tree builder do not share a first node."""


class EmptyCorpusError(CCTreeError):
    pass


class DegenerateVocabularyError(CCTreeError):
    pass


class VersionMismatchError(CCTreeError):
    pass


class CorruptFileError(CCTreeError):
    pass


class TooFewSamplesError(CCTreeError):
    pass


class DimensionMismatchError(CCTreeError):
    pass


class RecordError(CCTreeError):
    """Wraps a failure with the id of the change record that caused it."""

    def __init__(self, record_id: Optional[str], cause: Exception):
        self.record_id = record_id
        self.cause = cause
        super().__init__(f"record {record_id}: {cause}")
