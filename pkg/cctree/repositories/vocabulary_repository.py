# File path: cctree/repositories/vocabulary_repository.py
import logging
import re
from pathlib import Path
from typing import Union

from cctree.core.exceptions import CorruptFileError
from cctree.models.vocabulary import Vocabulary

logger = logging.getLogger(__name__)

_HEADER = re.compile(r"^# corpus_size=(\d+)\tmin_df_fraction=(\S+)$")
_ESCAPES = {"\\": "\\\\", "\t": "\\t", "\n": "\\n", "\r": "\\r"}
_UNESCAPES = {"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}


def _escape(term: str) -> str:
    return "".join(_ESCAPES.get(ch, ch) for ch in term)


def _unescape(text: str) -> str:
    out = []
    chars = iter(text)
    for ch in chars:
        if ch == "\\":
            nxt = next(chars, "")
            if nxt not in _UNESCAPES:
                raise CorruptFileError(f"invalid escape sequence in vocabulary term {text!r}")
            out.append(_UNESCAPES[nxt])
        else:
            out.append(ch)
    return "".join(out)


class VocabularyRepository:
    @staticmethod
    def save(vocab: Vocabulary, path: Union[str, Path]) -> None:
        """Write the retained terms as sorted `term<TAB>df` lines under a one-line header."""
        lines = [f"# corpus_size={vocab.corpus_size}\tmin_df_fraction={vocab.min_df_fraction!r}"]
        lines.extend(f"{_escape(term)}\t{vocab.terms[term]}" for term in sorted(vocab.retained))
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
        logger.info("Saved vocabulary of %d terms to %s", len(vocab), path)

    @staticmethod
    def load(path: Union[str, Path]) -> Vocabulary:
        """Read a vocabulary written by `save`."""
        text = Path(path).read_text(encoding="utf-8")
        lines = text.split("\n")
        match = _HEADER.match(lines[0]) if lines else None
        if match is None:
            raise CorruptFileError(f"{path}: missing vocabulary header")
        corpus_size, fraction = int(match.group(1)), float(match.group(2))

        terms = {}
        for number, line in enumerate(lines[1:], start=2):
            if not line:
                continue
            term, sep, df = line.rpartition("\t")
            if not sep or not df.isdigit():
                raise CorruptFileError(f"{path}:{number}: expected 'term<TAB>df'")
            terms[_unescape(term)] = int(df)
        try:
            return Vocabulary(terms=terms, corpus_size=corpus_size, min_df_fraction=fraction)
        except ValueError as e:
            raise CorruptFileError(f"{path}: {e}")
