# File path: cctree/repositories/record_repository.py
import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterator, List, Tuple, Union

from pydantic import ValidationError

from cctree.core.exceptions import RecordError, SchemaError
from cctree.models.ast import TokenSequence
from cctree.models.record import ChangeRecord

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _read_json_lines(path: PathLike) -> Iterator[Tuple[int, Dict[str, Any]]]:
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                document = json.loads(line)
            except json.JSONDecodeError as e:
                raise SchemaError(f"invalid JSON: {e.msg}", path=f"{path}:{number}")
            if not isinstance(document, dict):
                raise SchemaError("each line must hold a JSON object", path=f"{path}:{number}")
            yield number, document


class RecordRepository:
    @staticmethod
    def read_records(path: PathLike) -> List[ChangeRecord]:
        """Load change records from a JSON-lines file (id, pre_source, post_source, label)."""
        records = []
        seen = set()
        for number, document in _read_json_lines(path):
            try:
                record = ChangeRecord.parse_obj(document)
            except ValidationError as e:
                first = e.errors()[0]
                field = ".".join(str(part) for part in first["loc"] if part != "__root__")
                error = SchemaError(first["msg"], path=f"{path}:{number}" + (f" $.{field}" if field else ""))
                record_id = document.get("id")
                raise RecordError(record_id, error) if isinstance(record_id, str) else error
            if record.id in seen:
                raise RecordError(record.id, SchemaError("duplicate record id", path=f"{path}:{number}"))
            seen.add(record.id)
            records.append(record)
        logger.info("Read %d records from %s", len(records), path)
        return records

    @staticmethod
    def write_records(records: List[ChangeRecord], path: PathLike) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            for record in records:
                handle.write(json.dumps(record.dict(), sort_keys=True) + "\n")
        logger.info("Wrote %d records to %s", len(records), path)

    @staticmethod
    def read_corpus(path: PathLike) -> List[Tuple[str, Union[str, TokenSequence]]]:
        """(id, document) pairs from a corpus file.

        A line is a single method (`{"id": ..., "source": ...}`), an already
        flattened sequence (`{"id": ..., "tokens": [...]}`) or a change record,
        whose present states each contribute one method.
        """
        sources: List[Tuple[str, Union[str, TokenSequence]]] = []
        for number, document in _read_json_lines(path):
            base_id = str(document.get("id", number))
            if isinstance(document.get("source"), str):
                sources.append((base_id, document["source"]))
                continue
            if isinstance(document.get("tokens"), list):
                tokens = document["tokens"]
                if not all(isinstance(token, str) and token for token in tokens):
                    raise SchemaError("tokens must be non-empty strings", path=f"{path}:{number}")
                sources.append((base_id, TokenSequence(tuple(tokens))))
                continue
            states = [(suffix, document.get(key)) for suffix, key in (("pre", "pre_source"), ("post", "post_source"))]
            present = [(f"{base_id}:{suffix}", source) for suffix, source in states if isinstance(source, str)]
            if not present:
                raise SchemaError("expected 'source' or 'pre_source'/'post_source'", path=f"{path}:{number}")
            sources.extend(present)
        logger.info("Read %d method sources from %s", len(sources), path)
        return sources
