# File path: cctree/core/manifest.py
import hashlib
import json
import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field

from cctree import __version__

logger = logging.getLogger(__name__)

MANIFEST_SUFFIX = ".manifest.json"


def config_hash(config: Dict[str, Any]) -> str:
    """SHA-256 over the canonical JSON form of the effective configuration."""
    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _now() -> datetime:
    return datetime.now(timezone.utc)


class RunManifest(BaseModel):
    subcommand: str
    inputs: List[str] = []
    outputs: List[str] = []
    config: Dict[str, Any] = {}
    config_hash: str = ""
    seed: Optional[int] = None
    tool_version: str = __version__
    started_at: datetime = Field(default_factory=_now)
    finished_at: Optional[datetime] = None

    @classmethod
    def start(cls, subcommand: str, inputs: List[str], config: Dict[str, Any]) -> "RunManifest":
        return cls(
            subcommand=subcommand,
            inputs=[str(path) for path in inputs],
            config=config,
            config_hash=config_hash(config),
            seed=config.get("seed"),
        )

    def finish(self, outputs: List[Union[str, Path]]) -> "RunManifest":
        self.outputs = [str(path) for path in outputs]
        self.finished_at = _now()
        return self

    @staticmethod
    def sidecar_path(output: Union[str, Path]) -> Path:
        output = Path(output)
        return output.with_name(output.name + MANIFEST_SUFFIX)

    def write(self, output: Union[str, Path]) -> Path:
        """Write the manifest next to `output`."""
        path = self.sidecar_path(output)
        path.write_text(self.json(sort_keys=True, indent=2) + "\n", encoding="utf-8")
        logger.debug("Wrote run manifest %s", path)
        return path
