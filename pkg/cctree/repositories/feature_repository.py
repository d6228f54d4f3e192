# File path: cctree/repositories/feature_repository.py
import logging
from pathlib import Path
from typing import List, Sequence, Union

import numpy as np
import pandas as pd

from cctree.core.exceptions import CorruptFileError
from cctree.models.enums import RepresentationMode
from cctree.models.record import FeatureVector

logger = logging.getLogger(__name__)


class FeatureRepository:
    @staticmethod
    def to_frame(vectors: Sequence[FeatureVector]) -> pd.DataFrame:
        """One row per record: id, label (0/1), f0..f{n-1}."""
        width = vectors[0].dim if vectors else 0
        frame = pd.DataFrame(
            np.vstack([v.values for v in vectors]) if vectors else np.zeros((0, width)),
            columns=[f"f{i}" for i in range(width)],
        )
        frame.insert(0, "label", [int(v.label) for v in vectors])
        frame.insert(0, "id", [v.record_id for v in vectors])
        return frame

    @staticmethod
    def save(vectors: Sequence[FeatureVector], path: Union[str, Path]) -> None:
        FeatureRepository.to_frame(vectors).to_csv(path, index=False, float_format="%.9g")
        logger.info("Wrote %d feature vectors to %s", len(vectors), path)

    @staticmethod
    def load(path: Union[str, Path], mode: RepresentationMode) -> List[FeatureVector]:
        """Read a feature CSV written by `save`."""
        frame = pd.read_csv(path, dtype={"id": str})
        if list(frame.columns[:2]) != ["id", "label"]:
            raise CorruptFileError(f"{path}: expected columns id,label,f0..")
        values = frame.drop(columns=["id", "label"]).to_numpy(dtype=np.float32)
        return [
            FeatureVector(record_id=record_id, label=bool(label), mode=mode, values=row)
            for record_id, label, row in zip(frame["id"], frame["label"], values)
        ]
