# File path: cctree/models/record.py
from dataclasses import dataclass
from typing import Optional

import numpy as np
from pydantic import BaseModel, StrictBool, StrictStr, conint, root_validator, validator

from cctree.models.enums import RepresentationMode

METRIC_NAMES = ("LLOC", "LOC", "McCC", "NL", "NLE", "NOC", "NOI", "NOL", "NOS", "NUMPAR")


class ChangeRecord(BaseModel):
    """A function-level code change: before and after states plus its label."""

    id: StrictStr
    pre_source: Optional[StrictStr] = None
    post_source: Optional[StrictStr] = None
    label: StrictBool

    class Config:
        allow_mutation = False

    @validator("id")
    def id_not_empty(cls, v):
        if not v:
            raise ValueError("record id must not be empty")
        return v

    @root_validator(skip_on_failure=True)
    def at_least_one_state(cls, values):
        if values.get("pre_source") is None and values.get("post_source") is None:
            raise ValueError("a record needs pre_source, post_source or both")
        return values

    @property
    def is_added(self) -> bool:
        return self.pre_source is None

    @property
    def is_deleted(self) -> bool:
        return self.post_source is None


class MetricSet(BaseModel):
    LLOC: conint(ge=0) = 0
    LOC: conint(ge=0) = 0
    McCC: conint(ge=1) = 1
    NL: conint(ge=0) = 0
    NLE: conint(ge=0) = 0
    NOC: conint(ge=0) = 0
    NOI: conint(ge=0) = 0
    NOL: conint(ge=0) = 0
    NOS: conint(ge=0) = 0
    NUMPAR: conint(ge=0) = 0

    def as_vector(self) -> np.ndarray:
        """Metric values ordered alphabetically by metric code."""
        return np.array([getattr(self, name) for name in METRIC_NAMES], dtype=np.float32)


@dataclass(frozen=True)
class FeatureVector:
    record_id: str
    label: bool
    mode: RepresentationMode
    values: np.ndarray

    @property
    def dim(self) -> int:
        return int(self.values.shape[0])

    @property
    def pre(self) -> np.ndarray:
        return self.values[: self.dim // 2]

    @property
    def post(self) -> np.ndarray:
        return self.values[self.dim // 2:]
