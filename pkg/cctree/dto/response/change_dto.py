# File path: cctree/dto/response/change_dto.py
from typing import Any, Dict, List, Optional

from pydantic import BaseModel

from cctree.models.enums import RankMode
from cctree.models.record import MetricSet
from cctree.models.statistics import ChangeSize


class DiffResponse(BaseModel):
    rank_mode: RankMode
    pre_tree: Optional[Dict[str, Any]] = None
    post_tree: Optional[Dict[str, Any]] = None
    pre_tokens: List[str]
    post_tokens: List[str]
    sizes: ChangeSize


class MetricsResponse(BaseModel):
    method: str
    metrics: MetricSet
    vector: List[float]
