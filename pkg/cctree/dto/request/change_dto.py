# File path: cctree/dto/request/change_dto.py
from typing import Optional

from pydantic import BaseModel

from cctree.models.enums import RankMode


class DiffRequest(BaseModel):
    pre_source: str
    post_source: str
    method: Optional[str] = None
    rank_mode: RankMode = RankMode.NONE


class MetricsRequest(BaseModel):
    source: str
    # Qualified, `Class.method` or simple name; the source must hold one method otherwise
    method: Optional[str] = None
