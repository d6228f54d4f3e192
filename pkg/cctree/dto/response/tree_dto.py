# File path: cctree/dto/response/tree_dto.py
from typing import Any, Dict, List

from pydantic import BaseModel


class ParseResponse(BaseModel):
    tree: Dict[str, Any]
    node_count: int
    methods: List[str] = []


class FlattenResponse(BaseModel):
    tokens: List[str]
    length: int
