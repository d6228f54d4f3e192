# File path: cctree/dto/request/tree_dto.py
import re
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Extra, StrictStr, root_validator, validator

_FORBIDDEN_KIND = re.compile(r"[\s|]")


class TreeNodeDocument(BaseModel):
    """One node of the generic tree JSON schema; children are checked node by node."""
    kind: StrictStr
    token: Optional[StrictStr] = None
    children: Optional[List[Any]] = None

    class Config:
        extra = Extra.forbid

    @validator("kind")
    def kind_is_atomic(cls, v):
        if not v:
            raise ValueError("kind must be non-empty")
        if _FORBIDDEN_KIND.search(v) or v.startswith("<"):
            raise ValueError("kind cannot contain whitespace or '|', or start with '<'")
        return v

    @root_validator(skip_on_failure=True)
    def leaf_carries_token(cls, values):
        children = values.get("children") or []
        token = values.get("token")
        if children and token is not None:
            raise ValueError("token is only allowed on leaves")
        if not children and token is None:
            raise ValueError("a leaf must carry a token")
        return values


class ParseRequest(BaseModel):
    source: str


class FlattenRequest(BaseModel):
    tree: Dict[str, Any]
