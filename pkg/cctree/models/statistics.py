# File path: cctree/models/statistics.py
from typing import List

from pydantic import BaseModel

from cctree.models.enums import RankMode


class ChangeSize(BaseModel):
    """Node counts of full ASTs and change trees for one before/after pair."""

    pre_ast_nodes: int
    post_ast_nodes: int
    pre_change_tree_nodes: int
    post_change_tree_nodes: int

    @property
    def ast_nodes(self) -> int:
        return self.pre_ast_nodes + self.post_ast_nodes

    @property
    def change_tree_nodes(self) -> int:
        return self.pre_change_tree_nodes + self.post_change_tree_nodes

    @property
    def reduction(self) -> float:
        """Fraction of nodes removed by keeping only the change trees."""
        return 1.0 - self.change_tree_nodes / self.ast_nodes if self.ast_nodes else 0.0


class CorpusStats(BaseModel):
    rank_mode: RankMode
    records: int
    states: int
    mean_ast_nodes: float
    mean_change_tree_nodes: float
    reduction: float


class DemoOutcome(BaseModel):
    rank_mode: RankMode
    sizes: ChangeSize
    pre_tree_empty: bool
    pre_tokens: List[str]
    post_tokens: List[str]
