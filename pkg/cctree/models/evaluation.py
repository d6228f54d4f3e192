# File path: cctree/models/evaluation.py
from typing import Any, Dict, List, NamedTuple, Optional

from pydantic import BaseModel, confloat, conint, validator

from cctree.models.enums import ClassifierKind, RepresentationMode

# ParameterGrid-style grids, keyed by classifier kind
DEFAULT_GRIDS: Dict[str, Dict[str, List[Any]]] = {
    ClassifierKind.LOGISTIC.value: {"eta0": [0.001, 0.01, 0.1], "alpha": [1e-4, 1e-3, 1e-2]},
    ClassifierKind.KNN.value: {"n_neighbors": [1, 3, 5, 7, 11]},
    ClassifierKind.TREE.value: {"max_depth": [3, 5, 8, 12], "min_samples_leaf": [1, 5, 10]},
}

CLASSIFIER_TITLES = {
    ClassifierKind.LOGISTIC: "Logistic Regression",
    ClassifierKind.KNN: "K-Nearest Neighbors",
    ClassifierKind.TREE: "Decision Tree",
}

REPRESENTATION_TITLES = {
    RepresentationMode.METRICS: "Metrics",
    RepresentationMode.SIMPLE: "Simple",
    RepresentationMode.CHANGE_TREE: "Change Tree",
}


class F1Result(NamedTuple):
    value: float
    # True when tp = fp = fn = 0 and the score is undefined
    degenerate: bool


class EvalConfig(BaseModel):
    folds: conint(ge=2) = 10
    upsample_to_balance: bool = True
    seed: conint(ge=0) = 1
    classifiers: List[ClassifierKind] = list(ClassifierKind)
    grids: Dict[str, Dict[str, List[Any]]] = DEFAULT_GRIDS
    positive_rate_for_baseline: confloat(gt=0, le=1) = 0.2
    # Defaults to the positive rate
    guess_probability: Optional[confloat(gt=0, le=1)] = None
    inner_validation_fraction: confloat(gt=0, lt=1) = 0.2
    threads: conint(ge=1) = 1

    @validator("classifiers")
    def classifiers_not_empty(cls, v):
        if not v:
            raise ValueError("at least one classifier is required")
        return v

    @validator("grids")
    def grids_not_empty(cls, v, values):
        for kind in values.get("classifiers", []):
            grid = v.get(kind.value)
            if not grid or any(len(options) == 0 for options in grid.values()):
                raise ValueError(f"grid for '{kind.value}' must be non-empty")
        return v


class FoldResult(BaseModel):
    fold: int
    tp: int
    fp: int
    fn: int
    tn: int
    precision: float
    recall: float
    f1: float
    params: Dict[str, Any]


class ScoreSummary(BaseModel):
    mode: RepresentationMode
    classifier: ClassifierKind
    precision: float
    recall: float
    f1: float
    folds: List[FoldResult]


class BaselineRow(BaseModel):
    positive_rate: float
    guess_probability: float
    precision: float
    recall: float
    f1: float


class EvalReport(BaseModel):
    """Scores in percent, mean over folds, per representation and classifier."""

    config: EvalConfig
    results: List[ScoreSummary]
    baseline: BaselineRow
    tool_version: str

    def summary(self, mode: RepresentationMode, classifier: ClassifierKind) -> Optional[ScoreSummary]:
        return next((r for r in self.results if r.mode == mode and r.classifier == classifier), None)

    def modes(self) -> List[RepresentationMode]:
        return list(dict.fromkeys(r.mode for r in self.results))

    def mean_f1(self, mode: RepresentationMode) -> float:
        """Average F1 of one representation across classifiers."""
        scores = [r.f1 for r in self.results if r.mode == mode]
        return sum(scores) / len(scores) if scores else 0.0
