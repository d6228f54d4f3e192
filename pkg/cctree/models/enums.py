# File path: cctree/models/enums.py
from enum import Enum


class RankMode(str, Enum):
    POSITIONAL = "positional"
    NONE = "none"


class RepresentationMode(str, Enum):
    METRICS = "metrics"
    SIMPLE = "simple"
    CHANGE_TREE = "change_tree"


class ClassifierKind(str, Enum):
    LOGISTIC = "logistic"
    KNN = "knn"
    TREE = "tree"
