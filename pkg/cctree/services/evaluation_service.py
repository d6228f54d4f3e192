# File path: cctree/services/evaluation_service.py
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from imblearn.over_sampling import RandomOverSampler
from sklearn.linear_model import SGDClassifier
from sklearn.metrics import confusion_matrix
from sklearn.model_selection import ParameterGrid, StratifiedKFold, train_test_split
from sklearn.neighbors import KNeighborsClassifier
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler
from sklearn.tree import DecisionTreeClassifier

from cctree import __version__
from cctree.core.exceptions import DimensionMismatchError, TooFewSamplesError
from cctree.models.embedding import EmbeddingModel
from cctree.models.enums import ClassifierKind, RankMode, RepresentationMode
from cctree.models.evaluation import BaselineRow, EvalConfig, EvalReport, F1Result, FoldResult, ScoreSummary
from cctree.models.record import ChangeRecord
from cctree.models.vocabulary import OovPolicy, Vocabulary
from cctree.services.feature_service import FeatureService

logger = logging.getLogger(__name__)

Split = Tuple[np.ndarray, np.ndarray]


@dataclass
class Classifier:
    kind: ClassifierKind
    params: Dict[str, Any]
    estimator: Any
    n_features: int

    def predict(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X)
        if X.ndim != 2 or X.shape[1] != self.n_features:
            raise DimensionMismatchError(f"expected {self.n_features} features, got shape {X.shape}")
        return self.estimator.predict(X)


def _as_features(X) -> np.ndarray:
    try:
        X = np.asarray(X, dtype=np.float64)
    except ValueError as e:
        raise DimensionMismatchError(f"feature vectors differ in width: {e}")
    if X.ndim != 2:
        raise DimensionMismatchError(f"expected a 2-D feature matrix, got shape {X.shape}")
    return X


def _require_both_classes(y: np.ndarray) -> Tuple[int, int]:
    positives = int(np.sum(y == 1))
    negatives = int(np.sum(y == 0))
    if positives == 0 or negatives == 0:
        raise TooFewSamplesError(f"both classes are required (positives={positives}, negatives={negatives})")
    return positives, negatives


class EvaluationService:
    @staticmethod
    def f1(tp: int, fp: int, fn: int) -> F1Result:
        """Harmonic mean of precision and recall; 0 with a degenerate flag when nothing was positive."""
        if min(tp, fp, fn) < 0:
            raise ValueError("counts must be non-negative")
        if tp == 0:
            return F1Result(0.0, degenerate=(fp == 0 and fn == 0))
        # 2PR/(P+R) reduces to 2tp/(2tp+fp+fn)
        return F1Result(2 * tp / (2 * tp + fp + fn), degenerate=False)

    @staticmethod
    def precision_recall(tp: int, fp: int, fn: int) -> Tuple[float, float]:
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        return precision, recall

    @staticmethod
    def random_baseline(positive_rate: float, guess_probability: Optional[float] = None) -> BaselineRow:
        """Expected scores of guessing positive with probability p at positive rate r, in percent."""
        r = Fraction(str(positive_rate))
        p = Fraction(str(guess_probability)) if guess_probability is not None else r
        f1 = 2 * r * p / (r + p)
        return BaselineRow(
            positive_rate=float(r),
            guess_probability=float(p),
            precision=float(r * 100),
            recall=float(p * 100),
            f1=float(f1 * 100),
        )

    @staticmethod
    def stratified_folds(y: Sequence[int], k: int, seed: int) -> List[Split]:
        """k (train, test) index splits preserving the class ratio."""
        y = np.asarray(y)
        minority = min(_require_both_classes(y))
        if k < 2 or k > minority:
            raise TooFewSamplesError(f"cannot build {k} folds with {minority} samples in the minority class")
        splitter = StratifiedKFold(n_splits=k, shuffle=True, random_state=seed)
        return list(splitter.split(np.zeros((len(y), 1)), y))

    @staticmethod
    def upsample(X: np.ndarray, y: np.ndarray, seed: int) -> Tuple[np.ndarray, np.ndarray]:
        """Duplicate minority samples (with replacement) until both classes have equal counts."""
        _require_both_classes(np.asarray(y))
        sampler = RandomOverSampler(sampling_strategy="auto", random_state=seed)
        return sampler.fit_resample(X, y)

    @staticmethod
    def train_classifier(kind: ClassifierKind, params: Mapping[str, Any], X, y, seed: int = 1) -> Classifier:
        """Fit one classifier family with the given hyperparameters."""
        X = _as_features(X)
        y = np.asarray(y)
        if len(X) == 0 or len(X) != len(y):
            raise DimensionMismatchError(f"{len(X)} feature rows for {len(y)} labels")
        params = dict(params)

        if kind == ClassifierKind.LOGISTIC:
            estimator = make_pipeline(
                StandardScaler(),
                SGDClassifier(
                    loss="log_loss", penalty="l2", learning_rate="constant",
                    eta0=params.get("eta0", 0.01), alpha=params.get("alpha", 1e-4),
                    max_iter=1000, tol=1e-4, random_state=seed,
                ),
            )
        elif kind == ClassifierKind.KNN:
            estimator = KNeighborsClassifier(
                n_neighbors=min(params.get("n_neighbors", 5), len(X)), metric="euclidean"
            )
        elif kind == ClassifierKind.TREE:
            estimator = DecisionTreeClassifier(
                criterion="gini", max_depth=params.get("max_depth"),
                min_samples_leaf=params.get("min_samples_leaf", 1), random_state=seed,
            )
        else:
            raise ValueError(f"unknown classifier kind: {kind}")

        estimator.fit(X, y)
        return Classifier(kind=kind, params=params, estimator=estimator, n_features=X.shape[1])

    @staticmethod
    def confusion_counts(y_true: np.ndarray, y_pred: np.ndarray) -> Tuple[int, int, int, int]:
        """(tp, fp, fn, tn) with 1 as the positive class."""
        tn, fp, fn, tp = confusion_matrix(y_true, y_pred, labels=[0, 1]).ravel()
        return int(tp), int(fp), int(fn), int(tn)

    @staticmethod
    def select_params(kind: ClassifierKind, X: np.ndarray, y: np.ndarray, config: EvalConfig) -> Dict[str, Any]:
        """Grid point with the best F1 on an inner stratified validation split of the training fold."""
        grid = list(ParameterGrid(config.grids[kind.value]))
        if len(grid) == 1:
            return grid[0]
        try:
            X_train, X_val, y_train, y_val = train_test_split(
                X, y, test_size=config.inner_validation_fraction, stratify=y, random_state=config.seed
            )
        except ValueError as e:
            # sklearn rejects splits that cannot hold every class on both sides
            raise TooFewSamplesError(f"cannot hold out a stratified validation split of {len(y)} samples: {e}")
        if config.upsample_to_balance:
            X_train, y_train = EvaluationService.upsample(X_train, y_train, config.seed)

        best_params, best_score = grid[0], -1.0
        for params in grid:
            classifier = EvaluationService.train_classifier(kind, params, X_train, y_train, config.seed)
            tp, fp, fn, _ = EvaluationService.confusion_counts(y_val, classifier.predict(X_val))
            score = EvaluationService.f1(tp, fp, fn).value
            # First grid point wins ties
            if score > best_score:
                best_params, best_score = params, score
        return best_params

    @staticmethod
    def run_fold(kind: ClassifierKind, fold: int, split: Split, X: np.ndarray, y: np.ndarray,
                 config: EvalConfig) -> FoldResult:
        train_index, test_index = split
        X_train, y_train = X[train_index], y[train_index]
        params = EvaluationService.select_params(kind, X_train, y_train, config)
        if config.upsample_to_balance:
            X_train, y_train = EvaluationService.upsample(X_train, y_train, config.seed)
        classifier = EvaluationService.train_classifier(kind, params, X_train, y_train, config.seed)

        # Test folds are scored as-is
        tp, fp, fn, tn = EvaluationService.confusion_counts(y[test_index], classifier.predict(X[test_index]))
        precision, recall = EvaluationService.precision_recall(tp, fp, fn)
        return FoldResult(
            fold=fold, tp=tp, fp=fp, fn=fn, tn=tn,
            precision=precision * 100, recall=recall * 100,
            f1=EvaluationService.f1(tp, fp, fn).value * 100,
            params=params,
        )

    @staticmethod
    def evaluate_features(datasets: Mapping[RepresentationMode, Tuple[np.ndarray, np.ndarray]],
                          config: Optional[EvalConfig] = None) -> EvalReport:
        """Cross-validate every classifier on every representation's (X, y)."""
        config = config or EvalConfig()
        jobs = []
        for mode, (X, y) in datasets.items():
            X, y = _as_features(X), np.asarray(y)
            splits = EvaluationService.stratified_folds(y, config.folds, config.seed)
            for kind in config.classifiers:
                for fold, split in enumerate(splits):
                    jobs.append((mode, kind, fold, split, X, y))

        def work(job) -> FoldResult:
            mode, kind, fold, split, X, y = job
            logger.debug("Fold %d: %s on %s", fold, kind.value, mode.value)
            return EvaluationService.run_fold(kind, fold, split, X, y, config)

        if config.threads > 1:
            with ThreadPoolExecutor(max_workers=config.threads) as pool:
                fold_results = list(pool.map(work, jobs))
        else:
            fold_results = [work(job) for job in jobs]

        # Reduce in (mode, classifier, fold) order
        grouped: Dict[Tuple[RepresentationMode, ClassifierKind], List[FoldResult]] = {}
        for job, result in zip(jobs, fold_results):
            grouped.setdefault((job[0], job[1]), []).append(result)
        results = []
        for (mode, kind), folds in grouped.items():
            results.append(ScoreSummary(
                mode=mode,
                classifier=kind,
                precision=float(np.mean([f.precision for f in folds])),
                recall=float(np.mean([f.recall for f in folds])),
                f1=float(np.mean([f.f1 for f in folds])),
                folds=folds,
            ))
            logger.info("%s / %s: mean F1 %.2f over %d folds", mode.value, kind.value, results[-1].f1, len(folds))

        return EvalReport(
            config=config,
            results=results,
            baseline=EvaluationService.random_baseline(config.positive_rate_for_baseline, config.guess_probability),
            tool_version=__version__,
        )

    @staticmethod
    def run_experiment(records: Sequence[ChangeRecord], modes: Sequence[RepresentationMode],
                       config: Optional[EvalConfig] = None, model: Optional[EmbeddingModel] = None,
                       rank_mode: RankMode = RankMode.NONE, vocab: Optional[Vocabulary] = None,
                       policy: Optional[OovPolicy] = None, threads: int = 1) -> EvalReport:
        """Featurize the records once per representation and cross-validate all classifiers."""
        config = config or EvalConfig()
        labels = np.array([int(r.label) for r in records])
        minority = min(_require_both_classes(labels))
        if minority < 2 * config.folds:
            raise TooFewSamplesError(
                f"need at least {2 * config.folds} records per class for {config.folds} folds, found {minority}"
            )

        datasets = {}
        for mode in modes:
            vectors = FeatureService.featurize_records(records, mode, model, rank_mode, vocab, policy, threads)
            datasets[mode] = FeatureService.as_matrix(vectors)
        return EvaluationService.evaluate_features(datasets, config)
