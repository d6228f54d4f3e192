import numpy as np
import pytest

from cctree.core.exceptions import DimensionMismatchError, TooFewSamplesError
from cctree.models.enums import ClassifierKind, RepresentationMode
from cctree.models.evaluation import EvalConfig
from cctree.repositories.report_repository import ReportRepository
from cctree.services.evaluation_service import EvaluationService

FAST_GRIDS = {
    "logistic": {"eta0": [0.01], "alpha": [1e-4]},
    "knn": {"n_neighbors": [1, 3]},
    "tree": {"max_depth": [3], "min_samples_leaf": [1]},
}


def _labels(positives: int, negatives: int) -> np.ndarray:
    return np.array([1] * positives + [0] * negatives)


def _noise_dataset(positives=20, negatives=80, width=6, seed=0):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(positives + negatives, width)), _labels(positives, negatives)


def test_f1_examples():
    assert EvaluationService.f1(10, 0, 0).value == 1.0
    assert EvaluationService.f1(0, 5, 5).value == 0.0
    assert EvaluationService.f1(0, 5, 5).degenerate is False
    assert EvaluationService.f1(0, 0, 0) == (0.0, True)
    assert EvaluationService.f1(2, 1, 3).value == pytest.approx(4 / 8)


def test_f1_is_invariant_under_scaling():
    for tp, fp, fn in [(1, 2, 3), (5, 0, 7), (3, 3, 0)]:
        assert EvaluationService.f1(tp, fp, fn).value == pytest.approx(EvaluationService.f1(4 * tp, 4 * fp, 4 * fn).value)


def test_f1_rejects_negative_counts():
    with pytest.raises(ValueError):
        EvaluationService.f1(-1, 0, 0)


def test_random_baseline_is_exactly_twenty():
    row = EvaluationService.random_baseline(0.2)
    assert (row.precision, row.recall, row.f1) == (20.0, 20.0, 20.0)
    skewed = EvaluationService.random_baseline(0.2, 0.5)
    assert skewed.f1 == pytest.approx(100 * 2 * 0.2 * 0.5 / 0.7)


def test_stratified_folds_preserve_ratio():
    y = _labels(20, 80)
    splits = EvaluationService.stratified_folds(y, 10, seed=3)
    assert len(splits) == 10
    seen = []
    for train, test in splits:
        assert int(y[test].sum()) == 2
        assert len(test) == 10
        assert not set(train) & set(test)
        seen.extend(test)
    assert sorted(seen) == list(range(100))


def test_stratified_folds_are_reproducible():
    y = _labels(20, 80)
    first = EvaluationService.stratified_folds(y, 5, seed=9)
    second = EvaluationService.stratified_folds(y, 5, seed=9)
    for (a_train, a_test), (b_train, b_test) in zip(first, second):
        assert np.array_equal(a_test, b_test) and np.array_equal(a_train, b_train)


def test_stratified_folds_need_enough_minority_samples():
    with pytest.raises(TooFewSamplesError):
        EvaluationService.stratified_folds(_labels(3, 40), 5, seed=1)
    with pytest.raises(TooFewSamplesError):
        EvaluationService.stratified_folds(_labels(0, 40), 2, seed=1)


def test_upsample_balances_classes():
    X, y = _noise_dataset(10, 40)
    X_up, y_up = EvaluationService.upsample(X, y, seed=1)
    assert int((y_up == 1).sum()) == int((y_up == 0).sum()) == 40

    X_balanced, y_balanced = _noise_dataset(10, 10)
    X_same, y_same = EvaluationService.upsample(X_balanced, y_balanced, seed=1)
    assert len(y_same) == 20

    X_odd, y_odd = _noise_dataset(33, 7)
    _, y_odd_up = EvaluationService.upsample(X_odd, y_odd, seed=1)
    assert int((y_odd_up == 1).sum()) == int((y_odd_up == 0).sum())


def test_logistic_separates_linearly_separable_data():
    rng = np.random.default_rng(4)
    X = np.vstack([rng.normal(loc=-3, size=(40, 2)), rng.normal(loc=3, size=(40, 2))])
    y = np.concatenate([_labels(0, 40), _labels(40, 0)])
    classifier = EvaluationService.train_classifier(ClassifierKind.LOGISTIC, {"eta0": 0.01, "alpha": 1e-4}, X, y)
    assert (classifier.predict(X) == y).all()


def test_one_nearest_neighbour_memorizes():
    X, y = _noise_dataset(10, 30)
    classifier = EvaluationService.train_classifier(ClassifierKind.KNN, {"n_neighbors": 1}, X, y)
    assert (classifier.predict(X) == y).all()


def test_tree_on_pure_labels_is_a_single_leaf():
    X, _ = _noise_dataset(0, 30)
    classifier = EvaluationService.train_classifier(ClassifierKind.TREE, {"max_depth": 5}, X, np.zeros(30, dtype=int))
    assert classifier.estimator.tree_.node_count == 1


def test_predict_checks_feature_width():
    X, y = _noise_dataset(10, 30)
    classifier = EvaluationService.train_classifier(ClassifierKind.TREE, {"max_depth": 3}, X, y)
    with pytest.raises(DimensionMismatchError):
        classifier.predict(np.zeros((2, X.shape[1] + 1)))
    with pytest.raises(DimensionMismatchError):
        EvaluationService.train_classifier(ClassifierKind.TREE, {}, X, y[:-1])


def test_confusion_counts():
    assert EvaluationService.confusion_counts(np.array([1, 1, 0, 0]), np.array([1, 0, 1, 0])) == (1, 1, 1, 1)


def test_eval_config_validation():
    with pytest.raises(ValueError):
        EvalConfig(folds=1)
    with pytest.raises(ValueError):
        EvalConfig(classifiers=[])
    with pytest.raises(ValueError):
        EvalConfig(classifiers=[ClassifierKind.KNN], grids={"knn": {"n_neighbors": []}})


def test_evaluate_features_report_is_reproducible():
    config = EvalConfig(folds=5, seed=2, grids=FAST_GRIDS)
    datasets = {RepresentationMode.METRICS: _noise_dataset(20, 80, seed=1)}
    first = EvaluationService.evaluate_features(datasets, config)
    second = EvaluationService.evaluate_features(datasets, config)
    assert ReportRepository.to_json(first) == ReportRepository.to_json(second)
    assert first.baseline.f1 == 20.0
    assert [(r.mode, r.classifier) for r in first.results] == [
        (RepresentationMode.METRICS, kind) for kind in ClassifierKind
    ]
    for summary in first.results:
        assert len(summary.folds) == 5
        assert sum(f.tp + f.fn for f in summary.folds) == 20
        assert sum(f.tp + f.fp + f.fn + f.tn for f in summary.folds) == 100


def test_threaded_evaluation_matches_sequential():
    datasets = {RepresentationMode.METRICS: _noise_dataset(20, 80, seed=5)}
    sequential = EvaluationService.evaluate_features(datasets, EvalConfig(folds=4, grids=FAST_GRIDS))
    threaded = EvaluationService.evaluate_features(datasets, EvalConfig(folds=4, grids=FAST_GRIDS, threads=3))
    assert [r.f1 for r in sequential.results] == [r.f1 for r in threaded.results]


def test_independent_labels_score_near_chance():
    config = EvalConfig(folds=5, seed=1, grids=FAST_GRIDS, classifiers=[ClassifierKind.LOGISTIC])
    report = EvaluationService.evaluate_features({RepresentationMode.METRICS: _noise_dataset(40, 160, seed=8)}, config)
    # A balanced-trained classifier on noise predicts positive about half the time: F1 near 2*0.2*0.5/0.7
    assert abs(report.results[0].f1 - 100 * 2 * 0.2 * 0.5 / 0.7) < 12


def test_run_experiment_needs_two_folds_of_minority(small_planted):
    with pytest.raises(TooFewSamplesError):
        EvaluationService.run_experiment(small_planted, [RepresentationMode.METRICS], EvalConfig(folds=11))


def test_markdown_table_layout():
    config = EvalConfig(folds=3, grids=FAST_GRIDS)
    report = EvaluationService.evaluate_features({RepresentationMode.METRICS: _noise_dataset(20, 40, seed=2)}, config)
    lines = ReportRepository.to_markdown(report).splitlines()
    assert lines[0] == "| Representation | Logistic Regression | K-Nearest Neighbors | Decision Tree | Average |"
    assert lines[2] == "| Random Guesser | 20.00 | 20.00 | 20.00 | 20.00 |"
    assert lines[3].startswith("| Metrics |")


def test_report_file_round_trip(tmp_path):
    config = EvalConfig(folds=3, grids=FAST_GRIDS, classifiers=[ClassifierKind.TREE])
    report = EvaluationService.evaluate_features({RepresentationMode.METRICS: _noise_dataset(20, 40)}, config)
    path = tmp_path / "report.json"
    markdown = ReportRepository.save(report, path)
    assert markdown.read_text(encoding="utf-8") == ReportRepository.to_markdown(report)
    assert ReportRepository.to_json(ReportRepository.load(path)) == path.read_text(encoding="utf-8")


def test_select_params_on_too_few_samples_is_a_data_error():
    X, y = _noise_dataset(2, 2, seed=3)
    config = EvalConfig(classifiers=[ClassifierKind.KNN], grids=FAST_GRIDS)
    with pytest.raises(TooFewSamplesError):
        EvaluationService.select_params(ClassifierKind.KNN, X, y, config)
