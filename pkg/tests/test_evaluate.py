import random

import numpy as np
import pytest

from tabletyper.contexts import ContextConfig
from tabletyper.evaluate import cross_validate, parameter_sweep, score, stratified_folds
from tabletyper.preprocess import Cell, CellGrid
from tabletyper.vectorize import TableVector




def tv(table_id, values):
    return TableVector(table_id=table_id, values=np.asarray(values, dtype=np.float64))


# --- score ------------------------------------------------------------------

def test_perfect_predictions():
    truth = {"a": "relational", "b": "entity", "c": "matrix"}
    metrics = score(dict(truth), truth)
    assert metrics.micro_f1 == 1.0
    for stats in metrics.per_class.values():
        assert stats["f1"] == 1.0
    assert np.array_equal(metrics.confusion, np.eye(3))


def test_hand_computed_example():
    truth = {"a": "relational", "b": "relational", "c": "entity"}
    predictions = {"a": "relational", "b": "entity", "c": "entity"}
    metrics = score(predictions, truth)
    assert metrics.per_class["relational"]["f1"] == pytest.approx(2 / 3)
    assert metrics.per_class["entity"]["f1"] == pytest.approx(2 / 3)
    assert metrics.micro_f1 == pytest.approx(2 / 3)


def test_all_unknown_scores_zero():
    truth = {"a": "relational", "b": "entity"}
    metrics = score({}, truth)  # missing predictions counted as unknown
    assert metrics.micro_f1 == 0.0


def test_micro_equals_accuracy():
    rng = random.Random(31)
    classes = ["relational", "entity", "matrix", "non_data"]
    truth = {f"t{i}": rng.choice(classes) for i in range(200)}
    predictions = {tid: rng.choice(classes) for tid in truth}
    metrics = score(predictions, truth)
    accuracy = sum(predictions[t] == truth[t] for t in truth) / len(truth)
    assert metrics.micro_f1 == pytest.approx(accuracy, abs=1e-12)


def test_confusion_rows_normalized():
    rng = random.Random(5)
    classes = ["relational", "entity", "matrix"]
    truth = {f"t{i}": rng.choice(classes) for i in range(60)}
    predictions = {tid: rng.choice(classes + ["unknown"]) for tid in truth}
    metrics = score(predictions, truth)
    for row in metrics.confusion:
        total = row.sum()
        assert total == pytest.approx(1.0, abs=1e-12) or total == 0.0


def test_score_iteration_order_invariant():
    rng = random.Random(6)
    classes = ["relational", "entity"]
    truth = {f"t{i}": rng.choice(classes) for i in range(50)}
    predictions = {tid: rng.choice(classes) for tid in truth}
    reversed_preds = dict(reversed(list(predictions.items())))
    a = score(predictions, truth)
    b = score(reversed_preds, dict(reversed(list(truth.items()))))
    assert a.micro_f1 == b.micro_f1
    assert a.per_class == b.per_class


def test_empty_truth_error():
    with pytest.raises(ValueError):
        score({}, {})


# --- cross-validation -------------------------------------------------------

def separable_data(n_per=30, seed=0):
    rng = np.random.default_rng(seed)
    vectors, truth = [], {}
    for cls, center in (("relational", (0, 10)), ("entity", (10, 0)), ("matrix", (10, 10))):
        for i in range(n_per):
            tid = f"{cls[:3]}{i}"
            vectors.append(tv(tid, rng.normal(0, 0.4, 2) + np.array(center)))
            truth[tid] = cls
    return vectors, truth


def test_cv_separable_is_perfect():
    vectors, truth = separable_data()
    metrics = cross_validate(vectors, truth, folds=10, knn_k=5, seed=3)
    assert metrics.micro_f1 == 1.0


def test_cv_chance_level_on_noise():
    scores = []
    for seed in range(5):
        rng = np.random.default_rng(seed)
        classes = ["relational", "entity", "matrix", "non_data"]
        vectors = [tv(f"t{i}", rng.normal(size=6)) for i in range(120)]
        truth = {f"t{i}": classes[i % 4] for i in range(120)}
        metrics = cross_validate(vectors, truth, folds=10, knn_k=5, seed=seed)
        scores.append(metrics.micro_f1)
    assert abs(sum(scores) / len(scores) - 0.25) < 0.1


def test_cv_fold_determinism():
    vectors, truth = separable_data(seed=2)
    a = stratified_folds(truth, 10, seed=9)
    b = stratified_folds(truth, 10, seed=9)
    assert a == b
    c = stratified_folds(truth, 10, seed=10)
    assert a != c


def test_cv_invalid_folds():
    vectors, truth = separable_data(n_per=5)
    with pytest.raises(ValueError):
        cross_validate(vectors, truth, folds=1)


def test_cv_reduces_folds_with_warning():
    vectors, truth = separable_data(n_per=4)
    with pytest.warns(UserWarning, match="reducing folds"):
        metrics = cross_validate(vectors, truth, folds=10, knn_k=3, seed=0)
    assert metrics.micro_f1 == 1.0


def test_cv_missing_vector_error():
    vectors, truth = separable_data(n_per=3)
    with pytest.raises(ValueError):
        cross_validate(vectors[:-1], truth, folds=2)


# --- parameter sweep --------------------------------------------------------

def sweep_fixture():
    rng = random.Random(12)
    grids, truth = [], {}
    kinds = {
        "relational": [["alpha", "beta"], ["alpha", "gamma"]],
        "entity": [["delta", "eps"], ["delta", "zeta"]],
    }
    for cls, rows in kinds.items():
        for i in range(12):
            tid = f"{cls[:3]}{i}"
            cells = [
                [Cell(tokens=[rng.choice(rows[0]), rng.choice(rows[1])]) for _ in range(2)]
                for _ in range(2)
            ]
            grids.append(CellGrid(table_id=tid, n_rows=2, n_cols=2, cells=cells))
            truth[tid] = cls
    return grids, truth


def test_sweep_single_setting():
    grids, truth = sweep_fixture()
    rows = parameter_sweep(
        grids, [], truth,
        dims=[16], contexts=[ContextConfig(use_cell=True)], ks=[2],
        seed=0, folds=2, knn_k=3, min_count=1, max_sentence_fraction=1.0,
    )
    assert len(rows) == 1
    row = rows[0]
    assert row["dim"] == 16 and row["contexts"] == "c" and row["k"] == 2
    assert row["error"] == ""
    assert 0.0 <= row["micro_f1"] <= 1.0
    assert -1.0 <= row["silhouette"] <= 1.0


def test_sweep_records_empty_vocabulary_as_zero():
    grids, truth = sweep_fixture()
    rows = parameter_sweep(
        grids, [], truth,
        dims=[16],
        contexts=[ContextConfig(use_surrounding=True, use_cell=False)],
        ks=[2],
        seed=0, folds=2,
    )
    assert rows[0]["micro_f1"] == 0.0
    assert rows[0]["silhouette"] == 0.0
    assert "empty vocabulary" in rows[0]["error"]


def test_sweep_dimension_rows():
    grids, truth = sweep_fixture()
    rows = parameter_sweep(
        grids, [], truth,
        dims=[8, 16], contexts=[ContextConfig(use_cell=True)], ks=[2, 3],
        seed=1, folds=2, knn_k=3, min_count=1, max_sentence_fraction=1.0,
    )
    assert len(rows) == 4
    assert [(r["dim"], r["k"]) for r in rows] == [(8, 2), (8, 3), (16, 2), (16, 3)]
