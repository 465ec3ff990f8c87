"""Scoring against groundtruth: per-class F1, micro-F1, row-normalized
confusion matrices, stratified cross-validation, and parameter sweeps.

Missing predictions are scored as ``unknown`` (always wrong) rather than
dropped, so an incomplete prediction file cannot inflate a score. Micro-F1
aggregates true/false positives over the classes present in the groundtruth;
when every prediction is a groundtruth class this equals plain accuracy.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .cluster import TABLE_TYPES, knn_classify
from .contexts import ContextConfig, build_corpus
from .indexing import EmptyVocabularyError, RIConfig, train_word_space
from .vectorize import TableVector, table_vector


@dataclass
class Metrics:
    per_class: dict[str, dict[str, float]]
    micro_f1: float
    confusion: np.ndarray  # rows = true label, row-normalized
    confusion_classes: list[str]
    support: dict[str, int]

    def to_record(self) -> dict:
        return {
            "micro_f1": self.micro_f1,
            "per_class": self.per_class,
            "confusion": {
                "classes": self.confusion_classes,
                "matrix": [[float(x) for x in row] for row in self.confusion],
            },
            "support": self.support,
        }


def _ordered(classes: set[str]) -> list[str]:
    known = [t for t in TABLE_TYPES if t in classes]
    return known + sorted(classes - set(TABLE_TYPES))


def score(predictions: Mapping[str, str], truth: Mapping[str, str]) -> Metrics:
    """Score predictions for every groundtruth table."""
    if not truth:
        raise ValueError("empty truth")
    pairs = [(truth[tid], predictions.get(tid, "unknown")) for tid in sorted(truth)]
    truth_classes = {t for t, _ in pairs}
    classes = _ordered(truth_classes | {p for _, p in pairs})
    index = {c: i for i, c in enumerate(classes)}
    counts = np.zeros((len(classes), len(classes)), dtype=np.int64)
    for actual, predicted in pairs:
        counts[index[actual], index[predicted]] += 1

    per_class: dict[str, dict[str, float]] = {}
    tp_total = fp_total = fn_total = 0
    for c in classes:
        i = index[c]
        tp = int(counts[i, i])
        fp = int(counts[:, i].sum() - tp)
        fn = int(counts[i, :].sum() - tp)
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = 2 * tp / (2 * tp + fp + fn) if 2 * tp + fp + fn else 0.0
        per_class[c] = {"precision": precision, "recall": recall, "f1": f1}
        if c in truth_classes:
            tp_total += tp
            fp_total += fp
            fn_total += fn
    denom = 2 * tp_total + fp_total + fn_total
    micro_f1 = 2 * tp_total / denom if denom else 0.0

    support = {c: int(counts[index[c], :].sum()) for c in classes}
    confusion = counts.astype(np.float64)
    for c in classes:
        row_sum = confusion[index[c], :].sum()
        if row_sum > 0:
            confusion[index[c], :] /= row_sum
    return Metrics(
        per_class=per_class,
        micro_f1=micro_f1,
        confusion=confusion,
        confusion_classes=classes,
        support=support,
    )


def stratified_folds(
    truth: Mapping[str, str], folds: int, seed: int
) -> list[list[str]]:
    """Seeded stratified split: ids of each class shuffled then dealt round-robin."""
    if folds < 2:
        raise ValueError("folds must be >= 2")
    if len(truth) < folds:
        raise ValueError(f"fewer samples than folds: {len(truth)} < {folds}")
    by_class: dict[str, list[str]] = {}
    for tid in sorted(truth):
        by_class.setdefault(truth[tid], []).append(tid)
    min_class = min(len(ids) for ids in by_class.values())
    if min_class < folds:
        reduced = max(2, min_class)
        warnings.warn(
            f"reducing folds from {folds} to {reduced}: smallest class has {min_class} members"
        )
        folds = reduced
    rng = np.random.default_rng(seed)
    out: list[list[str]] = [[] for _ in range(folds)]
    for cls in sorted(by_class):
        ids = by_class[cls]
        order = rng.permutation(len(ids))
        for slot, idx in enumerate(order):
            out[slot % folds].append(ids[idx])
    return out


def cross_validate(
    vectors: Sequence[TableVector],
    truth: Mapping[str, str],
    folds: int = 10,
    knn_k: int = 5,
    seed: int = 0,
) -> Metrics:
    """Stratified k-fold KNN; all held-out predictions accumulate into one score."""
    by_id = {v.table_id: v for v in vectors}
    missing = [tid for tid in truth if tid not in by_id]
    if missing:
        raise ValueError(f"no vector for {len(missing)} groundtruth tables, e.g. {missing[0]}")
    fold_ids = stratified_folds(truth, folds, seed)
    predictions: dict[str, str] = {}
    for held_out in fold_ids:
        test_set = set(held_out)
        train_ids = [tid for tid in sorted(truth) if tid not in test_set]
        train_vecs = [by_id[tid] for tid in train_ids]
        train_labels = [truth[tid] for tid in train_ids]
        k = min(knn_k, len(train_ids))
        predicted = knn_classify(train_vecs, train_labels, [by_id[t] for t in held_out], k=k)
        predictions.update(zip(held_out, predicted))
    return score(predictions, truth)


def parameter_sweep(
    grids: Sequence,
    page_texts: Sequence,
    truth: Mapping[str, str],
    dims: Sequence[int],
    contexts: Sequence[ContextConfig],
    ks: Sequence[int],
    seed: int = 0,
    folds: int = 10,
    knn_k: int = 5,
    min_count: int = 3,
    max_sentence_fraction: float = 0.3,
    ri_window: int = 2,
) -> list[dict]:
    """Rebuild the affected pipeline stages for every setting and score it.

    Each (dim, context, k) combination yields one row with the clustering
    silhouette at that k plus the cross-validated KNN micro-F1 (which depends
    only on dim and context). Settings that fail (e.g. an empty vocabulary)
    are recorded as score 0 with the diagnostic message.
    """
    from .cluster import kmeans_fit, silhouette_score

    rows: list[dict] = []
    for dim in dims:
        for ctx in contexts:
            ctx_name = context_tag(ctx)
            ri_cfg = RIConfig(
                dim=dim,
                window=ri_window,
                seed=seed,
                min_count=min_count,
                max_sentence_fraction=max_sentence_fraction,
            )
            try:
                space = train_word_space(build_corpus(grids, page_texts, ctx), ri_cfg)
                vectors = [table_vector(g, space) for g in grids]
                metrics = cross_validate(vectors, truth, folds=folds, knn_k=knn_k, seed=seed)
            except (EmptyVocabularyError, ValueError) as exc:
                for k in ks:
                    rows.append(_sweep_row(dim, ctx_name, k, 0.0, 0.0, {}, str(exc)))
                continue
            for k in ks:
                try:
                    model = kmeans_fit(vectors, k, seed=seed)
                    silhouette = silhouette_score(vectors, model.assignments, seed=seed)
                except ValueError as exc:
                    rows.append(
                        _sweep_row(dim, ctx_name, k, 0.0, metrics.micro_f1,
                                   metrics.per_class, str(exc))
                    )
                    continue
                rows.append(
                    _sweep_row(dim, ctx_name, k, silhouette, metrics.micro_f1,
                               metrics.per_class, None)
                )
    return rows


def context_tag(ctx: ContextConfig) -> str:
    parts = []
    if ctx.use_surrounding:
        parts.append("t")
    if ctx.use_cell:
        parts.append("c")
    if ctx.use_header:
        parts.append("h")
    if ctx.use_adjacent:
        parts.append("a")
    return "+".join(parts)


def _sweep_row(dim, ctx_name, k, silhouette, micro_f1, per_class, error) -> dict:
    row = {
        "dim": dim,
        "contexts": ctx_name,
        "k": k,
        "silhouette": silhouette,
        "micro_f1": micro_f1,
        "error": error or "",
    }
    for t in TABLE_TYPES:
        stats = per_class.get(t)
        row[f"f1_{t}"] = stats["f1"] if stats else ""
    return row
