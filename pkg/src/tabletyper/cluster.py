"""K-means clustering of table vectors, silhouette-based k selection,
centroid representatives, cluster labeling, and the supervised KNN mode.

Everything here is seed-deterministic: one Lloyd fit per k with
distance-proportional seeding, ties broken by stable orderings, so identical
inputs always reproduce identical models.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .vectorize import TableVector

TABLE_TYPES = ("relational", "entity", "matrix", "list", "non_data", "unknown")

DEFAULT_K_CANDIDATES = (4, 6, 8, 10, 12, 14)
DEFAULT_REPRESENTATIVES = 5
DEFAULT_KNN_K = 5
SILHOUETTE_SUBSAMPLE = 5000


class InsufficientPointsError(ValueError):
    pass


class SilhouetteUndefinedError(ValueError):
    pass


class InvalidClusterError(ValueError):
    pass


def validate_type(label: str) -> str:
    if label not in TABLE_TYPES:
        raise ValueError(f"unknown table type: {label!r}")
    return label


@dataclass
class ClusterModel:
    k: int
    centroids: np.ndarray  # (k, 6d)
    assignments: dict[str, int]
    inertia: float
    seed: int
    # Inertia measured at every assignment step; non-increasing by construction.
    inertia_history: list[float] = field(default_factory=list)


def _as_matrix(vectors: Sequence[TableVector]) -> tuple[list[str], np.ndarray]:
    ids = [v.table_id for v in vectors]
    return ids, np.stack([np.asarray(v.values, dtype=np.float64) for v in vectors])


def _sq_distances(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    # |p - c|^2 via the Gram expansion; clamp the cancellation residue.
    p2 = np.einsum("ij,ij->i", points, points)
    c2 = np.einsum("ij,ij->i", centers, centers)
    sq = p2[:, None] + c2[None, :] - 2.0 * (points @ centers.T)
    return np.maximum(sq, 0.0)


def _seed_centroids(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """First center uniform, the rest sampled proportional to squared distance
    to the nearest chosen center."""
    n = points.shape[0]
    centers = np.empty((k, points.shape[1]), dtype=np.float64)
    centers[0] = points[rng.integers(n)]
    nearest_sq = np.einsum("ij,ij->i", points - centers[0], points - centers[0])
    for c in range(1, k):
        total = nearest_sq.sum()
        if total <= 0.0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=nearest_sq / total))
        centers[c] = points[idx]
        diff = points - centers[c]
        nearest_sq = np.minimum(nearest_sq, np.einsum("ij,ij->i", diff, diff))
    return centers


def kmeans_fit(
    vectors: Sequence[TableVector],
    k: int,
    seed: int = 0,
    max_iter: int = 100,
    tol: float = 1e-4,
) -> ClusterModel:
    """Lloyd iterations to convergence (relative inertia improvement < tol).

    Empty clusters are repaired by reseeding their centroid at the point
    farthest from its assigned centroid. The returned assignments are
    computed against the returned centroids, so every table sits with its
    nearest centroid.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    ids, points = _as_matrix(vectors)
    n = points.shape[0]
    if n < k:
        raise InsufficientPointsError(f"insufficient points: {n} < k={k}")
    rng = np.random.default_rng(seed)
    centers = _seed_centroids(points, k, rng)
    history: list[float] = []
    labels = np.zeros(n, dtype=np.int64)
    prev_inertia = np.inf
    for _ in range(max_iter):
        sq = _sq_distances(points, centers)
        labels = sq.argmin(axis=1)
        inertia = float(sq[np.arange(n), labels].sum())
        history.append(inertia)
        if prev_inertia < np.inf:
            improvement = (prev_inertia - inertia) / prev_inertia if prev_inertia > 0 else 0.0
            if improvement < tol:
                break
        prev_inertia = inertia
        new_centers = centers.copy()
        for c in range(k):
            members = points[labels == c]
            if len(members):
                new_centers[c] = members.mean(axis=0)
        empties = [c for c in range(k) if not (labels == c).any()]
        if empties:
            dist_to_own = sq[np.arange(n), labels]
            order = np.argsort(-dist_to_own, kind="stable")
            for slot, c in enumerate(empties):
                new_centers[c] = points[order[slot]]
        centers = new_centers
    return ClusterModel(
        k=k,
        centroids=centers,
        assignments={ids[i]: int(labels[i]) for i in range(n)},
        inertia=history[-1],
        seed=seed,
        inertia_history=history,
    )


def silhouette_score(
    vectors: Sequence[TableVector],
    assignments: Mapping[str, int],
    seed: int = 0,
) -> float:
    """Mean silhouette coefficient under Euclidean distance, exact O(n^2).

    Points in singleton clusters score 0 by convention. Inputs beyond 5000
    points are subsampled with the seeded generator to bound the quadratic
    cost.
    """
    ids, points = _as_matrix(vectors)
    labels = np.asarray([assignments[i] for i in ids], dtype=np.int64)
    if len(set(labels.tolist())) < 2:
        raise SilhouetteUndefinedError("silhouette undefined for a single cluster")
    n = points.shape[0]
    if n > SILHOUETTE_SUBSAMPLE:
        rng = np.random.default_rng(seed)
        keep = rng.choice(n, size=SILHOUETTE_SUBSAMPLE, replace=False)
        keep.sort()
        points, labels = points[keep], labels[keep]
        if len(set(labels.tolist())) < 2:
            raise SilhouetteUndefinedError("silhouette undefined for a single cluster")
        n = points.shape[0]
    dist = np.sqrt(_sq_distances(points, points))
    np.fill_diagonal(dist, 0.0)
    clusters = sorted(set(labels.tolist()))
    sizes = {c: int((labels == c).sum()) for c in clusters}
    scores = np.zeros(n, dtype=np.float64)
    mean_to = np.stack([dist[:, labels == c].mean(axis=1) for c in clusters], axis=1)
    for idx in range(n):
        own = labels[idx]
        own_pos = clusters.index(own)
        if sizes[own] < 2:
            continue  # singleton: score stays 0
        a = dist[idx, labels == own].sum() / (sizes[own] - 1)
        b = min(mean_to[idx, pos] for pos, c in enumerate(clusters) if c != own)
        denom = max(a, b)
        scores[idx] = 0.0 if denom == 0.0 else (b - a) / denom
    return float(scores.mean())


def select_k(
    vectors: Sequence[TableVector],
    candidates: Sequence[int] = DEFAULT_K_CANDIDATES,
    seed: int = 0,
) -> tuple[int, dict[int, float]]:
    """Fit every candidate k and keep the best mean silhouette (ties: smaller k)."""
    if not candidates:
        raise ValueError("candidates must be non-empty")
    if max(candidates) > len(vectors):
        raise InsufficientPointsError(
            f"insufficient points: {len(vectors)} < k={max(candidates)}"
        )
    sweep: dict[int, float] = {}
    for k in candidates:
        model = kmeans_fit(vectors, k, seed=seed)
        sweep[k] = silhouette_score(vectors, model.assignments, seed=seed)
    best = max(sorted(sweep), key=lambda k: sweep[k])
    return best, sweep


def representatives(
    model: ClusterModel,
    vectors: Sequence[TableVector],
    m: int = DEFAULT_REPRESENTATIVES,
) -> dict[int, list[str]]:
    """Per cluster, the m member table_ids nearest the centroid.

    Distance ties fall back to lexicographic table_id order; clusters with
    fewer than m members return all of them.
    """
    by_id = {v.table_id: np.asarray(v.values, dtype=np.float64) for v in vectors}
    ranked: dict[int, list[tuple[float, str]]] = {c: [] for c in range(model.k)}
    for table_id, cluster in model.assignments.items():
        delta = by_id[table_id] - model.centroids[cluster]
        ranked[cluster].append((float(np.sqrt(delta @ delta)), table_id))
    return {c: [tid for _, tid in sorted(pairs)[:m]] for c, pairs in ranked.items()}


def majority_label(votes: Sequence[str]) -> str:
    """Majority table type among votes; ties (or no votes) resolve to unknown."""
    if not votes:
        return "unknown"
    counts: dict[str, int] = {}
    for vote in votes:
        counts[vote] = counts.get(vote, 0) + 1
    top = max(counts.values())
    winners = [label for label, count in counts.items() if count == top]
    return winners[0] if len(winners) == 1 else "unknown"


def apply_labels(model: ClusterModel, labels: Mapping[int, str]) -> dict[str, str]:
    """Spread cluster labels onto member tables; unlabeled clusters -> unknown."""
    for cluster, label in labels.items():
        if not 0 <= int(cluster) < model.k:
            raise InvalidClusterError(f"invalid cluster: {cluster}")
        validate_type(label)
    return {
        table_id: labels.get(cluster, "unknown")
        for table_id, cluster in model.assignments.items()
    }


def knn_classify(
    train_vectors: Sequence[TableVector] | np.ndarray,
    train_labels: Sequence[str],
    query_vectors: Sequence[TableVector] | np.ndarray,
    k: int = DEFAULT_KNN_K,
) -> list[str]:
    """Euclidean k-nearest-neighbor majority vote.

    Vote ties go to the label of the nearest neighbor carrying a tied label,
    which keeps predictions invariant under reordering of the training set.
    """
    train = _any_matrix(train_vectors)
    queries = _any_matrix(query_vectors)
    if train.shape[0] == 0:
        raise ValueError("empty train set")
    if not 1 <= k <= train.shape[0]:
        raise ValueError(f"k={k} out of range for train size {train.shape[0]}")
    if len(train_labels) != train.shape[0]:
        raise ValueError("train_labels length mismatch")
    labels_arr = np.asarray(train_labels)
    predictions = []
    sq = _sq_distances(queries, train)
    for row in sq:
        order = np.lexsort((labels_arr, row))[:k]
        votes: dict[str, int] = {}
        for idx in order:
            lbl = str(labels_arr[idx])
            votes[lbl] = votes.get(lbl, 0) + 1
        top = max(votes.values())
        tied = {lbl for lbl, cnt in votes.items() if cnt == top}
        if len(tied) == 1:
            predictions.append(next(iter(tied)))
        else:
            predictions.append(
                next(str(labels_arr[idx]) for idx in order if str(labels_arr[idx]) in tied)
            )
    return predictions


def _any_matrix(vectors) -> np.ndarray:
    if isinstance(vectors, np.ndarray):
        return np.atleast_2d(vectors.astype(np.float64))
    if len(vectors) == 0:
        return np.zeros((0, 0), dtype=np.float64)
    if isinstance(vectors[0], TableVector):
        return _as_matrix(vectors)[1]
    return np.atleast_2d(np.asarray(vectors, dtype=np.float64))
