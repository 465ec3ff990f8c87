"""Cell vectors and the 6d deviation-profile table vector.

A cell vector is the elementwise median of the word vectors of the cell's
in-vocabulary tokens; the median (not the mean) keeps one odd token from
dragging the cell away from its concept. A table's structural signature is
then how cell vectors spread around their row, column, and whole-table
centers: six nonnegative d-vectors of mean squared deviation, with centers
taken as both the mean (noise-sensitive) and the median (robust). Their
concatenation, in a fixed order, is the clustering feature space.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .indexing import WordSpace
from .preprocess import Cell, CellGrid

TABLE_VECTOR_COMPONENTS = (
    "dev_rows_mean",
    "dev_rows_median",
    "dev_cols_mean",
    "dev_cols_median",
    "dev_all_mean",
    "dev_all_median",
)


@dataclass
class DeviationProfile:
    dev_rows_mean: np.ndarray
    dev_rows_median: np.ndarray
    dev_cols_mean: np.ndarray
    dev_cols_median: np.ndarray
    dev_all_mean: np.ndarray
    dev_all_median: np.ndarray

    def concat(self) -> np.ndarray:
        return np.concatenate([getattr(self, name) for name in TABLE_VECTOR_COMPONENTS])


@dataclass
class TableVector:
    table_id: str
    values: np.ndarray  # length 6 * d, all entries >= 0


def cell_vector(cell: Cell, space: WordSpace) -> np.ndarray:
    """Elementwise median of the cell tokens' word vectors.

    Even counts take the midpoint of the two central order statistics per
    dimension. Cells with no in-vocabulary token map to the zero vector.
    """
    rows = [space.vectors[t] for t in cell.tokens if t in space.vectors]
    if not rows:
        return np.zeros(space.dim, dtype=np.float64)
    return np.median(np.stack(rows).astype(np.float64), axis=0)


def _cell_vector_array(grid: CellGrid, space: WordSpace) -> np.ndarray:
    vecs = np.zeros((grid.n_rows, grid.n_cols, space.dim), dtype=np.float64)
    for i, row in enumerate(grid.cells):
        for j, cell in enumerate(row):
            vecs[i, j] = cell_vector(cell, space)
    return vecs


def deviation_profile(grid: CellGrid, space: WordSpace) -> DeviationProfile:
    """Mean squared elementwise deviation from row/column/table centers.

    Every deviation averages over all N*M cells; empty cells contribute the
    zero vector, so emptiness shows up as structural signal rather than being
    masked.
    """
    vecs = _cell_vector_array(grid, space)
    return profile_from_cell_vectors(vecs)


def profile_from_cell_vectors(vecs: np.ndarray) -> DeviationProfile:
    """Deviation profile of an (N, M, d) array of cell vectors."""

    def msd(center: np.ndarray) -> np.ndarray:
        return ((vecs - center) ** 2).mean(axis=(0, 1))

    return DeviationProfile(
        dev_rows_mean=msd(vecs.mean(axis=1, keepdims=True)),
        dev_rows_median=msd(np.median(vecs, axis=1, keepdims=True)),
        dev_cols_mean=msd(vecs.mean(axis=0, keepdims=True)),
        dev_cols_median=msd(np.median(vecs, axis=0, keepdims=True)),
        dev_all_mean=msd(vecs.mean(axis=(0, 1), keepdims=True)),
        dev_all_median=msd(np.median(vecs.reshape(-1, vecs.shape[2]), axis=0)),
    )


def table_vector(grid: CellGrid, space: WordSpace) -> TableVector:
    """Concatenated deviation profile, component order fixed for file stability."""
    return TableVector(table_id=grid.table_id, values=deviation_profile(grid, space).concat())
