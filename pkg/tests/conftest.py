import numpy as np
import pytest

from tabletyper.indexing import RIConfig, WordSpace
from tabletyper.preprocess import Cell, CellGrid


def make_grid(token_rows, header_mask=None, table_id="t0"):
    """Build a CellGrid from nested token lists, e.g. [[["a"], ["b"]], ...]."""
    cells = []
    for i, row in enumerate(token_rows):
        cells.append(
            [
                Cell(
                    tokens=list(tokens),
                    is_header=bool(header_mask[i][j]) if header_mask else False,
                )
                for j, tokens in enumerate(row)
            ]
        )
    return CellGrid(
        table_id=table_id, n_rows=len(cells), n_cols=len(cells[0]), cells=cells
    )


def make_space(vectors, dim=None):
    """WordSpace with handpicked vectors, bypassing training."""
    arrays = {t: np.asarray(v, dtype=np.int64) for t, v in vectors.items()}
    if dim is None:
        dim = len(next(iter(arrays.values())))
    # config is provenance only here; its dim floor does not matter for tests
    cfg = RIConfig(dim=max(dim, 4), min_count=1, max_sentence_fraction=1.0)
    return WordSpace(
        dim=dim,
        vectors=arrays,
        config=cfg,
        token_counts={t: 1 for t in arrays},
    )


@pytest.fixture
def grid_2x2():
    return make_grid([[["a"], ["b"]], [["c"], ["d"]]])
