"""Context sentence generation for word-space training.

Four context definitions produce sentences: the tokens of each cell (C),
data-cell x header-cell token pairs (H), data-cell x adjacent-cell token
pairs (A), and the prose surrounding tables on the page (T). Pair sentences
always put the data-cell token first; the trailing context token comes from
the header or neighbor. Adjacency uses positive offsets only, since emitting
both directions would merely duplicate every unordered pair.

Oversized cross products are downsampled to ``pair_sample_cap`` pairs without
replacement, using a generator seeded from (seed, table id, context kind) so
per-table generation is reproducible under any parallel schedule.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Iterable, Iterator

from .extract import PageText
from .preprocess import Cell, CellGrid, regularize_token

Sentence = list[str]

_SENTENCE_BREAK_RE = re.compile(r"[.!?\n]")

DEFAULT_PAIR_SAMPLE_CAP = 50


@dataclass
class ContextConfig:
    use_surrounding: bool = False
    use_cell: bool = True
    use_header: bool = False
    use_adjacent: bool = False
    adjacency_window: int = 1
    pair_sample_cap: int = DEFAULT_PAIR_SAMPLE_CAP
    rng_seed: int = 0
    regularize_digits: bool = True

    def __post_init__(self):
        if not (self.use_surrounding or self.use_cell or self.use_header or self.use_adjacent):
            raise ValueError("at least one context must be enabled")
        if self.adjacency_window < 1:
            raise ValueError("adjacency_window must be >= 1")
        if self.pair_sample_cap < 1:
            raise ValueError("pair_sample_cap must be >= 1")


def cell_sentences(grid: CellGrid) -> list[Sentence]:
    """One sentence per cell carrying content tokens; empty cells contribute nothing."""
    return [
        list(cell.tokens)
        for row in grid.cells
        for cell in row
        if not cell.is_empty
    ]


def _pair_rng(cfg: ContextConfig, grid: CellGrid, kind: str) -> random.Random:
    return random.Random(f"{cfg.rng_seed}|{grid.table_id}|{kind}")


def _cross_pairs(
    data_cell: Cell, context_cell: Cell, cap: int, rng: random.Random
) -> list[Sentence]:
    pairs = [[d, c] for d in data_cell.tokens for c in context_cell.tokens]
    if len(pairs) > cap:
        pairs = rng.sample(pairs, cap)
    return pairs


def header_sentences(grid: CellGrid, cfg: ContextConfig) -> list[Sentence]:
    """Pair every non-header cell with its th row leader and th column leader."""
    rng = _pair_rng(cfg, grid, "h")
    sentences: list[Sentence] = []
    for i, row in enumerate(grid.cells):
        for j, cell in enumerate(row):
            if cell.is_header:
                continue
            if j >= 1 and grid.cells[i][0].is_header:
                sentences.extend(_cross_pairs(cell, grid.cells[i][0], cfg.pair_sample_cap, rng))
            if i >= 1 and grid.cells[0][j].is_header:
                sentences.extend(_cross_pairs(cell, grid.cells[0][j], cfg.pair_sample_cap, rng))
    return sentences


def adjacent_sentences(grid: CellGrid, cfg: ContextConfig) -> list[Sentence]:
    """Pair each cell with cells up to the window distance right and below."""
    rng = _pair_rng(cfg, grid, "a")
    sentences: list[Sentence] = []
    for i, row in enumerate(grid.cells):
        for j, cell in enumerate(row):
            for p in range(1, cfg.adjacency_window + 1):
                if j + p < grid.n_cols:
                    sentences.extend(
                        _cross_pairs(cell, grid.cells[i][j + p], cfg.pair_sample_cap, rng)
                    )
                if i + p < grid.n_rows:
                    sentences.extend(
                        _cross_pairs(cell, grid.cells[i + p][j], cfg.pair_sample_cap, rng)
                    )
    return sentences


def surrounding_sentences(text: PageText, regularize_digits: bool = True) -> list[Sentence]:
    """Split page prose on sentence terminators into lowercase token sentences."""
    sentences = []
    for chunk in _SENTENCE_BREAK_RE.split(text.text):
        tokens = chunk.lower().split()
        if regularize_digits:
            tokens = [regularize_token(t) for t in tokens]
        if tokens:
            sentences.append(tokens)
    return sentences


def build_corpus(
    grids: Iterable[CellGrid],
    page_texts: Iterable[PageText],
    cfg: ContextConfig,
) -> Iterator[Sentence]:
    """Stream all enabled context sentences in deterministic order.

    Tables come first in input order (per table: C, then H, then A), page
    texts last.
    """
    for grid in grids:
        if cfg.use_cell:
            yield from cell_sentences(grid)
        if cfg.use_header:
            yield from header_sentences(grid, cfg)
        if cfg.use_adjacent:
            yield from adjacent_sentences(grid, cfg)
    if cfg.use_surrounding:
        for text in page_texts:
            yield from surrounding_sentences(text, cfg.regularize_digits)
