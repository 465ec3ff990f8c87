"""Turn an extracted table into a rectangular grid of lowercase token lists.

Cell content is stripped of markup, lowercased, and whitespace-tokenized;
colspan/rowspan content is copied into every covered slot; short rows are
padded on the right with empty cells. Structural markers are appended as the
uppercase keywords TH/TD (exactly one per cell), HREF (anchor with href
inside), and IMG (image inside); staying uppercase keeps them disjoint from
the lowercased content vocabulary. Digit regularization maps every 0-9
character to "X" so values with the same shape share one token (a date
becomes XX/XX/XXXX).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .extract import ExtractedTable
from .htmlparse import RawCell, grid_layout, parse_table_rows

META_KEYWORDS = frozenset({"TH", "TD", "HREF", "IMG"})

_DIGIT_TO_X = str.maketrans({d: "X" for d in "0123456789"})


class EmptyTableError(ValueError):
    """Raised for tables that produce no cells at all."""


@dataclass
class Cell:
    """Token list of one grid cell: content tokens first, then meta keywords."""

    tokens: list[str] = field(default_factory=list)
    is_header: bool = False

    @property
    def content_tokens(self) -> list[str]:
        return [t for t in self.tokens if t not in META_KEYWORDS]

    @property
    def is_empty(self) -> bool:
        """True when the cell carries no content tokens (meta only)."""
        return all(t in META_KEYWORDS for t in self.tokens)


@dataclass
class CellGrid:
    table_id: str
    n_rows: int
    n_cols: int
    cells: list[list[Cell]]


@dataclass
class PreprocessOptions:
    regularize_digits: bool = True
    # Optional domain hook: cell text -> semantic label tokens, appended
    # verbatim between content and meta keywords.
    semantic_typer: Callable[[str], list[str]] | None = None
    pad_token_policy: str = "empty_cell"

    def __post_init__(self):
        if self.pad_token_policy != "empty_cell":
            raise ValueError(f"unknown pad_token_policy: {self.pad_token_policy!r}")


def regularize_token(token: str) -> str:
    """Replace every decimal digit 0-9 with "X"; other characters unchanged."""
    return token.translate(_DIGIT_TO_X)


def normalize_table(table: ExtractedTable, opts: PreprocessOptions | None = None) -> CellGrid:
    """Parse a leaf-table fragment into a rectangular N x M token grid."""
    opts = opts or PreprocessOptions()
    layout = grid_layout(parse_table_rows(table.html_fragment))
    if not layout or not layout[0]:
        raise EmptyTableError(f"empty table: {table.table_id}")
    tokens_cache: dict[int, list[str]] = {}
    rows = []
    for layout_row in layout:
        row = []
        for raw in layout_row:
            if raw is None:
                row.append(Cell(tokens=["TD"], is_header=False))
                continue
            cached = tokens_cache.get(id(raw))
            if cached is None:
                cached = _cell_tokens(raw, opts)
                tokens_cache[id(raw)] = cached
            row.append(Cell(tokens=list(cached), is_header=raw.is_header))
        rows.append(row)
    return CellGrid(
        table_id=table.table_id,
        n_rows=len(rows),
        n_cols=len(rows[0]),
        cells=rows,
    )


def _cell_tokens(raw: RawCell, opts: PreprocessOptions) -> list[str]:
    text = raw.text.lower()
    tokens = text.split()
    if opts.regularize_digits:
        tokens = [regularize_token(t) for t in tokens]
    if opts.semantic_typer is not None:
        tokens.extend(opts.semantic_typer(text))
    tokens.append("TH" if raw.is_header else "TD")
    if raw.has_href:
        tokens.append("HREF")
    if raw.has_img:
        tokens.append("IMG")
    return tokens


def grid_to_record(grid: CellGrid) -> dict:
    """Row-major JSON record: token lists plus a th-origin mask."""
    return {
        "table_id": grid.table_id,
        "rows": grid.n_rows,
        "cols": grid.n_cols,
        "cells": [[list(c.tokens) for c in row] for row in grid.cells],
        "header_mask": [[c.is_header for c in row] for row in grid.cells],
    }


def grid_from_record(record: dict) -> CellGrid:
    cells = [
        [Cell(tokens=list(toks), is_header=bool(hdr)) for toks, hdr in zip(row, mask_row)]
        for row, mask_row in zip(record["cells"], record["header_mask"])
    ]
    return CellGrid(
        table_id=record["table_id"],
        n_rows=record["rows"],
        n_cols=record["cols"],
        cells=cells,
    )
