"""Leaf-table extraction and page-text collection from raw HTML pages.

Only tables with no nested table element are extracted; an obvious-junk
filter then drops anything smaller than the configured row/column minimums
(both must hold to keep a table, so 2x2 tables survive the defaults). A page
that cannot be scanned yields an empty result plus a diagnostic record, never
an exception, so corpus runs always complete.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

from .htmlparse import layout_dimensions, scan_document

logger = logging.getLogger(__name__)

DEFAULT_MIN_ROWS = 2
DEFAULT_MIN_COLS = 2


@dataclass
class RawPage:
    page_id: str
    url: str
    html: str


@dataclass
class ExtractedTable:
    table_id: str
    page_id: str
    html_fragment: str
    row_count: int
    col_count: int


@dataclass
class PageText:
    page_id: str
    text: str


def extract_tables(
    page: RawPage,
    min_rows: int = DEFAULT_MIN_ROWS,
    min_cols: int = DEFAULT_MIN_COLS,
    diagnostics: list | None = None,
) -> list[ExtractedTable]:
    """Extract leaf tables from a page, in document order.

    Row/column counts are the post-span (unrolled) grid dimensions. A table
    is kept iff row_count >= min_rows and col_count >= min_cols. Table ids
    number the leaf tables of the page before pruning, so ids are stable
    under threshold changes.
    """
    if min_rows < 1 or min_cols < 1:
        raise ValueError("min_rows and min_cols must be >= 1")
    try:
        scanner = scan_document(page.html)
    except Exception as exc:  # malformed beyond recovery: record and move on
        _diagnose(diagnostics, page.page_id, f"unparseable document: {exc}")
        return []
    tables = []
    index = -1
    for span in scanner.tables:
        if span.has_inner:
            continue
        index += 1
        fragment = page.html[span.start:span.end]
        rows, cols = layout_dimensions(fragment)
        if rows >= min_rows and cols >= min_cols:
            tables.append(
                ExtractedTable(
                    table_id=f"{page.page_id}:{index}",
                    page_id=page.page_id,
                    html_fragment=fragment,
                    row_count=rows,
                    col_count=cols,
                )
            )
    return tables


def extract_page_text(page: RawPage, diagnostics: list | None = None) -> PageText:
    """Visible text of a page with every table subtree removed.

    Script/style content is excluded and whitespace is collapsed to single
    spaces. Unparseable pages yield empty text.
    """
    try:
        scanner = scan_document(page.html)
    except Exception as exc:
        _diagnose(diagnostics, page.page_id, f"unparseable document: {exc}")
        return PageText(page_id=page.page_id, text="")
    return PageText(page_id=page.page_id, text=scanner.outside_text)


def _diagnose(diagnostics: list | None, page_id: str, message: str) -> None:
    logger.warning("page %s: %s", page_id, message)
    if diagnostics is not None:
        diagnostics.append({"page_id": page_id, "error": message})
