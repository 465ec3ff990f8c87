"""Tolerant HTML scanning primitives shared by extraction and preprocessing.

Built on the stdlib ``html.parser`` so malformed real-world markup never
aborts a run: unclosed rows/cells are closed implicitly, stray end tags are
ignored, and tables left open at EOF are closed at the end of the document.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from html.parser import HTMLParser

# Tags whose boundaries do not separate words when collecting visible text.
_INLINE_TAGS = {
    "a", "abbr", "b", "bdi", "bdo", "cite", "code", "data", "dfn", "em", "i",
    "img", "ins", "kbd", "mark", "q", "s", "samp", "small", "span", "strong",
    "sub", "sup", "time", "u", "var", "wbr", "del", "font",
}

_TEXTLESS_TAGS = {"script", "style", "template", "noscript"}

_WS_RE = re.compile(r"\s+")

# Browser-style clamps on span attributes.
_MAX_COLSPAN = 1000
_MAX_ROWSPAN = 65534


def collapse_ws(text: str) -> str:
    """Collapse all whitespace runs to single spaces and strip the ends."""
    return _WS_RE.sub(" ", text).strip()


@dataclass
class TableSpan:
    """Character span of one table element in the source document."""

    start: int
    end: int
    has_inner: bool


class DocumentScanner(HTMLParser):
    """Single pass over a page: table element spans plus text outside tables.

    Feed the full document through :func:`scan_document`; positions are
    absolute character offsets into the input string.
    """

    def __init__(self, html: str):
        super().__init__(convert_charrefs=True)
        self._html = html
        self._line_starts = [0]
        for i, ch in enumerate(html):
            if ch == "\n":
                self._line_starts.append(i + 1)
        self.tables: list[TableSpan] = []
        self._open_tables: list[list] = []  # [start_offset, has_inner]
        self._in_textless = 0
        self._text_parts: list[str] = []

    def _abs_pos(self) -> int:
        lineno, col = self.getpos()
        return self._line_starts[lineno - 1] + col

    def handle_starttag(self, tag, attrs):
        if tag == "table":
            for open_table in self._open_tables:
                open_table[1] = True
            self._open_tables.append([self._abs_pos(), False])
        elif tag in _TEXTLESS_TAGS:
            self._in_textless += 1
        elif not self._open_tables and tag not in _INLINE_TAGS:
            self._text_parts.append(" ")

    def handle_endtag(self, tag):
        if tag == "table":
            if self._open_tables:
                start, has_inner = self._open_tables.pop()
                close = self._html.find(">", self._abs_pos())
                end = close + 1 if close >= 0 else len(self._html)
                self.tables.append(TableSpan(start, end, has_inner))
        elif tag in _TEXTLESS_TAGS:
            self._in_textless = max(0, self._in_textless - 1)
        elif not self._open_tables and tag not in _INLINE_TAGS:
            self._text_parts.append(" ")

    def handle_startendtag(self, tag, attrs):
        # Browsers treat a self-closed <table/> as an opening tag.
        if tag == "table":
            self.handle_starttag(tag, attrs)
        elif not self._open_tables and tag not in _INLINE_TAGS:
            self._text_parts.append(" ")

    def handle_data(self, data):
        if not self._open_tables and not self._in_textless:
            self._text_parts.append(data)

    def finish(self) -> None:
        self.close()
        while self._open_tables:
            start, has_inner = self._open_tables.pop()
            self.tables.append(TableSpan(start, len(self._html), has_inner))
        self.tables.sort(key=lambda t: t.start)

    @property
    def outside_text(self) -> str:
        return collapse_ws("".join(self._text_parts))


def scan_document(html: str) -> DocumentScanner:
    scanner = DocumentScanner(html)
    scanner.feed(html)
    scanner.finish()
    return scanner


@dataclass
class RawCell:
    """One td/th as parsed from a leaf-table fragment, spans not yet applied."""

    text: str = ""
    is_header: bool = False
    colspan: int = 1
    rowspan: int = 1
    has_href: bool = False
    has_img: bool = False
    _parts: list[str] = field(default_factory=list, repr=False)

    def finish(self) -> None:
        self.text = collapse_ws("".join(self._parts))
        self._parts.clear()


def _span_attr(attrs: list, name: str, default: int = 1) -> int:
    for key, value in attrs:
        if key == name and value is not None:
            try:
                return int(value.strip())
            except ValueError:
                return default
    return default


class TableFragmentParser(HTMLParser):
    """Parse one leaf-table fragment into rows of :class:`RawCell`.

    Row/cell tags close implicitly when a sibling opens, matching how a
    browser recovers from unclosed markup. Caption and textless content is
    dropped; everything else inside a cell contributes to its visible text.
    """

    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.rows: list[list[RawCell]] = []
        self._row: list[RawCell] | None = None
        self._cell: RawCell | None = None
        self._in_caption = False
        self._in_textless = 0

    def _close_cell(self):
        if self._cell is not None:
            self._cell.finish()
            self._cell = None

    def _close_row(self):
        self._close_cell()
        if self._row is not None:
            self.rows.append(self._row)
            self._row = None

    def handle_starttag(self, tag, attrs):
        if tag == "tr":
            self._close_row()
            self._row = []
        elif tag in ("td", "th"):
            self._close_cell()
            if self._row is None:
                self._row = []
            colspan = max(0, min(_span_attr(attrs, "colspan"), _MAX_COLSPAN))
            rowspan = max(0, min(_span_attr(attrs, "rowspan"), _MAX_ROWSPAN))
            cell = RawCell(is_header=(tag == "th"), colspan=colspan, rowspan=rowspan)
            self._row.append(cell)
            self._cell = cell
        elif tag == "caption":
            self._in_caption = True
        elif tag in _TEXTLESS_TAGS:
            self._in_textless += 1
        elif self._cell is not None:
            if tag == "a" and any(k == "href" for k, _ in attrs):
                self._cell.has_href = True
            elif tag == "img":
                self._cell.has_img = True
            if tag not in _INLINE_TAGS:
                self._cell._parts.append(" ")

    def handle_startendtag(self, tag, attrs):
        self.handle_starttag(tag, attrs)
        if tag in _TEXTLESS_TAGS:
            self._in_textless = max(0, self._in_textless - 1)

    def handle_endtag(self, tag):
        if tag == "tr":
            self._close_row()
        elif tag in ("td", "th"):
            self._close_cell()
        elif tag == "table":
            self._close_row()
        elif tag == "caption":
            self._in_caption = False
        elif tag in _TEXTLESS_TAGS:
            self._in_textless = max(0, self._in_textless - 1)
        elif self._cell is not None and tag not in _INLINE_TAGS:
            self._cell._parts.append(" ")

    def handle_data(self, data):
        if self._cell is not None and not self._in_caption and not self._in_textless:
            self._cell._parts.append(data)

    def finish(self) -> list[list[RawCell]]:
        self.close()
        self._close_row()
        return self.rows


def parse_table_rows(fragment: str) -> list[list[RawCell]]:
    parser = TableFragmentParser()
    parser.feed(fragment)
    return parser.finish()


def grid_layout(rows: list[list[RawCell]]) -> list[list[RawCell | None]]:
    """Apply colspan/rowspan occupancy to raw rows.

    Returns an N x M layout where each slot holds the RawCell covering it or
    None for positions no cell reaches. N is the number of source rows;
    rowspans are clipped at the bottom of the table. A spanning cell appears
    once per covered slot; earlier cells win occupancy conflicts.
    """
    n_rows = len(rows)
    if n_rows == 0:
        return []
    taken: dict[tuple[int, int], RawCell] = {}
    width = 0
    for r, row in enumerate(rows):
        col = 0
        for cell in row:
            while (r, col) in taken:
                col += 1
            colspan = cell.colspan if cell.colspan >= 1 else 1
            rowspan = cell.rowspan if cell.rowspan >= 1 else n_rows - r
            rowspan = min(rowspan, n_rows - r)
            for dr in range(rowspan):
                for dc in range(colspan):
                    taken.setdefault((r + dr, col + dc), cell)
            col += colspan
            width = max(width, col)
    return [[taken.get((r, c)) for c in range(width)] for r in range(n_rows)]


def layout_dimensions(fragment: str) -> tuple[int, int]:
    """Post-span (rows, cols) of a table fragment; (0, 0) when cell-free."""
    layout = grid_layout(parse_table_rows(fragment))
    if not layout or not layout[0]:
        return 0, 0
    return len(layout), len(layout[0])
