"""Synthetic web-table corpus with four structural archetypes.

Emits full HTML pages, one table per page, plus the matching groundtruth:
relational (th header row over per-column typed values), entity (th
attribute column beside a value column), matrix (th row and column headers
around a numeric body), and non-data (free-text cells from a shared prose
vocabulary). Cells carry at least two related tokens so cell sentences
produce real co-occurrence structure, and numeric values are generated with
digits so regularization folds them into shape tokens downstream.

Vocabulary pool sizes are deliberately balanced: the co-occurrence count of
any specific token pair is roughly (cells of that family) / (pool_a *
pool_b), and word-vector magnitudes track that count. Keeping all families
in the same band keeps the four archetypes at comparable scales in the
deviation space, so none of them dwarfs the rest.
"""

from __future__ import annotations

import random

SYNTH_TYPES = ("relational", "entity", "matrix", "non_data")

_FIRST_NAMES = ("alice", "brandon", "carla", "derek", "elena", "felix")
_LAST_NAMES = ("adams", "baker", "castillo", "dawson", "ellis", "fuentes")
_CITIES = ("austin", "boulder", "camden", "dayton", "eugene", "fresno")
_STATES = ("texas", "colorado", "ohio", "oregon", "california")
_WEEKDAYS = ("monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday")
_MONTHS = (
    "january", "february", "march", "april", "may", "june", "july",
    "august", "september", "october", "november", "december",
)
_CURRENCIES = ("usd", "eur", "gbp", "cad", "aud", "chf", "nzd", "sek", "jpy", "dkk")
_UNITS = ("kg", "lbs", "cm", "mi", "oz", "ft", "km", "in")
_METRICS = ("revenue", "profit", "margin", "units", "growth", "volume", "sales", "shares")
_PROSE = (
    "the", "please", "contact", "us", "for", "more", "details", "about",
    "our", "latest", "offers", "and", "we", "are", "happy",
)

_ATTR_WORDS = {
    "name": (
        ["name"], ["full", "name"], ["contact"], ["seller"], ["member"],
        ["buyer"], ["vendor"], ["agent"], ["owner"],
    ),
    "city": (
        ["city"], ["location"], ["city", "area"], ["region"], ["place"],
        ["town"], ["district"], ["zone"], ["state"],
    ),
    "price": (
        ["price"], ["rate"], ["cost"], ["fee"], ["amount"],
        ["total"], ["charge"], ["value"], ["pay"],
    ),
    "date": (
        ["date"], ["posted"], ["date", "posted"], ["updated"], ["listed"],
        ["added"], ["created"], ["modified"], ["expires"],
    ),
    "quantity": (
        ["weight"], ["size"], ["quantity"], ["length"], ["measure"],
        ["volume"], ["count"], ["stock"], ["depth"],
    ),
}
_VALUE_KINDS = tuple(_ATTR_WORDS)


def _digits(rng: random.Random, n: int) -> str:
    return "".join(str(rng.randint(0, 9)) for _ in range(n))


def _date_text(rng: random.Random) -> str:
    day, month, year = _digits(rng, 2), _digits(rng, 2), _digits(rng, 4)
    style = rng.randrange(6)
    if style == 0:
        return f"{month}/{day}/{year}"
    if style == 1:
        return f"{month}-{day}-{year}"
    if style == 2:
        return f"{year}-{month}-{day}"
    if style == 3:
        return f"{month}/{day}/{year[:2]}"
    if style == 4:
        return f"{month}.{day}.{year}"
    return f"{year}/{month}/{day}"


def _price_text(rng: random.Random) -> str:
    style = rng.randrange(4)
    if style == 0:
        return f"${_digits(rng, 1)}.{_digits(rng, 2)}"
    if style == 1:
        return f"${_digits(rng, 2)}.{_digits(rng, 2)}"
    if style == 2:
        return f"${_digits(rng, 3)}.{_digits(rng, 2)}"
    return f"${_digits(rng, 1)},{_digits(rng, 3)}.{_digits(rng, 2)}"


def _quantity_text(rng: random.Random) -> str:
    style = rng.randrange(5)
    if style == 0:
        return f"{_digits(rng, 1)}.{_digits(rng, 1)}"
    if style == 1:
        return f"{_digits(rng, 2)}.{_digits(rng, 1)}"
    if style == 2:
        return f"{_digits(rng, 3)}.{_digits(rng, 1)}"
    if style == 3:
        return f"{_digits(rng, 2)}.{_digits(rng, 2)}"
    return _digits(rng, 2)


def _matrix_value(rng: random.Random) -> str:
    style = rng.randrange(10)
    if style == 0:
        main = f"{_digits(rng, 1)}.{_digits(rng, 2)}"
    elif style == 1:
        main = f"{_digits(rng, 2)}.{_digits(rng, 2)}"
    elif style == 2:
        main = f"{_digits(rng, 3)}.{_digits(rng, 2)}"
    elif style == 3:
        main = f"{_digits(rng, 1)},{_digits(rng, 3)}.{_digits(rng, 2)}"
    elif style == 4:
        main = f"{_digits(rng, 2)},{_digits(rng, 3)}.{_digits(rng, 2)}"
    elif style == 5:
        main = f"{_digits(rng, 3)},{_digits(rng, 3)}"
    elif style == 6:
        main = f"{_digits(rng, 4)}"
    elif style == 7:
        main = f"{_digits(rng, 1)}.{_digits(rng, 4)}"
    elif style == 8:
        main = f"{_digits(rng, 2)},{_digits(rng, 3)}"
    else:
        main = f"{_digits(rng, 3)}.{_digits(rng, 1)}"
    sign = rng.choice(("+", "-", ""))
    form = rng.randrange(3)
    if form == 0:
        delta = f"{sign}{_digits(rng, 1)}%"
    elif form == 1:
        delta = f"{sign}{_digits(rng, 1)}.{_digits(rng, 1)}%"
    else:
        delta = f"{sign}{_digits(rng, 2)}%"
    return f"{main} {delta}"


def _value_tokens(kind: str, rng: random.Random) -> list[str]:
    if kind == "name":
        return [rng.choice(_FIRST_NAMES), rng.choice(_LAST_NAMES)]
    if kind == "city":
        return [rng.choice(_CITIES), rng.choice(_STATES)]
    if kind == "price":
        return [_price_text(rng), rng.choice(_CURRENCIES)]
    if kind == "date":
        return [rng.choice(_WEEKDAYS), _date_text(rng)]
    if kind == "quantity":
        return [_quantity_text(rng), rng.choice(_UNITS)]
    raise ValueError(kind)


def _prose(rng: random.Random, low: int, high: int) -> str:
    return " ".join(rng.choice(_PROSE) for _ in range(rng.randint(low, high)))


def _td(text: str) -> str:
    return f"<td>{text}</td>"


def _th(text: str) -> str:
    return f"<th>{text}</th>"


def _rows_html(rows: list[list[str]]) -> str:
    return "".join(f"<tr>{''.join(cells)}</tr>" for cells in rows)


def _relational_table(rng: random.Random) -> str:
    n_cols = rng.randint(4, 5)
    n_rows = rng.randint(4, 7)
    kinds = rng.sample(_VALUE_KINDS, n_cols)
    header = [_th(" ".join(rng.choice(_ATTR_WORDS[k]))) for k in kinds]
    rows = [header]
    for _ in range(n_rows):
        rows.append([_td(" ".join(_value_tokens(k, rng))) for k in kinds])
    return f"<table border=1>{_rows_html(rows)}</table>"


def _entity_table(rng: random.Random) -> str:
    n_rows = rng.randint(4, 8)
    kinds = rng.sample(_VALUE_KINDS, min(n_rows, len(_VALUE_KINDS)))
    while len(kinds) < n_rows:
        kinds.append(rng.choice(_VALUE_KINDS))
    rows = []
    for kind in kinds:
        attr = " ".join(rng.choice(_ATTR_WORDS[kind]))
        rows.append([_th(attr), _td(" ".join(_value_tokens(kind, rng)))])
    return f"<table>{_rows_html(rows)}</table>"


def _matrix_table(rng: random.Random) -> str:
    n_rows = rng.randint(4, 7)
    n_cols = rng.randint(4, 6)
    col_heads = rng.sample(_MONTHS, n_cols - 1)
    row_heads = rng.sample(_METRICS, n_rows - 1)
    rows = [[_th("")] + [_th(m) for m in col_heads]]
    for metric in row_heads:
        cells = [_th(metric)]
        cells.extend(_td(_matrix_value(rng)) for _ in range(n_cols - 1))
        rows.append(cells)
    return f"<table>{_rows_html(rows)}</table>"


def _non_data_cell(rng: random.Random) -> str:
    text = _prose(rng, 2, 5)
    if rng.random() < 0.2:
        text += f' <a href="/p{rng.randint(1, 999)}">{_prose(rng, 2, 3)}</a>'
    return text


def _non_data_table(rng: random.Random) -> str:
    n_rows = rng.randint(3, 6)
    n_cols = rng.randint(2, 4)
    rows = [
        [_td(_non_data_cell(rng)) for _ in range(n_cols)]
        for _ in range(n_rows)
    ]
    return f"<table>{_rows_html(rows)}</table>"


_BUILDERS = {
    "relational": _relational_table,
    "entity": _entity_table,
    "matrix": _matrix_table,
    "non_data": _non_data_table,
}


def generate_corpus(
    per_type: int = 200, seed: int = 0
) -> tuple[list[dict], list[dict]]:
    """Build (pages, truth) record lists for ``per_type`` tables per archetype.

    Each page holds exactly one table, so the table ids in the truth are
    predictable: ``<page_id>:0``.
    """
    rng = random.Random(seed)
    pages: list[dict] = []
    truth: list[dict] = []
    for table_type in SYNTH_TYPES:
        build = _BUILDERS[table_type]
        for i in range(per_type):
            page_id = f"synth-{table_type}-{i:04d}"
            intro = _prose(rng, 4, 9)
            outro = _prose(rng, 4, 9)
            html = (
                "<html><head><title>listing</title></head><body>"
                f"<p>{intro}.</p>{build(rng)}<p>{outro}.</p>"
                "</body></html>"
            )
            pages.append(
                {"page_id": page_id, "url": f"http://example.test/{page_id}", "html": html}
            )
            truth.append({"table_id": f"{page_id}:0", "type": table_type})
    return pages, truth
