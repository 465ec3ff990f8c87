import pytest

from tabletyper.contexts import (
    ContextConfig,
    adjacent_sentences,
    build_corpus,
    cell_sentences,
    header_sentences,
    surrounding_sentences,
)
from tabletyper.extract import PageText

from conftest import make_grid


def pairs_as_sets(sentences):
    assert all(len(s) == 2 for s in sentences)
    return sorted(sorted(p) for p in sentences)


# --- cell sentences ---------------------------------------------------------

def test_cell_sentences_one_per_cell(grid_2x2):
    assert cell_sentences(grid_2x2) == [["a"], ["b"], ["c"], ["d"]]


def test_cell_sentence_includes_meta():
    grid = make_grid([[["name", "TH"]]], header_mask=[[True]])
    assert cell_sentences(grid) == [["name", "TH"]]


def test_empty_padded_cell_contributes_nothing():
    grid = make_grid([[["a"], ["TD"]]])
    assert cell_sentences(grid) == [["a"]]


# --- header sentences -------------------------------------------------------

def test_column_header_cross_product():
    grid = make_grid(
        [[["age", "TH"]], [["XX", "TD"]]],
        header_mask=[[True], [False]],
    )
    got = header_sentences(grid, ContextConfig(use_header=True))
    assert pairs_as_sets(got) == sorted(
        [sorted(p) for p in (["age", "XX"], ["age", "TD"], ["TH", "XX"], ["TH", "TD"])]
    )
    # fixed order: data-cell token first
    assert all(s[0] in ("XX", "TD") for s in got)


def test_row_header_cross_product():
    grid = make_grid(
        [[["name", "TH"], ["bob", "TD"]]],
        header_mask=[[True, False]],
    )
    got = header_sentences(grid, ContextConfig(use_header=True))
    assert pairs_as_sets(got) == pairs_as_sets(
        [["bob", "name"], ["bob", "TH"], ["TD", "name"], ["TD", "TH"]]
    )


def test_no_th_no_header_sentences(grid_2x2):
    assert header_sentences(grid_2x2, ContextConfig(use_header=True)) == []


def test_header_cells_not_paired_with_each_other():
    # header row [a b] over data row [c d]: c pairs up with a, d with b,
    # and the two headers are never paired together
    grid = make_grid(
        [[["a", "TH"], ["b", "TH"]], [["c", "TD"], ["d", "TD"]]],
        header_mask=[[True, True], [False, False]],
    )
    got = header_sentences(grid, ContextConfig(use_header=True))
    flat = {tuple(s) for s in got}
    assert ("c", "a") in flat
    assert ("d", "b") in flat
    assert ("b", "a") not in flat and ("a", "b") not in flat
    assert ("c", "b") not in flat and ("d", "a") not in flat


def test_pair_sampling_cap():
    grid = make_grid(
        [[[f"b{i}" for i in range(10)]], [[f"a{i}" for i in range(10)]]],
        header_mask=[[True], [False]],
    )
    cfg = ContextConfig(use_header=True, pair_sample_cap=50, rng_seed=3)
    got = header_sentences(grid, cfg)
    assert len(got) == 50
    assert len({tuple(s) for s in got}) == 50  # without replacement
    # deterministic for same seed, stable across calls
    assert header_sentences(grid, cfg) == got


def test_all_pairs_when_under_cap():
    grid = make_grid([[["p", "q"]], [["x", "y"]]], header_mask=[[True], [False]])
    got = header_sentences(grid, ContextConfig(use_header=True, pair_sample_cap=50))
    assert len(got) == 4
    assert len({tuple(s) for s in got}) == 4


# --- adjacent sentences -----------------------------------------------------

def test_adjacent_1x2():
    grid = make_grid([[["a"], ["b"]]])
    got = adjacent_sentences(grid, ContextConfig(use_adjacent=True, adjacency_window=1))
    assert got == [["a", "b"]]


def test_adjacent_2x2(grid_2x2):
    got = adjacent_sentences(grid_2x2, ContextConfig(use_adjacent=True, adjacency_window=1))
    assert pairs_as_sets(got) == pairs_as_sets([["a", "b"], ["a", "c"], ["b", "d"], ["c", "d"]])


def test_adjacent_window_2_offsets():
    grid = make_grid([[["a"], ["b"], ["c"]]])
    got = adjacent_sentences(grid, ContextConfig(use_adjacent=True, adjacency_window=2))
    assert pairs_as_sets(got) == pairs_as_sets([["a", "b"], ["a", "c"], ["b", "c"]])


def test_adjacent_every_unordered_pair_once():
    grid = make_grid([[["a"], ["b"]], [["c"], ["d"]], [["e"], ["f"]]])
    got = adjacent_sentences(grid, ContextConfig(use_adjacent=True, adjacency_window=2))
    expected = [
        ["a", "b"], ["c", "d"], ["e", "f"],  # horizontal
        ["a", "c"], ["c", "e"], ["b", "d"], ["d", "f"],  # vertical p=1
        ["a", "e"], ["b", "f"],  # vertical p=2
    ]
    assert pairs_as_sets(got) == pairs_as_sets(expected)


# --- surrounding sentences --------------------------------------------------

def test_surrounding_split_on_terminators():
    got = surrounding_sentences(PageText("p", "Call now. Great deal!"))
    assert got == [["call", "now"], ["great", "deal"]]


def test_surrounding_empty():
    assert surrounding_sentences(PageText("p", "")) == []


def test_surrounding_regularized():
    got = surrounding_sentences(PageText("p", "Posted 04/25/2016"))
    assert got == [["posted", "XX/XX/XXXX"]]


def test_surrounding_no_regularization():
    got = surrounding_sentences(PageText("p", "Posted 04/25/2016"), regularize_digits=False)
    assert got == [["posted", "04/25/2016"]]


# --- build_corpus -----------------------------------------------------------

def test_corpus_cell_only(grid_2x2):
    cfg = ContextConfig(use_cell=True)
    assert list(build_corpus([grid_2x2], [], cfg)) == cell_sentences(grid_2x2)


def test_corpus_surrounding_only_empty_pages():
    cfg = ContextConfig(use_surrounding=True, use_cell=False)
    assert list(build_corpus([], [], cfg)) == []


def test_corpus_counts_compose():
    grid = make_grid(
        [[["h", "TH"], ["k", "TH"]], [["a", "TD"], ["b", "TD"]]],
        header_mask=[[True, True], [False, False]],
    )
    c_only = list(build_corpus([grid], [], ContextConfig(use_cell=True)))
    ch = list(build_corpus([grid], [], ContextConfig(use_cell=True, use_header=True)))
    h = header_sentences(grid, ContextConfig(use_header=True))
    assert len(ch) == len(c_only) + len(h)


def test_corpus_deterministic(grid_2x2):
    cfg = ContextConfig(use_cell=True, use_header=True, use_adjacent=True, rng_seed=5)
    first = list(build_corpus([grid_2x2], [PageText("p", "Hi there.")], cfg))
    second = list(build_corpus([grid_2x2], [PageText("p", "Hi there.")], cfg))
    assert first == second


def test_config_requires_a_context():
    with pytest.raises(ValueError):
        ContextConfig(use_surrounding=False, use_cell=False, use_header=False, use_adjacent=False)


def test_config_window_validation():
    with pytest.raises(ValueError):
        ContextConfig(adjacency_window=0)
