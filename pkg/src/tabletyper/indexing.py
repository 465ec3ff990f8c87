"""Incremental random-indexing word space over context sentences.

Every vocabulary token owns a sparse ternary base vector (two +1 and two -1
entries at digest-derived positions); a token's context vector is the integer
sum of the base vectors of every other in-vocabulary token within the window,
accumulated over all sentences. Training is pure integer addition, so any
partitioning of the sentence stream merges to the identical word space: the
elementwise sum is commutative and associative, which is what makes parallel
training safe.

Base-vector positions come from a keyed digest of the token rather than a
shared RNG stream, so a token's base vector never depends on corpus order or
on which worker saw the token first.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

DEFAULT_DIM = 200
DEFAULT_WINDOW = 2
DEFAULT_MIN_COUNT = 3
DEFAULT_MAX_SENTENCE_FRACTION = 0.3
DEFAULT_PRUNE_EXEMPT = frozenset({"TH", "HREF", "IMG"})


class EmptyVocabularyError(ValueError):
    """Raised when the corpus is empty or pruning removes every token."""


@dataclass(frozen=True)
class RIConfig:
    dim: int = DEFAULT_DIM
    window: int = DEFAULT_WINDOW
    nonzero_positions: int = 4
    seed: int = 0
    min_count: int = DEFAULT_MIN_COUNT
    max_sentence_fraction: float = DEFAULT_MAX_SENTENCE_FRACTION
    prune_exempt: frozenset = DEFAULT_PRUNE_EXEMPT

    def __post_init__(self):
        if self.nonzero_positions < 2 or self.nonzero_positions % 2 != 0:
            raise ValueError("nonzero_positions must be a positive even count")
        if self.dim < self.nonzero_positions:
            raise ValueError("dim must be >= nonzero_positions")
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if not 0 < self.max_sentence_fraction <= 1:
            raise ValueError("max_sentence_fraction must be in (0, 1]")


@dataclass(frozen=True)
class BaseVector:
    plus_indices: tuple[int, ...]
    minus_indices: tuple[int, ...]

    def as_array(self, dim: int) -> np.ndarray:
        vec = np.zeros(dim, dtype=np.int64)
        vec[list(self.plus_indices)] += 1
        vec[list(self.minus_indices)] -= 1
        return vec


@dataclass
class WordSpace:
    dim: int
    vectors: dict[str, np.ndarray]
    config: RIConfig
    token_counts: dict[str, int] = field(default_factory=dict)

    def __contains__(self, token: str) -> bool:
        return token in self.vectors

    def get(self, token: str) -> np.ndarray | None:
        return self.vectors.get(token)


def base_vector(token: str, cfg: RIConfig) -> BaseVector:
    """Deterministic sparse base vector for a token.

    Positions are drawn from a blake2b stream keyed by the seed, so the same
    (token, seed, dim) always yields the same vector, independent of any
    global RNG state.
    """
    if not token:
        raise ValueError("token must be non-empty")
    key = struct.pack("<Q", cfg.seed % 2**64)
    payload = token.encode("utf-8")
    positions: list[int] = []
    counter = 0
    while len(positions) < cfg.nonzero_positions:
        digest = hashlib.blake2b(
            payload + b"\x00" + struct.pack("<I", counter), key=key, digest_size=8
        ).digest()
        pos = int.from_bytes(digest, "little") % cfg.dim
        if pos not in positions:
            positions.append(pos)
        counter += 1
    half = cfg.nonzero_positions // 2
    return BaseVector(tuple(positions[:half]), tuple(positions[half:]))


def build_vocab(
    corpus: Iterable[Sequence[str]], cfg: RIConfig
) -> tuple[set[str], dict[str, int]]:
    """Frequency-filtered vocabulary and occurrence counts.

    Tokens occurring fewer than ``min_count`` times are dropped; tokens
    present in more than ``max_sentence_fraction`` of sentences are dropped
    unless exempt (the structural markers TH/HREF/IMG by default).
    """
    counts: dict[str, int] = {}
    sentence_freq: dict[str, int] = {}
    n_sentences = 0
    for sentence in corpus:
        n_sentences += 1
        for token in sentence:
            counts[token] = counts.get(token, 0) + 1
        for token in set(sentence):
            sentence_freq[token] = sentence_freq.get(token, 0) + 1
    if n_sentences == 0:
        raise EmptyVocabularyError("empty vocabulary: corpus has no sentences")
    max_sentences = cfg.max_sentence_fraction * n_sentences
    vocab = set()
    for token, count in counts.items():
        if count < cfg.min_count:
            continue
        if sentence_freq[token] > max_sentences and token not in cfg.prune_exempt:
            continue
        vocab.add(token)
    if not vocab:
        raise EmptyVocabularyError("empty vocabulary: all tokens pruned")
    return vocab, {t: counts[t] for t in vocab}


def train_word_space(corpus: Iterable[Sequence[str]], cfg: RIConfig) -> WordSpace:
    """Accumulate windowed co-occurrence base vectors over the corpus.

    Out-of-vocabulary tokens still occupy their sentence positions, so
    pruning a rare word does not pull distant words into each other's
    windows.
    """
    sentences = [list(s) for s in corpus]
    vocab, counts = build_vocab(sentences, cfg)
    bases = {}
    for token in vocab:
        bv = base_vector(token, cfg)
        bases[token] = (list(bv.plus_indices), list(bv.minus_indices))
    vectors = {token: np.zeros(cfg.dim, dtype=np.int64) for token in vocab}
    window = cfg.window
    for sentence in sentences:
        length = len(sentence)
        for k, token in enumerate(sentence):
            left = vectors.get(token)
            if left is None:
                continue
            for k2 in range(k + 1, min(length, k + window + 1)):
                other = sentence[k2]
                right = vectors.get(other)
                if right is None:
                    continue
                plus, minus = bases[other]
                left[plus] += 1
                left[minus] -= 1
                plus, minus = bases[token]
                right[plus] += 1
                right[minus] -= 1
    return WordSpace(dim=cfg.dim, vectors=vectors, config=cfg, token_counts=counts)


def word_vector(space: WordSpace, token: str) -> np.ndarray | None:
    """The token's integer context vector, or None when out of vocabulary."""
    return space.vectors.get(token)


def space_to_record(space: WordSpace) -> dict:
    cfg = space.config
    return {
        "dim": space.dim,
        "window": cfg.window,
        "seed": cfg.seed,
        "min_count": cfg.min_count,
        "max_sentence_fraction": cfg.max_sentence_fraction,
        "vectors": {t: [int(x) for x in v] for t, v in sorted(space.vectors.items())},
        "counts": {t: int(c) for t, c in sorted(space.token_counts.items())},
    }


def space_from_record(record: dict) -> WordSpace:
    cfg = RIConfig(
        dim=record["dim"],
        window=record["window"],
        seed=record["seed"],
        min_count=record["min_count"],
        max_sentence_fraction=record["max_sentence_fraction"],
    )
    vectors = {
        t: np.asarray(v, dtype=np.int64) for t, v in record["vectors"].items()
    }
    return WordSpace(
        dim=record["dim"],
        vectors=vectors,
        config=cfg,
        token_counts={t: int(c) for t, c in record.get("counts", {}).items()},
    )
