"""One pipeline configuration shared by every stage.

The snapshot serialized into each artifact's meta block comes from here, so
downstream stages can refuse mixed-provenance inputs and sweeps stay
attributable.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from .contexts import ContextConfig
from .indexing import RIConfig

K_AUTO_CANDIDATES = (4, 6, 8, 10, 12, 14)


@dataclass
class PipelineConfig:
    seed: int = 0
    dim: int = 200
    ri_window: int = 2
    adjacency_window: int = 1
    contexts: tuple[str, ...] = ("c",)
    regularize_digits: bool = True
    min_rows: int = 2
    min_cols: int = 2
    k: int | str = "auto"
    k_candidates: tuple[int, ...] = K_AUTO_CANDIDATES
    reps_m: int = 5
    knn_k: int = 5
    min_count: int = 3
    max_sentence_fraction: float = 0.3
    pair_sample_cap: int = 50
    cv_folds: int = 10

    def __post_init__(self):
        self.contexts = tuple(sorted(set(c.lower() for c in self.contexts)))
        unknown = set(self.contexts) - {"t", "c", "h", "a"}
        if unknown:
            raise ValueError(f"unknown contexts: {sorted(unknown)}")
        if not self.contexts:
            raise ValueError("at least one context must be enabled")
        if self.k != "auto" and (not isinstance(self.k, int) or self.k < 1):
            raise ValueError("k must be a positive integer or 'auto'")

    def context_config(self) -> ContextConfig:
        return ContextConfig(
            use_surrounding="t" in self.contexts,
            use_cell="c" in self.contexts,
            use_header="h" in self.contexts,
            use_adjacent="a" in self.contexts,
            adjacency_window=self.adjacency_window,
            pair_sample_cap=self.pair_sample_cap,
            rng_seed=self.seed,
            regularize_digits=self.regularize_digits,
        )

    def ri_config(self) -> RIConfig:
        return RIConfig(
            dim=self.dim,
            window=self.ri_window,
            seed=self.seed,
            min_count=self.min_count,
            max_sentence_fraction=self.max_sentence_fraction,
        )

    def to_dict(self) -> dict:
        snapshot = asdict(self)
        snapshot["contexts"] = list(self.contexts)
        snapshot["k_candidates"] = list(self.k_candidates)
        return snapshot

    @classmethod
    def from_dict(cls, data: dict) -> "PipelineConfig":
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        kwargs = dict(data)
        if "contexts" in kwargs:
            kwargs["contexts"] = tuple(kwargs["contexts"])
        if "k_candidates" in kwargs:
            kwargs["k_candidates"] = tuple(kwargs["k_candidates"])
        return cls(**kwargs)
