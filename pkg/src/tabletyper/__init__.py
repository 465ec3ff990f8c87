"""Web-table embedding, structural clustering, and type classification."""

from .cluster import (
    ClusterModel,
    TABLE_TYPES,
    apply_labels,
    kmeans_fit,
    knn_classify,
    majority_label,
    representatives,
    select_k,
    silhouette_score,
)
from .config import PipelineConfig
from .contexts import (
    ContextConfig,
    adjacent_sentences,
    build_corpus,
    cell_sentences,
    header_sentences,
    surrounding_sentences,
)
from .evaluate import Metrics, cross_validate, parameter_sweep, score
from .extract import ExtractedTable, PageText, RawPage, extract_page_text, extract_tables
from .indexing import (
    BaseVector,
    RIConfig,
    WordSpace,
    base_vector,
    build_vocab,
    train_word_space,
    word_vector,
)
from .preprocess import (
    Cell,
    CellGrid,
    PreprocessOptions,
    normalize_table,
    regularize_token,
)
from .vectorize import DeviationProfile, TableVector, cell_vector, deviation_profile, table_vector

__version__ = "0.1.0"

__all__ = [
    "BaseVector",
    "Cell",
    "CellGrid",
    "ClusterModel",
    "ContextConfig",
    "DeviationProfile",
    "ExtractedTable",
    "Metrics",
    "PageText",
    "PipelineConfig",
    "PreprocessOptions",
    "RIConfig",
    "RawPage",
    "TABLE_TYPES",
    "TableVector",
    "WordSpace",
    "adjacent_sentences",
    "apply_labels",
    "base_vector",
    "build_corpus",
    "build_vocab",
    "cell_sentences",
    "cell_vector",
    "cross_validate",
    "deviation_profile",
    "extract_page_text",
    "extract_tables",
    "header_sentences",
    "kmeans_fit",
    "knn_classify",
    "majority_label",
    "normalize_table",
    "parameter_sweep",
    "regularize_token",
    "representatives",
    "score",
    "select_k",
    "silhouette_score",
    "surrounding_sentences",
    "table_vector",
    "train_word_space",
    "word_vector",
]
