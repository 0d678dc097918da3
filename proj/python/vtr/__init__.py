"""Video corpus retrieval: semantic chunking, per-video centroid trees,
threshold-pruned search, optional re-ranking, and a recall/MRR harness."""

from ._vtr import (  # noqa: F401
    ConfigError,
    Engine,
    ParseError,
    build_index,
    centroid,
    chunk_spans,
    clean_text,
    cosine_similarity,
    evaluate_run,
    hash_trigram_embed,
    mean_reciprocal_rank,
    nfkc,
    nfkc_casefold,
    overall_score,
    parse_srt,
    parse_vtt,
    recall_at_n,
)

__all__ = [
    "ConfigError",
    "Engine",
    "ParseError",
    "build_index",
    "centroid",
    "chunk_spans",
    "clean_text",
    "cosine_similarity",
    "evaluate_run",
    "hash_trigram_embed",
    "mean_reciprocal_rank",
    "nfkc",
    "nfkc_casefold",
    "overall_score",
    "parse_srt",
    "parse_vtt",
    "recall_at_n",
]
