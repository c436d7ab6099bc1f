"""Keyphrase generation toolkit: corpus preparation, paragraph packing,
sequence decoding, rank aggregation, and evaluation."""

from .aggregator import EPSILON_MODES, ScoredKeyphrase, aggregate
from .codec import canonical_keyphrases, parse_generated, sanitize_phrase, serialize_keyphrases
from .corpus import (
    Document,
    LoadIssue,
    PrepareResult,
    TrainingPair,
    build_source_text,
    load_split,
    prepare_training_pairs,
)
from .errors import (
    CodecError,
    ConfigError,
    CorpusError,
    EvaluationError,
    KpgenError,
    ProtocolError,
    TransportError,
)
from .evaluator import EvalReport, evaluate_dataset, f_at_k, normalize, partition_present_absent, recall_at_k
from .generation import (
    BEAM_MERGE_MODES,
    DEFAULT_NUM_BEAMS,
    BackendTokenCounter,
    GenerationBackend,
    GenerationRequest,
    HttpBackend,
    MockBackend,
    RankedKeyphrases,
    generate_ranked_keyphrases,
)
from .pipeline import DocPrediction, PredictConfig, RunStats, predict_corpus, predict_document
from .segmenter import DEFAULT_BUDGET, Paragraph, WhitespaceTokenCounter, pack_paragraphs, split_sentences

__version__ = "0.1.0"

__all__ = [
    "BEAM_MERGE_MODES",
    "DEFAULT_BUDGET",
    "DEFAULT_NUM_BEAMS",
    "EPSILON_MODES",
    "BackendTokenCounter",
    "CodecError",
    "ConfigError",
    "CorpusError",
    "DocPrediction",
    "Document",
    "EvalReport",
    "EvaluationError",
    "GenerationBackend",
    "GenerationRequest",
    "HttpBackend",
    "KpgenError",
    "LoadIssue",
    "MockBackend",
    "Paragraph",
    "PredictConfig",
    "PrepareResult",
    "ProtocolError",
    "RankedKeyphrases",
    "RunStats",
    "ScoredKeyphrase",
    "TrainingPair",
    "TransportError",
    "WhitespaceTokenCounter",
    "aggregate",
    "build_source_text",
    "canonical_keyphrases",
    "evaluate_dataset",
    "f_at_k",
    "generate_ranked_keyphrases",
    "load_split",
    "normalize",
    "pack_paragraphs",
    "parse_generated",
    "partition_present_absent",
    "predict_corpus",
    "predict_document",
    "prepare_training_pairs",
    "recall_at_k",
    "sanitize_phrase",
    "serialize_keyphrases",
    "split_sentences",
]
