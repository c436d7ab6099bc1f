"""End-to-end prediction: document -> paragraphs -> generation -> top-N.

Documents are processed with up to ``parallelism`` in flight, but output
order always equals input order and failures stay isolated to their
document, so long benchmark runs survive transient backend errors and
produce reproducible files.
"""

import json
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .aggregator import EPSILON_MODES, aggregate
from .corpus import Document, build_source_text
from .errors import ConfigError, KpgenError
from .generation import (
    BEAM_MERGE_MODES,
    DEFAULT_MAX_KEYPHRASES,
    DEFAULT_NUM_BEAMS,
    GenerationBackend,
    RankedKeyphrases,
    generate_ranked_keyphrases,
)
from .segmenter import DEFAULT_BUDGET, pack_paragraphs, split_sentences


@dataclass
class PredictConfig:
    n: int = DEFAULT_MAX_KEYPHRASES
    num_beams: int = DEFAULT_NUM_BEAMS
    budget: int = DEFAULT_BUDGET
    beam_merge: str = "all"
    epsilon_mode: str = "per_occurrence"
    parallelism: int = 4

    def validate(self) -> None:
        for name in ("n", "num_beams", "budget", "parallelism"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ConfigError(f"{name} must be an integer >= 1, got {value!r}")
        if self.beam_merge not in BEAM_MERGE_MODES:
            raise ConfigError(f"unknown beam merge mode {self.beam_merge!r}")
        if self.epsilon_mode not in EPSILON_MODES:
            raise ConfigError(f"unknown epsilon mode {self.epsilon_mode!r}")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "num_beams": self.num_beams,
            "budget": self.budget,
            "beam_merge": self.beam_merge,
            "epsilon_mode": self.epsilon_mode,
            "parallelism": self.parallelism,
        }


@dataclass
class DocPrediction:
    doc_id: str
    keyphrases: list[str] = field(default_factory=list)
    paragraph_count: int = 0
    empty_generations: int = 0
    error: str | None = None


@dataclass
class RunStats:
    docs_processed: int = 0
    docs_failed: list[str] = field(default_factory=list)
    paragraphs_per_doc: Counter = field(default_factory=Counter)
    empty_generations: int = 0
    total_keyphrases: int = 0
    duration_seconds: float = 0.0
    config: dict = field(default_factory=dict)

    @property
    def mean_keyphrases(self) -> float:
        succeeded = self.docs_processed - len(self.docs_failed)
        return self.total_keyphrases / succeeded if succeeded else 0.0

    def to_dict(self) -> dict:
        return {
            "docs_processed": self.docs_processed,
            "docs_failed": list(self.docs_failed),
            "paragraphs_per_doc_histogram": {
                str(k): v for k, v in sorted(self.paragraphs_per_doc.items())
            },
            "empty_generations": self.empty_generations,
            "total_keyphrases": self.total_keyphrases,
            "mean_keyphrases_per_doc": self.mean_keyphrases,
            "duration_seconds": self.duration_seconds,
            "config": dict(self.config),
        }


def predict_document(
    doc: Document, backend: GenerationBackend, config: PredictConfig
) -> DocPrediction:
    """Predict the top-N keyphrases for one document.

    A document that yields zero keyphrases produces an empty list, not an
    error; backend failures propagate to the caller.
    """
    sentences = split_sentences(build_source_text(doc))
    paragraphs = pack_paragraphs(sentences, budget=config.budget)
    ranked: list[RankedKeyphrases] = []
    empty = 0
    for paragraph in paragraphs:
        result = generate_ranked_keyphrases(
            backend,
            paragraph,
            num_beams=config.num_beams,
            max_keyphrases=config.n,
            beam_merge=config.beam_merge,
        )
        if not result.phrases:
            empty += 1
        ranked.append(result)
    scored = aggregate(ranked, config.n, epsilon_mode=config.epsilon_mode)
    return DocPrediction(
        doc_id=doc.id,
        keyphrases=[s.display for s in scored],
        paragraph_count=len(paragraphs),
        empty_generations=empty,
    )


def _predict_isolated(doc: Document, backend, config: PredictConfig) -> DocPrediction:
    try:
        return predict_document(doc, backend, config)
    except KpgenError as exc:
        return DocPrediction(doc_id=doc.id, error=str(exc))
    except Exception as exc:  # noqa: BLE001 - one bad document must not kill a 20K-doc run
        return DocPrediction(doc_id=doc.id, error=f"{type(exc).__name__}: {exc}")


def predict_corpus(
    docs: list[Document],
    backend: GenerationBackend,
    config: PredictConfig,
    output_path,
    stats_path=None,
) -> RunStats:
    """Predict a whole corpus to a JSONL file, input order preserved.

    Writes one ``{"id", "keyphrases"}`` line per successful document;
    failed documents are listed in the returned stats instead. The stats
    are also written as JSON next to the output when ``stats_path`` is
    given.
    """
    config.validate()
    started = time.monotonic()
    stats = RunStats(config={**config.to_dict(), "backend": type(backend).__name__})
    with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
        results = pool.map(lambda doc: _predict_isolated(doc, backend, config), docs)
        with open(output_path, "w", encoding="utf-8") as out:
            for prediction in results:
                stats.docs_processed += 1
                if prediction.error is not None:
                    stats.docs_failed.append(prediction.doc_id)
                    continue
                stats.paragraphs_per_doc[prediction.paragraph_count] += 1
                stats.empty_generations += prediction.empty_generations
                stats.total_keyphrases += len(prediction.keyphrases)
                line = json.dumps(
                    {"id": prediction.doc_id, "keyphrases": prediction.keyphrases},
                    ensure_ascii=False,
                )
                out.write(line + "\n")
    stats.duration_seconds = time.monotonic() - started
    if stats_path is not None:
        with open(stats_path, "w", encoding="utf-8") as fh:
            json.dump(stats.to_dict(), fh, ensure_ascii=False, indent=2)
            fh.write("\n")
    return stats
