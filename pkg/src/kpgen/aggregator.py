"""Combine per-paragraph ranked keyphrase lists into a document-level top-N.

Each occurrence of a keyphrase at 1-based rank r in some paragraph's list
contributes 1/r plus a tie-break term eps = 1/(N+1). Because eps is added
per occurrence, two keyphrases with the same inverse-rank sum are ordered
by how often they were generated; eps is small enough (< 1/N) never to
reorder distinct inverse-rank sums. Scores are exact rationals so ties
are detected exactly; any residual tie is broken by first occurrence
(paragraph index, then rank).

Keyphrases are identified by the evaluator's normalization, so
aggregation and scoring agree on what "the same keyphrase" means; the
first surface form seen is kept for display.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import ConfigError
from .evaluator import normalize_key

EPSILON_MODES = ("per_occurrence", "per_keyphrase")


@dataclass
class ScoredKeyphrase:
    key: str
    display: str
    score: Fraction
    first_occurrence: tuple[int, int]


class _Entry:
    __slots__ = ("display", "inverse_rank_sum", "occurrences", "first_occurrence")

    def __init__(self, display: str, first_occurrence: tuple[int, int]):
        self.display = display
        self.inverse_rank_sum = Fraction(0)
        self.occurrences = 0
        self.first_occurrence = first_occurrence


def aggregate(per_paragraph, n: int, epsilon_mode: str = "per_occurrence") -> list[ScoredKeyphrase]:
    """Score and rank keyphrases across paragraphs; return the top n.

    ``per_paragraph`` is an iterable of RankedKeyphrases (anything with
    ``paragraph_index`` and ``phrases``). Every rank list must already be
    truncated to at most n phrases. Two surface forms that normalize to
    the same key are pooled: each occurrence contributes its own inverse
    rank. Phrases that normalize to nothing are ignored.
    """
    if n < 1:
        raise ConfigError(f"n must be >= 1, got {n}")
    if epsilon_mode not in EPSILON_MODES:
        raise ConfigError(f"unknown epsilon mode {epsilon_mode!r}")
    epsilon = Fraction(1, n + 1)
    entries: dict[str, _Entry] = {}
    for ranked in per_paragraph:
        if len(ranked.phrases) > n:
            raise ValueError(
                f"paragraph {ranked.paragraph_index} has {len(ranked.phrases)} phrases, more than n={n}"
            )
        for rank, phrase in enumerate(ranked.phrases, start=1):
            key = normalize_key(phrase)
            if not key:
                continue
            occurrence = (ranked.paragraph_index, rank)
            entry = entries.get(key)
            if entry is None:
                entry = entries[key] = _Entry(phrase, occurrence)
            elif occurrence < entry.first_occurrence:
                entry.first_occurrence = occurrence
                entry.display = phrase
            entry.inverse_rank_sum += Fraction(1, rank)
            entry.occurrences += 1

    scored = []
    for key, entry in entries.items():
        if epsilon_mode == "per_occurrence":
            score = entry.inverse_rank_sum + epsilon * entry.occurrences
        else:
            score = entry.inverse_rank_sum + epsilon
        scored.append(ScoredKeyphrase(key, entry.display, score, entry.first_occurrence))
    scored.sort(key=lambda s: (-s.score, s.first_occurrence))
    return scored[:n]
