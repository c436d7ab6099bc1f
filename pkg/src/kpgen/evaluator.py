"""The benchmark evaluation protocol.

Phrases and source texts are normalized by replacing punctuation with
whitespace, lowercasing, and splitting on whitespace runs. A phrase is
"present" when its normalized tokens occur contiguously in the normalized
source text, otherwise "absent". Present predictions are scored with
macro-averaged F@5 / F@10 against present gold, absent predictions with
macro-averaged R@10 against absent gold. Documents whose relevant gold
partition is empty are skipped for that partition (and counted), rather
than averaged in as zeros.

All per-document metrics and macro averages are exact rationals.
"""

import string
import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import stemming
from .corpus import Document, build_source_text
from .errors import ConfigError, EvaluationError

PRESENT_CUTOFFS = (5, 10)
ABSENT_CUTOFF = 10

_ASCII_PUNCT_RE = re.compile("[" + re.escape(string.punctuation) + "]")

Stemmer = Callable[[str], str]


def get_stemmer(name: str | None) -> Stemmer | None:
    if name is None or name == "none":
        return None
    if name == "porter":
        return stemming.stem
    raise ConfigError(f"unknown stemmer {name!r}")


def _replace_separators(text: str) -> str:
    # ASCII punctuation and symbols via one regex; the per-character
    # Unicode-category scan only runs for non-ASCII text.
    text = _ASCII_PUNCT_RE.sub(" ", text)
    if not text.isascii():
        text = "".join(
            " " if unicodedata.category(ch).startswith("P") else ch for ch in text
        )
    return text


def normalize(text: str, stemmer: Stemmer | None = None) -> list[str]:
    """Normalize a phrase or text to matching tokens.

    Punctuation becomes whitespace, text is lowercased and split on
    whitespace runs; empty tokens vanish. An optional stemmer is applied
    per token.
    """
    tokens = _replace_separators(text).lower().split()
    if stemmer is not None:
        tokens = [stemmer(token) for token in tokens]
    return tokens


def normalize_key(text: str, stemmer: Stemmer | None = None) -> str:
    """Single-string normalized identity: tokens re-joined by single spaces."""
    return " ".join(normalize(text, stemmer))


def _contains_contiguous(haystack: list[str], needle: list[str]) -> bool:
    n = len(needle)
    if n == 0 or n > len(haystack):
        return False
    return any(haystack[i : i + n] == needle for i in range(len(haystack) - n + 1))


def partition_present_absent(
    phrases: list[str],
    source_text: str,
    stemmer: Stemmer | None = None,
) -> tuple[list[str], list[str]]:
    """Split phrases into (present, absent) w.r.t. a source text.

    Present means the normalized phrase occurs as a contiguous token run
    in the normalized source. Phrases that normalize to nothing are
    dropped from both partitions. Relative order is preserved.
    """
    source_tokens = normalize(source_text, stemmer)
    present: list[str] = []
    absent: list[str] = []
    for phrase in phrases:
        tokens = normalize(phrase, stemmer)
        if not tokens:
            continue
        if _contains_contiguous(source_tokens, tokens):
            present.append(phrase)
        else:
            absent.append(phrase)
    return present, absent


def _match_count(kept: list[str], gold: list[str], stemmer: Stemmer | None) -> int:
    """One-to-one matches between predictions and gold under normalization."""
    remaining = Counter(
        key for key in (normalize_key(g, stemmer) for g in gold) if key
    )
    matches = 0
    for prediction in kept:
        key = normalize_key(prediction, stemmer)
        if key and remaining[key] > 0:
            remaining[key] -= 1
            matches += 1
    return matches


def _check_cutoff(k: int, gold: list[str]) -> None:
    if k < 1:
        raise ConfigError(f"cutoff k must be >= 1, got {k}")
    if not gold:
        raise ValueError("gold list must be non-empty; the caller owns the skip rule")


def f_at_k(
    predictions: list[str],
    gold: list[str],
    k: int,
    stemmer: Stemmer | None = None,
    precision_denominator: str = "kept",
) -> Fraction:
    """F-score over the top-k predictions, as an exact rational.

    Precision divides by the number of kept predictions (``min(k, len)``)
    by default, so returning fewer than k phrases is not penalized;
    ``precision_denominator="k"`` switches to a fixed denominator.
    """
    _check_cutoff(k, gold)
    if precision_denominator not in ("kept", "k"):
        raise ConfigError(f"unknown precision denominator {precision_denominator!r}")
    kept = predictions[:k]
    matches = _match_count(kept, gold, stemmer)
    denominator = len(kept) if precision_denominator == "kept" else k
    precision = Fraction(matches, denominator) if denominator else Fraction(0)
    recall = Fraction(matches, len(gold))
    if precision + recall == 0:
        return Fraction(0)
    return 2 * precision * recall / (precision + recall)


def recall_at_k(
    predictions: list[str],
    gold: list[str],
    k: int,
    stemmer: Stemmer | None = None,
) -> Fraction:
    """Recall over the top-k predictions, as an exact rational."""
    _check_cutoff(k, gold)
    return Fraction(_match_count(predictions[:k], gold, stemmer), len(gold))


@dataclass
class EvalReport:
    """Macro-averaged metrics plus evaluated/skipped counts per partition."""

    present_f_at_5: Fraction = Fraction(0)
    present_f_at_10: Fraction = Fraction(0)
    absent_r_at_10: Fraction = Fraction(0)
    total_docs: int = 0
    evaluated_present: int = 0
    skipped_present: int = 0
    evaluated_absent: int = 0
    skipped_absent: int = 0
    config: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        def metric(value: Fraction) -> dict:
            return {"value": float(value), "exact": f"{value.numerator}/{value.denominator}"}

        return {
            "present": {
                "f_at_5": metric(self.present_f_at_5),
                "f_at_10": metric(self.present_f_at_10),
                "evaluated_docs": self.evaluated_present,
                "skipped_docs": self.skipped_present,
            },
            "absent": {
                "r_at_10": metric(self.absent_r_at_10),
                "evaluated_docs": self.evaluated_absent,
                "skipped_docs": self.skipped_absent,
            },
            "total_docs": self.total_docs,
            "config": dict(self.config),
        }


def evaluate_dataset(
    predictions_by_doc: dict[str, list[str]],
    docs: list[Document],
    stem: str | None = None,
    precision_denominator: str = "kept",
) -> EvalReport:
    """Evaluate ordered per-document predictions against gold documents.

    Both predictions and gold are partitioned by presence in the
    document's source text. Macro averages run over documents whose
    relevant gold partition is non-empty; the others are counted as
    skipped for that partition. Predictions for unknown document ids are
    an error.
    """
    stemmer = get_stemmer(stem)
    known_ids = {doc.id for doc in docs}
    unknown = [doc_id for doc_id in predictions_by_doc if doc_id not in known_ids]
    if unknown:
        raise EvaluationError(
            "predictions reference unknown document ids: " + ", ".join(sorted(unknown))
        )

    f5_sum = Fraction(0)
    f10_sum = Fraction(0)
    r10_sum = Fraction(0)
    report = EvalReport(
        total_docs=len(docs),
        config={"stem": stem, "precision_denominator": precision_denominator},
    )
    for doc in docs:
        source = build_source_text(doc)
        predictions = predictions_by_doc.get(doc.id, [])
        present_gold, absent_gold = partition_present_absent(doc.gold, source, stemmer)
        present_pred, absent_pred = partition_present_absent(predictions, source, stemmer)
        if present_gold:
            report.evaluated_present += 1
            f5_sum += f_at_k(present_pred, present_gold, 5, stemmer, precision_denominator)
            f10_sum += f_at_k(present_pred, present_gold, 10, stemmer, precision_denominator)
        else:
            report.skipped_present += 1
        if absent_gold:
            report.evaluated_absent += 1
            r10_sum += recall_at_k(absent_pred, absent_gold, ABSENT_CUTOFF, stemmer)
        else:
            report.skipped_absent += 1
    if report.evaluated_present:
        report.present_f_at_5 = f5_sum / report.evaluated_present
        report.present_f_at_10 = f10_sum / report.evaluated_present
    if report.evaluated_absent:
        report.absent_r_at_10 = r10_sum / report.evaluated_absent
    return report
