"""Sentence splitting and greedy paragraph packing under a token budget.

Encoders accept a bounded number of tokens per input, so a document is
split into sentences and consecutive sentences are merged into
"paragraphs" that each fit the budget. The splitter is rule-based and
deterministic; no characters other than inter-sentence whitespace are
ever dropped.
"""

from dataclasses import dataclass
from importlib import resources
from typing import Protocol

from .errors import ConfigError

# 1024 encoder positions minus a reserve for model-specific special and
# boundary tokens.
DEFAULT_BUDGET = 1014

_TERMINALS = ".!?"
_CLOSERS = "\"')]}”’»"
_OPENERS = "([{\"'“‘«"


class TokenCounter(Protocol):
    """Anything that can report a token count for a text.

    ``count("")`` must be 0. Counts are expected to be roughly additive
    under concatenation (up to separator tokens); this is documented, not
    asserted.
    """

    def count(self, text: str) -> int: ...


class WhitespaceTokenCounter:
    """Counts whitespace-separated tokens. The model-agnostic default."""

    def count(self, text: str) -> int:
        return len(text.split())


@dataclass(frozen=True)
class Paragraph:
    """A run of consecutive sentences fitting the token budget."""

    text: str
    index: int
    token_count: int


def _load_default_abbreviations() -> frozenset[str]:
    data = resources.files("kpgen").joinpath("data/abbreviations.txt").read_text("utf-8")
    return frozenset(line.strip().lower() for line in data.splitlines() if line.strip())


_DEFAULT_ABBREVIATIONS: frozenset[str] | None = None


def default_abbreviations() -> frozenset[str]:
    """Abbreviation guard list shipped with the package (lowercase, with dots)."""
    global _DEFAULT_ABBREVIATIONS
    if _DEFAULT_ABBREVIATIONS is None:
        _DEFAULT_ABBREVIATIONS = _load_default_abbreviations()
    return _DEFAULT_ABBREVIATIONS


def _guarded(text: str, punct_start: int, abbreviations: frozenset[str]) -> bool:
    """True when the token ending at ``punct_start`` must not end a sentence."""
    if text[punct_start] != ".":
        return False
    word_start = punct_start
    while word_start > 0 and not text[word_start - 1].isspace():
        word_start -= 1
    token = text[word_start : punct_start + 1]
    if token.lower() in abbreviations:
        return True
    # Single-letter initials ("J. Smith").
    return len(token) == 2 and token[0].isalpha() and token[0].isupper()


def split_sentences(text: str, abbreviations: frozenset[str] | None = None) -> list[str]:
    """Split text into sentences on terminal punctuation.

    A boundary is a run of ``.!?`` (optionally followed by closing quotes
    or brackets), then whitespace, then an uppercase letter, digit, or
    opening bracket/quote. Tokens on the guard list (``e.g.``, ``fig.``,
    ...) and single-letter initials never end a sentence.
    """
    if abbreviations is None:
        abbreviations = default_abbreviations()
    sentences: list[str] = []
    n = len(text)
    start = 0
    i = 0
    while i < n:
        if text[i] not in _TERMINALS:
            i += 1
            continue
        j = i + 1
        while j < n and text[j] in _TERMINALS:
            j += 1
        k = j
        while k < n and text[k] in _CLOSERS:
            k += 1
        m = k
        while m < n and text[m].isspace():
            m += 1
        is_boundary = (
            m > k
            and m < n
            and (text[m].isupper() or text[m].isdigit() or text[m] in _OPENERS)
            and not _guarded(text, i, abbreviations)
        )
        if is_boundary:
            sentence = text[start:k].strip()
            if sentence:
                sentences.append(sentence)
            start = m
            i = m
        else:
            i = j
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def _split_oversized(sentence: str, counter: TokenCounter, budget: int) -> list[str]:
    """Hard-split a sentence that exceeds the budget on its own.

    Greedily packs whitespace tokens into maximal runs each within the
    budget; a single token that still exceeds the budget (possible with
    subword counters) falls back to a character-level greedy split.
    """
    pieces: list[str] = []
    current = ""
    for token in sentence.split():
        candidate = token if not current else current + " " + token
        if counter.count(candidate) <= budget:
            current = candidate
            continue
        if current:
            pieces.append(current)
            current = ""
        if counter.count(token) <= budget:
            current = token
        else:
            pieces.extend(_split_token(token, counter, budget))
    if current:
        pieces.append(current)
    return pieces


def _split_token(token: str, counter: TokenCounter, budget: int) -> list[str]:
    pieces = []
    current = ""
    for ch in token:
        candidate = current + ch
        if current and counter.count(candidate) > budget:
            pieces.append(current)
            current = ch
        else:
            current = candidate
    if current:
        pieces.append(current)
    return pieces


def pack_paragraphs(
    sentences: list[str],
    counter: TokenCounter | None = None,
    budget: int = DEFAULT_BUDGET,
) -> list[Paragraph]:
    """Greedily merge consecutive sentences into paragraphs within ``budget``.

    The next sentence joins the current paragraph iff the joined text
    still fits; otherwise it starts a new paragraph. A single sentence
    larger than the budget is hard-split into fragments that each become
    their own paragraph. Token counts are measured on the joined text.
    """
    if budget < 1:
        raise ConfigError(f"token budget must be >= 1, got {budget}")
    if counter is None:
        counter = WhitespaceTokenCounter()
    texts: list[str] = []
    current = ""
    for sentence in sentences:
        sentence = sentence.strip()
        if not sentence:
            continue
        candidate = sentence if not current else current + " " + sentence
        if counter.count(candidate) <= budget:
            current = candidate
            continue
        if current:
            texts.append(current)
            current = ""
        if counter.count(sentence) <= budget:
            current = sentence
        else:
            texts.extend(_split_oversized(sentence, counter, budget))
    if current:
        texts.append(current)
    return [Paragraph(text, i, counter.count(text)) for i, text in enumerate(texts)]
