"""Serialize keyphrase lists into bracketed target sequences and parse them back.

The target format is ``[k1, k2, ..., km]``: plain ``[``, ``,`` and ``]``
act as the only structure markers, so any generated text can be salvaged
into a keyphrase list without special vocabulary.
"""

import re

from .errors import CodecError

# Characters that carry structure in the target format; they may not
# survive inside a phrase.
_STRUCTURAL_RE = re.compile(r"[\[\],]")


def sanitize_phrase(phrase: str) -> str:
    """Strip structural characters from a phrase and collapse whitespace."""
    cleaned = _STRUCTURAL_RE.sub(" ", phrase)
    return " ".join(cleaned.split())


def dedup_phrases(phrases) -> list[str]:
    """Drop empty phrases and case-insensitive duplicates.

    The first surface form seen for a given casefolded key wins; order of
    first occurrence is preserved.
    """
    seen = set()
    out = []
    for phrase in phrases:
        key = phrase.casefold()
        if key and key not in seen:
            seen.add(key)
            out.append(phrase)
    return out


def canonical_keyphrases(phrases) -> list[str]:
    """Sanitize, drop empties, and dedup a raw phrase list."""
    return dedup_phrases(sanitize_phrase(p) for p in phrases)


def serialize_keyphrases(phrases) -> str:
    """Render a keyphrase list as a ``[k1, k2, ...]`` target sequence.

    Phrases are sanitized and deduped first. Raises :class:`CodecError`
    when nothing survives, because an empty target sequence is never a
    valid training signal.
    """
    cleaned = canonical_keyphrases(phrases)
    if not cleaned:
        raise CodecError("keyphrase list is empty after sanitization")
    return "[" + ", ".join(cleaned) + "]"


def parse_generated(text: str) -> list[str]:
    """Extract a keyphrase list from arbitrary generated text.

    Takes the substring between the first ``[`` and the last ``]``; a
    missing ``[`` means "start of string" and a missing (or misplaced)
    ``]`` means "end of string", which salvages truncated beam outputs.
    The pieces are split on ``,``, trimmed, and deduped case-insensitively.
    Never raises: the worst case is an empty list.
    """
    start = text.find("[")
    lo = start + 1 if start != -1 else 0
    end = text.rfind("]")
    hi = end if end >= lo else len(text)
    parts = (part.strip() for part in text[lo:hi].split(","))
    return dedup_phrases(parts)
