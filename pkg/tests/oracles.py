"""Independent reference implementations used as test oracles.

Everything here is deliberately written from the documented rules alone,
with different algorithms and data layouts than the library (flat triple
enumeration, two-pass sorting, character scans), so agreement is
evidence rather than tautology. ASCII-only where noted: the random test
corpora that feed these oracles are ASCII.
"""

import string
from fractions import Fraction

_PUNCT = set(string.punctuation)


def norm_tokens(text):
    """Punctuation to spaces, lowercase, whitespace split. ASCII punctuation only."""
    cleaned = "".join(" " if ch in _PUNCT else ch for ch in text)
    return cleaned.lower().split()


def norm_key(text):
    return " ".join(norm_tokens(text))


def reference_parse(text):
    """Keyphrase-list parse, rebuilt from the documented rule.

    Substring between first '[' and last ']' (missing ones widen to the
    string ends), split on ',', strip, drop empties, dedup casefold
    keeping the first surface form.
    """
    start = None
    for i, ch in enumerate(text):
        if ch == "[":
            start = i
            break
    end = None
    for i in range(len(text) - 1, -1, -1):
        if text[i] == "]":
            end = i
            break
    lo = 0 if start is None else start + 1
    hi = len(text) if end is None or end < lo else end
    seen = set()
    out = []
    for piece in text[lo:hi].split(","):
        piece = piece.strip()
        key = piece.casefold()
        if piece and key not in seen:
            seen.add(key)
            out.append(piece)
    return out


def mock_rule_keyphrases(text, n):
    """What the default mock backend must yield for a paragraph, end to end.

    The n longest unique whitespace tokens (ties alphabetical), then the
    codec's sanitize + casefold dedup that the emit/parse round trip
    applies.
    """
    tokens = sorted(set(text.split()), key=lambda token: (-len(token), token))[:n]
    seen = set()
    out = []
    for token in tokens:
        for structural in "[],":
            token = token.replace(structural, " ")
        token = " ".join(token.split())
        key = token.casefold()
        if token and key not in seen:
            seen.add(key)
            out.append(token)
    return out


def brute_force_aggregate(per_paragraph, n, epsilon_mode="per_occurrence"):
    """Exhaustive inverse-rank aggregation over flat occurrence triples.

    Returns (key, display, score, first_occurrence) tuples, top n. Sorting
    is two stable passes (first-occurrence ascending, then score
    descending) instead of one composite key.
    """
    epsilon = Fraction(1, n + 1)
    triples = []
    for ranked in per_paragraph:
        for rank, phrase in enumerate(ranked.phrases, start=1):
            key = norm_key(phrase)
            if key:
                triples.append((key, phrase, ranked.paragraph_index, rank))

    keys = []
    for key, _, _, _ in triples:
        if key not in keys:
            keys.append(key)

    rows = []
    for key in keys:
        occurrences = [(p, r, phrase) for k, phrase, p, r in triples if k == key]
        inverse_rank_sum = sum((Fraction(1, r) for _, r, _ in occurrences), Fraction(0))
        if epsilon_mode == "per_occurrence":
            score = inverse_rank_sum + epsilon * len(occurrences)
        else:
            score = inverse_rank_sum + epsilon
        first = min((p, r) for p, r, _ in occurrences)
        display = min(occurrences, key=lambda occ: (occ[0], occ[1]))[2]
        rows.append((key, display, score, first))

    rows.sort(key=lambda row: row[3])
    rows.sort(key=lambda row: row[2], reverse=True)
    return rows[:n]


def greedy_packing_by_enumeration(sentences, budget):
    """All prefix-respecting packings, filtered down to the greedy one.

    Enumerates every split of the sentence list into consecutive groups
    whose joined whitespace token count fits the budget, then picks the
    packing where each group is maximal given its start. Exponential;
    inputs stay small. Returns the list of joined-group texts. Sentences
    must each fit the budget on their own.
    """

    def count(text):
        return len(text.split())

    def fits(group):
        return count(" ".join(group)) <= budget

    def packings(index):
        if index == len(sentences):
            return [[]]
        out = []
        for end in range(index + 1, len(sentences) + 1):
            group = sentences[index:end]
            if not fits(group):
                break
            for rest in packings(end):
                out.append([group] + rest)
        return out

    candidates = packings(0)
    assert candidates, "no valid packing; an oversized sentence slipped in"

    def is_greedy(packing):
        position = 0
        for group in packing:
            extended = sentences[position : position + len(group) + 1]
            if len(extended) > len(group) and fits(extended):
                return False
            position += len(group)
        return True

    greedy = [p for p in candidates if is_greedy(p)]
    assert len(greedy) == 1, f"greedy packing not unique: {len(greedy)}"
    return [" ".join(group) for group in greedy[0]]
