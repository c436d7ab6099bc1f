"""Self-contained Porter stemmer (the classic 1980 algorithm).

Kept dependency-free because stemming is an optional evaluation mode;
matching any particular third-party port's quirks is a non-goal.
"""

_VOWELS = "aeiou"


def _is_cons(word: str, i: int) -> bool:
    ch = word[i]
    if ch in _VOWELS:
        return False
    if ch == "y":
        return i == 0 or not _is_cons(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of vowel-consonant sequences, the m of [C](VC)^m[V]."""
    m = 0
    i = 0
    n = len(stem)
    while i < n and _is_cons(stem, i):
        i += 1
    while i < n:
        while i < n and not _is_cons(stem, i):
            i += 1
        if i >= n:
            break
        m += 1
        while i < n and _is_cons(stem, i):
            i += 1
    return m


def _has_vowel(stem: str) -> bool:
    return any(not _is_cons(stem, i) for i in range(len(stem)))


def _ends_double_cons(stem: str) -> bool:
    return len(stem) >= 2 and stem[-1] == stem[-2] and _is_cons(stem, len(stem) - 1)


def _ends_cvc(stem: str) -> bool:
    if len(stem) < 3:
        return False
    n = len(stem)
    return (
        _is_cons(stem, n - 3)
        and not _is_cons(stem, n - 2)
        and _is_cons(stem, n - 1)
        and stem[-1] not in "wxy"
    )


# (suffix, replacement) tables, matched longest-suffix-first.
_STEP2 = [
    ("ational", "ate"), ("ization", "ize"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("tional", "tion"), ("biliti", "ble"), ("entli", "ent"),
    ("ousli", "ous"), ("ation", "ate"), ("alism", "al"), ("aliti", "al"),
    ("iviti", "ive"), ("enci", "ence"), ("anci", "ance"), ("izer", "ize"),
    ("abli", "able"), ("alli", "al"), ("ator", "ate"), ("eli", "e"),
]
_STEP3 = [
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
]
_STEP4 = [
    "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ion",
    "ism", "ate", "iti", "ous", "ive", "ize", "al", "er", "ic", "ou",
]


def _replace_if(word: str, suffix: str, replacement: str, min_measure: int) -> str | None:
    """Apply ``suffix -> replacement`` when the stem measure is large enough.

    Returns None when the suffix does not match at all (the caller keeps
    trying shorter suffixes); returns the unchanged word when the suffix
    matches but the condition fails (the step is then finished).
    """
    if not word.endswith(suffix):
        return None
    stem = word[: len(word) - len(suffix)]
    if _measure(stem) > min_measure - 1:
        return stem + replacement
    return word


def stem(word: str) -> str:
    """Stem one lowercase token."""
    if len(word) <= 2:
        return word

    # Step 1a: plurals.
    if word.endswith("sses"):
        word = word[:-2]
    elif word.endswith("ies"):
        word = word[:-2]
    elif not word.endswith("ss") and word.endswith("s"):
        word = word[:-1]

    # Step 1b: -eed / -ed / -ing.
    if word.endswith("eed"):
        if _measure(word[:-3]) > 0:
            word = word[:-1]
    else:
        stripped = None
        if word.endswith("ed") and _has_vowel(word[:-2]):
            stripped = word[:-2]
        elif word.endswith("ing") and _has_vowel(word[:-3]):
            stripped = word[:-3]
        if stripped is not None:
            word = stripped
            if word.endswith(("at", "bl", "iz")):
                word += "e"
            elif _ends_double_cons(word) and word[-1] not in "lsz":
                word = word[:-1]
            elif _measure(word) == 1 and _ends_cvc(word):
                word += "e"

    # Step 1c: terminal y.
    if word.endswith("y") and _has_vowel(word[:-1]):
        word = word[:-1] + "i"

    # Step 2.
    for suffix, replacement in _STEP2:
        result = _replace_if(word, suffix, replacement, 1)
        if result is not None:
            word = result
            break

    # Step 3.
    for suffix, replacement in _STEP3:
        result = _replace_if(word, suffix, replacement, 1)
        if result is not None:
            word = result
            break

    # Step 4.
    for suffix in _STEP4:
        if not word.endswith(suffix):
            continue
        stem_part = word[: len(word) - len(suffix)]
        if _measure(stem_part) > 1 and (suffix != "ion" or stem_part.endswith(("s", "t"))):
            word = stem_part
        break

    # Step 5a: terminal e.
    if word.endswith("e"):
        stem_part = word[:-1]
        m = _measure(stem_part)
        if m > 1 or (m == 1 and not _ends_cvc(stem_part)):
            word = stem_part

    # Step 5b: -ll reduction.
    if _measure(word) > 1 and _ends_double_cons(word) and word.endswith("l"):
        word = word[:-1]

    return word
