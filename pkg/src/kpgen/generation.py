"""Generation backends and per-paragraph ranked keyphrase extraction.

A backend turns paragraph text into scored candidate sequences; this
module parses those sequences and merges them into one ranked,
duplicate-free keyphrase list per paragraph. Two backends ship here: a
deterministic mock for fully offline runs and tests, and an HTTP client
for a model server speaking the wire protocol below.

Wire protocol (HTTP/JSON):
    POST {base_url}/generate
        {"text": str, "num_beams": int, "max_length": int,
         "num_return_sequences": int}
        -> {"sequences": [{"text": str, "score": number}, ...]}
        ordered by descending score
    POST {base_url}/count_tokens
        {"text": str} -> {"count": int}
    GET {base_url}/health -> 200
"""

import time
from dataclasses import dataclass, field
from typing import Protocol

import requests

from .codec import canonical_keyphrases, dedup_phrases, parse_generated
from .errors import ConfigError, ProtocolError, TransportError
from .segmenter import Paragraph

BEAM_MERGE_MODES = ("all", "top1")

DEFAULT_NUM_BEAMS = 20
DEFAULT_MAX_KEYPHRASES = 10
DEFAULT_MAX_TARGET_TOKENS = 128


@dataclass
class GenerationRequest:
    text: str
    num_beams: int = DEFAULT_NUM_BEAMS
    max_keyphrases: int = DEFAULT_MAX_KEYPHRASES
    max_target_tokens: int = DEFAULT_MAX_TARGET_TOKENS

    def __post_init__(self):
        if self.num_beams < 1:
            raise ConfigError(f"num_beams must be >= 1, got {self.num_beams}")
        if self.max_keyphrases < 1:
            raise ConfigError(f"max_keyphrases must be >= 1, got {self.max_keyphrases}")


@dataclass
class RankedKeyphrases:
    """Ordered keyphrases for one paragraph; rank is 1-based list position."""

    paragraph_index: int
    phrases: list[str] = field(default_factory=list)


class GenerationBackend(Protocol):
    """Produces candidate sequences for a paragraph, best first.

    Implementations must be safe for concurrent ``generate`` calls.
    ``count_tokens`` is optional; backends that have one enable
    subword-exact budgeting in the segmenter.
    """

    def generate(self, request: GenerationRequest) -> list[tuple[str, float]]: ...


def generate_ranked_keyphrases(
    backend: GenerationBackend,
    paragraph: Paragraph,
    num_beams: int = DEFAULT_NUM_BEAMS,
    max_keyphrases: int = DEFAULT_MAX_KEYPHRASES,
    max_target_tokens: int = DEFAULT_MAX_TARGET_TOKENS,
    beam_merge: str = "all",
) -> RankedKeyphrases:
    """Generate, parse, and merge beams into one ranked list for a paragraph.

    Sequences are parsed best-score-first and their keyphrases
    concatenated; the first occurrence of a keyphrase fixes its rank and
    duplicates are dropped, then the list is truncated to
    ``max_keyphrases``. ``beam_merge="top1"`` restricts parsing to the
    single best sequence. An all-empty parse yields an empty list, which
    the pipeline counts rather than treats as an error.
    """
    if beam_merge not in BEAM_MERGE_MODES:
        raise ConfigError(f"unknown beam merge mode {beam_merge!r}")
    request = GenerationRequest(
        text=paragraph.text,
        num_beams=num_beams,
        max_keyphrases=max_keyphrases,
        max_target_tokens=max_target_tokens,
    )
    try:
        sequences = backend.generate(request)
    except TransportError as exc:
        exc.paragraph_index = paragraph.index
        raise
    sequences = sorted(sequences, key=lambda pair: -pair[1])
    if beam_merge == "top1":
        sequences = sequences[:1]
    merged: list[str] = []
    for text, _score in sequences:
        merged.extend(parse_generated(text))
    phrases = dedup_phrases(merged)[:max_keyphrases]
    return RankedKeyphrases(paragraph_index=paragraph.index, phrases=phrases)


class MockBackend:
    """Deterministic offline backend.

    The default rule emits a single sequence holding the N longest unique
    whitespace tokens of the input (ties broken alphabetically), where N
    is the request's ``max_keyphrases``. A custom rule
    ``(text, n) -> list[str]`` can replace it.
    """

    def __init__(self, rule=None):
        self._rule = rule or _longest_tokens_rule

    def generate(self, request: GenerationRequest) -> list[tuple[str, float]]:
        phrases = canonical_keyphrases(self._rule(request.text, request.max_keyphrases))
        return [("[" + ", ".join(phrases) + "]", 0.0)]

    def count_tokens(self, text: str) -> int:
        return len(text.split())


def _longest_tokens_rule(text: str, n: int) -> list[str]:
    tokens = sorted(set(text.split()), key=lambda token: (-len(token), token))
    return tokens[:n]


class HttpBackend:
    """Client for a generation server speaking the wire protocol.

    Requests are idempotent, so connection failures and 5xx responses are
    retried with exponential backoff up to ``retries`` extra attempts;
    other non-2xx statuses fail immediately. Safe for concurrent calls
    (one session; requests sessions are thread-safe for simple use).
    """

    def __init__(
        self,
        base_url: str,
        timeout: float = 60.0,
        retries: int = 3,
        backoff: float = 0.5,
        session: requests.Session | None = None,
    ):
        if not base_url.startswith(("http://", "https://")):
            raise ConfigError(f"backend URL must be http(s), got {base_url!r}")
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self.retries = retries
        self.backoff = backoff
        self._session = session or requests.Session()

    def generate(self, request: GenerationRequest) -> list[tuple[str, float]]:
        payload = {
            "text": request.text,
            "num_beams": request.num_beams,
            "max_length": request.max_target_tokens,
            "num_return_sequences": request.num_beams,
        }
        data = self._post_json("/generate", payload)
        sequences = data.get("sequences") if isinstance(data, dict) else None
        if not isinstance(sequences, list):
            raise ProtocolError("generate response carries no 'sequences' list")
        out: list[tuple[str, float]] = []
        for item in sequences:
            if (
                not isinstance(item, dict)
                or not isinstance(item.get("text"), str)
                or not isinstance(item.get("score"), (int, float))
                or isinstance(item.get("score"), bool)
            ):
                raise ProtocolError(f"malformed sequence entry: {item!r}")
            out.append((item["text"], float(item["score"])))
        return out

    def count_tokens(self, text: str) -> int:
        data = self._post_json("/count_tokens", {"text": text})
        count = data.get("count") if isinstance(data, dict) else None
        if not isinstance(count, int) or isinstance(count, bool) or count < 0:
            raise ProtocolError(f"count_tokens response carries no valid 'count': {data!r}")
        return count

    def health(self) -> bool:
        try:
            response = self._session.get(self.base_url + "/health", timeout=self.timeout)
        except requests.RequestException:
            return False
        return response.status_code == 200

    def _post_json(self, path: str, payload: dict):
        url = self.base_url + path
        last_error: str = ""
        for attempt in range(self.retries + 1):
            if attempt:
                time.sleep(self.backoff * 2 ** (attempt - 1))
            try:
                response = self._session.post(url, json=payload, timeout=self.timeout)
            except requests.RequestException as exc:
                last_error = f"request failed: {exc}"
                continue
            if 200 <= response.status_code < 300:
                try:
                    return response.json()
                except ValueError as exc:
                    raise ProtocolError(f"{url} returned non-JSON body: {exc}") from exc
            last_error = f"HTTP {response.status_code}"
            if response.status_code < 500:
                break
        raise TransportError(f"POST {url} failed after {attempt + 1} attempt(s): {last_error}")


class BackendTokenCounter:
    """Adapts a backend's ``count_tokens`` endpoint to the TokenCounter shape."""

    def __init__(self, backend):
        self._backend = backend

    def count(self, text: str) -> int:
        return self._backend.count_tokens(text)
