"""Reusable conformance checks for generation backends and servers.

These functions raise AssertionError with a readable message when a
backend or server violates its contract. They are shipped with the
library so that any server implementation can run the exact same checks
the test suite runs against the reference stub.
"""

from .generation import GenerationRequest


def check_backend_contract(backend, text: str = "alpha beta gamma delta", num_beams: int = 4) -> None:
    """Assert the GenerationBackend contract on a live backend.

    Checks: sequences come back as (text, score) pairs, at most
    ``num_beams`` of them, ordered by non-increasing score; and, when the
    backend exposes ``count_tokens``, that counts are non-negative ints
    with ``count("") == 0``.
    """
    request = GenerationRequest(text=text, num_beams=num_beams, max_keyphrases=10)
    sequences = backend.generate(request)
    assert isinstance(sequences, list), f"generate returned {type(sequences).__name__}, not a list"
    assert len(sequences) <= num_beams, (
        f"backend returned {len(sequences)} sequences for num_beams={num_beams}"
    )
    for item in sequences:
        assert isinstance(item, tuple) and len(item) == 2, f"sequence entry {item!r} is not a pair"
        seq_text, score = item
        assert isinstance(seq_text, str), f"sequence text {seq_text!r} is not a string"
        assert isinstance(score, float), f"sequence score {score!r} is not a float"
    scores = [score for _, score in sequences]
    assert all(a >= b for a, b in zip(scores, scores[1:])), f"scores not non-increasing: {scores}"

    count_tokens = getattr(backend, "count_tokens", None)
    if count_tokens is not None:
        empty = count_tokens("")
        assert isinstance(empty, int) and empty == 0, f"count_tokens('') == {empty!r}, expected 0"
        count = count_tokens(text)
        assert isinstance(count, int) and count >= 0, f"count_tokens returned {count!r}"


def check_wire_protocol(base_url: str, session=None) -> None:
    """Assert the HTTP wire protocol against a running server."""
    import requests

    session = session or requests.Session()
    base_url = base_url.rstrip("/")

    response = session.get(base_url + "/health", timeout=30)
    assert response.status_code == 200, f"/health returned {response.status_code}"

    payload = {
        "text": "alpha beta gamma delta",
        "num_beams": 4,
        "max_length": 32,
        "num_return_sequences": 4,
    }
    response = session.post(base_url + "/generate", json=payload, timeout=120)
    assert response.status_code == 200, f"/generate returned {response.status_code}"
    data = response.json()
    sequences = data.get("sequences")
    assert isinstance(sequences, list) and sequences, f"bad sequences payload: {data!r}"
    assert len(sequences) <= payload["num_return_sequences"]
    for item in sequences:
        assert isinstance(item.get("text"), str), f"bad sequence text in {item!r}"
        assert isinstance(item.get("score"), (int, float)), f"bad sequence score in {item!r}"
    scores = [item["score"] for item in sequences]
    assert all(a >= b for a, b in zip(scores, scores[1:])), f"scores not non-increasing: {scores}"

    response = session.post(base_url + "/count_tokens", json={"text": ""}, timeout=30)
    assert response.status_code == 200, f"/count_tokens returned {response.status_code}"
    count = response.json().get("count")
    assert count == 0, f"count_tokens('') == {count!r}, expected 0"

    response = session.post(base_url + "/count_tokens", json={"text": "alpha beta"}, timeout=30)
    assert response.status_code == 200
    count = response.json().get("count")
    assert isinstance(count, int) and count > 0, f"count_tokens('alpha beta') == {count!r}"
