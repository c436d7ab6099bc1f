import pytest
import requests

from kpgen.errors import ConfigError, ProtocolError, TransportError
from kpgen.generation import (
    BackendTokenCounter,
    GenerationRequest,
    HttpBackend,
    MockBackend,
    generate_ranked_keyphrases,
)
from kpgen.segmenter import Paragraph

from oracles import mock_rule_keyphrases
from stub_backend import sequences_response, stub_server


def paragraph(text, index=0):
    return Paragraph(text=text, index=index, token_count=len(text.split()))


class ScriptedBackend:
    def __init__(self, sequences):
        self.sequences = sequences

    def generate(self, request):
        return list(self.sequences)


class FailingBackend:
    def generate(self, request):
        raise TransportError("backend down")


def test_request_validation():
    with pytest.raises(ConfigError):
        GenerationRequest(text="x", num_beams=0)
    with pytest.raises(ConfigError):
        GenerationRequest(text="x", max_keyphrases=0)


def test_merge_concatenates_beams_in_score_order():
    backend = ScriptedBackend([("[a, b]", -1.0), ("[b, c]", -2.0)])
    result = generate_ranked_keyphrases(backend, paragraph("text"), max_keyphrases=10)
    assert result.phrases == ["a", "b", "c"]
    assert result.paragraph_index == 0


def test_merge_sorts_unordered_backend_output():
    backend = ScriptedBackend([("[b, c]", -2.0), ("[a, b]", -1.0)])
    result = generate_ranked_keyphrases(backend, paragraph("text"))
    assert result.phrases == ["a", "b", "c"]


def test_merge_truncates_to_max_keyphrases():
    backend = ScriptedBackend([("[a, b, c, d]", 0.0)])
    result = generate_ranked_keyphrases(backend, paragraph("text"), max_keyphrases=2)
    assert result.phrases == ["a", "b"]


def test_top1_mode_uses_best_beam_only():
    backend = ScriptedBackend([("[a, b]", -1.0), ("[b, c]", -2.0)])
    result = generate_ranked_keyphrases(backend, paragraph("text"), beam_merge="top1")
    assert result.phrases == ["a", "b"]


def test_unknown_beam_merge_mode():
    with pytest.raises(ConfigError):
        generate_ranked_keyphrases(ScriptedBackend([]), paragraph("text"), beam_merge="best")


def test_all_empty_parses_give_empty_result():
    backend = ScriptedBackend([("", 0.0), ("[]", -1.0), ("   ", -2.0)])
    result = generate_ranked_keyphrases(backend, paragraph("text", index=4))
    assert result.phrases == []
    assert result.paragraph_index == 4


def test_transport_error_carries_paragraph_index():
    with pytest.raises(TransportError) as err:
        generate_ranked_keyphrases(FailingBackend(), paragraph("text", index=7))
    assert err.value.paragraph_index == 7


def test_mock_rule_examples():
    backend = MockBackend()
    assert backend.generate(GenerationRequest("alpha bb c", max_keyphrases=2)) == [
        ("[alpha, bb]", 0.0)
    ]
    assert backend.generate(GenerationRequest("a a a", max_keyphrases=2)) == [("[a]", 0.0)]
    assert backend.generate(GenerationRequest("xx yy", max_keyphrases=2)) == [("[xx, yy]", 0.0)]


def test_mock_fixture_paragraph():
    # Rule applied by hand: unique tokens sorted by (length desc, text):
    # consecutive(11), sentences(9), packing(7), Greedy(6), of(2).
    result = generate_ranked_keyphrases(
        MockBackend(), paragraph("Greedy packing of consecutive sentences"), max_keyphrases=3
    )
    assert result.phrases == ["consecutive", "sentences", "packing"]


def test_mock_matches_independent_rule_oracle():
    texts = [
        "Greedy packing of consecutive sentences",
        "Bloom Filters. A Bloom filter is a compact probabilistic set.",
        "a B c D e F g",
        "comma, bracket [x] survives, sanitization",
        "",
    ]
    for text in texts:
        for n in (1, 3, 10):
            result = generate_ranked_keyphrases(MockBackend(), paragraph(text), max_keyphrases=n)
            assert result.phrases == mock_rule_keyphrases(text, n)


def test_mock_custom_rule():
    backend = MockBackend(rule=lambda text, n: ["fixed", "list"][:n])
    result = generate_ranked_keyphrases(MockBackend(rule=backend._rule), paragraph("x"))
    assert result.phrases == ["fixed", "list"]


def test_mock_count_tokens():
    backend = MockBackend()
    assert backend.count_tokens("") == 0
    assert backend.count_tokens(" a  b ") == 2
    assert BackendTokenCounter(backend).count("a b c") == 3


def test_http_backend_rejects_bad_url():
    with pytest.raises(ConfigError):
        HttpBackend("ftp://example.org")
    with pytest.raises(ConfigError):
        HttpBackend("localhost:8000")


def test_http_generate_happy_path():
    seen = {}

    def generate(payload, index):
        seen.update(payload)
        return 200, sequences_response(("[a, b]", -0.5), ("[c]", -1.5))

    with stub_server(generate=generate) as (url, calls):
        backend = HttpBackend(url, retries=0)
        request = GenerationRequest("some paragraph", num_beams=4, max_target_tokens=64)
        assert backend.generate(request) == [("[a, b]", -0.5), ("[c]", -1.5)]
    assert calls["generate"] == 1
    assert seen == {
        "text": "some paragraph",
        "num_beams": 4,
        "max_length": 64,
        "num_return_sequences": 4,
    }


def test_http_retries_503_then_succeeds():
    def generate(payload, index):
        if index == 0:
            return 503, {"error": "warming up"}
        return 200, sequences_response(("[a]", 0.0))

    with stub_server(generate=generate) as (url, calls):
        backend = HttpBackend(url, retries=3, backoff=0.001)
        assert backend.generate(GenerationRequest("x")) == [("[a]", 0.0)]
    assert calls["generate"] == 2


def test_http_gives_up_after_retry_budget():
    def generate(payload, index):
        return 503, {"error": "still down"}

    with stub_server(generate=generate) as (url, calls):
        backend = HttpBackend(url, retries=1, backoff=0.001)
        with pytest.raises(TransportError) as err:
            backend.generate(GenerationRequest("x"))
        assert "2 attempt(s)" in str(err.value)
        assert "503" in str(err.value)
    assert calls["generate"] == 2


def test_http_client_errors_fail_fast():
    def generate(payload, index):
        return 400, {"error": "bad request"}

    with stub_server(generate=generate) as (url, calls):
        backend = HttpBackend(url, retries=3, backoff=0.001)
        with pytest.raises(TransportError):
            backend.generate(GenerationRequest("x"))
    assert calls["generate"] == 1


def test_http_missing_sequences_is_protocol_error():
    with stub_server(generate=lambda p, i: (200, {"outputs": []})) as (url, _):
        with pytest.raises(ProtocolError):
            HttpBackend(url, retries=0).generate(GenerationRequest("x"))


def test_http_malformed_sequence_entries_are_protocol_errors():
    bodies = [
        {"sequences": [{"text": "ok", "score": "high"}]},
        {"sequences": [{"text": 3, "score": 1.0}]},
        {"sequences": [{"text": "ok", "score": True}]},
        {"sequences": ["just a string"]},
    ]
    for body in bodies:
        with stub_server(generate=lambda p, i, body=body: (200, body)) as (url, _):
            with pytest.raises(ProtocolError):
                HttpBackend(url, retries=0).generate(GenerationRequest("x"))


def test_http_non_json_success_body_is_protocol_error():
    with stub_server(generate=lambda p, i: (200, b"not json")) as (url, _):
        with pytest.raises(ProtocolError):
            HttpBackend(url, retries=0).generate(GenerationRequest("x"))


def test_http_count_tokens():
    def count_tokens(payload, index):
        return 200, {"count": len(payload["text"].split())}

    with stub_server(count_tokens=count_tokens) as (url, _):
        backend = HttpBackend(url, retries=0)
        assert backend.count_tokens("a b c") == 3
        assert BackendTokenCounter(backend).count("") == 0


def test_http_count_tokens_schema_violations():
    for body in ({"count": -1}, {"count": True}, {"count": "3"}, {"n": 3}):
        with stub_server(count_tokens=lambda p, i, body=body: (200, body)) as (url, _):
            with pytest.raises(ProtocolError):
                HttpBackend(url, retries=0).count_tokens("x")


def test_http_health():
    with stub_server() as (url, _):
        assert HttpBackend(url).health() is True
    with stub_server(health_status=500) as (url, _):
        assert HttpBackend(url).health() is False
    # nothing listens after the server is torn down
    assert HttpBackend(url, timeout=0.5).health() is False


def test_http_connection_error_exhausts_retries():
    with stub_server() as (url, _):
        pass  # server gone; port closed
    backend = HttpBackend(url, timeout=0.2, retries=1, backoff=0.001)
    with pytest.raises(TransportError):
        backend.generate(GenerationRequest("x"))


def test_http_backend_via_requests_session_injection():
    # A shared session is accepted and reused.
    session = requests.Session()
    with stub_server(generate=lambda p, i: (200, sequences_response(("[a]", 0.0)))) as (url, _):
        backend = HttpBackend(url, session=session, retries=0)
        assert backend.generate(GenerationRequest("x"))[0][0] == "[a]"
