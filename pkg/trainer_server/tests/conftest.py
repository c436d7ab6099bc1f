import json
import threading
import time
from contextlib import contextmanager

import pytest
import uvicorn

from kpgen_trainer import TrainConfig, finetune, init_tiny_checkpoint, load_pairs
from kpgen_trainer.server import create_app

WORDS_A = ["graph", "signal", "cache", "lattice", "proxy"]
WORDS_B = ["routing", "coloring", "eviction", "basis", "protocol"]


def make_pair_records(count: int) -> list[dict]:
    """Deterministic synthetic pairs with a learnable source-target link."""
    records = []
    for i in range(count):
        a = WORDS_A[i % len(WORDS_A)]
        b = WORDS_B[(i // len(WORDS_A)) % len(WORDS_B)]
        source = (
            f"study {i} of {a} {b} methods . "
            f"we analyse {a} {b} and related systems in depth ."
        )
        records.append(
            {
                "source": source,
                "target": f"[ {a} {b} , related systems ]",
                "origin_doc_id": f"doc-{i}",
                "paragraph_index": 0,
            }
        )
    return records


def write_pairs(path, records) -> None:
    path.write_text(
        "\n".join(json.dumps(r) for r in records) + "\n", encoding="utf-8"
    )


@pytest.fixture(scope="session")
def pairs_file_50(tmp_path_factory):
    path = tmp_path_factory.mktemp("pairs") / "pairs.jsonl"
    write_pairs(path, make_pair_records(50))
    return path


@pytest.fixture(scope="session")
def tiny_base(tmp_path_factory, pairs_file_50):
    out = tmp_path_factory.mktemp("ckpt") / "base"
    return init_tiny_checkpoint(
        load_pairs(pairs_file_50), out, max_source_tokens=64, max_target_tokens=32, seed=13
    )


@pytest.fixture(scope="session")
def trained_checkpoint(tmp_path_factory, tiny_base, pairs_file_50):
    """A briefly fine-tuned checkpoint for server tests (speed over quality)."""
    config = TrainConfig(
        base_model=str(tiny_base),
        epochs=1,
        max_steps=3,
        train_batch_size=8,
        micro_batch_size=8,
        learning_rate=1e-3,
        max_source_tokens=64,
        max_target_tokens=32,
    )
    out = tmp_path_factory.mktemp("ckpt") / "trained"
    return finetune(pairs_file_50, config, out)


@pytest.fixture
def live_server():
    """Factory context manager running the app in a real uvicorn server."""

    @contextmanager
    def run(checkpoint: str):
        app = create_app(checkpoint)
        config = uvicorn.Config(app, host="127.0.0.1", port=0, log_level="warning")
        server = uvicorn.Server(config)
        thread = threading.Thread(target=server.run, daemon=True)
        thread.start()
        deadline = time.monotonic() + 30
        while not server.started:
            if time.monotonic() > deadline:
                raise RuntimeError("server did not start within 30s")
            if not thread.is_alive():
                raise RuntimeError("server thread died during startup")
            time.sleep(0.02)
        port = server.servers[0].sockets[0].getsockname()[1]
        try:
            yield f"http://127.0.0.1:{port}"
        finally:
            server.should_exit = True
            thread.join(timeout=10)

    return run
