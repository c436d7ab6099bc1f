"""Run the whole pipeline offline: prepare, predict with the mock, evaluate.

The mock backend needs no model or server: for each paragraph it emits
the longest unique tokens as a single bracketed sequence. That is enough
to drive every pipeline stage deterministically, which is how the test
suite checks byte-identical reruns.
"""

import json
import tempfile
from pathlib import Path

from kpgen.cli import main as cli

DOCS = [
    {
        "id": "demo-a",
        "title": "Adaptive load balancing for stream processing",
        "abstract": "We measure tail latency under heavily skewed loads. "
        "Operators are migrated between nodes when the observed imbalance exceeds "
        "a threshold from queue lengths. Migration costs are amortized over long "
        "running windowed queries.",
        "keywords": ["load balancing", "operator migration", "tail latency"],
    },
    {
        "id": "demo-b",
        "title": "Bloom filters in query engines",
        "abstract": "A Bloom filter is a compact probabilistic set. Join filters "
        "prune probe-side rows before the shuffle. False positive rates are tuned "
        "per query.",
        "keywords": ["bloom filter", "join pruning", "false positive rate"],
    },
]


def main():
    with tempfile.TemporaryDirectory(prefix="kpgen-e2e-") as tmp:
        workdir = Path(tmp)
        corpus = workdir / "corpus.jsonl"
        corpus.write_text(
            "".join(json.dumps(doc) + "\n" for doc in DOCS), encoding="utf-8"
        )
        pairs = workdir / "pairs.jsonl"
        predictions = workdir / "predictions.jsonl"

        print("== prepare: paragraphs become training pairs ==")
        assert cli(["prepare", "--input", str(corpus), "--output", str(pairs), "--budget", "30"]) == 0
        for line in pairs.read_text(encoding="utf-8").splitlines():
            pair = json.loads(line)
            print(f"  {pair['origin_doc_id']}[{pair['paragraph_index']}] "
                  f"{pair['source'][:60]}... -> {pair['target']}")

        print("\n== predict: mock backend, aggregated per document ==")
        assert cli([
            "predict", "--input", str(corpus), "--output", str(predictions),
            "--budget", "30", "--n", "6", "--parallelism", "2",
        ]) == 0
        for line in predictions.read_text(encoding="utf-8").splitlines():
            prediction = json.loads(line)
            print(f"  {prediction['id']}: {prediction['keyphrases']}")
        stats = json.loads((workdir / "predictions.jsonl.stats.json").read_text(encoding="utf-8"))
        print(f"  stats: {stats['docs_processed']} docs, "
              f"{stats['total_keyphrases']} keyphrases, config n={stats['config']['n']}")

        print("\n== evaluate: present/absent report ==")
        assert cli(["evaluate", "--predictions", str(predictions), "--gold", str(corpus)]) == 0


if __name__ == "__main__":
    main()
