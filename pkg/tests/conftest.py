import pytest

from kpgen.corpus import Document

# The sensor-deployment abstract used across evaluator and pipeline
# tests; its five present keyphrases below are a frozen golden pair.
SENSOR_ABSTRACT = (
    "In order to monitor a region for traffic traversal, sensors can be deployed "
    "to perform collaborative target detection. Such a sensor network achieves a "
    "certain level of detection performance with an associated cost of deployment. "
    "This paper addresses this problem by proposing path exposure as a measure of "
    "the goodness of a deployment and presents an approach for sequential "
    "deployment in steps. It illustrates that the cost of deployment can be "
    "minimized to achieve the desired detection performance by appropriately "
    "choosing the number of sensors deployed in each step."
)

SENSOR_PRESENT_KEYPHRASES = [
    "target detection",
    "path exposure",
    "sensor network",
    "collaborative target detection",
    "sequential deployment",
]

SENSOR_PRESENT_SERIALIZED = (
    "[target detection, path exposure, sensor network, "
    "collaborative target detection, sequential deployment]"
)


@pytest.fixture
def sensor_abstract():
    return SENSOR_ABSTRACT


@pytest.fixture
def sensor_present():
    return list(SENSOR_PRESENT_KEYPHRASES)


def golden_documents():
    """The 3-document evaluation fixture with hand-computed macro metrics.

    Frozen report (independently recomputed before being asserted
    anywhere): present F@5 = 214/315, present F@10 = 86/135,
    absent R@10 = 1/2; all three docs evaluated in both partitions.
    """
    return [
        Document(
            id="g1",
            title="Graph Coloring Heuristics",
            abstract="We study greedy graph coloring on sparse graphs. "
            "Register allocation is a classic application.",
            gold=["graph coloring", "greedy heuristics", "register allocation", "chromatic polynomial"],
        ),
        Document(
            id="g2",
            title="Neural Machine Translation?",
            abstract="Attention mechanisms dominate modern translation systems.",
            gold=["attention mechanisms", "neural machine translation", "beam search"],
        ),
        Document(
            id="g3",
            title="Sorting Networks",
            abstract="Bitonic sorters are classic parallel sorting networks.",
            gold=["sorting networks", "bitonic sort"],
        ),
    ]


def golden_predictions():
    return {
        "g1": ["Graph Coloring", "sparse graphs", "chromatic polynomial", "tabu search", "register allocation"],
        "g2": [
            "neural machine translation",
            "modern translation",
            "attention mechanisms",
            "translation systems",
            "dominate modern",
            "mechanisms dominate",
            "attention",
            "beam search",
            "greedy decoding",
        ],
        "g3": ["parallel sorting", "sorting networks"],
    }


@pytest.fixture
def golden_docs():
    return golden_documents()


@pytest.fixture
def golden_preds():
    return golden_predictions()


# Title of 12 whitespace tokens, sentences of 8, 15, 9 and 10: under
# budget 20 the greedy packer must produce exactly [s1+s2], [s3], [s4+s5].
THREE_PARAGRAPH_DOC = Document(
    id="d-three",
    title="Adaptive load balancing strategies for distributed stream processing engines under bursty workloads",
    abstract="We measure tail latency under heavily skewed loads. "
    "Operators are migrated between nodes when the observed imbalance exceeds a threshold from queue lengths. "
    "Migration costs are amortized over long running windowed queries. "
    "Our simulations show stable throughput across a range of patterns.",
    gold=["load balancing"],
)

THREE_PARAGRAPH_TEXTS = [
    "Adaptive load balancing strategies for distributed stream processing engines "
    "under bursty workloads. We measure tail latency under heavily skewed loads.",
    "Operators are migrated between nodes when the observed imbalance exceeds a threshold from queue lengths.",
    "Migration costs are amortized over long running windowed queries. "
    "Our simulations show stable throughput across a range of patterns.",
]


@pytest.fixture
def three_paragraph_doc():
    return THREE_PARAGRAPH_DOC


@pytest.fixture
def three_paragraph_texts():
    return list(THREE_PARAGRAPH_TEXTS)
