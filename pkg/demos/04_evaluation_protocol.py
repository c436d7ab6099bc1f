"""Walk through the evaluation protocol: normalize, partition, score.

Predictions and gold keyphrases are normalized (punctuation to spaces,
lowercase), partitioned into present/absent against the source text, and
scored per partition: F@5 and F@10 for present phrases, R@10 for absent
ones. Documents without gold in a partition are skipped there, and all
metrics are exact rationals macro-averaged over documents.
"""

from kpgen.corpus import Document
from kpgen.evaluator import (
    evaluate_dataset,
    get_stemmer,
    normalize_key,
    partition_present_absent,
)

ABSTRACT = (
    "In order to monitor a region for traffic traversal, sensors can be deployed "
    "to perform collaborative target detection. Such a sensor network achieves a "
    "certain level of detection performance with an associated cost of deployment. "
    "This paper addresses this problem by proposing path exposure as a measure of "
    "the goodness of a deployment and presents an approach for sequential "
    "deployment in steps. It illustrates that the cost of deployment can be "
    "minimized to achieve the desired detection performance by appropriately "
    "choosing the number of sensors deployed in each step."
)

GOLD = [
    "target detection",
    "path exposure",
    "sensor deployment",
    "traffic monitoring",
    "wireless sensor networks",
]


def main():
    print("normalization erases case, punctuation and spacing differences:")
    for phrase in ["Path-Exposure", "path   exposure.", "PATH EXPOSURE"]:
        print(f"  {phrase!r} -> {normalize_key(phrase)!r}")

    present, absent = partition_present_absent(GOLD, ABSTRACT)
    print("\ngold phrases against the abstract:")
    for phrase in present:
        print(f"  present: {phrase}")
    for phrase in absent:
        print(f"  absent:  {phrase}")

    doc = Document(id="sensor", title="", abstract=ABSTRACT, gold=GOLD)
    predictions = {
        "sensor": [
            "target detection",
            "sensor network",
            "path exposure",
            "deployment cost",
            "traffic monitoring",
            "coverage",
        ]
    }
    report = evaluate_dataset(predictions, [doc])
    print("\nsingle-document report:")
    for label, value in [
        ("present F@5 ", report.present_f_at_5),
        ("present F@10", report.present_f_at_10),
        ("absent  R@10", report.absent_r_at_10),
    ]:
        print(f"  {label} = {value} = {float(value):.4f}")

    # stemming folds inflectional variants together, which can move a
    # phrase from absent to present
    plurals = ["sequential deployments", "sensor networks"]
    bare_present, _ = partition_present_absent(plurals, ABSTRACT)
    stemmed_present, _ = partition_present_absent(plurals, ABSTRACT, get_stemmer("porter"))
    print("\nplural variants of phrases the abstract uses in the singular:")
    for phrase in plurals:
        before = "present" if phrase in bare_present else "absent"
        after = "present" if phrase in stemmed_present else "absent"
        print(f"  {phrase!r}: {before} unstemmed, {after} with stemming")


if __name__ == "__main__":
    main()
