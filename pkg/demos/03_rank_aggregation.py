"""Demonstrate inverse-rank aggregation of per-paragraph keyphrase lists.

Each paragraph of a document yields its own ranked keyphrase list; the
document-level list scores every phrase by the sum of 1/rank over its
occurrences plus a small epsilon per occurrence, so that equal inverse-
rank sums are broken by how often a phrase was generated. Scores are
exact rationals: no float ever decides an ordering.
"""

from fractions import Fraction

from kpgen.aggregator import aggregate
from kpgen.generation import RankedKeyphrases

PARAGRAPH_LISTS = [
    RankedKeyphrases(0, ["load balancing", "tail latency", "skew"]),
    RankedKeyphrases(1, ["operator migration", "load balancing"]),
    RankedKeyphrases(2, ["windowed queries", "load balancing", "tail latency"]),
]


def main():
    n = 10
    print("per-paragraph ranked lists:")
    for ranked in PARAGRAPH_LISTS:
        print(f"  paragraph {ranked.paragraph_index}: {ranked.phrases}")

    print(f"\naggregated top {n} (epsilon = 1/{n + 1} per occurrence):")
    for scored in aggregate(PARAGRAPH_LISTS, n):
        print(f"  {float(scored.score):.4f} = {scored.score}  {scored.display}")

    # Equal inverse-rank sums: 1/1 vs 1/2 + 1/3 + 1/7 + 1/42, both exactly
    # 1. Floats cannot certify that tie; rationals can, and the phrase
    # generated four times must outrank the one generated once.
    print("\ntie broken by occurrence count:")
    tie = [
        RankedKeyphrases(0, ["solo"]),
        RankedKeyphrases(1, ["f1", "multi"]),
        RankedKeyphrases(2, ["f2", "f3", "multi"]),
        RankedKeyphrases(3, ["f4", "f5", "f6", "f7", "f8", "f9", "multi"]),
        RankedKeyphrases(4, [f"g{i}" for i in range(1, 42)] + ["multi"]),
    ]
    result = aggregate(tie, n=50)
    by_key = {scored.key: scored for scored in result}
    solo, multi = by_key["solo"], by_key["multi"]
    assert multi.score - solo.score == 3 * Fraction(1, 51)
    print(f"  solo : 1/1 occurrence,            score {solo.score}")
    print(f"  multi: 1/2 + 1/3 + 1/7 + 1/42,    score {multi.score}")
    order = [scored.key for scored in result]
    print(f"  multi ranked above solo: {order.index('multi') < order.index('solo')}")


if __name__ == "__main__":
    main()
