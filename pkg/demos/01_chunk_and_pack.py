"""Walk through sentence splitting and budgeted paragraph packing.

Encoder inputs are capped, so a document becomes one or more paragraphs:
sentences are split on terminal punctuation (with an abbreviation guard)
and greedily packed into the largest runs that fit a token budget.
"""

from kpgen.segmenter import DEFAULT_BUDGET, pack_paragraphs, split_sentences

TEXT = (
    "Greedy packing is simple and deterministic. Each paragraph takes as many "
    "consecutive sentences as the budget allows, e.g. two short ones instead of "
    "one long one. See Fig. 2 of any systems paper for the obligatory diagram. "
    "A sentence longer than the whole budget is split on token boundaries. "
    "Nothing is dropped and nothing is reordered."
)


def show(budget):
    print(f"\nbudget = {budget} tokens")
    for paragraph in pack_paragraphs(split_sentences(TEXT), budget=budget):
        print(f"  [{paragraph.index}] ({paragraph.token_count:>2} tokens) {paragraph.text}")


def main():
    sentences = split_sentences(TEXT)
    print(f"{len(sentences)} sentences after splitting (abbreviations do not split):")
    for sentence in sentences:
        print(f"  - {sentence}")

    # small budgets force multi-paragraph documents; the default swallows
    # a title + abstract whole
    show(18)
    show(30)
    show(DEFAULT_BUDGET)

    print("\nhard split of an oversized sentence at budget 4:")
    for paragraph in pack_paragraphs(["one two three four five six seven"], budget=4):
        print(f"  [{paragraph.index}] {paragraph.text}")


if __name__ == "__main__":
    main()
