"""Checks the stemmer against the classic algorithm's full outputs.

Expected values are full-pipeline results (all steps applied in order),
not the per-step illustrations: e.g. "agreed" passes step 1b as "agree"
but step 5a then strips the final e.
"""

import pytest

from kpgen.stemming import stem

CASES = [
    # plurals and -ed/-ing (steps 1a/1b and their cleanup)
    ("caresses", "caress"),
    ("ponies", "poni"),
    ("ties", "ti"),
    ("caress", "caress"),
    ("cats", "cat"),
    ("feed", "feed"),
    ("agreed", "agre"),
    ("disabled", "disabl"),
    ("matting", "mat"),
    ("mating", "mate"),
    ("meeting", "meet"),
    ("milling", "mill"),
    ("messing", "mess"),
    ("meetings", "meet"),
    ("flies", "fli"),
    ("dies", "di"),
    ("mules", "mule"),
    ("denied", "deni"),
    ("owned", "own"),
    ("humbled", "humbl"),
    ("sized", "size"),
    ("hopping", "hop"),
    ("tanned", "tan"),
    ("falling", "fall"),
    ("hissing", "hiss"),
    ("fizzed", "fizz"),
    ("failing", "fail"),
    ("filing", "file"),
    # y -> i (step 1c)
    ("happy", "happi"),
    ("sky", "sky"),
    # step 2
    ("relational", "relat"),
    ("conditional", "condit"),
    ("rational", "ration"),
    ("valenci", "valenc"),
    ("hesitanci", "hesit"),
    ("digitizer", "digit"),
    ("conformabli", "conform"),
    ("radicalli", "radic"),
    ("differentli", "differ"),
    ("vileli", "vile"),
    ("analogousli", "analog"),
    ("vietnamization", "vietnam"),
    ("predication", "predic"),
    ("operator", "oper"),
    ("feudalism", "feudal"),
    ("decisiveness", "decis"),
    ("hopefulness", "hope"),
    ("callousness", "callous"),
    ("formaliti", "formal"),
    ("sensitiviti", "sensit"),
    ("sensibiliti", "sensibl"),
    # step 3
    ("triplicate", "triplic"),
    ("formative", "form"),
    ("formalize", "formal"),
    ("electriciti", "electr"),
    ("electrical", "electr"),
    ("hopeful", "hope"),
    ("goodness", "good"),
    # step 4
    ("revival", "reviv"),
    ("allowance", "allow"),
    ("inference", "infer"),
    ("airliner", "airlin"),
    ("gyroscopic", "gyroscop"),
    ("adjustable", "adjust"),
    ("defensible", "defens"),
    ("irritant", "irrit"),
    ("replacement", "replac"),
    ("adjustment", "adjust"),
    ("dependent", "depend"),
    ("adoption", "adopt"),
    ("homologou", "homolog"),
    ("communism", "commun"),
    ("activate", "activ"),
    ("angulariti", "angular"),
    ("effective", "effect"),
    ("bowdlerize", "bowdler"),
    # step 5
    ("probate", "probat"),
    ("rate", "rate"),
    ("cease", "ceas"),
    ("controll", "control"),
    ("roll", "roll"),
    # no-ops and guards
    ("bled", "bled"),
    ("sing", "sing"),
    ("motoring", "motor"),
    # domain vocabulary the evaluator actually sees
    ("networks", "network"),
    ("sorters", "sorter"),
    ("keyphrases", "keyphras"),
    ("generation", "gener"),
    ("evaluation", "evalu"),
    ("detection", "detect"),
]


@pytest.mark.parametrize("word,expected", CASES)
def test_known_stems(word, expected):
    assert stem(word) == expected


def test_short_words_unchanged():
    for word in ("", "a", "is", "be", "on"):
        assert stem(word) == word
