"""Word-level tokenizer construction for the tiny-model path.

Pretrained checkpoints bring their own subword tokenizer; this module
only covers the randomly initialized models used in CI, where a
whitespace/punctuation word vocabulary built from the training pairs is
enough to exercise the full train/serve path.
"""

from typing import Iterable

from tokenizers import Tokenizer
from tokenizers.models import WordLevel
from tokenizers.pre_tokenizers import Whitespace
from tokenizers.processors import TemplateProcessing
from tokenizers.trainers import WordLevelTrainer
from transformers import PreTrainedTokenizerFast

# Order fixes the ids: bos 0, pad 1, eos 2, unk 3.
SPECIAL_TOKENS = ["<s>", "<pad>", "</s>", "<unk>"]


def train_word_level_tokenizer(
    texts: Iterable[str],
    *,
    model_max_length: int,
    min_frequency: int = 1,
) -> PreTrainedTokenizerFast:
    tokenizer = Tokenizer(WordLevel(unk_token="<unk>"))
    tokenizer.pre_tokenizer = Whitespace()
    trainer = WordLevelTrainer(special_tokens=SPECIAL_TOKENS, min_frequency=min_frequency)
    tokenizer.train_from_iterator(texts, trainer)
    bos = tokenizer.token_to_id("<s>")
    eos = tokenizer.token_to_id("</s>")
    tokenizer.post_processor = TemplateProcessing(
        single="<s> $A </s>",
        special_tokens=[("<s>", bos), ("</s>", eos)],
    )
    return PreTrainedTokenizerFast(
        tokenizer_object=tokenizer,
        bos_token="<s>",
        pad_token="<pad>",
        eos_token="</s>",
        unk_token="<unk>",
        model_max_length=model_max_length,
    )
