"""Tiny randomly initialized encoder-decoder checkpoints.

A real fine-tune starts from a pretrained base model. CI cannot afford
one, so this module materializes a miniature random model plus a
word-level tokenizer as an ordinary checkpoint directory; everything
downstream (finetune, serve) then treats it like any other base model.
"""

from pathlib import Path
from typing import Iterable

import torch
from transformers import BartConfig, BartForConditionalGeneration, PreTrainedTokenizerFast

from .data import TrainingPair
from .tokenization import train_word_level_tokenizer

TINY_D_MODEL = 32
TINY_LAYERS = 2
TINY_HEADS = 2
TINY_FFN = 64


def tiny_model_config(vocab_size: int, max_positions: int) -> BartConfig:
    return BartConfig(
        vocab_size=vocab_size,
        d_model=TINY_D_MODEL,
        encoder_layers=TINY_LAYERS,
        decoder_layers=TINY_LAYERS,
        encoder_attention_heads=TINY_HEADS,
        decoder_attention_heads=TINY_HEADS,
        encoder_ffn_dim=TINY_FFN,
        decoder_ffn_dim=TINY_FFN,
        max_position_embeddings=max_positions,
        pad_token_id=1,
        bos_token_id=0,
        eos_token_id=2,
        decoder_start_token_id=2,
        forced_eos_token_id=2,
    )


def init_tiny_checkpoint(
    pairs: Iterable[TrainingPair],
    output_dir,
    *,
    max_source_tokens: int = 1024,
    max_target_tokens: int = 128,
    seed: int = 13,
) -> Path:
    """Build and save a random tiny model whose vocabulary covers ``pairs``."""
    output_dir = Path(output_dir)
    texts = [text for pair in pairs for text in (pair.source, pair.target)]
    tokenizer = train_word_level_tokenizer(texts, model_max_length=max_source_tokens)
    # The position table must cover the longest input AND the longest
    # generation a client may request, with headroom for offset slots.
    config = tiny_model_config(
        vocab_size=tokenizer.vocab_size,
        max_positions=max(max_source_tokens, max_target_tokens) + 32,
    )
    generator_state = torch.random.get_rng_state()
    try:
        torch.manual_seed(seed)
        model = BartForConditionalGeneration(config)
    finally:
        torch.random.set_rng_state(generator_state)
    output_dir.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(output_dir)
    tokenizer.save_pretrained(output_dir)
    return output_dir


def load_checkpoint(path) -> tuple[PreTrainedTokenizerFast, torch.nn.Module]:
    """Load any checkpoint directory (tiny or pretrained) in eval mode."""
    from transformers import AutoModelForSeq2SeqLM, AutoTokenizer

    tokenizer = AutoTokenizer.from_pretrained(str(path))
    model = AutoModelForSeq2SeqLM.from_pretrained(str(path))
    model.eval()
    return tokenizer, model
