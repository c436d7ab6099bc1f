"""Fine-tuning loop: pairs file in, checkpoint directory out."""

import json
import logging
from pathlib import Path

import torch

from .config import TrainConfig, ecosystem_adam_beta2
from .data import load_pairs
from .errors import TrainerError
from .modeling import load_checkpoint

logger = logging.getLogger(__name__)

CONFIG_DUMP_NAME = "train_config.json"
TRAIN_LOG_NAME = "train_log.jsonl"


def finetune(pairs_file, config: TrainConfig, output_dir) -> Path:
    """Fine-tune ``config.base_model`` on a prepared pairs file.

    Writes the checkpoint, a full config dump (CONFIG_DUMP_NAME), and a
    per-step loss log (TRAIN_LOG_NAME) into ``output_dir``. A malformed
    pairs file aborts before anything is written. ``epochs=0`` is a
    supported degenerate case: the base model is saved through unchanged.
    """
    pairs = load_pairs(pairs_file)
    if not pairs and config.epochs > 0:
        raise TrainerError(f"no training pairs in {pairs_file}")

    tokenizer, model = load_checkpoint(config.base_model)
    device = torch.device("cuda" if torch.cuda.is_available() else "cpu")
    model.to(device)

    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    (output_dir / CONFIG_DUMP_NAME).write_text(
        json.dumps(config.dump(), indent=2) + "\n", encoding="utf-8"
    )

    with (output_dir / TRAIN_LOG_NAME).open("w", encoding="utf-8") as log_handle:
        if config.epochs > 0:
            _train_loop(model, tokenizer, pairs, config, device, log_handle)

    model.save_pretrained(output_dir)
    tokenizer.save_pretrained(output_dir)
    return output_dir


def _train_loop(model, tokenizer, pairs, config: TrainConfig, device, log_handle) -> None:
    torch.manual_seed(config.seed)
    model.train()
    optimizer = torch.optim.AdamW(
        model.parameters(),
        lr=config.learning_rate,
        betas=(config.adam_beta1, ecosystem_adam_beta2()),
        eps=config.adam_epsilon,
    )
    shuffler = torch.Generator().manual_seed(config.seed)
    micro = config.effective_micro_batch_size()
    accumulation = config.accumulation_steps()

    step = 0
    for epoch in range(config.epochs):
        order = torch.randperm(len(pairs), generator=shuffler).tolist()
        micro_batches = [order[i : i + micro] for i in range(0, len(order), micro)]
        # Tail batches that do not fill a whole accumulation window still
        # flush as one (smaller) optimizer step at epoch end.
        for group_start in range(0, len(micro_batches), accumulation):
            group = micro_batches[group_start : group_start + accumulation]
            optimizer.zero_grad()
            losses = []
            for indices in group:
                batch = [pairs[i] for i in indices]
                loss = _micro_batch_loss(model, tokenizer, batch, config, device)
                (loss / len(group)).backward()
                losses.append(loss.item())
            optimizer.step()
            step += 1
            mean_loss = sum(losses) / len(losses)
            logger.info("epoch %d step %d loss %.6f", epoch + 1, step, mean_loss)
            log_handle.write(json.dumps({"step": step, "loss": mean_loss}) + "\n")
            if config.max_steps is not None and step >= config.max_steps:
                return


def _micro_batch_loss(model, tokenizer, batch, config: TrainConfig, device):
    encoded = tokenizer(
        [pair.source for pair in batch],
        truncation=True,
        max_length=config.max_source_tokens,
        padding=True,
        return_tensors="pt",
    ).to(device)
    labels = tokenizer(
        [pair.target for pair in batch],
        truncation=True,
        max_length=config.max_target_tokens,
        padding=True,
        return_tensors="pt",
    ).input_ids.to(device)
    labels[labels == tokenizer.pad_token_id] = -100
    return model(**encoded, labels=labels).loss
