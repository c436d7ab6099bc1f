"""Fine-tuning hyperparameters.

The defaults are the recipe this package ships with and are treated as
frozen: experiments should override per run (CLI flags or constructor
arguments), not edit this file.
"""

import inspect
from dataclasses import asdict, dataclass

import torch

from .errors import ConfigError

DEFAULT_BASE_MODEL = "facebook/bart-base"


def ecosystem_adam_beta2() -> float:
    """AdamW's own default beta2, read from the installed optimizer.

    beta2 is deliberately not a knob here; it is recorded in config dumps
    so training runs are reproducible against a different torch version.
    """
    betas = inspect.signature(torch.optim.AdamW).parameters["betas"].default
    return float(betas[1])


@dataclass
class TrainConfig:
    base_model: str = DEFAULT_BASE_MODEL
    epochs: int = 3
    learning_rate: float = 5e-05
    train_batch_size: int = 128
    adam_beta1: float = 0.9
    adam_epsilon: float = 1e-08
    max_source_tokens: int = 1024
    max_target_tokens: int = 128
    # Hardware knobs, not hyperparameters: accumulation keeps the
    # effective batch at train_batch_size regardless of micro size.
    micro_batch_size: int = 8
    max_steps: int | None = None
    seed: int = 13

    def __post_init__(self):
        if self.epochs < 0:
            raise ConfigError(f"epochs must be >= 0, got {self.epochs}")
        if self.learning_rate <= 0:
            raise ConfigError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.train_batch_size < 1:
            raise ConfigError(f"train_batch_size must be >= 1, got {self.train_batch_size}")
        if self.micro_batch_size < 1:
            raise ConfigError(f"micro_batch_size must be >= 1, got {self.micro_batch_size}")
        if not 0 <= self.adam_beta1 < 1:
            raise ConfigError(f"adam_beta1 must be in [0, 1), got {self.adam_beta1}")
        if self.adam_epsilon <= 0:
            raise ConfigError(f"adam_epsilon must be > 0, got {self.adam_epsilon}")
        if self.max_source_tokens < 1 or self.max_target_tokens < 1:
            raise ConfigError("token limits must be >= 1")
        if self.max_steps is not None and self.max_steps < 1:
            raise ConfigError(f"max_steps must be >= 1 when set, got {self.max_steps}")
        if self.train_batch_size % self.effective_micro_batch_size() != 0:
            raise ConfigError(
                f"micro_batch_size {self.micro_batch_size} must divide "
                f"train_batch_size {self.train_batch_size}"
            )

    def effective_micro_batch_size(self) -> int:
        return min(self.micro_batch_size, self.train_batch_size)

    def accumulation_steps(self) -> int:
        return self.train_batch_size // self.effective_micro_batch_size()

    def dump(self) -> dict:
        """Full record of one run's configuration, including the values
        this package does not expose as knobs."""
        out = asdict(self)
        out["adam_beta2"] = ecosystem_adam_beta2()
        out["gradient_accumulation_steps"] = self.accumulation_steps()
        return out
