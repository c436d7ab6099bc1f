"""Fine-tune an encoder-decoder model on prepared pairs and serve it
over the HTTP protocol the kpgen pipeline consumes."""

from .config import TrainConfig
from .data import TrainingPair, load_pairs
from .errors import ConfigError, PairsFormatError, TrainerError
from .modeling import init_tiny_checkpoint, load_checkpoint
from .server import create_app, serve
from .train import finetune

__all__ = [
    "TrainConfig",
    "TrainingPair",
    "load_pairs",
    "ConfigError",
    "PairsFormatError",
    "TrainerError",
    "init_tiny_checkpoint",
    "load_checkpoint",
    "create_app",
    "serve",
    "finetune",
]
