"""
config.py - Configuración de una corrida de entrenamiento
"""

from dataclasses import dataclass

from config import (
    BATCH_SIZE, BETA1, BETA2, DEFAULT_SEED, EPOCHS_ML100K, EPSILON, LEARNING_RATE, LR_DECAY, WEIGHT_DECAY,
)
from src.optim import OptimizerSettings
from src.utils.exceptions import ConfigurationError


@dataclass(frozen=True)
class TrainRunConfig:
    """
    Attributes:
        epochs: Épocas completas sobre la partición de entrenamiento
        batch_size: Ejemplos por paso del optimizador
        seed: Semilla del barajado de cada época
        eval_every: Cada cuántas épocas se evalúa la partición de prueba (la última siempre)
        lr_decay: Factor por época de la tasa de aprendizaje, lr·lr_decay^(época−1)
    """
    epochs: int = EPOCHS_ML100K
    batch_size: int = BATCH_SIZE
    seed: int = DEFAULT_SEED
    lr: float = LEARNING_RATE
    beta1: float = BETA1
    beta2: float = BETA2
    epsilon: float = EPSILON
    weight_decay: float = WEIGHT_DECAY
    eval_every: int = 1
    lr_decay: float = LR_DECAY

    def __post_init__(self):
        if self.epochs < 1:
            raise ConfigurationError("epochs", f"debe ser >= 1, se recibió {self.epochs}")
        if self.batch_size < 1:
            raise ConfigurationError("batch_size", f"debe ser >= 1, se recibió {self.batch_size}")
        if self.eval_every < 1:
            raise ConfigurationError("eval_every", f"debe ser >= 1, se recibió {self.eval_every}")
        if not 0.0 < self.lr_decay <= 1.0:
            raise ConfigurationError("lr_decay", f"debe estar en (0, 1], se recibió {self.lr_decay}")
        self.optimizer_settings()

    def optimizer_settings(self) -> OptimizerSettings:
        return OptimizerSettings(lr=self.lr, beta1=self.beta1, beta2=self.beta2,
                                 epsilon=self.epsilon, weight_decay=self.weight_decay)
