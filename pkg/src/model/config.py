"""
config.py - Configuración del modelo de rating (variante, dimensiones, semilla)
"""

from dataclasses import asdict, dataclass, fields, replace
from typing import Any, Dict, Tuple

import numpy as np

from config import (
    DEFAULT_SEED, ENCODER_HIDDEN, LINK_DIM, MLP_WIDTHS, PLACE_DIM, PRESETS, ROUNDS_LINK, ROUNDS_PLACE,
)
from src.utils.exceptions import ConfigurationError

VARIANTS = ("alpha", "beta")
ARCHITECTURES = ("hbgnn", "mlp")
PRECISIONS = {"float32": np.float32, "float64": np.float64}
MLP_DEPTH = 5


@dataclass(frozen=True)
class ModelConfig:
    """
    Hiperparámetros estructurales del modelo.

    Attributes:
        variant: "alpha" (IDs como nodos de enlace) o "beta" (IDs en el grafo de lugar)
        attention: Re-ponderación de aristas por atención (AHBGNN)
        link_dim: Ancho de los estados de los grafos de enlaces
        place_dim: Ancho de los estados del grafo de lugar
        encoder_hidden: Ancho oculto del codificador de encapsulación
        mlp_widths: Anchos de las 5 capas de la cabeza de rating (la última es 1)
        rounds_link: Rondas de paso de mensajes en los grafos de enlaces
        rounds_place: Rondas de intercambio por el puerto del grafo de lugar
        seed: Semilla de inicialización
        architecture: "hbgnn" o "mlp" (línea base sin grafos)
        precision: "float32" (entrenamiento) o "float64" (verificación de gradientes)
    """
    variant: str = "alpha"
    attention: bool = False
    link_dim: int = LINK_DIM
    place_dim: int = PLACE_DIM
    encoder_hidden: int = ENCODER_HIDDEN
    mlp_widths: Tuple[int, ...] = MLP_WIDTHS
    rounds_link: int = ROUNDS_LINK
    rounds_place: int = ROUNDS_PLACE
    seed: int = DEFAULT_SEED
    architecture: str = "hbgnn"
    precision: str = "float32"

    def __post_init__(self):
        object.__setattr__(self, "mlp_widths", tuple(int(w) for w in self.mlp_widths))

        if self.variant not in VARIANTS:
            raise ConfigurationError("variant", f"'{self.variant}' no es una variante válida ({', '.join(VARIANTS)})")
        if self.architecture not in ARCHITECTURES:
            raise ConfigurationError("architecture", f"'{self.architecture}' no es válida ({', '.join(ARCHITECTURES)})")
        if self.precision not in PRECISIONS:
            raise ConfigurationError("precision", f"'{self.precision}' no es válida ({', '.join(PRECISIONS)})")
        for name in ("link_dim", "place_dim", "encoder_hidden"):
            if getattr(self, name) < 1:
                raise ConfigurationError(name, f"debe ser positivo, se recibió {getattr(self, name)}")
        if len(self.mlp_widths) != MLP_DEPTH or self.mlp_widths[-1] != 1 or min(self.mlp_widths) < 1:
            raise ConfigurationError("mlp_widths", f"se esperan {MLP_DEPTH} anchos positivos terminando en 1, "
                                                   f"se recibió {list(self.mlp_widths)}")
        for name in ("rounds_link", "rounds_place"):
            if getattr(self, name) < 0:
                raise ConfigurationError(name, f"no puede ser negativo, se recibió {getattr(self, name)}")

    @property
    def dtype(self):
        return PRECISIONS[self.precision]

    @classmethod
    def preset(cls, name: str, **overrides) -> "ModelConfig":
        """
        Configuración con las dimensiones de un preset ("full", "reduced", "gradcheck").

        Raises:
            ConfigurationError: preset desconocido
        """
        if name not in PRESETS:
            raise ConfigurationError("preset", f"'{name}' no existe ({', '.join(PRESETS)})")
        link_dim, place_dim, encoder_hidden, mlp_widths = PRESETS[name]
        values = dict(link_dim=link_dim, place_dim=place_dim, encoder_hidden=encoder_hidden, mlp_widths=mlp_widths)
        values.update(overrides)
        return cls(**values)

    def with_overrides(self, **overrides) -> "ModelConfig":
        return replace(self, **overrides)

    def to_dict(self) -> Dict[str, Any]:
        values = asdict(self)
        values["mlp_widths"] = list(self.mlp_widths)
        return values

    @classmethod
    def from_dict(cls, values: Dict[str, Any]) -> "ModelConfig":
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise ConfigurationError("ModelConfig", f"campos desconocidos: {', '.join(unknown)}")
        return cls(**values)


def variant_label(config: ModelConfig) -> str:
    """Nombre corto del modelo: "MLP", "α-HBGNN", "β-AHBGNN", ..."""
    if config.architecture == "mlp":
        return "MLP"
    prefix = "α" if config.variant == "alpha" else "β"
    return f"{prefix}-{'AHBGNN' if config.attention else 'HBGNN'}"
