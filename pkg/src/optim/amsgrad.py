"""
amsgrad.py - AMSGrad con corrección de sesgo y weight decay desacoplado

Por elemento, en el paso t:
    m ← β₁m + (1−β₁)g
    v ← β₂v + (1−β₂)g²
    v_max ← max(v_max, v)
    m̂ = m / (1−β₁ᵗ),  v̂ = v_max / (1−β₂ᵗ)
    θ ← θ − lr·m̂/(√v̂ + ε) − lr·wd·θ
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional

import numpy as np

from config import BETA1, BETA2, EPSILON, LEARNING_RATE, WEIGHT_DECAY
from src.utils.exceptions import ConfigurationError, ContractError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class OptimizerSettings:
    """Hiperparámetros del optimizador"""
    lr: float = LEARNING_RATE
    beta1: float = BETA1
    beta2: float = BETA2
    epsilon: float = EPSILON
    weight_decay: float = WEIGHT_DECAY

    def __post_init__(self):
        if not self.lr >= 0.0:
            raise ConfigurationError("lr", f"debe ser >= 0, se recibió {self.lr}")
        for name in ("beta1", "beta2"):
            value = getattr(self, name)
            if not 0.0 < value < 1.0:
                raise ConfigurationError(name, f"debe estar en (0, 1), se recibió {value}")
        if not self.epsilon > 0.0:
            raise ConfigurationError("epsilon", f"debe ser > 0, se recibió {self.epsilon}")
        if not self.weight_decay >= 0.0:
            raise ConfigurationError("weight_decay", f"debe ser >= 0, se recibió {self.weight_decay}")


@dataclass
class OptimizerState:
    """
    Momentos por parámetro (misma forma y dtype que el parámetro) y contador de pasos.
    """
    settings: OptimizerSettings
    step: int = 0
    first_moment: Dict[str, np.ndarray] = field(default_factory=dict)
    second_moment: Dict[str, np.ndarray] = field(default_factory=dict)
    max_second_moment: Dict[str, np.ndarray] = field(default_factory=dict)

    @classmethod
    def initial(cls, params, settings: OptimizerSettings = None) -> "OptimizerState":
        state = cls(settings or OptimizerSettings())
        for name, tensor in params.items():
            state.first_moment[name] = np.zeros_like(tensor.data)
            state.second_moment[name] = np.zeros_like(tensor.data)
            state.max_second_moment[name] = np.zeros_like(tensor.data)
        return state

    def moment_arrays(self) -> Dict[str, np.ndarray]:
        """Momentos aplanados con nombres ``m/``, ``v/`` y ``vmax/`` (checkpoint)"""
        arrays = {}
        for prefix, moments in (("m", self.first_moment), ("v", self.second_moment), ("vmax", self.max_second_moment)):
            arrays.update({f"{prefix}/{name}": array for name, array in moments.items()})
        return arrays

    @classmethod
    def from_moment_arrays(cls, settings: OptimizerSettings, step: int, arrays: Mapping[str, np.ndarray]) -> "OptimizerState":
        state = cls(settings, step)
        targets = {"m": state.first_moment, "v": state.second_moment, "vmax": state.max_second_moment}
        for key, array in arrays.items():
            prefix, _, name = key.partition("/")
            if prefix not in targets:
                raise ContractError("OptimizerState", f"bloque de momento desconocido '{key}'")
            targets[prefix][name] = array
        return state


def amsgrad_step(state: OptimizerState, params, grads: Mapping[str, np.ndarray],
                 lr: Optional[float] = None) -> OptimizerState:
    """
    Aplica un paso de AMSGrad a todos los parámetros.

    ``lr`` reemplaza la tasa de los settings solo en este paso (programa de decaimiento).

    Los parámetros se actualizan en su lugar; el optimizador es su único mutador.

    Raises:
        ContractError: faltan gradientes o momentos para algún parámetro
    """
    missing = [name for name in params if name not in grads]
    if missing:
        raise ContractError("amsgrad_step", "faltan gradientes", details=missing)
    for name, tensor in params.items():
        if name not in state.first_moment:
            state.first_moment[name] = np.zeros_like(tensor.data)
            state.second_moment[name] = np.zeros_like(tensor.data)
            state.max_second_moment[name] = np.zeros_like(tensor.data)

    settings = state.settings
    rate = settings.lr if lr is None else lr
    if not rate >= 0.0:
        raise ConfigurationError("lr", f"debe ser >= 0, se recibió {rate}")
    state.step += 1
    bias_correction1 = 1.0 - settings.beta1 ** state.step
    bias_correction2 = 1.0 - settings.beta2 ** state.step

    for name, tensor in params.items():
        theta = tensor.data
        grad = np.asarray(grads[name], dtype=theta.dtype)
        m = state.first_moment[name]
        v = state.second_moment[name]
        v_max = state.max_second_moment[name]

        m *= settings.beta1
        m += (1.0 - settings.beta1) * grad
        v *= settings.beta2
        v += (1.0 - settings.beta2) * grad * grad
        np.maximum(v_max, v, out=v_max)

        m_hat = m / bias_correction1
        v_hat = v_max / bias_correction2
        update = rate * m_hat / (np.sqrt(v_hat) + settings.epsilon)
        # El decaimiento usa θ antes de la actualización
        tensor.assign(theta - update - rate * settings.weight_decay * theta)

    return state


class AmsGrad:
    """Optimizador con estado propio sobre un ParameterSet"""

    def __init__(self, params, settings: OptimizerSettings = None, state: OptimizerState = None):
        self.params = params
        self.state = state or OptimizerState.initial(params, settings)

    @property
    def settings(self) -> OptimizerSettings:
        return self.state.settings

    def step(self, grads: Mapping[str, np.ndarray], lr: Optional[float] = None):
        amsgrad_step(self.state, self.params, grads, lr)
