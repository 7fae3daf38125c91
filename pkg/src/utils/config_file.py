"""
config_file.py - Archivos de configuración planos ``clave = valor``

Las claves son los nombres de campo de ModelConfig y TrainRunConfig.
Precedencia: valores por defecto < archivo < banderas del CLI.
"""

import logging
import typing
from dataclasses import fields, is_dataclass
from pathlib import Path
from typing import Any, Dict, Mapping

from src.utils.exceptions import ConfigurationError

logger = logging.getLogger(__name__)

_TRUE = {"1", "true", "yes", "on", "si", "sí"}
_FALSE = {"0", "false", "no", "off"}


def read_config_file(path) -> Dict[str, str]:
    """
    Lee pares ``clave = valor``; ignora líneas vacías y comentarios ``#``.

    Raises:
        ConfigurationError: archivo ilegible, línea sin '=' o clave repetida (con número de línea)
    """
    path = Path(path)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise ConfigurationError(str(path), "no se pudo leer el archivo de configuración", original_error=e)

    values: Dict[str, str] = {}
    for number, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"{path}:{number}", f"se esperaba 'clave = valor', se encontró '{raw.strip()}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigurationError(f"{path}:{number}", "clave vacía")
        if key in values:
            raise ConfigurationError(f"{path}:{number}", f"clave repetida '{key}'")
        values[key] = value

    logger.info(f"Configuración leída de {path}: {len(values)} claves")
    return values


def _coerce(name: str, annotation, value):
    if not isinstance(value, str):
        return value
    text = value.strip()
    origin = typing.get_origin(annotation)
    try:
        if annotation is bool:
            lowered = text.lower()
            if lowered in _TRUE:
                return True
            if lowered in _FALSE:
                return False
            raise ValueError(f"'{text}' no es booleano")
        if annotation is int:
            return int(text)
        if annotation is float:
            return float(text)
        if origin is tuple:
            return tuple(int(part) for part in text.replace(",", " ").split())
        if origin is typing.Union:
            # Optional[X]
            inner = [arg for arg in typing.get_args(annotation) if arg is not type(None)]
            if text.lower() in {"", "none"}:
                return None
            return _coerce(name, inner[0], text)
    except ValueError as e:
        raise ConfigurationError(name, f"valor inválido '{text}': {e}", original_error=e)
    return text


def split_known(dataclass_type, values: Mapping[str, Any]):
    """Separa los valores en (propios de la dataclass, resto)"""
    known = {f.name for f in fields(dataclass_type)}
    own = {k: v for k, v in values.items() if k in known}
    rest = {k: v for k, v in values.items() if k not in known}
    return own, rest


def apply_overrides(dataclass_type, values: Mapping[str, Any], base=None):
    """
    Crea una instancia de ``dataclass_type`` aplicando ``values`` sobre ``base``
    (o sobre los valores por defecto), convirtiendo textos al tipo del campo.

    Raises:
        ConfigurationError: clave desconocida o valor no convertible
    """
    if not is_dataclass(dataclass_type):
        raise ConfigurationError(str(dataclass_type), "no es una dataclass")

    hints = typing.get_type_hints(dataclass_type)
    known = {f.name for f in fields(dataclass_type)}
    unknown = sorted(set(values) - known)
    if unknown:
        raise ConfigurationError(", ".join(unknown), f"clave desconocida para {dataclass_type.__name__}")

    current = {f.name: getattr(base, f.name) for f in fields(dataclass_type) if f.init} if base is not None else {}
    for key, value in values.items():
        current[key] = _coerce(key, hints.get(key, str), value)
    return dataclass_type(**current)
