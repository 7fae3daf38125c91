"""
data_validator.py - Validación de integridad de datasets MovieLens

Revisa un Dataset ya parseado:
- Ratings en la escala 1..5
- Referencias a usuarios y películas existentes
- Identificadores únicos en las tablas de metadatos
- Pares (usuario, película) repetidos
- Edades fuera de la tabla fija de 100 posiciones
- Películas sin género conocido
- Conteos frente a los publicados por la distribución
"""

import logging
from dataclasses import dataclass
from enum import Enum
from typing import List

import numpy as np

from config import AGE_SLOTS, PUBLISHED_COUNTS, UNKNOWN_GENRE

logger = logging.getLogger(__name__)


class Severity(Enum):
    """Niveles de severidad para problemas de validación"""
    ERROR = "ERROR"      # Problema crítico que impide el entrenamiento
    WARNING = "WARNING"  # Problema que puede afectar resultados
    INFO = "INFO"        # Observación informativa


@dataclass
class ValidationIssue:
    """Representa un problema encontrado durante la validación"""
    severity: Severity
    category: str
    message: str
    details: str = ""
    affected_rows: int = 0
    table: str = ""

    def __str__(self):
        return f"[{self.severity.value}] {self.category}: {self.message}"


class ValidationResult:
    """Resultado completo de validación con todos los problemas encontrados"""

    def __init__(self):
        self.issues: List[ValidationIssue] = []
        self.passed = True
        self.total_errors = 0
        self.total_warnings = 0
        self.total_infos = 0

    def add_issue(self, issue: ValidationIssue):
        self.issues.append(issue)

        if issue.severity == Severity.ERROR:
            self.passed = False
            self.total_errors += 1
            logger.error(f"❌ {issue.category}: {issue.message} ({issue.table})")
        elif issue.severity == Severity.WARNING:
            self.total_warnings += 1
            logger.warning(f"⚠️ {issue.category}: {issue.message} ({issue.table})")
        else:
            self.total_infos += 1
            logger.info(f"ℹ️ {issue.category}: {issue.message} ({issue.table})")

    def has_errors(self) -> bool:
        return self.total_errors > 0

    def has_warnings(self) -> bool:
        return self.total_warnings > 0

    def errors(self) -> List[ValidationIssue]:
        return [issue for issue in self.issues if issue.severity == Severity.ERROR]

    def get_summary(self) -> str:
        if not self.issues:
            return "✓ Validación exitosa - No se encontraron problemas"

        summary = f"Validación completada con {len(self.issues)} problemas:\n"
        summary += f"  • Errores: {self.total_errors}\n"
        summary += f"  • Advertencias: {self.total_warnings}\n"
        summary += f"  • Info: {self.total_infos}"
        return summary


class DatasetValidator:
    """Validador de las tablas de ratings, usuarios y películas"""

    def __init__(self):
        self.result = ValidationResult()

    def validate_all(self, dataset) -> ValidationResult:
        logger.info(f"=== Iniciando validación del dataset {dataset.provenance} ===")

        if dataset.ratings.empty:
            self.result.add_issue(ValidationIssue(
                severity=Severity.ERROR,
                category="Datos Vacíos",
                message="El archivo de ratings no contiene registros",
                table="ratings",
            ))
            return self.result

        self._check_rating_scale(dataset)
        self._check_unique_ids(dataset.users, "user_id", "users")
        self._check_unique_ids(dataset.movies, "movie_id", "movies")
        self._check_references(dataset)
        self._check_duplicate_pairs(dataset)
        self._check_age_range(dataset)
        self._check_unknown_genre(dataset)
        self._check_published_counts(dataset)

        logger.info(self.result.get_summary())
        return self.result

    def _check_rating_scale(self, dataset):
        ratings = dataset.ratings["rating"].to_numpy()
        outside = ~np.isin(ratings, (1.0, 2.0, 3.0, 4.0, 5.0))
        if outside.any():
            self.result.add_issue(ValidationIssue(
                severity=Severity.ERROR,
                category="Escala de Rating",
                message=f"Se encontraron {int(outside.sum())} ratings fuera de la escala 1..5",
                details=f"Primer valor inválido: {ratings[outside][0]}",
                affected_rows=int(outside.sum()),
                table="ratings",
            ))

    def _check_unique_ids(self, frame, column: str, table: str):
        duplicated = frame[column].duplicated()
        if duplicated.any():
            self.result.add_issue(ValidationIssue(
                severity=Severity.ERROR,
                category="Identificadores Duplicados",
                message=f"Se encontraron {int(duplicated.sum())} valores repetidos de '{column}'",
                details=f"Primer identificador repetido: {frame.loc[duplicated, column].iloc[0]}",
                affected_rows=int(duplicated.sum()),
                table=table,
            ))

    def _check_references(self, dataset):
        for column, frame, table in (("user_id", dataset.users, "users"), ("movie_id", dataset.movies, "movies")):
            unknown = ~dataset.ratings[column].isin(frame[column])
            if unknown.any():
                self.result.add_issue(ValidationIssue(
                    severity=Severity.ERROR,
                    category="Referencias Inválidas",
                    message=f"{int(unknown.sum())} ratings referencian un '{column}' inexistente en {table}",
                    details=f"Primer identificador desconocido: {dataset.ratings.loc[unknown, column].iloc[0]}",
                    affected_rows=int(unknown.sum()),
                    table="ratings",
                ))

    def _check_duplicate_pairs(self, dataset):
        duplicated = dataset.ratings.duplicated(["user_id", "movie_id"])
        if duplicated.any():
            self.result.add_issue(ValidationIssue(
                severity=Severity.WARNING,
                category="Ratings Repetidos",
                message=f"Se encontraron {int(duplicated.sum())} pares (usuario, película) repetidos",
                details="Cada par repetido cuenta como un ejemplo independiente",
                affected_rows=int(duplicated.sum()),
                table="ratings",
            ))

    def _check_age_range(self, dataset):
        ages = dataset.users["age"]
        outside = (ages < 0) | (ages >= AGE_SLOTS)
        if outside.any():
            self.result.add_issue(ValidationIssue(
                severity=Severity.INFO,
                category="Edades Fuera de Rango",
                message=f"{int(outside.sum())} usuarios con edad fuera de 0..{AGE_SLOTS - 1}",
                details="Se recortan al extremo más cercano de la tabla de edades",
                affected_rows=int(outside.sum()),
                table="users",
            ))

    def _check_unknown_genre(self, dataset):
        unknown_only = dataset.movies["genres"].map(lambda genres: tuple(genres) == (UNKNOWN_GENRE,))
        if unknown_only.any():
            self.result.add_issue(ValidationIssue(
                severity=Severity.INFO,
                category="Género Desconocido",
                message=f"{int(unknown_only.sum())} películas solo tienen el género '{UNKNOWN_GENRE}'",
                affected_rows=int(unknown_only.sum()),
                table="movies",
            ))

    def _check_published_counts(self, dataset):
        expected = PUBLISHED_COUNTS.get(dataset.provenance)
        actual = dataset.counts()
        if expected is not None and tuple(actual) != tuple(expected):
            self.result.add_issue(ValidationIssue(
                severity=Severity.INFO,
                category="Conteos",
                message=f"Conteos (usuarios, películas, ratings) = {actual}; la distribución publica {expected}",
                details="Normal para datasets recortados o sintéticos",
                table="dataset",
            ))


def validate_dataset(dataset) -> ValidationResult:
    """
    Ejecuta todas las validaciones sobre un Dataset.

    Returns:
        ValidationResult; el llamador decide si los errores son fatales
    """
    return DatasetValidator().validate_all(dataset)
