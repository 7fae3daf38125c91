"""
Results PDF Report Generator - Train/test RMSE per model and dataset
"""

import logging
import math
import os

from reportlab.platypus import Table

from config import FULL_RECIPE_TARGET_RMSE, FULL_RECIPE_TOLERANCE, REFERENCE_RMSE, REPORTS_FOLDER, RESULTS_REPORT_NAME
from src.pdf.base_generator import BasePDFGenerator
from src.pdf.components import (
    apply_best_rmse_highlight, apply_reference_comparison_coloring, get_results_table_style, get_runs_table_style,
)

logger = logging.getLogger(__name__)

REPORT_DATASETS = (("ml100k", "ML-100K"), ("ml1m", "ML-1M"))

# Columnas por dataset: Train, Test, Ref. test
_COLUMNS_PER_DATASET = 3


def _format_rmse(value):
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return "-"
    return f"{value:.3f}"


def _sort_key(value):
    return math.inf if value is None or math.isnan(value) else value


class ResultsPDFGenerator(BasePDFGenerator):
    """PDF Generator for the RMSE results table"""

    def __init__(self, output_folder=REPORTS_FOLDER):
        super().__init__(output_folder)

    def _model_order(self, entries):
        """Reference labels first (in their documented order), then any other label seen"""
        seen = {entry.model for entry in entries}
        ordered = [label for label in REFERENCE_RMSE if label in seen]
        ordered += sorted(seen - set(ordered))
        return ordered

    def _best_runs(self, entries):
        """Best (lowest test RMSE) run per (model, dataset)"""
        best = {}
        for entry in entries:
            key = (entry.model, entry.dataset)
            if key not in best or _sort_key(entry.test_rmse) < _sort_key(best[key].test_rmse):
                best[key] = entry
        return best

    def _calculate_target_achievement(self, entries):
        """
        Check the best ML-100K graph model against the documented target

        Returns:
            tuple: (within_target, best_rmse) or (None, None) if there is nothing to compare
        """
        candidates = [
            entry.test_rmse for entry in entries
            if entry.dataset == "ml100k" and entry.model != "MLP" and not math.isnan(entry.test_rmse)
        ]
        if not candidates:
            return None, None
        best_rmse = min(candidates)
        return best_rmse <= FULL_RECIPE_TARGET_RMSE + FULL_RECIPE_TOLERANCE, best_rmse

    def _build_results_table_data(self, entries):
        """Build the model x dataset table (two header rows)"""
        top_header = ['Modelo']
        sub_header = ['']
        for _, title in REPORT_DATASETS:
            top_header += [title, '', '']
            sub_header += ['Train', 'Test', 'Ref. test']
        data = [top_header, sub_header]

        best = self._best_runs(entries)
        for label in self._model_order(entries):
            row = [label]
            for kind, _ in REPORT_DATASETS:
                entry = best.get((label, kind))
                reference = REFERENCE_RMSE.get(label, {}).get(kind)
                row.append(_format_rmse(entry.train_rmse if entry else None))
                row.append(_format_rmse(entry.test_rmse if entry else None))
                row.append(_format_rmse(reference[1] if reference else None))
            data.append(row)

        return data

    def _build_runs_table_data(self, entries):
        data = [['Fecha', 'Modelo', 'Tipo', 'Dataset', 'Partición', 'Épocas', 'Train', 'Test', 'Checkpoint']]
        for entry in entries:
            data.append([
                entry.generated_date[:16].replace('T', ' '),
                entry.model,
                entry.run_type,
                entry.dataset,
                entry.split,
                str(entry.epochs),
                _format_rmse(entry.train_rmse),
                _format_rmse(entry.test_rmse),
                os.path.basename(entry.checkpoint),
            ])
        return data

    def generate(self, entries, filename=RESULTS_REPORT_NAME):
        """
        Generate the results PDF report

        Args:
            entries: List of RunEntry (most recent first)
            filename: Output file name inside the output folder

        Returns:
            str: Path to generated PDF file, or None if there are no runs
        """
        if not entries:
            logger.warning("No runs recorded, aborting PDF generation")
            return None

        logger.info(f"Starting results PDF generation: {len(entries)} runs")

        self._ensure_output_folder()
        filepath = os.path.join(self.output_folder, filename)
        doc = self._create_document(filepath)

        self.elements = []

        # ============ PAGE 1: RMSE TABLE ============
        self._add_main_title("REPORTE DE RESULTADOS RMSE")
        datasets = sorted({entry.dataset for entry in entries})
        self._add_subtitle(
            f"{len(entries)} corridas | Datasets: {', '.join(datasets)} | "
            f"Reporte generado automáticamente por HBGNN Rating System"
        )
        self._add_spacer(0.15)

        within, best_rmse = self._calculate_target_achievement(entries)
        if within is not None:
            self._add_status_header(
                within,
                f"{'DENTRO' if within else 'FUERA'} DE OBJETIVO - mejor RMSE ML-100K: {best_rmse:.3f} "
                f"(objetivo {FULL_RECIPE_TARGET_RMSE:.2f} ± {FULL_RECIPE_TOLERANCE:.2f})"
            )

        table_data = self._build_results_table_data(entries)
        reference_columns = [1 + i * _COLUMNS_PER_DATASET + 2 for i in range(len(REPORT_DATASETS))]
        table_style = get_results_table_style(reference_columns)
        table_style.add('SPAN', (0, 0), (0, 1))
        for i in range(len(REPORT_DATASETS)):
            first = 1 + i * _COLUMNS_PER_DATASET
            table_style.add('SPAN', (first, 0), (first + _COLUMNS_PER_DATASET - 1, 0))
            apply_reference_comparison_coloring(table_style, table_data, first + 1, first + 2)
            apply_best_rmse_highlight(table_style, table_data, first + 1)

        table = Table(table_data, repeatRows=2)
        table.setStyle(table_style)
        self.elements.append(table)

        self._add_spacer(0.2)
        self._add_note(
            "Se muestra la mejor corrida (menor RMSE de prueba) por modelo y dataset. "
            "El sufijo * indica modelo ajustado después de transferencia. "
            "En cursiva: RMSE de prueba peor que la referencia."
        )

        # ============ PAGE 2: RUN DETAIL ============
        self._add_page_break()
        self._add_section_title("DETALLE DE CORRIDAS")
        self._add_spacer(0.2)

        runs_data = self._build_runs_table_data(entries)
        runs_table = Table(runs_data, repeatRows=1)
        runs_table.setStyle(get_runs_table_style())
        self.elements.append(runs_table)

        self.build_and_save(doc)

        return filepath


def generate_results_report(entries, output_folder=REPORTS_FOLDER):
    """Generates the RMSE results PDF report from the run history entries"""
    generator = ResultsPDFGenerator(output_folder)
    return generator.generate(entries)
