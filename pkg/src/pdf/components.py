"""
PDF Components module - Table styles and conditional coloring for RMSE tables
"""

from reportlab.lib import colors
from reportlab.platypus import TableStyle

from config import COLOR_BEST, COLOR_HEADER, COLOR_REFERENCE, COLOR_ROW, COLOR_SECTION, COLOR_TEXT, COLOR_WORSE


def get_results_table_style(reference_columns=()):
    """
    Get the style for the model x dataset RMSE table

    Args:
        reference_columns: Column indexes holding published reference values
    """
    style = TableStyle([
        # Encabezado (dos filas: dataset y train/test)
        ('BACKGROUND', (0, 0), (-1, 1), colors.HexColor(COLOR_HEADER)),
        ('TEXTCOLOR', (0, 0), (-1, 1), colors.white),
        ('FONTNAME', (0, 0), (-1, 1), 'Helvetica-Bold'),
        ('FONTSIZE', (0, 0), (-1, 1), 10),
        ('ALIGN', (0, 0), (-1, -1), 'CENTER'),
        ('VALIGN', (0, 0), (-1, -1), 'MIDDLE'),

        # Cuerpo
        ('BACKGROUND', (0, 2), (-1, -1), colors.HexColor(COLOR_ROW)),
        ('TEXTCOLOR', (0, 2), (-1, -1), colors.HexColor(COLOR_TEXT)),
        ('FONTNAME', (0, 2), (-1, -1), 'Helvetica'),
        ('FONTNAME', (0, 2), (0, -1), 'Helvetica-Bold'),
        ('FONTSIZE', (0, 2), (-1, -1), 9),

        # Bordes
        ('GRID', (0, 0), (-1, -1), 0.5, colors.grey),
        ('TOPPADDING', (0, 2), (-1, -1), 6),
        ('BOTTOMPADDING', (0, 2), (-1, -1), 6),
    ])
    for column in reference_columns:
        style.add('TEXTCOLOR', (column, 2), (column, -1), colors.HexColor(COLOR_REFERENCE))
    return style


def get_runs_table_style():
    """Get table style for the run detail table"""
    return TableStyle([
        ('BACKGROUND', (0, 0), (-1, 0), colors.HexColor(COLOR_SECTION)),
        ('TEXTCOLOR', (0, 0), (-1, 0), colors.white),
        ('FONTNAME', (0, 0), (-1, 0), 'Helvetica-Bold'),

        ('BACKGROUND', (0, 1), (-1, -1), colors.HexColor(COLOR_ROW)),
        ('TEXTCOLOR', (0, 1), (-1, -1), colors.HexColor(COLOR_TEXT)),
        ('FONTNAME', (0, 1), (-1, -1), 'Helvetica'),
        ('FONTSIZE', (0, 1), (-1, -1), 8),

        ('GRID', (0, 0), (-1, -1), 0.5, colors.grey),
        ('ALIGN', (0, 0), (-1, -1), 'CENTER'),
        ('ALIGN', (-1, 1), (-1, -1), 'LEFT'),  # Checkpoint alineado a la izquierda
    ])


def _parse_rmse(text):
    try:
        return float(str(text))
    except ValueError:
        return None


def apply_best_rmse_highlight(table_style, data, column):
    """
    Highlight the lowest RMSE of a column (data rows start at index 2)
    """
    values = [(_parse_rmse(data[row][column]), row) for row in range(2, len(data))]
    values = [(value, row) for value, row in values if value is not None]
    if not values:
        return
    _, best_row = min(values)
    table_style.add('BACKGROUND', (column, best_row), (column, best_row), colors.HexColor(COLOR_BEST))
    table_style.add('TEXTCOLOR', (column, best_row), (column, best_row), colors.white)
    table_style.add('FONTNAME', (column, best_row), (column, best_row), 'Helvetica-Bold')


def apply_reference_comparison_coloring(table_style, data, value_column, reference_column):
    """
    Grey out measured test RMSE values that are worse than the published reference
    """
    for row in range(2, len(data)):
        value = _parse_rmse(data[row][value_column])
        reference = _parse_rmse(data[row][reference_column])
        if value is not None and reference is not None and value > reference:
            table_style.add('TEXTCOLOR', (value_column, row), (value_column, row), colors.HexColor(COLOR_WORSE))
            table_style.add('FONTNAME', (value_column, row), (value_column, row), 'Helvetica-Oblique')
