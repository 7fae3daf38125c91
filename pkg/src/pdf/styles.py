"""
PDF Styles module - Paragraph styles for the RMSE results report
"""

from reportlab.lib import colors
from reportlab.lib.enums import TA_CENTER, TA_LEFT
from reportlab.lib.styles import ParagraphStyle, getSampleStyleSheet

from config import COLOR_HEADER, COLOR_OUTSIDE_TARGET, COLOR_TEXT, COLOR_WITHIN_TARGET

_SAMPLE = getSampleStyleSheet()


def _style(name, parent, font_size, text_color, alignment=TA_CENTER, bold=False, space_after=10):
    options = dict(
        parent=_SAMPLE[parent],
        fontSize=font_size,
        leading=font_size * 1.2,
        textColor=text_color,
        spaceAfter=space_after,
        alignment=alignment,
    )
    if bold:
        options['fontName'] = 'Helvetica-Bold'
    return ParagraphStyle(name, **options)


def get_title_style():
    return _style('ResultsTitle', 'Heading1', 22, colors.HexColor(COLOR_TEXT), bold=True)


def get_subtitle_style():
    return _style('ResultsSubtitle', 'Normal', 10, colors.grey)


def get_section_title_style():
    """Run detail page header"""
    return _style('RunsSection', 'Heading2', 16, colors.HexColor(COLOR_HEADER), bold=True)


def get_status_header_style(within_target=True):
    """
    DENTRO/FUERA DE OBJETIVO header, green or red depending on the best ML-100K test RMSE
    """
    color = COLOR_WITHIN_TARGET if within_target else COLOR_OUTSIDE_TARGET
    return _style('TargetStatus', 'Heading1', 16, colors.HexColor(color), bold=True, space_after=12)


def get_note_style():
    return _style('TableNote', 'Normal', 8, colors.grey, alignment=TA_LEFT, space_after=0)
