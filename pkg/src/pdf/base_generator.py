"""
Base PDF Generator - Common document plumbing for the PDF reports
"""

import logging
import os

from reportlab.lib.pagesizes import landscape, letter
from reportlab.lib.units import inch
from reportlab.platypus import PageBreak, Paragraph, SimpleDocTemplate, Spacer

from .styles import get_note_style, get_section_title_style, get_status_header_style, get_subtitle_style, get_title_style

logger = logging.getLogger(__name__)


class BasePDFGenerator:
    """
    Base class for PDF report generation

    Provides common functionality for:
    - Document creation with landscape layout
    - Title, subtitle and section headers
    - Target status header
    """

    def __init__(self, output_folder='reports'):
        """
        Args:
            output_folder: Folder path to save PDF reports
        """
        self.output_folder = output_folder
        self.elements = []

    def _ensure_output_folder(self):
        if not os.path.exists(self.output_folder):
            os.makedirs(self.output_folder)
            logger.info(f"Created output folder: {self.output_folder}")

    def _create_document(self, filepath):
        return SimpleDocTemplate(
            filepath,
            pagesize=landscape(letter),
            rightMargin=30,
            leftMargin=30,
            topMargin=30,
            bottomMargin=30
        )

    def _add_main_title(self, title_text):
        self.elements.append(Paragraph(title_text, get_title_style()))

    def _add_subtitle(self, subtitle_text):
        self.elements.append(Paragraph(subtitle_text, get_subtitle_style()))

    def _add_status_header(self, within_target, header_text=None):
        """
        Add colored DENTRO/FUERA DE OBJETIVO header

        Args:
            within_target: Whether the measured RMSE meets the documented target
            header_text: Custom text
        """
        if header_text is None:
            header_text = "DENTRO DE OBJETIVO" if within_target else "FUERA DE OBJETIVO"
        self.elements.append(Paragraph(header_text, get_status_header_style(within_target)))
        self.elements.append(Spacer(0.5, 0.3))

    def _add_section_title(self, section_text):
        self.elements.append(Paragraph(section_text, get_section_title_style()))

    def _add_note(self, note_text):
        self.elements.append(Paragraph(note_text, get_note_style()))

    def _add_spacer(self, height_inches=0.3):
        self.elements.append(Spacer(1, height_inches * inch))

    def _add_page_break(self):
        self.elements.append(PageBreak())

    def build_and_save(self, doc):
        """
        Build PDF document from elements

        Returns:
            str: Path to the generated PDF file
        """
        try:
            doc.build(self.elements)
            logger.info(f"PDF successfully built: {doc.filename}")
            return doc.filename
        except Exception as e:
            logger.error(f"Error building PDF: {e}")
            raise
