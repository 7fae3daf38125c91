"""
PDF package initialization
"""

from .base_generator import BasePDFGenerator
from .generators import ResultsPDFGenerator, generate_results_report
from . import styles
from . import components

__all__ = ['BasePDFGenerator', 'ResultsPDFGenerator', 'generate_results_report', 'styles', 'components']
