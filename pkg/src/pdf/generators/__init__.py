"""
PDF Generators package initialization
"""

from .results import ResultsPDFGenerator, generate_results_report

__all__ = ['ResultsPDFGenerator', 'generate_results_report']
