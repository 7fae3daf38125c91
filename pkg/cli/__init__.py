"""
cli - Interfaz de línea de comandos del sistema de ratings
"""

from cli.app import build_parser, run_cli

__all__ = ['build_parser', 'run_cli']
