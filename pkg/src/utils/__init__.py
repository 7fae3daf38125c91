"""
utils - Utilidades del proyecto
"""
