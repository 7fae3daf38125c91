"""
src - Motor numérico, modelo HBGNN, ingesta MovieLens, entrenamiento y reportes
"""
