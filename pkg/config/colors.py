"""
Colors configuration for PDF reports
Professional cold color palette
"""

# ============================================
# Paleta fría profesional
# ============================================
COLOR_HEADER = '#2F6690'       # Azul acero
COLOR_ROW = '#CFE0F3'          # Azul claro
COLOR_SECTION = '#9DB4C0'      # Azul grisáceo (separador de dataset)
COLOR_TEXT = '#333333'         # Gris carbón
COLOR_BEST = '#3A7CA5'         # Azul petróleo (mejor RMSE de prueba)
COLOR_WORSE = '#7D8597'        # Gris azulado (peor que la referencia)
COLOR_REFERENCE = '#E9A44C'    # Naranja ámbar (valores de referencia)
COLOR_WITHIN_TARGET = '#2E8B57'  # Verde mar (dentro del objetivo)
COLOR_OUTSIDE_TARGET = '#C0392B' # Rojo (fuera del objetivo)
