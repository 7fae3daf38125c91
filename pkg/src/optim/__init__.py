"""
optim - Función de costo RMSE y optimizador AMSGrad
"""

from src.optim.loss import Rmse, rmse, rmse_value
from src.optim.amsgrad import AmsGrad, OptimizerSettings, OptimizerState, amsgrad_step

__all__ = [
    'Rmse', 'rmse', 'rmse_value',
    'AmsGrad', 'OptimizerSettings', 'OptimizerState', 'amsgrad_step',
]
