"""
Frequentist model averaging with estimated-MSE optimal weights
"""

__version__ = '0.1.0'
