"""
Domain types for the model averaging engine
"""

from .candidate import AugmentedVector, CandidateModel, ModelSet
from .fit import FitResult, LinearFullFit, ProbVector
from .weights import QuadraticForm, WeightSolution
from .estimate import AveragedEstimate, Functional, PredictionBand
from .study import StudyConfig, StudyReport, StudyRow
from .dataset import CvReport, Dataset

__all__ = [
    'AugmentedVector',
    'CandidateModel',
    'ModelSet',
    'FitResult',
    'LinearFullFit',
    'ProbVector',
    'QuadraticForm',
    'WeightSolution',
    'AveragedEstimate',
    'Functional',
    'PredictionBand',
    'StudyConfig',
    'StudyReport',
    'StudyRow',
    'CvReport',
    'Dataset',
]
