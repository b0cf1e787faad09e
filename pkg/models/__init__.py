from .base import FrozenModel
from .copula import CopulaFamily, CopulaModel, RandomStream
from .selection import EstimateMethod, ProbabilityEstimate, SelectionProblem
from .gbound import InversionSpec, LogSampleSize, OmegaCertificate
from .output import (
    BoundResult,
    InversionResult,
    LimitsResult,
    OutputRecord,
    SweepPoint,
)

__all__ = [
    'FrozenModel',
    'CopulaFamily',
    'CopulaModel',
    'RandomStream',
    'EstimateMethod',
    'ProbabilityEstimate',
    'SelectionProblem',
    'InversionSpec',
    'LogSampleSize',
    'OmegaCertificate',
    'BoundResult',
    'InversionResult',
    'LimitsResult',
    'OutputRecord',
    'SweepPoint',
]
