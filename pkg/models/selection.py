from enum import Enum
from typing import Literal, Optional

from pydantic import Field, ValidationError, model_validator

from utils.errors import DomainError
from .base import FrozenModel, validation_message


class SelectionProblem(FrozenModel):
    """Sample size n, selection size m and goal-softening percentile alpha."""

    n: int = Field(ge=1)
    m: int = Field(ge=1)
    alpha: float = Field(gt=0.0, le=1.0)

    @model_validator(mode="after")
    def _check_sizes(self) -> "SelectionProblem":
        if self.m > self.n:
            raise ValueError("Selection size must satisfy 1 <= m <= n")
        return self

    @classmethod
    def build(cls, n: int, m: int, alpha: float) -> "SelectionProblem":
        try:
            return cls(n=n, m=m, alpha=alpha)
        except ValidationError as e:
            raise DomainError(validation_message(e)) from None


class EstimateMethod(str, Enum):
    QUADRATURE = "quadrature"
    BRUTE_FORCE = "brute_force"
    MONTE_CARLO = "monte_carlo"
    CLOSED_FORM = "closed_form"


class ProbabilityEstimate(FrozenModel):
    kind: Literal["probability"] = "probability"
    value: float = Field(ge=0.0, le=1.0)
    method: EstimateMethod
    stderr: Optional[float] = None
    replications: Optional[int] = None

    @model_validator(mode="after")
    def _check_monte_carlo_fields(self) -> "ProbabilityEstimate":
        is_mc = self.method is EstimateMethod.MONTE_CARLO
        if is_mc != (self.stderr is not None) or is_mc != (self.replications is not None):
            raise ValueError("stderr and replications are present iff method is monte_carlo")
        return self
