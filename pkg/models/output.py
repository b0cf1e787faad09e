from typing import Annotated, Dict, Literal, Optional, Union

from pydantic import Field

from .base import FrozenModel
from .gbound import LogSampleSize, OmegaCertificate
from .selection import ProbabilityEstimate


class BoundResult(FrozenModel):
    kind: Literal["bound"] = "bound"
    value: float = Field(ge=0.0, le=1.0)
    omega: Optional[float] = None
    certificate: Optional[OmegaCertificate] = None


class InversionResult(FrozenModel):
    kind: Literal["inversion"] = "inversion"
    sample_size: Optional[LogSampleSize] = None
    omega_star: Optional[float] = None
    bound_at_n: Optional[float] = None


class SweepPoint(FrozenModel):
    kind: Literal["sweep"] = "sweep"
    x: float
    p_quadrature: Optional[float] = None
    p_mc: Optional[float] = None
    mc_stderr: Optional[float] = None
    lower_bound: float


class LimitsResult(FrozenModel):
    kind: Literal["limits"] = "limits"
    boundary_cdf: float
    fixed_limit: float
    randomized_limit: float
    kendall_tau: float


Result = Annotated[
    Union[ProbabilityEstimate, BoundResult, InversionResult, SweepPoint, LimitsResult],
    Field(discriminator="kind"),
]


class OutputRecord(FrozenModel):
    """One emitted line: echoed inputs, the typed result, and timing."""

    inputs: Dict[str, Union[int, float, str, None]]
    result: Result
    method: str
    elapsed_ms: float = Field(ge=0.0)
