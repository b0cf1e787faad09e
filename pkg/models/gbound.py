import math
from typing import Optional

from pydantic import Field, model_validator

from .base import FrozenModel


class OmegaCertificate(FrozenModel):
    """Outcome of the three-interval stochastic-dominance certificate.

    mu_n and sigma_n2 are None when n * c1 <= 1, where they are undefined.
    """

    omega: float = Field(gt=0.0, lt=0.5 * math.pi)
    c1: float
    c2: float
    mu_n: Optional[float] = None
    sigma_n2: Optional[float] = None
    n: int = Field(ge=1)
    certified: bool


class LogSampleSize(FrozenModel):
    """A sample size kept as log10(n); exact_n is filled while n <= 1e15."""

    log10_n: float = Field(ge=0.0)
    exact_n: Optional[int] = Field(default=None, ge=1)

    @model_validator(mode="after")
    def _check_exact(self) -> "LogSampleSize":
        if self.exact_n is not None and abs(math.log10(self.exact_n) - self.log10_n) > 1e-9:
            raise ValueError("exact_n disagrees with log10_n")
        return self

    @classmethod
    def exact(cls, n: int) -> "LogSampleSize":
        return cls(log10_n=math.log10(n), exact_n=n)

    def scientific(self, digits: int = 4) -> str:
        """Render as mantissa x 10^exponent, e.g. 8.144e+47007."""
        if self.exact_n is not None:
            return str(self.exact_n)
        exponent = math.floor(self.log10_n)
        mantissa = 10.0 ** (self.log10_n - exponent)
        if round(mantissa, digits - 1) >= 10.0:
            mantissa, exponent = mantissa / 10.0, exponent + 1
        return f"{mantissa:.{digits - 1}f}e+{exponent}"


class InversionSpec(FrozenModel):
    alpha: float = Field(gt=0.0, le=1.0)
    rho: float = Field(gt=0.0, le=1.0)
    delta: float = Field(gt=0.0, le=1.0)
