from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, Field, PrivateAttr, ValidationError, model_validator

from utils.errors import DomainError
from .base import FrozenModel, validation_message


class CopulaFamily(str, Enum):
    GAUSSIAN = "gaussian"
    CLAYTON = "clayton"
    FRANK = "frank"
    INDEPENDENCE = "independence"
    COMONOTONIC = "comonotonic"


PARAMETRIC_FAMILIES = (CopulaFamily.GAUSSIAN, CopulaFamily.CLAYTON, CopulaFamily.FRANK)


class CopulaModel(FrozenModel):
    """A bivariate copula: family tag plus its single dependence parameter.

    Gaussian carries rho in [-1, 1], Clayton and Frank carry a strictly positive
    parameter, Independence and Comonotonic carry none.
    """

    family: CopulaFamily
    param: Optional[float] = None

    @model_validator(mode="after")
    def _check_param(self) -> "CopulaModel":
        if self.family in PARAMETRIC_FAMILIES:
            if self.param is None or not np.isfinite(self.param):
                raise ValueError(f"{self.family.value} copula requires a finite parameter")
            if self.family is CopulaFamily.GAUSSIAN and not -1.0 <= self.param <= 1.0:
                raise ValueError("Gaussian copula correlation must lie in [-1, 1]")
            if self.family in (CopulaFamily.CLAYTON, CopulaFamily.FRANK) and self.param <= 0.0:
                raise ValueError(f"{self.family.value} copula parameter must be > 0")
        elif self.param is not None:
            raise ValueError(f"{self.family.value} copula takes no parameter")
        return self

    @classmethod
    def build(cls, family: str, param: Optional[float] = None) -> "CopulaModel":
        """Construct from loose inputs, surfacing validation failures as DomainError."""
        try:
            return cls(family=CopulaFamily(family), param=param)
        except ValidationError as e:
            raise DomainError(validation_message(e)) from None
        except ValueError as e:
            # unknown family name
            raise DomainError(str(e)) from None

    @classmethod
    def gaussian(cls, rho: float) -> "CopulaModel":
        return cls.build("gaussian", rho)

    @classmethod
    def clayton(cls, theta: float) -> "CopulaModel":
        return cls.build("clayton", theta)

    @classmethod
    def frank(cls, theta: float) -> "CopulaModel":
        return cls.build("frank", theta)

    @classmethod
    def independence(cls) -> "CopulaModel":
        return cls(family=CopulaFamily.INDEPENDENCE)

    @classmethod
    def comonotonic(cls) -> "CopulaModel":
        return cls(family=CopulaFamily.COMONOTONIC)

    @property
    def has_density(self) -> bool:
        """False when the conditional CDF is a step function."""
        if self.family is CopulaFamily.COMONOTONIC:
            return False
        if self.family is CopulaFamily.GAUSSIAN and abs(self.param) == 1.0:
            return False
        return True

    @property
    def label(self) -> str:
        if self.param is None:
            return self.family.value
        return f"{self.family.value}({self.param:g})"


class RandomStream(BaseModel):
    """Seeded, splittable source of uniforms.

    The same (seed, stream_index) always yields the same sequence. Shards are
    independent Philox streams keyed by (stream_index, shard), so Monte Carlo
    work can be split across threads without sharing a generator.
    """

    seed: int = Field(ge=0, lt=2**64)
    stream_index: int = Field(default=0, ge=0, lt=2**64)

    _generator: Optional[np.random.Generator] = PrivateAttr(default=None)

    @property
    def generator(self) -> np.random.Generator:
        if self._generator is None:
            self._generator = self.shard_generator(None)
        return self._generator

    def shard_generator(self, shard: Optional[int]) -> np.random.Generator:
        key = (self.stream_index,) if shard is None else (self.stream_index, shard)
        sequence = np.random.SeedSequence(self.seed, spawn_key=key)
        return np.random.Generator(np.random.Philox(sequence))
