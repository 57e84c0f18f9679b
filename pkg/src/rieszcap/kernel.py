"""Riesz and logarithmic kernels, exponents, and the energy/capacity map."""

import enum
import math
from dataclasses import dataclass

from .errors import DomainError, InvalidInputError

__all__ = [
    "Regime",
    "RieszExponent",
    "EnergyValue",
    "kernel_value",
    "capacity_from_energy",
    "as_exponent",
]


class Regime(enum.Enum):
    NEGATIVE = "negative"
    ZERO = "zero"
    POSITIVE = "positive"


@dataclass(frozen=True)
class RieszExponent:
    """A Riesz exponent p together with its sign regime.

    The regime decides the optimization direction: the energy is minimized for
    p >= 0 (logarithmic kernel at p = 0) and maximized for p < 0.
    """

    p: float

    def __post_init__(self):
        p = float(self.p)
        if math.isnan(p) or math.isinf(p):
            raise DomainError(f"exponent must be finite, got {self.p!r}")
        object.__setattr__(self, "p", p)

    @property
    def regime(self):
        if self.p < 0:
            return Regime.NEGATIVE
        if self.p == 0:
            return Regime.ZERO
        return Regime.POSITIVE

    @property
    def maximize(self):
        return self.regime is Regime.NEGATIVE

    def __float__(self):
        return self.p


def as_exponent(p):
    return p if isinstance(p, RieszExponent) else RieszExponent(p)


@dataclass(frozen=True)
class EnergyValue:
    """Extended-real energy: a finite value or +infinity.

    ``source`` records how the value was produced (``"direct"``,
    ``"gotz-radial"``, ``"gotz-spatial"``, ``"closed-form"``, ``"solver"``...).
    """

    exponent: RieszExponent
    value: float | None
    source: str = "direct"

    def __post_init__(self):
        object.__setattr__(self, "exponent", as_exponent(self.exponent))
        if self.value is None:
            if self.exponent.regime is Regime.NEGATIVE:
                raise InvalidInputError("energy is always finite for p < 0")
            return
        v = float(self.value)
        if math.isnan(v) or math.isinf(v):
            raise InvalidInputError(
                f"finite energy must be a real number, got {self.value!r}; "
                "use EnergyValue.infinite for +infinity"
            )
        object.__setattr__(self, "value", v)

    @classmethod
    def finite(cls, p, value, source="direct"):
        return cls(as_exponent(p), value, source)

    @classmethod
    def infinite(cls, p, source="direct"):
        return cls(as_exponent(p), None, source)

    @property
    def is_infinite(self):
        return self.value is None

    def __float__(self):
        return math.inf if self.value is None else self.value


def kernel_value(p, r):
    """|x - y|^(-p) for p != 0 and log(1/|x - y|) for p = 0, at distance r > 0."""
    p = float(as_exponent(p))
    r = float(r)
    if not r > 0.0:
        raise DomainError(f"distance must be positive, got {r!r}")
    if p == 0.0:
        return -math.log(r)
    return r ** -p


def capacity_from_energy(p, energy):
    """Capacity from energy: V^(-1/p) for p != 0 and exp(-V) for p = 0.

    Accepts an :class:`EnergyValue` or a plain float (``math.inf`` means an
    infinite energy).  Infinite energy gives zero capacity when p >= 0; for
    p < 0 the empty-set convention V = 0 also gives zero capacity.
    """
    p = as_exponent(p)
    if isinstance(energy, EnergyValue):
        v = float(energy)
    else:
        v = float(energy)
    if math.isnan(v):
        raise InvalidInputError("energy is NaN")
    if p.regime is Regime.NEGATIVE:
        if math.isinf(v):
            raise InvalidInputError("energy cannot be infinite for p < 0")
        if v < 0:
            raise InvalidInputError(f"energy must be nonnegative for p < 0, got {v}")
        if v == 0.0:
            return 0.0
        return _power(v, -1.0 / p.p)
    if math.isinf(v):
        if v < 0:
            raise InvalidInputError("energy cannot be -infinity")
        return 0.0
    if p.regime is Regime.ZERO:
        return math.exp(-v)
    if v <= 0:
        raise InvalidInputError(f"energy must be positive for p > 0, got {v}")
    return _power(v, -1.0 / p.p)


def _power(v, e):
    # float ** raises on overflow; tiny |p| can push V^(-1/p) past the range
    try:
        return v**e
    except OverflowError:
        return math.inf
