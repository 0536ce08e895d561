"""Uncertain scalars, fundamental constants, and frequency bands.

Everything in this package computes in SI units. The presentation factors
at the bottom of this module exist only for formatting at the I/O boundary;
no internal arithmetic uses them.

Uncertainty propagation is first order (linearized) and treats all inputs
as independent. That is exact for pure powers and products of independent
factors, which is all the bound formulas need.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Tuple

__all__ = [
    "UncertainValue",
    "PhysicalConstants",
    "FrequencyBand",
    "DEFAULT_CONSTANTS",
    "NUCLEON_MASS_CONVENTION",
    "propagate_power",
    "product_with_uncertainty",
    "FEMTOMETER",
    "ANGSTROM",
    "NANOMETER",
    "MILLIHERTZ",
]

# Presentation-only scale factors (metres or hertz per unit).
FEMTOMETER = 1e-15
ANGSTROM = 1e-10
NANOMETER = 1e-9
MILLIHERTZ = 1e-3


@dataclass(frozen=True)
class UncertainValue:
    """A scalar with a 1-standard-deviation uncertainty.

    Both fields carry the SI unit of the surrounding context; ``sigma`` is
    an absolute (not relative) uncertainty.
    """

    value: float
    sigma: float = 0.0

    def __post_init__(self) -> None:
        if not math.isfinite(self.value):
            raise ValueError(f"value must be finite, got {self.value!r}")
        if not math.isfinite(self.sigma) or self.sigma < 0.0:
            raise ValueError(f"sigma must be finite and >= 0, got {self.sigma!r}")

    @property
    def relative_sigma(self) -> float:
        """sigma / |value|, the dimensionless relative uncertainty."""
        if self.value == 0.0:
            if self.sigma == 0.0:
                return 0.0
            raise ZeroDivisionError("relative uncertainty undefined for value == 0")
        return self.sigma / abs(self.value)

    def scaled(self, factor: float) -> "UncertainValue":
        """Multiply by an exact (zero-uncertainty) factor."""
        return UncertainValue(self.value * factor, self.sigma * abs(factor))


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants entering the diffusion formulas.

    ``m0`` is the nucleon reference mass; the default is one unified atomic
    mass unit (the published results do not discriminate between 1 u and
    the bare proton or neutron mass at their printed precision, so the
    convention is recorded in output metadata).
    """

    hbar: float = 1.054571817e-34  # J s
    G: float = 6.67430e-11  # m^3 kg^-1 s^-2
    m0: float = 1.66053906660e-27  # kg

    def __post_init__(self) -> None:
        for field in ("hbar", "G", "m0"):
            v = getattr(self, field)
            if not (math.isfinite(v) and v > 0.0):
                raise ValueError(f"{field} must be finite and > 0, got {v!r}")


DEFAULT_CONSTANTS = PhysicalConstants()
NUCLEON_MASS_CONVENTION = "unified atomic mass unit (1 u)"


@dataclass(frozen=True)
class FrequencyBand:
    """A frequency interval in Hz, 0 < f_lo < f_hi."""

    f_lo: float
    f_hi: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.f_lo) and self.f_lo > 0.0):
            raise ValueError(f"f_lo must be finite and > 0, got {self.f_lo!r}")
        if not (math.isfinite(self.f_hi) and self.f_hi > self.f_lo):
            raise ValueError(
                f"f_hi must be finite and > f_lo = {self.f_lo!r}, got {self.f_hi!r}"
            )

    def contains(self, frequency: float) -> bool:
        return self.f_lo <= frequency <= self.f_hi


def propagate_power(x: UncertainValue, exponent: float) -> UncertainValue:
    """Raise an uncertain scalar to a power, propagating to first order.

    Returns ``(x.value**exponent, |exponent| * result * sigma/|value|)``.
    The relative uncertainty scales by ``|exponent|``, which makes the
    operation exactly invertible for pure powers.

    Raises
    ------
    ValueError
        Negative base with a fractional exponent.
    ZeroDivisionError
        Zero base with a negative exponent, or zero base with a nonzero
        uncertainty (the relative uncertainty is undefined).
    """
    if exponent == 0:
        return UncertainValue(1.0, 0.0)
    if exponent == 1:
        return x  # keep the common no-op bit-exact
    if x.value < 0.0 and not float(exponent).is_integer():
        raise ValueError(
            f"negative base {x.value!r} with fractional exponent {exponent!r}"
        )
    if x.value == 0.0 and exponent < 0:
        raise ZeroDivisionError(f"zero base with negative exponent {exponent!r}")
    value = x.value**exponent
    if x.sigma == 0.0:
        return UncertainValue(value, 0.0)
    if x.value == 0.0:
        raise ZeroDivisionError("relative uncertainty undefined for value == 0")
    sigma = abs(exponent) * abs(value) * (x.sigma / abs(x.value))
    return UncertainValue(value, sigma)


def product_with_uncertainty(
    factors: Iterable[Tuple[UncertainValue, float]],
) -> UncertainValue:
    """Product of independent uncertain factors raised to exponents.

    value = prod(v_i**e_i); relative variance = sum((e_i * s_i / v_i)**2).
    A single-factor call degrades to :func:`propagate_power` exactly.
    """
    items = list(factors)
    if len(items) == 1:
        return propagate_power(items[0][0], items[0][1])
    value = 1.0
    rel_var = 0.0
    for x, exponent in items:
        term = propagate_power(x, exponent)  # validates the factor
        value *= term.value
        if x.sigma != 0.0:
            rel_var += (exponent * x.sigma / x.value) ** 2
    return UncertainValue(value, abs(value) * math.sqrt(rel_var))
