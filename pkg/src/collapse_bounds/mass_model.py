"""Materials, alloy averaging, and cubic test-mass presets."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Optional

__all__ = [
    "Material",
    "AlloyComponent",
    "TestMass",
    "alloy_material",
    "lisa_pathfinder_test_mass",
    "GOLD",
    "PLATINUM",
    "LISA_PATHFINDER_MATERIAL",
    "PRESETS",
]

FRACTION_SUM_TOLERANCE = 1e-9
# Relative |M - rho b^3| above which TestMass warns. Real test masses are
# quasi-cubic and often hollowed, so a few percent is normal.
CUBE_MASS_WARN_THRESHOLD = 0.05


@dataclass(frozen=True)
class Material:
    """A solid with an effective density and cubic-cell lattice constant."""

    name: str
    density: float  # kg/m^3
    lattice_constant: float  # m

    def __post_init__(self) -> None:
        if not (math.isfinite(self.density) and self.density > 0.0):
            raise ValueError(f"density must be finite and > 0, got {self.density!r}")
        if not (math.isfinite(self.lattice_constant) and self.lattice_constant > 0.0):
            raise ValueError(
                f"lattice_constant must be finite and > 0, got {self.lattice_constant!r}"
            )


@dataclass(frozen=True)
class AlloyComponent:
    """One constituent of an alloy with its mass fraction in (0, 1]."""

    material: Material
    mass_fraction: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mass_fraction) and 0.0 < self.mass_fraction <= 1.0):
            raise ValueError(
                f"mass_fraction must be in (0, 1], got {self.mass_fraction!r}"
            )


@dataclass(frozen=True)
class TestMass:
    """A free-falling probe body approximated as a cube of side ``side_length``.

    ``mass``, the material density, and the side length are independent
    inputs; their cube-consistency is checked at warning level only.
    """

    mass: float  # kg
    side_length: float  # m
    material: Material

    def __post_init__(self) -> None:
        if not (math.isfinite(self.mass) and self.mass > 0.0):
            raise ValueError(f"mass must be finite and > 0, got {self.mass!r}")
        if not (math.isfinite(self.side_length) and self.side_length > 0.0):
            raise ValueError(
                f"side_length must be finite and > 0, got {self.side_length!r}"
            )
        mismatch = self.cube_mass_mismatch
        if mismatch > CUBE_MASS_WARN_THRESHOLD:
            warnings.warn(
                f"mass {self.mass} kg differs from density*side^3 = "
                f"{self.material.density * self.side_length**3:.4g} kg "
                f"by {mismatch:.1%}; check units of the inputs",
                UserWarning,
                stacklevel=3,
            )

    @property
    def cube_mass_mismatch(self) -> float:
        """Relative difference |mass - density * side^3| / mass."""
        return abs(self.mass - self.material.density * self.side_length**3) / self.mass


def alloy_material(
    components: Iterable[AlloyComponent], name: Optional[str] = None
) -> Material:
    """Combine materials by mass-fraction-weighted arithmetic means.

    Density and lattice constant are both averaged with the mass fractions
    as weights; the fractions must sum to 1 within 1e-9.
    """
    items = list(components)
    if not items:
        raise ValueError("components must be non-empty")
    total = sum(c.mass_fraction for c in items)
    if abs(total - 1.0) > FRACTION_SUM_TOLERANCE:
        raise ValueError(f"mass fractions must sum to 1, got {total!r}")
    density = sum(c.mass_fraction * c.material.density for c in items)
    lattice = sum(c.mass_fraction * c.material.lattice_constant for c in items)
    if name is None:
        name = " + ".join(f"{c.mass_fraction:.2g} {c.material.name}" for c in items)
    return Material(name=name, density=density, lattice_constant=lattice)


# Handbook elemental values used to reproduce the preset alloy averages.
GOLD = Material("Au", density=19300.0, lattice_constant=4.078e-10)
PLATINUM = Material("Pt", density=21450.0, lattice_constant=3.924e-10)

# Published rounded values for the 73/27 Au/Pt alloy. The preset stores
# these rather than recomputed averages: the published cut-off bound is
# reproduced only with the rounded 4.0 Angstrom lattice constant.
LISA_PATHFINDER_MATERIAL = Material(
    "Au/Pt 73/27 by mass", density=19881.0, lattice_constant=4.0e-10
)


def lisa_pathfinder_test_mass() -> TestMass:
    """The 1.928 kg, 46 mm gold-platinum cube flown on LISA Pathfinder."""
    return TestMass(mass=1.928, side_length=0.046, material=LISA_PATHFINDER_MATERIAL)


PRESETS = {"lisa-pathfinder": lisa_pathfinder_test_mass}
