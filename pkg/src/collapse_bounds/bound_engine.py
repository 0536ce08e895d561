"""Turn a measured acceleration-noise spectrum into collapse-model bounds.

The analysis attributes all measured differential acceleration noise to the
hypothetical white collapse force. With the single-sided convention used
throughout (a white force of autocorrelation D * delta(t - z) has
single-sided force spectrum S_F = 2 D) and n independently collapsing test
masses contributing, the acceleration spectrum is S_a = n S_F / M^2, so

    D <= D_max = M^2 S_a / (2 n)      (S_a = asd^2).

Inverting the model diffusion formulas at D_max gives an upper bound on the
localization collapse rate and a lower bound on the gravitational-model
regularization cut-off, each with first-order propagated uncertainty.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Optional

from .collapse_models import (
    DEFAULT_CORRELATION_LENGTH,
    require_cube_regime,
)
from .mass_model import TestMass
from .quantities import (
    DEFAULT_CONSTANTS,
    FrequencyBand,
    PhysicalConstants,
    UncertainValue,
    propagate_power,
)

__all__ = [
    "NoiseSpec",
    "BoundResult",
    "diffusion_upper_bound",
    "csl_rate_upper_bound",
    "dp_cutoff_lower_bound",
    "csl_rate_from_diffusion",
    "dp_cutoff_from_diffusion",
    "lisa_pathfinder_noise",
    "LISA_PATHFINDER_ASD",
    "LISA_PATHFINDER_ASD_SIGMA",
    "LISA_PATHFINDER_BAND",
    "POSTULATED_ASD",
    "RATE_UNIT",
    "LENGTH_UNIT",
    "ASD_UNIT",
]

RATE_UNIT = "s^-1"
LENGTH_UNIT = "m"
ASD_UNIT = "m s^-2 Hz^-1/2"

# Published mission sensitivity: single-sided differential-acceleration
# amplitude spectral density, flat across 0.7 mHz to 20 mHz.
LISA_PATHFINDER_ASD = 5.2e-15  # m s^-2 / sqrt(Hz)
LISA_PATHFINDER_ASD_SIGMA = 0.1e-15
LISA_PATHFINDER_BAND = FrequencyBand(0.7e-3, 20e-3)
# Postulated improved sensitivity scenario.
POSTULATED_ASD = 3.5e-15


@dataclass(frozen=True)
class NoiseSpec:
    """Measured differential-acceleration noise over a frequency band.

    ``asd`` is the single-sided amplitude spectral density of the
    differential acceleration of ``n_masses`` independently collapsing
    test masses (2 for a two-mass differential measurement).
    """

    asd: UncertainValue  # m s^-2 Hz^-1/2
    band: FrequencyBand
    n_masses: int = 2

    def __post_init__(self) -> None:
        if self.asd.value <= 0.0:
            raise ValueError(f"asd must be > 0, got {self.asd.value!r}")
        if not isinstance(self.n_masses, int) or self.n_masses < 1:
            raise ValueError(f"n_masses must be an integer >= 1, got {self.n_masses!r}")


def lisa_pathfinder_noise() -> NoiseSpec:
    """The published sensitivity: (5.2 +/- 0.1) fm s^-2/sqrt(Hz), 0.7-20 mHz."""
    return NoiseSpec(
        asd=UncertainValue(LISA_PATHFINDER_ASD, LISA_PATHFINDER_ASD_SIGMA),
        band=LISA_PATHFINDER_BAND,
        n_masses=2,
    )


_KINDS = {"CSL": "upper", "DP": "lower"}


@dataclass(frozen=True)
class BoundResult:
    """A parameter bound with its diffusion ceiling and input provenance."""

    model_tag: str  # "CSL" | "DP"
    kind: str  # "upper" | "lower"
    parameter_name: str  # "lambda_CSL" | "sigma_DP"
    bound: UncertainValue
    d_max: UncertainValue  # kg^2 m^2 s^-3
    band: FrequencyBand
    inputs_digest: str

    def __post_init__(self) -> None:
        if self.model_tag not in _KINDS:
            raise ValueError(f"model_tag must be CSL or DP, got {self.model_tag!r}")
        if self.kind != _KINDS[self.model_tag]:
            raise ValueError(
                f"{self.model_tag} bounds are {_KINDS[self.model_tag]!r} bounds, "
                f"got kind={self.kind!r}"
            )
        if self.bound.value <= 0.0:
            raise ValueError(f"bound must be > 0, got {self.bound.value!r}")
        if self.d_max.value <= 0.0:
            raise ValueError(f"d_max must be > 0, got {self.d_max.value!r}")

    @property
    def unit(self) -> str:
        return RATE_UNIT if self.model_tag == "CSL" else LENGTH_UNIT


def diffusion_upper_bound(noise: NoiseSpec, test_mass: TestMass) -> UncertainValue:
    """Largest diffusion coefficient compatible with the measured noise.

    D_max = M^2 asd^2 / (2 n_masses), all noise attributed to the collapse
    force; no thermal-noise subtraction.
    """
    s_a = propagate_power(noise.asd, 2)
    return s_a.scaled(test_mass.mass**2 / (2.0 * noise.n_masses))


def csl_rate_upper_bound(
    noise: NoiseSpec,
    test_mass: TestMass,
    correlation_length: float = DEFAULT_CORRELATION_LENGTH,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> BoundResult:
    """Upper bound on the localization collapse rate for a cubic test mass.

    Closed form (n_masses = 2):

        lambda_max = m0^2 / (32 pi hbar^2 r^2) * (M / rho)^2 * S_a / b^2

    which equals D_max / ((hbar/r)^2 alpha_cube) identically. Requires the
    large-cube regime of the closed-form geometric factor.
    """
    require_cube_regime(test_mass.side_length, correlation_length)
    s_a = propagate_power(noise.asd, 2)
    coefficient = (
        constants.m0**2
        / (16.0 * noise.n_masses * math.pi * constants.hbar**2 * correlation_length**2)
        * (test_mass.mass / test_mass.material.density) ** 2
        / test_mass.side_length**2
    )
    return BoundResult(
        model_tag="CSL",
        kind="upper",
        parameter_name="lambda_CSL",
        bound=s_a.scaled(coefficient),
        d_max=diffusion_upper_bound(noise, test_mass),
        band=noise.band,
        inputs_digest=_inputs_digest(
            "CSL", constants, test_mass, noise, correlation_length
        ),
    )


def dp_cutoff_lower_bound(
    noise: NoiseSpec,
    test_mass: TestMass,
    constants: PhysicalConstants = DEFAULT_CONSTANTS,
) -> BoundResult:
    """Lower bound on the gravitational-model regularization cut-off.

    Closed form (n_masses = 2):

        sigma_min = a * (2 hbar G rho / (3 sqrt(pi) M S_a))^(1/3)

    which equals the cut-off solving dp_diffusion(sigma) = D_max.
    """
    inv_asd_23 = propagate_power(noise.asd, -2.0 / 3.0)  # S_a^(-1/3)
    coefficient = test_mass.material.lattice_constant * (
        noise.n_masses
        * constants.hbar
        * constants.G
        * test_mass.material.density
        / (3.0 * math.sqrt(math.pi) * test_mass.mass)
    ) ** (1.0 / 3.0)
    return BoundResult(
        model_tag="DP",
        kind="lower",
        parameter_name="sigma_DP",
        bound=inv_asd_23.scaled(coefficient),
        d_max=diffusion_upper_bound(noise, test_mass),
        band=noise.band,
        inputs_digest=_inputs_digest("DP", constants, test_mass, noise, None),
    )


def csl_rate_from_diffusion(
    d: UncertainValue,
    alpha: float,
    correlation_length: float,
    hbar: float = DEFAULT_CONSTANTS.hbar,
) -> UncertainValue:
    """Invert D = lambda (hbar/r)^2 alpha for the collapse rate."""
    if alpha == 0.0:
        raise ZeroDivisionError("alpha must be nonzero to invert the diffusion")
    return d.scaled(1.0 / ((hbar / correlation_length) ** 2 * alpha))


def dp_cutoff_from_diffusion(
    d: UncertainValue,
    test_mass: TestMass,
    hbar: float = DEFAULT_CONSTANTS.hbar,
    G: float = DEFAULT_CONSTANTS.G,
) -> UncertainValue:
    """Invert D = (G hbar / (6 sqrt(pi))) (a/sigma)^3 M rho for the cut-off."""
    if d.value == 0.0:
        raise ZeroDivisionError("diffusion must be nonzero to invert for the cut-off")
    inv_d_13 = propagate_power(d, -1.0 / 3.0)
    scale = test_mass.material.lattice_constant * (
        G
        * hbar
        * test_mass.mass
        * test_mass.material.density
        / (6.0 * math.sqrt(math.pi))
    ) ** (1.0 / 3.0)
    return inv_d_13.scaled(scale)


def _inputs_digest(
    model: str,
    constants: PhysicalConstants,
    test_mass: TestMass,
    noise: NoiseSpec,
    correlation_length: Optional[float],
) -> str:
    """Canonical hash of every input so published numbers are traceable."""
    payload = {
        "model": model,
        "constants": {
            "hbar": constants.hbar,
            "G": constants.G,
            "m0": constants.m0,
        },
        "test_mass": {
            "mass": test_mass.mass,
            "side_length": test_mass.side_length,
            "density": test_mass.material.density,
            "lattice_constant": test_mass.material.lattice_constant,
            "material": test_mass.material.name,
        },
        "noise": {
            "asd": noise.asd.value,
            "asd_sigma": noise.asd.sigma,
            "f_lo": noise.band.f_lo,
            "f_hi": noise.band.f_hi,
            "n_masses": noise.n_masses,
        },
    }
    if correlation_length is not None:
        payload["correlation_length"] = correlation_length
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()
