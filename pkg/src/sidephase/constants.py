"""Physical constants, spin species, and silicon material parameters.

Everything downstream computes in SI (m, s, K, T, J, angular frequencies in
rad/s).  Published source values quoted in mixed CGS units are converted once
here, so no formula elsewhere carries stray powers of ten.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "PhysicalConstants",
    "SpinSpecies",
    "MaterialParams",
    "CONSTANTS",
    "ELECTRON",
    "PHOSPHORUS_31",
    "SILICON_29",
    "SPECIES",
    "SILICON",
    "NATURAL_SI29_ABUNDANCE_PERCENT",
    "boltzmann_ratio",
    "spin_half_variance",
    "spin_half_variance_full_arg",
]

# Natural abundance of the spin-1/2 silicon isotope, percent of lattice sites.
# Reference point for impurity-concentration bounds (isotopic purification).
NATURAL_SI29_ABUNDANCE_PERCENT = 4.7


@dataclass(frozen=True)
class PhysicalConstants:
    """Fundamental constants, fixed at the rounded values the estimates use.

    hbar : J s (per rad)
    k_boltzmann : J/K
    mu0_over_4pi : T^2 m^3 / J
    """

    hbar: float = 1.05e-34
    k_boltzmann: float = 1.38e-23
    mu0_over_4pi: float = 1e-7

    def __post_init__(self) -> None:
        for name in ("hbar", "k_boltzmann", "mu0_over_4pi"):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")

    @property
    def mu0_cgs(self) -> float:
        """mu_0 in T^2 cm^3 / J (printed form 0.4*pi)."""
        return 4.0 * math.pi * self.mu0_over_4pi * 1e6


@dataclass(frozen=True)
class SpinSpecies:
    """A spin-1/2 species with its gyromagnetic ratio.

    gamma is signed, in rad/s/T.  Every variance formula squares it and every
    threshold uses |gamma|, so the sign is carried only for documentation.
    """

    name: str
    gamma: float
    spin: float = 0.5

    def __post_init__(self) -> None:
        if self.gamma == 0.0:
            raise ValueError("gamma must be nonzero")
        if self.spin != 0.5:
            raise ValueError("only spin-1/2 species are supported")


@dataclass(frozen=True)
class MaterialParams:
    """Host-lattice parameters.

    debye_temperature : K
    lattice_constant : m (cubic cell edge)
    sound_velocity : m/s
    atom_mass : J s^2/m^2 (i.e. kg)
    hyperfine_constant : rad/s (contact coupling A0)
    site_density : 1/m^3 (atoms per volume, quoted independently of the
        lattice constant; the two disagree, see the audit)
    xi : dimensionless phonon-coupling factor, worst case 1
    """

    debye_temperature: float
    lattice_constant: float
    sound_velocity: float
    atom_mass: float
    hyperfine_constant: float
    site_density: float
    xi: float = 1.0

    def __post_init__(self) -> None:
        for name in (
            "debye_temperature",
            "lattice_constant",
            "sound_velocity",
            "atom_mass",
            "hyperfine_constant",
            "site_density",
            "xi",
        ):
            if getattr(self, name) <= 0.0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_cgs(
        cls,
        debye_temperature_k: float,
        lattice_constant_cm: float,
        sound_velocity_cm_per_s: float,
        atom_mass_j_s2_per_cm2: float,
        hyperfine_constant_rad_per_s: float,
        site_density_per_cm3: float,
        xi: float = 1.0,
    ) -> "MaterialParams":
        return cls(
            debye_temperature=debye_temperature_k,
            lattice_constant=lattice_constant_cm * 1e-2,
            sound_velocity=sound_velocity_cm_per_s * 1e-2,
            atom_mass=atom_mass_j_s2_per_cm2 * 1e4,
            hyperfine_constant=hyperfine_constant_rad_per_s,
            site_density=site_density_per_cm3 * 1e6,
            xi=xi,
        )

    def to_cgs(self) -> dict[str, float]:
        """Inverse of from_cgs; keys match its parameter names."""
        return {
            "debye_temperature_k": self.debye_temperature,
            "lattice_constant_cm": self.lattice_constant * 1e2,
            "sound_velocity_cm_per_s": self.sound_velocity * 1e2,
            "atom_mass_j_s2_per_cm2": self.atom_mass * 1e-4,
            "hyperfine_constant_rad_per_s": self.hyperfine_constant,
            "site_density_per_cm3": self.site_density * 1e-6,
            "xi": self.xi,
        }

    @property
    def site_volume(self) -> float:
        """Per-site volume 1/site_density, m^3."""
        return 1.0 / self.site_density

    @property
    def min_distance(self) -> float:
        """Dipolar cutoff distance: cube root of the per-site volume, m."""
        return self.site_volume ** (1.0 / 3.0)


CONSTANTS = PhysicalConstants()

ELECTRON = SpinSpecies("electron", 176e9)
PHOSPHORUS_31 = SpinSpecies("31P", 108e6)
SILICON_29 = SpinSpecies("29Si", -53e6)

SPECIES: dict[str, SpinSpecies] = {
    s.name: s for s in (ELECTRON, PHOSPHORUS_31, SILICON_29)
}

# Printed CGS values: Theta = 625 K, a = 5.4e-8 cm, v = 5e5 cm/s,
# M = 0.46e-29 J s^2/cm^2, A0 = 725 rad MHz, a^-3 = 5.0e22 cm^-3.
# The electron longitudinal relaxation time (~1e4 s at low temperature)
# and the even longer transverse one enter only the adiabaticity ordering;
# the transverse time is never a parameter of any computed quantity.
SILICON = MaterialParams.from_cgs(
    debye_temperature_k=625.0,
    lattice_constant_cm=5.4e-8,
    sound_velocity_cm_per_s=5e5,
    atom_mass_j_s2_per_cm2=0.46e-29,
    hyperfine_constant_rad_per_s=725e6,
    site_density_per_cm3=5.0e22,
    xi=1.0,
)


def boltzmann_ratio(
    gamma: float,
    field: float,
    temperature: float,
    constants: PhysicalConstants = CONSTANTS,
) -> float:
    """Zeeman-to-thermal energy ratio x = |gamma| hbar B / (k T).

    Parameters
    ----------
    gamma : rad/s/T, sign ignored.
    field : T, must be >= 0.
    temperature : K, must be > 0.
    """
    if temperature <= 0.0:
        raise ValueError("temperature must be positive")
    if field < 0.0:
        raise ValueError("field must be nonnegative")
    return abs(gamma) * constants.hbar * field / (constants.k_boltzmann * temperature)


def spin_half_variance(x: float) -> float:
    """Thermal variance of a spin-1/2 z component, sech^2(x/2)/4.

    Evaluated as w/(1+w)^2 with w = exp(-x), which never suffers the
    tanh(x/2) -> 1 cancellation and decays like exp(-x) for large x.
    Equals 1/4 at x = 0 and is strictly decreasing.
    """
    if x < 0.0:
        raise ValueError("x must be nonnegative")
    w = math.exp(-x)
    return w / (1.0 + w) ** 2


def spin_half_variance_full_arg(x: float) -> float:
    """Variant with tanh of the full ratio: (1 - tanh^2(x))/4 = sech^2(x)/4.

    Not the physical spin-1/2 variance (that is the halved-argument form);
    retained because the audit contrasts the two, which differ as exp(-2x)
    versus exp(-x) in the polarized limit.
    """
    return spin_half_variance(2.0 * x)
