"""Astrophysical target calculators.

Small-angle separations of exoplanets from their hosts, relativistic
orbital precession (mass and frame-dragging contributions), and the
baseline lengths required to resolve them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import GRAVITATIONAL_CONSTANT, SPEED_OF_LIGHT

__all__ = [
    "OrbitSpec",
    "angular_separation",
    "microarcseconds",
    "schwarzschild_precession",
    "lense_thirring_precession",
    "required_baseline",
    "wavelength_scaled_baseline",
]


def angular_separation(semi_major_au: float, distance_pc: float) -> float:
    """Small-angle separation in arcseconds: semi-major axis (au) over distance (pc).

    One au at one parsec subtends one arcsecond by definition, so the
    ratio is already in arcseconds.
    """
    if not (semi_major_au > 0 and distance_pc > 0):
        raise ValueError("semi_major_au and distance_pc must be positive")
    return semi_major_au / distance_pc


def microarcseconds(arcsec: float) -> float:
    return arcsec * 1e6


@dataclass(frozen=True)
class OrbitSpec:
    """Orbit of a test body around a massive (possibly spinning) central object.

    central_mass in kg, semi_major in m, eccentricity in [0, 1), and
    the dimensionless spin parameter in [0, 1].
    """

    central_mass: float
    semi_major: float
    eccentricity: float = 0.0
    spin: float = 0.0

    def __post_init__(self) -> None:
        if not (self.central_mass > 0 and self.semi_major > 0):
            raise ValueError("central_mass and semi_major must be positive")
        if not (0 <= self.eccentricity < 1):
            raise ValueError(
                f"eccentricity must lie in [0, 1), got {self.eccentricity!r}"
            )
        if not (0 <= self.spin <= 1):
            raise ValueError(f"spin must lie in [0, 1], got {self.spin!r}")

    @property
    def schwarzschild_radius(self) -> float:
        return 2.0 * GRAVITATIONAL_CONSTANT * self.central_mass / SPEED_OF_LIGHT**2

    @property
    def semi_latus_rectum(self) -> float:
        return self.semi_major * (1.0 - self.eccentricity**2)


def schwarzschild_precession(orbit: OrbitSpec) -> float:
    """Periapsis advance per orbit (radians) from the central mass.

    6 pi G M / (a (1 - e^2) c^2): about 5e-7 rad/orbit for Mercury,
    i.e. the classic 43 arcsec per century.  Diverges as e -> 1.
    """
    return (
        6.0
        * math.pi
        * GRAVITATIONAL_CONSTANT
        * orbit.central_mass
        / (orbit.semi_latus_rectum * SPEED_OF_LIGHT**2)
    )


def lense_thirring_precession(orbit: OrbitSpec) -> float:
    """Frame-dragging precession per orbit (radians) from the central spin.

    2 chi (R_S / (a (1 - e^2)))^{3/2}; zero for a non-spinning body and
    much smaller than the mass term for all realistic orbits.
    """
    return 2.0 * orbit.spin * (orbit.schwarzschild_radius / orbit.semi_latus_rectum) ** 1.5


def required_baseline(reference_baseline: float, resolution_ratio: float) -> float:
    """Baseline needed to resolve a feature finer by ``resolution_ratio``."""
    if not (reference_baseline > 0 and resolution_ratio > 0):
        raise ValueError("reference_baseline and resolution_ratio must be positive")
    return reference_baseline * resolution_ratio


def wavelength_scaled_baseline(
    reference_baseline: float, wavelength_target: float, wavelength_reference: float
) -> float:
    """Baseline with equal angular resolution at a different wavelength.

    Resolution goes as lambda/B, so matching a radio array at optical
    wavelengths shrinks the required baseline by lambda_opt/lambda_radio.
    """
    if not (reference_baseline > 0 and wavelength_target > 0 and wavelength_reference > 0):
        raise ValueError("all arguments must be positive")
    return reference_baseline * wavelength_target / wavelength_reference
