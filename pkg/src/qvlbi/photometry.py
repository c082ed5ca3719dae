"""AB-magnitude photometry for interferometric sources.

Converts stellar AB magnitudes, observing wavelengths, bandwidths, and
collection areas into spectral flux densities, photon rates, coherence
times, and the mean photon number per coherence-time bin (the quantity
that sets the resource budget of every entanglement-assisted protocol
in this package).

A flat spectrum over the bandwidth is assumed throughout; this is a good
approximation for the narrow (~nm) bands of interest and is the same
assumption used to produce the published photon-budget tables that
:func:`photon_budget_table` regenerates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .constants import PLANCK, SPEED_OF_LIGHT

__all__ = [
    "PhotometrySpec",
    "PhotometryResult",
    "flux_from_magnitude",
    "delta_nu_from_delta_lambda",
    "delta_lambda_from_delta_nu",
    "coherence_time",
    "photon_rate",
    "epsilon_per_bin",
    "analyze",
]


def flux_from_magnitude(m_ab: float) -> float:
    """Spectral flux density F_nu (W m^-2 Hz^-1) of an AB magnitude.

    The AB scale is logarithmic with a zero point of approximately
    3631 Jy: F_nu = 10**(-0.4 (m_AB + 48.6)) in erg s^-1 cm^-2 Hz^-1,
    i.e. an extra factor 1e-3 in SI units.
    """
    if not math.isfinite(m_ab):
        raise ValueError(f"AB magnitude must be finite, got {m_ab!r}")
    return 10.0 ** (-0.4 * (m_ab + 48.6)) * 1e-3


def delta_nu_from_delta_lambda(wavelength: float, delta_lambda: float) -> float:
    """Convert a wavelength bandwidth (m) to a frequency bandwidth (Hz)."""
    _require_positive(wavelength=wavelength, delta_lambda=delta_lambda)
    return delta_lambda * SPEED_OF_LIGHT / wavelength**2


def delta_lambda_from_delta_nu(wavelength: float, delta_nu: float) -> float:
    """Convert a frequency bandwidth (Hz) to a wavelength bandwidth (m)."""
    _require_positive(wavelength=wavelength, delta_nu=delta_nu)
    return delta_nu * wavelength**2 / SPEED_OF_LIGHT


def coherence_time(delta_nu: float) -> float:
    """Coherence time tau_c = 1/delta_nu (s) of light with bandwidth delta_nu (Hz).

    Signals separated by more than tau_c do not interfere, so tau_c is
    also the natural time-bin size for time-multiplexed detection.
    """
    _require_positive(delta_nu=delta_nu)
    return 1.0 / delta_nu


@dataclass(frozen=True)
class PhotometrySpec:
    """Observation setup: source magnitude, band, and collection area.

    Exactly one of ``delta_lambda`` (m) or ``delta_nu`` (Hz) must be
    given; the other representation is derived on demand.
    """

    m_ab: float
    wavelength: float
    area: float
    delta_lambda: float | None = None
    delta_nu: float | None = None

    def __post_init__(self) -> None:
        if not math.isfinite(self.m_ab):
            raise ValueError(f"AB magnitude must be finite, got {self.m_ab!r}")
        _require_positive(wavelength=self.wavelength, area=self.area)
        if (self.delta_lambda is None) == (self.delta_nu is None):
            raise ValueError(
                "exactly one of delta_lambda or delta_nu must be provided"
            )
        if self.delta_lambda is not None:
            _require_positive(delta_lambda=self.delta_lambda)
        if self.delta_nu is not None:
            _require_positive(delta_nu=self.delta_nu)

    @property
    def bandwidth_hz(self) -> float:
        if self.delta_nu is not None:
            return self.delta_nu
        return delta_nu_from_delta_lambda(self.wavelength, self.delta_lambda)

    @property
    def bandwidth_m(self) -> float:
        if self.delta_lambda is not None:
            return self.delta_lambda
        return delta_lambda_from_delta_nu(self.wavelength, self.delta_nu)


@dataclass(frozen=True)
class PhotometryResult:
    """Derived photometric quantities for one observation setup.

    ``epsilon`` is the mean photon number per coherence-time bin and
    equals ``photon_rate * coherence_time`` by construction.
    """

    flux_nu: float
    photon_rate: float
    coherence_time: float
    epsilon: float


def photon_rate(spec: PhotometrySpec) -> float:
    """Detected photons per second over the full bandwidth and area.

    The photon flux density F_nu/(h lambda) (photons s^-1 m^-2 m^-1) is
    taken constant over the band and multiplied by the wavelength
    bandwidth and the collection area. The area enters exactly once,
    here; downstream per-bin photon numbers must not multiply by it
    again.
    """
    f_nu = flux_from_magnitude(spec.m_ab)
    return f_nu / (PLANCK * spec.wavelength) * spec.bandwidth_m * spec.area


def epsilon_per_bin(spec: PhotometrySpec) -> float:
    """Mean photon number per coherence-time bin.

    Invariant under splitting the band into k equal sub-bands: the rate
    drops by 1/k while the coherence time grows by k, so spectral
    demultiplexing does not dilute the per-bin signal.
    """
    return photon_rate(spec) * coherence_time(spec.bandwidth_hz)


def analyze(spec: PhotometrySpec) -> PhotometryResult:
    """Compute flux density, photon rate, coherence time, and epsilon."""
    rate = photon_rate(spec)
    tau = coherence_time(spec.bandwidth_hz)
    return PhotometryResult(
        flux_nu=flux_from_magnitude(spec.m_ab),
        photon_rate=rate,
        coherence_time=tau,
        epsilon=rate * tau,
    )


def _require_positive(**values: float) -> None:
    for name, value in values.items():
        if not (math.isfinite(value) and value > 0):
            raise ValueError(f"{name} must be positive and finite, got {value!r}")
