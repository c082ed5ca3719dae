"""Two-site stellar source models.

The light shared between two telescope stations is characterised by
three numbers: the mean photon number per coherence-time bin
(``epsilon``), and the modulus and phase of the mutual coherence
(``gamma``, ``phi``).  Two equivalent descriptions are provided:

* a zero-mean two-mode Gaussian state given by its 4x4 quadrature
  covariance matrix (valid for any ``epsilon``), and
* the weak-source truncation to the {vacuum, one shared photon}
  sector, valid for ``epsilon << 1``, which is the regime of all
  astronomical sources of interest.

Thermal (Bose-Einstein) photon-number statistics per bin are also
provided; they generate the arrival traces consumed by the protocol
simulators.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .constants import TWO_PI

__all__ = [
    "SourceParams",
    "TwoModeCovariance",
    "WeakSourceState",
    "WeakSourceApproximationWarning",
    "covariance",
    "weak_state",
    "density_matrix",
    "thermal_pmf",
    "symplectic_form",
    "symplectic_eigenvalues",
]


class WeakSourceApproximationWarning(UserWarning):
    """The weak-source truncation is being used outside epsilon << 1."""


@dataclass(frozen=True)
class SourceParams:
    """Source parameters (epsilon, gamma, phi).

    epsilon : mean photon number per coherence-time bin, >= 0
    gamma   : visibility modulus in [0, 1]
    phi     : visibility phase, normalised into [0, 2*pi)
    """

    epsilon: float
    gamma: float
    phi: float = 0.0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.epsilon) and self.epsilon >= 0):
            raise ValueError(f"epsilon must be >= 0, got {self.epsilon!r}")
        if not (math.isfinite(self.gamma) and 0 <= self.gamma <= 1):
            raise ValueError(f"gamma must lie in [0, 1], got {self.gamma!r}")
        if not math.isfinite(self.phi):
            raise ValueError(f"phi must be finite, got {self.phi!r}")
        object.__setattr__(self, "phi", self.phi % TWO_PI)


@dataclass(frozen=True)
class TwoModeCovariance:
    """Zero-mean two-mode Gaussian state in quadrature ordering (qA, pA, qB, pB).

    Vacuum convention: unit diagonal at epsilon = 0, so physicality is
    ``nu >= 1`` for every symplectic eigenvalue nu.
    """

    sigma: np.ndarray
    mean: np.ndarray = field(default_factory=lambda: np.zeros(4))

    def __post_init__(self) -> None:
        sigma = np.asarray(self.sigma, dtype=float)
        if sigma.shape != (4, 4):
            raise ValueError(f"sigma must be 4x4, got shape {sigma.shape}")
        if not np.allclose(sigma, sigma.T, atol=1e-12):
            raise ValueError("sigma must be symmetric")
        nu = symplectic_eigenvalues(sigma)
        if np.any(nu < 1.0 - 1e-9):
            raise ValueError(f"unphysical covariance: symplectic eigenvalues {nu}")
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "mean", np.asarray(self.mean, dtype=float))

    @property
    def symplectic_spectrum(self) -> np.ndarray:
        return symplectic_eigenvalues(self.sigma)

    @property
    def mean_photon_number(self) -> float:
        """Total mean photon number over both modes."""
        return float((np.trace(self.sigma) - 4.0) / 4.0)


def symplectic_form(n_modes: int = 2) -> np.ndarray:
    """Block-diagonal symplectic form for (q1, p1, q2, p2, ...) ordering."""
    block = np.array([[0.0, 1.0], [-1.0, 0.0]])
    omega = np.zeros((2 * n_modes, 2 * n_modes))
    for k in range(n_modes):
        omega[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = block
    return omega


def symplectic_eigenvalues(sigma: np.ndarray) -> np.ndarray:
    """Symplectic spectrum of a covariance matrix (moduli of eig(i Omega sigma))."""
    sigma = np.asarray(sigma, dtype=float)
    n_modes = sigma.shape[0] // 2
    ev = np.linalg.eigvals(1j * symplectic_form(n_modes) @ sigma)
    nu = np.sort(np.abs(ev))
    return nu[::2]  # eigenvalues come in +/- pairs


def covariance(params: SourceParams) -> TwoModeCovariance:
    """Covariance matrix of the two-site stellar state.

    Diagonal entries are epsilon + 1; the site-crossing block is
    gamma*epsilon times a rotation through phi.  epsilon = 0 gives the
    identity (vacuum).
    """
    eps, gam, phi = params.epsilon, params.gamma, params.phi
    c = gam * eps * math.cos(phi)
    s = gam * eps * math.sin(phi)
    d = eps + 1.0
    sigma = np.array(
        [
            [d, 0.0, c, -s],
            [0.0, d, s, c],
            [c, s, d, 0.0],
            [-s, c, 0.0, d],
        ]
    )
    return TwoModeCovariance(sigma=sigma)


@dataclass(frozen=True)
class WeakSourceState:
    """Weak-source truncation: mixture of vacuum and one shared photon.

    p_plus and p_minus weight the symmetric / antisymmetric shared
    single-photon states (|1,vac> +/- e^{i phi} |vac,1>)/sqrt(2).
    """

    p_vac: float
    p_plus: float
    p_minus: float
    phi: float

    def __post_init__(self) -> None:
        probs = (self.p_vac, self.p_plus, self.p_minus)
        if any(p < -1e-15 for p in probs):
            raise ValueError(f"negative probability in {probs}")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ValueError(f"probabilities must sum to 1, got {sum(probs)!r}")

    @property
    def epsilon(self) -> float:
        """Mean photon number (exactly the single-photon sector weight)."""
        return self.p_plus + self.p_minus

    @property
    def gamma(self) -> float:
        eps = self.epsilon
        if eps == 0.0:
            return 0.0
        return (self.p_plus - self.p_minus) / eps


def weak_state(params: SourceParams, *, allow_large_epsilon: bool = False) -> WeakSourceState:
    """Truncate the source to the {vacuum, single shared photon} sector.

    Valid for epsilon << 1.  epsilon > 1 is rejected outright (the
    truncation would assign a negative vacuum weight); epsilon above the
    0.1 soft limit triggers :class:`WeakSourceApproximationWarning`
    unless ``allow_large_epsilon`` is set.
    """
    eps, gam = params.epsilon, params.gamma
    if eps > 1.0:
        raise ValueError(
            f"epsilon={eps} is outside the weak-source regime (requires epsilon <= 1)"
        )
    if eps > 0.1 and not allow_large_epsilon:
        warnings.warn(
            f"epsilon={eps} exceeds the 0.1 soft limit of the weak-source "
            "approximation; results are first order in epsilon",
            WeakSourceApproximationWarning,
            stacklevel=2,
        )
    return WeakSourceState(
        p_vac=1.0 - eps,
        p_plus=eps * (1.0 + gam) / 2.0,
        p_minus=eps * (1.0 - gam) / 2.0,
        phi=params.phi,
    )


def density_matrix(state: WeakSourceState) -> np.ndarray:
    """3x3 density matrix of the truncated state.

    Basis ordering: {|vac,vac>, |1,vac>, |vac,1>}.
    """
    eps = state.epsilon
    coh = (state.p_plus - state.p_minus) / 2.0
    rho = np.zeros((3, 3), dtype=complex)
    rho[0, 0] = state.p_vac
    rho[1, 1] = rho[2, 2] = eps / 2.0
    rho[1, 2] = coh * np.exp(-1j * state.phi)
    rho[2, 1] = coh * np.exp(1j * state.phi)
    return rho


def thermal_pmf(epsilon: float, n: int) -> float:
    """Bose-Einstein occupation probability: epsilon^n / (1+epsilon)^(n+1).

    Single-mode thermal light with mean photon number epsilon; n = 0 and
    n = 1 give the per-bin vacuum and single-photon probabilities used
    by the arrival-trace sampler.
    """
    if not (math.isfinite(epsilon) and epsilon >= 0):
        raise ValueError(f"epsilon must be >= 0, got {epsilon!r}")
    if n != int(n) or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    n = int(n)
    if epsilon == 0.0:
        return 1.0 if n == 0 else 0.0
    # log-space keeps large-n / large-epsilon tails from overflowing
    return math.exp(n * math.log(epsilon) - (n + 1) * math.log1p(epsilon))
