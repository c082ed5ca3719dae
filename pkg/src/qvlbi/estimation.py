"""Fisher-information bounds for visibility estimation.

Provides the closed-form quantum Fisher information (QFI) matrix over
(phi, gamma) for the two-site stellar state, an independent numerical
oracle that recomputes the QFI from the symmetric logarithmic
derivative (SLD) eigendecomposition of the weak-source density matrix,
the classical Fisher information of local direct detection at a
reference phase, and Cramer-Rao variance bounds.

The analytic matrix and the numerical oracle are deliberately kept as
two separate computational routes; tests cross-validate them to first
order in epsilon.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .source_model import SourceParams, WeakSourceState, density_matrix

__all__ = [
    "QfiMatrix",
    "FiMatrix",
    "CrbResult",
    "qfi_matrix",
    "qfi_numerical",
    "local_fi",
    "crb",
]

# Skip SLD terms whose eigenvalue sum falls below this: they are 0/0
# artifacts of the vacuum-dominated spectrum, not information.
SLD_EIGENVALUE_CUTOFF = 1e-12


@dataclass(frozen=True)
class QfiMatrix:
    """QFI matrix over parameter order (phi, gamma).

    The cross term vanishes identically for the stellar state, so the
    matrix is stored by its diagonal.  ``j_gamma`` is +inf when
    gamma = 1 (the visibility modulus becomes noiseless in that
    singular limit); ``gamma_divergent`` tags this explicitly.
    """

    j_phi: float
    j_gamma: float
    j_cross: float = 0.0
    gamma_divergent: bool = False

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.j_phi, self.j_cross], [self.j_cross, self.j_gamma]])


def qfi_matrix(params: SourceParams) -> QfiMatrix:
    """Closed-form QFI of the stellar state for (phi, gamma).

    Independent of phi.  j_phi/epsilon <= 1 always, while
    j_gamma/epsilon grows without bound as gamma -> 1.
    """
    eps, gam = params.epsilon, params.gamma
    one_minus_g2 = 1.0 - gam * gam
    j_phi = 2.0 * gam * gam * eps / (2.0 + eps * one_minus_g2)
    if gam == 1.0:
        return QfiMatrix(j_phi=j_phi, j_gamma=math.inf, gamma_divergent=True)
    j_gamma = (
        2.0
        * eps
        * (2.0 + eps + eps * gam * gam)
        / (one_minus_g2 * (4.0 + 4.0 * eps + eps * eps * one_minus_g2))
    )
    return QfiMatrix(j_phi=j_phi, j_gamma=j_gamma)


def qfi_numerical(
    state: WeakSourceState,
    which: str,
    *,
    step: float = 1e-6,
    cutoff: float = SLD_EIGENVALUE_CUTOFF,
) -> float:
    """QFI of the weak-source state by direct SLD eigendecomposition.

    Brute-force oracle for the closed-form matrix: the derivative of the
    3x3 density matrix is taken by central finite difference with the
    given step, and the QFI is assembled as

        J = 2 sum_{j,k} |<j| d rho |k>|^2 / (lambda_j + lambda_k)

    over eigenpairs with lambda_j + lambda_k above ``cutoff``.  Valid in
    the same epsilon <= 0.1 regime as the truncation itself.
    """
    if which not in ("phi", "gamma"):
        raise ValueError(f"which must be 'phi' or 'gamma', got {which!r}")
    eps, gam, phi = state.epsilon, state.gamma, state.phi
    if eps > 0.1:
        raise ValueError(f"numerical oracle requires epsilon <= 0.1, got {eps}")

    def rho_at(g: float, p: float) -> np.ndarray:
        shifted = WeakSourceState(
            p_vac=1.0 - eps,
            p_plus=eps * (1.0 + g) / 2.0,
            p_minus=eps * (1.0 - g) / 2.0,
            phi=p,
        )
        return density_matrix(shifted)

    if which == "phi":
        drho = (rho_at(gam, phi + step) - rho_at(gam, phi - step)) / (2.0 * step)
    else:
        lo, hi = gam - step, gam + step
        if lo < 0.0 or hi > 1.0:
            # rho is linear in gamma, so a stencil shifted back inside
            # [0, 1] differentiates it exactly
            shift = -lo if lo < 0.0 else 1.0 - hi
            lo, hi = lo + shift, hi + shift
        drho = (rho_at(hi, phi) - rho_at(lo, phi)) / (hi - lo)

    lam, vec = np.linalg.eigh(rho_at(gam, phi))
    m = vec.conj().T @ drho @ vec
    total = 0.0
    for j in range(3):
        for k in range(3):
            s = lam[j] + lam[k]
            if s > cutoff:
                total += 2.0 * abs(m[j, k]) ** 2 / s
    return float(total)


@dataclass(frozen=True)
class FiMatrix:
    """Classical FI matrix of local direct detection at reference phase delta.

    Rank <= 1: eigenvalues are (0, epsilon / (1 - Re(gamma e^{i(phi-delta)})^2)).
    ``divergent`` is set in the singular limit gamma = 1 with delta
    aligned to phi.
    """

    matrix: np.ndarray
    eigenvalue: float
    divergent: bool = False

    @property
    def trace_norm(self) -> float:
        """Sum of singular values; >= epsilon for every (gamma, delta)."""
        return self.eigenvalue


def local_fi(params: SourceParams, delta: float) -> FiMatrix:
    """FI matrix of per-site direct detection, scaling as epsilon at best.

    Local strategies are information-starved relative to the QFI: the
    matrix is rank-1, and its only nonzero eigenvalue reaches epsilon /
    (1 - gamma^2 cos^2(phi - delta)), diverging only in the singular
    gamma = 1, delta = phi limit.
    """
    eps = params.epsilon
    r = params.gamma * math.cos(params.phi - delta)
    denom = 1.0 - r * r
    geometry = np.array(
        [
            [math.cos(delta) ** 2, math.sin(delta) * math.cos(delta)],
            [math.sin(delta) * math.cos(delta), math.sin(delta) ** 2],
        ]
    )
    if denom <= 0.0:
        diverged = np.zeros((2, 2))
        mask = geometry != 0.0
        diverged[mask] = np.sign(geometry[mask]) * math.inf
        return FiMatrix(matrix=diverged, eigenvalue=math.inf, divergent=True)
    scale = eps / denom
    return FiMatrix(matrix=scale * geometry, eigenvalue=scale)


@dataclass(frozen=True)
class CrbResult:
    """Cramer-Rao lower bounds on estimator variances.

    ``variances`` holds per-parameter bounds; +inf marks a parameter
    that carries no information (unidentifiable), 0.0 marks a singular
    noiseless limit.  ``covariance`` is the full matrix bound J^{-1}/N
    when the information matrix is invertible, else None.
    """

    variances: tuple[float, ...]
    identifiable: tuple[bool, ...]
    covariance: np.ndarray | None


def crb(info, n_copies: int = 1):
    """Cramer-Rao bound from scalar or matrix Fisher information.

    Scalar information J gives the float bound 1/(N J).  A
    :class:`QfiMatrix`, :class:`FiMatrix`, or plain 2x2 array gives a
    :class:`CrbResult`; singular matrices produce per-parameter bounds
    (each valid when the other parameter is known) instead of a crash.
    """
    if n_copies < 1:
        raise ValueError(f"n_copies must be >= 1, got {n_copies}")
    if isinstance(info, (int, float)):
        if info < 0:
            raise ValueError(f"Fisher information must be >= 0, got {info}")
        if info == 0:
            return math.inf
        return 1.0 / (n_copies * info)

    if isinstance(info, QfiMatrix):
        matrix = info.as_matrix()
    elif isinstance(info, FiMatrix):
        matrix = info.matrix
    else:
        matrix = np.asarray(info, dtype=float)
        if matrix.shape != (2, 2):
            raise ValueError(f"information matrix must be 2x2, got {matrix.shape}")

    diag = np.diag(matrix)
    identifiable = tuple(bool(d > 0) for d in diag)
    finite = np.isfinite(matrix).all()
    scale = float(np.abs(matrix).max()) if finite else 0.0
    if finite and scale > 0.0 and abs(np.linalg.det(matrix)) > 1e-12 * scale * scale:
        cov = np.linalg.inv(matrix) / n_copies
        return CrbResult(
            variances=tuple(float(v) for v in np.diag(cov)),
            identifiable=identifiable,
            covariance=cov,
        )
    # Singular or infinite information: report per-parameter bounds.
    variances = []
    for d in diag:
        if d == 0:
            variances.append(math.inf)
        elif math.isinf(d):
            variances.append(0.0)  # noiseless singular limit
        else:
            variances.append(1.0 / (n_copies * d))
    return CrbResult(
        variances=tuple(variances), identifiable=identifiable, covariance=None
    )
