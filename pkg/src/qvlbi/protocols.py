"""Entanglement-assisted measurement protocols with exact resource accounting.

Four protocols are simulated on symbolic per-time-bin registers:

* ``gottesman_probs`` / ``gottesman_oracle`` — interference of the
  stellar photon with a pre-shared "ground" photon behind local 50:50
  beam splitters, post-selected on a two-station coincidence.
* ``unary_run`` — one memory qubit per time bin, located by one
  Bell-pair parity check per bin.
* ``binary_search_run`` — halving search for the occupied bin,
  consuming ceil(log2 M) Bell pairs.
* ``binary_encode`` — the arrival bin index written into a
  log-width register as a binary codeword.

Each time bin is in exactly one of three symbolic sectors: vacuum, one
photon shared non-locally between the stations (with a sign and a
carried phase), or a multiphoton occupation that no later operation can
refine.  The protocol states never leave this sector structure, so the
symbolic simulation is exact; interference effects, which do need
amplitudes, are handled by the small Fock-space oracle.

Closed-form error and resource formulas (post-selected single-photon
fidelity, trinomial block decoding, entanglement consumption rates, and
memory footprints) live here as well.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .rng import rng_for

__all__ = [
    "BinKind",
    "BinState",
    "ArrivalTrace",
    "BellLedger",
    "LogicalMemory",
    "GottesmanDistribution",
    "ProtocolError",
    "SearchPreconditionError",
    "sample_arrivals",
    "single_photon_trace",
    "gottesman_probs",
    "gottesman_oracle",
    "unary_run",
    "binary_search_run",
    "binary_encode",
    "multiphoton_fidelity",
    "trinomial_decode",
    "consumption_rate",
    "memory_requirements",
]


class ProtocolError(ValueError):
    """A protocol was invoked outside its stated preconditions."""


class SearchPreconditionError(ProtocolError):
    """Binary search requires exactly one shared photon and no multiphoton bin."""


class BinKind(enum.IntEnum):
    VACUUM = 0
    SHARED = 1
    MULTI = 2


@dataclass(frozen=True)
class BinState:
    """Symbolic occupation of one time bin.

    ``sign`` is +1/-1 for the symmetric/antisymmetric shared-photon
    state and 0 otherwise; ``phase`` is the visibility phase carried by
    a shared photon.  MULTI is absorbing: nothing downstream refines it.
    """

    kind: BinKind
    sign: int = 0
    phase: float = 0.0


@dataclass(frozen=True)
class ArrivalTrace:
    """Per-time-bin symbolic photon record over a block of bins.

    Bins are indexed 1..n_bins throughout the public API, matching the
    convention that the m-th bin is encoded by the codeword of m (the
    all-zeros word is reserved for vacuum).  Reproducible from
    (epsilon, gamma, phi, n_bins, seed).
    """

    kinds: np.ndarray
    signs: np.ndarray
    epsilon: float
    gamma: float
    phi: float
    seed: int | None = None

    def __post_init__(self) -> None:
        kinds = np.array(self.kinds, dtype=np.int8, copy=True)
        signs = np.array(self.signs, dtype=np.int8, copy=True)
        if kinds.shape != signs.shape or kinds.ndim != 1 or kinds.size < 1:
            raise ValueError("kinds and signs must be equal-length 1-d arrays")
        kinds.setflags(write=False)
        signs.setflags(write=False)
        object.__setattr__(self, "kinds", kinds)
        object.__setattr__(self, "signs", signs)

    @property
    def n_bins(self) -> int:
        return int(self.kinds.size)

    def bin(self, index: int) -> BinState:
        """Symbolic state of the 1-based bin ``index``."""
        if not 1 <= index <= self.n_bins:
            raise IndexError(f"bin index {index} outside 1..{self.n_bins}")
        kind = BinKind(int(self.kinds[index - 1]))
        sign = int(self.signs[index - 1]) if kind == BinKind.SHARED else 0
        phase = self.phi if kind == BinKind.SHARED else 0.0
        return BinState(kind=kind, sign=sign, phase=phase)

    def occupied_bins(self) -> tuple[int, ...]:
        """1-based indices of every non-vacuum bin."""
        return tuple(int(i) + 1 for i in np.flatnonzero(self.kinds != BinKind.VACUUM))

    def counts(self) -> tuple[int, int, int]:
        """(n_vacuum, n_shared, n_multi) over the block."""
        return (
            int(np.count_nonzero(self.kinds == BinKind.VACUUM)),
            int(np.count_nonzero(self.kinds == BinKind.SHARED)),
            int(np.count_nonzero(self.kinds == BinKind.MULTI)),
        )


def sample_arrivals(
    epsilon: float, n_bins: int, gamma: float, phi: float, seed: int
) -> ArrivalTrace:
    """Draw an arrival trace from per-bin thermal statistics.

    Each bin is independently vacuum with probability 1/(1+eps), a
    shared single photon with probability eps/(1+eps)^2, and multiphoton
    with the remaining Bose-Einstein tail.  A shared photon is
    symmetric (+) with probability (1+gamma)/2.  Identical (seed,
    n_bins) always reproduce the same trace bit for bit.
    """
    if not (epsilon >= 0):
        raise ValueError(f"epsilon must be >= 0, got {epsilon!r}")
    if not (0 <= gamma <= 1):
        raise ValueError(f"gamma must lie in [0, 1], got {gamma!r}")
    if n_bins < 1:
        raise ValueError(f"n_bins must be >= 1, got {n_bins}")
    rng = rng_for(seed)
    p_vac = 1.0 / (1.0 + epsilon)
    p_single = epsilon / (1.0 + epsilon) ** 2
    u = rng.random(n_bins)
    # sign stream drawn for every bin so the trace layout is independent
    # of the occupation outcomes
    plus = rng.random(n_bins) < (1.0 + gamma) / 2.0
    kinds = np.full(n_bins, BinKind.VACUUM, dtype=np.int8)
    kinds[u >= p_vac] = BinKind.MULTI
    kinds[(u >= p_vac) & (u < p_vac + p_single)] = BinKind.SHARED
    signs = np.where(kinds == BinKind.SHARED, np.where(plus, 1, -1), 0).astype(np.int8)
    return ArrivalTrace(
        kinds=kinds, signs=signs, epsilon=epsilon, gamma=gamma, phi=phi, seed=seed
    )


def single_photon_trace(
    n_bins: int, photon_bin: int, *, sign: int = 1, phi: float = 0.0, epsilon: float = 0.0
) -> ArrivalTrace:
    """Trace with exactly one shared photon in the given 1-based bin."""
    if not 1 <= photon_bin <= n_bins:
        raise ValueError(f"photon_bin {photon_bin} outside 1..{n_bins}")
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign}")
    kinds = np.zeros(n_bins, dtype=np.int8)
    signs = np.zeros(n_bins, dtype=np.int8)
    kinds[photon_bin - 1] = BinKind.SHARED
    signs[photon_bin - 1] = sign
    return ArrivalTrace(
        kinds=kinds, signs=signs, epsilon=epsilon, gamma=1.0, phi=phi, seed=None
    )


@dataclass
class BellLedger:
    """Append-only log of consumed entangled pairs.

    Each entry records one parity-check outcome: False keeps the pair in
    the even-parity state, True marks the odd-parity flip caused by a
    stored photon.  ``consumed`` equals the number of entries and never
    decreases.
    """

    outcomes: list[bool] = field(default_factory=list)

    @property
    def consumed(self) -> int:
        return len(self.outcomes)

    def record(self, flipped: bool) -> None:
        self.outcomes.append(bool(flipped))

    def flipped_positions(self) -> tuple[int, ...]:
        """1-based positions of odd-parity outcomes."""
        return tuple(i + 1 for i, f in enumerate(self.outcomes) if f)


def unary_run(trace: ArrivalTrace) -> tuple[tuple[int, ...], BellLedger]:
    """One parity check per bin: M consumed pairs, flips mark photons.

    Returns the located (1-based) non-vacuum bins and the ledger; the
    k-th ledger outcome corresponds to bin k, so the flip positions are
    exactly the occupied bins.
    """
    occupied = trace.kinds != BinKind.VACUUM
    ledger = BellLedger(outcomes=occupied.tolist())
    return trace.occupied_bins(), ledger


def binary_search_run(trace: ArrivalTrace) -> tuple[int, BellLedger]:
    """Locate the single occupied bin by halving parity checks.

    The block is padded with virtual vacuum bins up to the next power of
    two, so every search performs exactly ceil(log2 M) parity checks
    regardless of where the photon sits (checks against known-empty
    virtual bins are physically checks on idle memory qubits).  Each
    round checks the left half of the current block: an odd-parity flip
    puts the photon there, otherwise it is in the right half.

    Raises :class:`SearchPreconditionError` unless the trace holds
    exactly one shared photon and no multiphoton bin.
    """
    n_vac, n_shared, n_multi = trace.counts()
    if n_shared != 1 or n_multi != 0:
        raise SearchPreconditionError(
            "search precondition violated: need exactly one shared photon and "
            f"no multiphoton bins, got {n_shared} shared / {n_multi} multi"
        )
    target = trace.occupied_bins()[0]
    padded = 1 << max(trace.n_bins - 1, 0).bit_length() if trace.n_bins > 1 else 1

    ledger = BellLedger()
    lo, hi = 1, padded
    while lo < hi:
        mid = (lo + hi) // 2
        in_left = target <= mid
        ledger.record(in_left)
        if in_left:
            hi = mid
        else:
            lo = mid + 1
    return lo, ledger


@dataclass(frozen=True)
class LogicalMemory:
    """Binary-encoded arrival record held in the two station registers.

    Registers are little-endian bit strings of width ceil(log2(M+1)):
    qubit k stores bit k of the 1-based arrival bin index, so the fifth
    bin is written as 1010...0 and the all-zeros word is reserved for
    vacuum.  A shared photon leaves the same codeword entangled across
    the two registers (it occupies A in one branch and B in the other);
    symbolically both registers carry the codeword.  Any multiphoton
    event depolarises the memory.
    """

    register_a: str
    register_b: str
    depolarized: bool = False
    sign: int | None = None
    phase: float | None = None

    @property
    def width(self) -> int:
        return len(self.register_a)

    @property
    def stored_bin(self) -> int | None:
        """Decoded 1-based arrival bin, or None for vacuum/depolarised."""
        if self.depolarized:
            return None
        value = sum(1 << k for k, bit in enumerate(self.register_a) if bit == "1")
        return value or None


def codeword(bin_index: int, width: int) -> str:
    """Little-endian binary codeword of a 1-based bin index."""
    if bin_index < 0 or bin_index >= (1 << width):
        raise ValueError(f"bin index {bin_index} does not fit in width {width}")
    return "".join("1" if (bin_index >> k) & 1 else "0" for k in range(width))


def binary_encode(trace: ArrivalTrace) -> LogicalMemory:
    """Write the arrival bin's codeword into log-width registers.

    Vacuum bins leave the registers untouched.  Each shared photon XORs
    its bin's codeword into the register (the controlled-NOT cascade
    adds codewords bitwise), so a single photon in bin m leaves exactly
    the codeword of m.  More than one photon in the block, or any
    multiphoton bin, marks the memory depolarised.
    """
    width = trace.n_bins.bit_length()  # ceil(log2(M+1))
    _, n_shared, n_multi = trace.counts()
    acc = 0
    sign = None
    phase = None
    for index in trace.occupied_bins():
        state = trace.bin(index)
        if state.kind == BinKind.SHARED:
            acc ^= index
            sign, phase = state.sign, state.phase
    depolarized = n_multi > 0 or n_shared > 1
    if depolarized:
        sign = phase = None
    word = codeword(acc, width)
    return LogicalMemory(
        register_a=word,
        register_b=word,
        depolarized=depolarized,
        sign=sign,
        phase=phase,
    )


# --- interference with a pre-shared photon ---------------------------------

#: Detector labels for the two output ports of each station's beam splitter.
_DETECTORS = ("A1", "A2", "B1", "B2")


@dataclass(frozen=True)
class GottesmanDistribution:
    """Exact coincidence statistics of the shared-photon interference.

    ``pattern_probs`` maps each unordered detector pair (including
    double clicks like ("A1", "A1")) to its unconditional probability;
    the distribution sums to one.  ``p_correlated`` and
    ``p_anticorrelated`` are conditioned on a two-station coincidence,
    whose unconditional weight ``p_coincidence`` is exactly 1/2.
    """

    pattern_probs: dict[tuple[str, str], float]
    p_coincidence: float
    p_correlated: float
    p_anticorrelated: float


def gottesman_probs(phi: float, delta: float, gamma: float) -> tuple[float, float]:
    """Published correlated/anticorrelated coincidence probabilities.

    Returned verbatim as printed in the source protocol:

        p_corr = (1 + Re[gamma e^{-i(phi - delta)}]) / 2
        p_anti = (1 - Re[gamma e^{-i(phi + delta)}]) / 2

    Note the two lines carry opposite sign conventions for the
    controllable phase delta, so they do not sum to one for general
    (phi, delta); :func:`gottesman_oracle` exposes the full normalised
    distribution under either convention and reproduces each line
    exactly under its own convention.
    """
    if not (0 <= gamma <= 1):
        raise ValueError(f"gamma must lie in [0, 1], got {gamma!r}")
    p_corr = 0.5 * (1.0 + gamma * math.cos(phi - delta))
    p_anti = 0.5 * (1.0 - gamma * math.cos(phi + delta))
    return p_corr, p_anti


def gottesman_oracle(
    phi: float, delta: float, gamma: float, *, ground_phase_sign: int = 1
) -> GottesmanDistribution:
    """Brute-force Fock enumeration of the coincidence experiment.

    Builds the four-mode two-photon input state — the single-photon
    sector of the stellar state (a (1 +/- gamma)/2 mixture of the two
    shared-photon signs) times the pre-shared ground photon
    (|0,1> + e^{i s delta} |1,0>)/sqrt(2) with s = ``ground_phase_sign``
    — applies a 50:50 beam splitter between the stellar and ground
    modes at each station, and enumerates every two-detector pattern.

    Correlated means both clicks on same-numbered ports (A1B1 or A2B2).
    The two printed probability lines of :func:`gottesman_probs` are
    each exact under one sign convention: the correlated line under
    s = -1, the anticorrelated line under s = +1.
    """
    if not (0 <= gamma <= 1):
        raise ValueError(f"gamma must lie in [0, 1], got {gamma!r}")
    if ground_phase_sign not in (1, -1):
        raise ValueError(f"ground_phase_sign must be +1 or -1, got {ground_phase_sign}")

    # modes: 0 = stellar@A, 1 = ground@A, 2 = stellar@B, 3 = ground@B
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    bs = np.zeros((4, 4))
    bs[0, 0] = bs[1, 0] = inv_sqrt2  # stellar@A -> (A1 + A2)/sqrt(2)
    bs[0, 1], bs[1, 1] = inv_sqrt2, -inv_sqrt2  # ground@A -> (A1 - A2)/sqrt(2)
    bs[2, 2] = bs[3, 2] = inv_sqrt2
    bs[2, 3], bs[3, 3] = inv_sqrt2, -inv_sqrt2

    ground = np.array(
        [0.0, np.exp(1j * ground_phase_sign * delta) * inv_sqrt2, 0.0, inv_sqrt2]
    )
    patterns: dict[tuple[str, str], float] = {}
    for sign, weight in ((1, (1.0 + gamma) / 2.0), (-1, (1.0 - gamma) / 2.0)):
        if weight == 0.0:
            continue
        stellar = np.array([inv_sqrt2, 0.0, sign * np.exp(1j * phi) * inv_sqrt2, 0.0])
        a = bs @ stellar
        b = bs @ ground
        for j in range(4):
            for k in range(j, 4):
                if j == k:
                    amp = math.sqrt(2.0) * a[j] * b[j]
                else:
                    amp = a[j] * b[k] + a[k] * b[j]
                key = (_DETECTORS[j], _DETECTORS[k])
                patterns[key] = patterns.get(key, 0.0) + weight * float(abs(amp) ** 2)

    corr = patterns.get(("A1", "B1"), 0.0) + patterns.get(("A2", "B2"), 0.0)
    anti = patterns.get(("A1", "B2"), 0.0) + patterns.get(("A2", "B1"), 0.0)
    coincidence = corr + anti
    return GottesmanDistribution(
        pattern_probs=patterns,
        p_coincidence=coincidence,
        p_correlated=corr / coincidence,
        p_anticorrelated=anti / coincidence,
    )


# --- closed-form error and resource formulas -------------------------------


def multiphoton_fidelity(n_bins: int, epsilon: float) -> float:
    """Post-selected single-photon weight of a decoded block.

    After decoding a block of ``n_bins`` thermal bins and post-selecting
    on "not vacuum", the stored state is the true single-photon state
    with weight

        c = M eps / ((1+eps)^M - 1) / (1+eps),

    the rest being depolarised multiphoton contamination.  Strictly
    decreasing in both arguments; c -> 1/(e - 1) as eps -> 0 at
    M eps = 1.  Evaluated with expm1/log1p so the small-epsilon plateau
    is computed without cancellation.
    """
    if n_bins < 1:
        raise ValueError(f"n_bins must be >= 1, got {n_bins}")
    if not (epsilon > 0):
        raise ValueError(f"epsilon must be > 0, got {epsilon!r}")
    exponent = n_bins * math.log1p(epsilon)
    if exponent > 500.0:
        # (1+eps)^M dwarfs 1; stay in log space to avoid overflow
        log_c = math.log(n_bins) + math.log(epsilon) - exponent - math.log1p(epsilon)
        return math.exp(log_c) if log_c > -745.0 else 0.0
    return n_bins * epsilon / (math.expm1(exponent) * (1.0 + epsilon))


def trinomial_decode(n_bins: int, epsilon: float) -> tuple[float, float, float]:
    """(p_vacuum, p_single, p_multi) of a decoded block of thermal bins.

    p_vac = (1+eps)^-M, p_single = M (1+eps)^-(M-1) eps (1+eps)^-2, and
    p_multi is the exact remainder, so the triple sums to one exactly.
    """
    if n_bins < 1:
        raise ValueError(f"n_bins must be >= 1, got {n_bins}")
    if not (epsilon >= 0):
        raise ValueError(f"epsilon must be >= 0, got {epsilon!r}")
    log1p_eps = math.log1p(epsilon)
    p_vac = math.exp(-n_bins * log1p_eps)
    p_single = n_bins * epsilon * math.exp(-(n_bins + 1) * log1p_eps)
    return p_vac, p_single, 1.0 - p_vac - p_single


def consumption_rate(
    delta_nu: float, epsilon: float, *, multiplex_overhead: float = 1.0
) -> float:
    """Entanglement consumption rate (pairs/s) of binary encoding.

    Photons arrive at delta_nu * epsilon per second and each costs
    log2(1/epsilon) parity checks, giving delta_nu * eps * log2(1/eps).
    ``multiplex_overhead`` optionally scales the rate for
    multiphoton-mitigation multiplexing (roughly 10x when enabled); it
    defaults to no overhead.
    """
    if not (delta_nu > 0):
        raise ValueError(f"delta_nu must be > 0, got {delta_nu!r}")
    if not (0 < epsilon < 1):
        raise ValueError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    if multiplex_overhead < 1.0:
        raise ValueError(f"multiplex_overhead must be >= 1, got {multiplex_overhead!r}")
    return delta_nu * epsilon * math.log2(1.0 / epsilon) * multiplex_overhead


def memory_requirements(n_bins: int, scheme: str, n_bands: int = 1) -> int:
    """Memory qubits per station for a given encoding scheme.

    unary: one qubit per bin.  binary: ceil(log2(M+1)) qubits (the
    all-zeros word is reserved for vacuum, so M = 8 needs width 4).
    broadband-binary: one binary register per frequency band.
    """
    if n_bins < 1 or n_bands < 1:
        raise ValueError("n_bins and n_bands must be >= 1")
    if scheme == "unary":
        return n_bins
    if scheme == "binary":
        return n_bins.bit_length()
    if scheme == "broadband-binary":
        return n_bands * n_bins.bit_length()
    raise ValueError(f"unknown scheme {scheme!r}")
