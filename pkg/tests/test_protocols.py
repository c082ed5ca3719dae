import math

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from qvlbi.protocols import (
    BellLedger,
    BinKind,
    SearchPreconditionError,
    binary_encode,
    binary_search_run,
    codeword,
    consumption_rate,
    gottesman_oracle,
    gottesman_probs,
    memory_requirements,
    multiphoton_fidelity,
    sample_arrivals,
    single_photon_trace,
    trinomial_decode,
    unary_run,
)
from qvlbi.rng import rng_for


# --- arrival sampling --------------------------------------------------------


def test_zero_epsilon_gives_all_vacuum():
    trace = sample_arrivals(0.0, 500, 0.7, 0.1, seed=3)
    assert trace.counts() == (500, 0, 0)
    assert trace.occupied_bins() == ()


def test_thermal_frequencies_at_unit_epsilon():
    n = 10**6
    trace = sample_arrivals(1.0, n, 0.5, 0.0, seed=11)
    n_vac, n_shared, n_multi = trace.counts()
    # Bose-Einstein at eps=1: p = (1/2, 1/4, 1/4); allow 3 sigma binomial
    for count, p in ((n_vac, 0.5), (n_shared, 0.25), (n_multi, 0.25)):
        assert abs(count - n * p) < 3 * math.sqrt(n * p * (1 - p))


def test_full_visibility_has_no_antisymmetric_photons():
    trace = sample_arrivals(0.5, 20000, 1.0, 0.0, seed=5)
    assert not np.any(trace.signs == -1)
    shared = trace.kinds == BinKind.SHARED
    assert np.all(trace.signs[shared] == 1)


def test_sampling_is_reproducible():
    a = sample_arrivals(0.3, 1000, 0.6, 0.2, seed=9)
    b = sample_arrivals(0.3, 1000, 0.6, 0.2, seed=9)
    assert np.array_equal(a.kinds, b.kinds)
    assert np.array_equal(a.signs, b.signs)
    c = sample_arrivals(0.3, 1000, 0.6, 0.2, seed=10)
    assert not np.array_equal(a.kinds, c.kinds)


def test_bin_accessor_is_one_based():
    trace = single_photon_trace(6, 5, phi=0.4)
    assert trace.bin(5).kind == BinKind.SHARED
    assert trace.bin(5).phase == 0.4
    assert trace.bin(1).kind == BinKind.VACUUM
    with pytest.raises(IndexError):
        trace.bin(0)
    with pytest.raises(IndexError):
        trace.bin(7)


# --- unary protocol ----------------------------------------------------------


def test_unary_flags_the_fifth_bin_of_six():
    located, ledger = unary_run(single_photon_trace(6, 5))
    assert located == (5,)
    assert ledger.consumed == 6
    assert ledger.outcomes == [False, False, False, False, True, False]
    assert ledger.flipped_positions() == (5,)


def test_unary_on_vacuum_consumes_without_flips():
    located, ledger = unary_run(sample_arrivals(0.0, 17, 1.0, 0.0, seed=1))
    assert located == ()
    assert ledger.consumed == 17
    assert not any(ledger.outcomes)


def test_unary_flips_exactly_the_occupied_bins():
    for seed in (1, 2, 3):
        trace = sample_arrivals(0.05, 400, 0.8, 0.0, seed=seed)
        located, ledger = unary_run(trace)
        assert located == trace.occupied_bins()
        assert ledger.flipped_positions() == trace.occupied_bins()


def test_ledger_is_append_only():
    ledger = BellLedger()
    counts = []
    for flag in (True, False, True):
        ledger.record(flag)
        counts.append(ledger.consumed)
    assert counts == [1, 2, 3]


# --- binary search -----------------------------------------------------------


def test_binary_search_published_example():
    located, ledger = binary_search_run(single_photon_trace(4, 2))
    assert located == 2
    assert ledger.consumed == 2


def test_binary_search_pair_count_is_log2():
    _, ledger = binary_search_run(single_photon_trace(8, 6))
    assert ledger.consumed == 3
    _, ledger = binary_search_run(single_photon_trace(1, 1))
    assert ledger.consumed == 0


def test_binary_search_exhaustive_small_blocks():
    for n_bins in range(1, 18):
        expected = (n_bins - 1).bit_length() if n_bins > 1 else 0
        for position in range(1, n_bins + 1):
            located, ledger = binary_search_run(single_photon_trace(n_bins, position))
            assert located == position
            assert ledger.consumed == expected


def test_binary_search_large_block_random_positions():
    rng = rng_for(123)
    for _ in range(50):
        position = int(rng.integers(1, 1025))
        located, ledger = binary_search_run(single_photon_trace(1024, position))
        assert located == position
        assert ledger.consumed == 10


def test_binary_search_precondition_violations():
    with pytest.raises(SearchPreconditionError):
        binary_search_run(sample_arrivals(0.0, 8, 1.0, 0.0, seed=1))
    two = single_photon_trace(8, 3)
    kinds = two.kinds.copy()
    signs = two.signs.copy()
    kinds[5] = BinKind.SHARED
    signs[5] = 1
    from qvlbi.protocols import ArrivalTrace

    with pytest.raises(SearchPreconditionError):
        binary_search_run(
            ArrivalTrace(kinds=kinds, signs=signs, epsilon=0.0, gamma=1.0, phi=0.0)
        )
    kinds[5] = BinKind.MULTI
    signs[5] = 0
    with pytest.raises(SearchPreconditionError):
        binary_search_run(
            ArrivalTrace(kinds=kinds, signs=signs, epsilon=0.0, gamma=1.0, phi=0.0)
        )


# --- binary encoding ---------------------------------------------------------


def test_codeword_is_little_endian():
    assert codeword(5, 3) == "101"
    assert codeword(5, 8) == "10100000"
    assert codeword(10, 4) == "0101"
    assert codeword(0, 3) == "000"


def test_binary_encode_fifth_bin():
    memory = binary_encode(single_photon_trace(12, 5, sign=-1, phi=0.9))
    assert memory.width == 4  # ceil(log2(13))
    assert memory.register_a.startswith("101")
    assert memory.register_a == memory.register_b == "1010"
    assert memory.stored_bin == 5
    assert not memory.depolarized
    assert memory.sign == -1
    assert memory.phase == 0.9


def test_binary_encode_vacuum_leaves_registers_zero():
    memory = binary_encode(sample_arrivals(0.0, 12, 1.0, 0.0, seed=2))
    assert memory.register_a == "0000"
    assert memory.stored_bin is None
    assert not memory.depolarized


def test_binary_encode_two_photons_depolarises():
    base = single_photon_trace(8, 3)
    kinds = base.kinds.copy()
    signs = base.signs.copy()
    kinds[6] = BinKind.SHARED
    signs[6] = 1
    from qvlbi.protocols import ArrivalTrace

    memory = binary_encode(
        ArrivalTrace(kinds=kinds, signs=signs, epsilon=0.0, gamma=1.0, phi=0.0)
    )
    assert memory.depolarized
    assert memory.stored_bin is None
    assert memory.sign is None


def test_binary_encode_multiphoton_bin_depolarises():
    base = single_photon_trace(8, 3)
    kinds = base.kinds.copy()
    kinds[2] = BinKind.MULTI
    from qvlbi.protocols import ArrivalTrace

    memory = binary_encode(
        ArrivalTrace(kinds=kinds, signs=np.zeros(8, np.int8), epsilon=0.0, gamma=1.0, phi=0.0)
    )
    assert memory.depolarized


# --- coincidence interference ------------------------------------------------


def test_gottesman_probability_examples():
    assert gottesman_probs(0.0, 0.0, 1.0) == (1.0, 0.0)
    assert gottesman_probs(0.8, 1.9, 0.0) == (0.5, 0.5)
    corr, anti = gottesman_probs(math.pi / 3, math.pi / 6, 0.8)
    assert corr == pytest.approx(0.846410161514, abs=1e-12)
    assert anti == pytest.approx(0.5, abs=1e-12)


def test_oracle_distribution_is_normalised():
    dist = gottesman_oracle(0.7, 1.1, 0.6)
    assert sum(dist.pattern_probs.values()) == pytest.approx(1.0, abs=1e-12)
    assert dist.p_coincidence == pytest.approx(0.5, abs=1e-12)
    assert dist.p_correlated + dist.p_anticorrelated == pytest.approx(1.0, abs=1e-12)


def test_oracle_matches_each_published_line_under_its_convention():
    for phi in (0.0, 0.9, 2.5, 5.1):
        for delta in (0.0, 0.4, 1.8, 4.4):
            for gamma in (0.0, 0.5, 1.0):
                corr, anti = gottesman_probs(phi, delta, gamma)
                minus = gottesman_oracle(phi, delta, gamma, ground_phase_sign=-1)
                plus = gottesman_oracle(phi, delta, gamma, ground_phase_sign=1)
                assert minus.p_correlated == pytest.approx(corr, abs=1e-12)
                assert plus.p_anticorrelated == pytest.approx(anti, abs=1e-12)


def test_oracle_anticorrelated_fringe_at_matched_phases():
    # phi = delta with full visibility: anticorrelated weight is (1 - cos 2 delta)/2
    for delta in (0.3, 1.0, 2.2):
        dist = gottesman_oracle(delta, delta, 1.0)
        assert dist.p_anticorrelated == pytest.approx(
            0.5 * (1 - math.cos(2 * delta)), abs=1e-12
        )


def test_oracle_aligned_phases_are_fully_correlated():
    dist = gottesman_oracle(0.0, 0.0, 1.0)
    assert dist.p_correlated == pytest.approx(1.0, abs=1e-15)
    assert dist.p_anticorrelated == pytest.approx(0.0, abs=1e-15)


# --- closed-form resource/error formulas -------------------------------------


def test_single_bin_fidelity_reduces_algebraically():
    for eps in (1e-4, 0.01, 0.3):
        assert multiphoton_fidelity(1, eps) == pytest.approx(1 / (1 + eps), rel=1e-12)


def test_fidelity_plateaus():
    assert multiphoton_fidelity(10**7, 1e-7) == pytest.approx(
        1 / (math.e - 1), abs=1e-4
    )
    assert multiphoton_fidelity(10**6, 1e-7) == pytest.approx(
        0.1 / math.expm1(0.1), abs=1e-4
    )


@given(st.integers(min_value=1, max_value=10**6), st.floats(min_value=1e-9, max_value=0.5))
@settings(max_examples=60)
def test_fidelity_bounds_and_monotonicity(n_bins, eps):
    # keep the block mean photon number where c is representable in floats
    assume((n_bins + 1) * math.log1p(1.5 * eps) < 600)
    c = multiphoton_fidelity(n_bins, eps)
    assert 0.0 < c <= 1.0
    assert multiphoton_fidelity(n_bins + 1, eps) < c
    assert multiphoton_fidelity(n_bins, eps * 1.5) < c


def test_trinomial_single_bin_case():
    eps = 0.2
    p_vac, p_single, p_multi = trinomial_decode(1, eps)
    assert p_vac == pytest.approx(1 / (1 + eps), rel=1e-12)
    assert p_single == pytest.approx(eps / (1 + eps) ** 2, rel=1e-12)
    assert p_multi == pytest.approx(1 - p_vac - p_single, abs=1e-18)


def test_trinomial_sums_to_one_exactly():
    for n_bins, eps in ((1, 0.5), (100, 1e-3), (10**4, 1e-4), (7, 0.0)):
        triple = trinomial_decode(n_bins, eps)
        assert sum(triple) == 1.0


def test_trinomial_vacuum_limit():
    assert trinomial_decode(50, 0.0) == (1.0, 0.0, 0.0)


def test_trinomial_against_sampled_blocks():
    n_bins, eps, trials = 50, 2e-3, 20000
    p_vac, p_single, p_multi = trinomial_decode(n_bins, eps)
    tallies = {"vac": 0, "single": 0, "multi": 0}
    for shot in range(trials):
        trace = sample_arrivals(eps, n_bins, 1.0, 0.0, seed=shot)
        n_v, n_s, n_m = trace.counts()
        if n_v == n_bins:
            tallies["vac"] += 1
        elif n_s == 1 and n_m == 0:
            tallies["single"] += 1
        else:
            tallies["multi"] += 1
    for key, p in (("vac", p_vac), ("single", p_single), ("multi", p_multi)):
        sigma = math.sqrt(trials * p * (1 - p))
        assert abs(tallies[key] - trials * p) <= 3 * sigma + 1


def test_consumption_rate_published_rows():
    assert consumption_rate(10e9, 7e-7) == pytest.approx(2e5, rel=1.0)
    assert consumption_rate(500e9, 1e-12) == pytest.approx(19.93, rel=1e-3)
    assert consumption_rate(500e9, 1e-12) == pytest.approx(20.0, rel=0.15)
    assert consumption_rate(110e9, 1e-10) == pytest.approx(365.4, rel=1e-3)
    assert consumption_rate(110e9, 1e-10) == pytest.approx(360.0, rel=0.15)


def test_consumption_rate_multiplex_overhead():
    base = consumption_rate(10e9, 1e-7)
    assert consumption_rate(10e9, 1e-7, multiplex_overhead=10.0) == pytest.approx(
        10 * base, rel=1e-12
    )


def test_consumption_rate_rejects_bad_epsilon():
    with pytest.raises(ValueError):
        consumption_rate(10e9, 1.0)
    with pytest.raises(ValueError):
        consumption_rate(10e9, 0.0)
    with pytest.raises(ValueError):
        consumption_rate(-1.0, 0.5)


def test_memory_requirements():
    assert memory_requirements(10**7, "binary") == 24
    assert memory_requirements(8, "unary") == 8
    assert memory_requirements(8, "broadband-binary", n_bands=100) == 400
    with pytest.raises(ValueError):
        memory_requirements(8, "ternary")
