import json
import math

import pytest

from qvlbi.cli import dispatch


def run(capsys, *argv):
    code = dispatch(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


def test_photometry_json(capsys):
    payload = run_json(
        capsys, "photometry", "--mag", "9", "--wavelength-nm", "760", "--dlambda-nm", "1"
    )
    assert payload["photon_rate"] == pytest.approx(181106, rel=0.02)
    assert payload["epsilon"] == pytest.approx(3.5e-7, rel=0.10)
    assert set(payload) == {"flux_nu", "photon_rate", "coherence_time_s", "epsilon"}


def test_photometry_table(capsys):
    code, out, _ = run(capsys, "photometry", "--table", "appendix")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("m_ab,")
    assert len(lines) == 9  # header + 8 rows
    assert all(line.endswith("true,true") for line in lines[1:])


def test_state_reports_both_representations(capsys):
    payload = run_json(capsys, "state", "--epsilon", "0.01", "--gamma", "0.5")
    assert payload["weak_state"]["p_plus"] == pytest.approx(0.0075)
    sigma = payload["covariance"]["sigma"]
    assert sigma[0][0] == pytest.approx(1.01)
    assert sigma[0][2] == pytest.approx(0.005)


def test_qfi_zero_visibility_has_no_phase_information(capsys):
    payload = run_json(
        capsys, "qfi", "--epsilon", "1e-7", "--gamma", "0", "--phi", "0"
    )
    assert payload["j_phi"] == 0.0
    assert payload["crb_phi"] == "inf"


def test_qfi_sweep_emits_csv(capsys):
    code, out, _ = run(
        capsys, "qfi", "--epsilon", "1e-3", "--gamma", "0.5", "--sweep",
        "--sweep-points", "5",
    )
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "gamma,j_phi,j_gamma,crb_phi,crb_gamma"
    assert len(lines) == 6


def test_protocol_binary_search_published_example(capsys):
    payload = run_json(
        capsys, "protocol", "binary-search", "--bins", "4", "--photon-bin", "2"
    )
    assert payload["consumed"] == 2
    assert payload["located"] == 2


def test_protocol_unary_accounting(capsys):
    payload = run_json(
        capsys, "protocol", "unary", "--bins", "32", "--shots", "3",
        "--epsilon", "0.05", "--seed", "1",
    )
    assert all(shot["consumed"] == 32 for shot in payload["shots"])


def test_protocol_gottesman_exposes_oracle(capsys):
    payload = run_json(
        capsys, "protocol", "gottesman", "--phi", "0", "--delta", "0", "--gamma", "1"
    )
    assert payload["correlated"] == 1.0
    assert payload["anticorrelated"] == 0.0
    assert payload["oracle"]["plus_convention"]["p_coincidence"] == pytest.approx(0.5)


def test_protocol_binary_reports_trinomial_prediction(capsys):
    payload = run_json(
        capsys, "protocol", "binary", "--bins", "64", "--shots", "4",
        "--epsilon", "0.01", "--seed", "3",
    )
    assert payload["register_width"] == 7
    assert payload["predicted"]["vacuum"] == pytest.approx(
        (1 / 1.01) ** 64, rel=1e-9
    )
    assert payload["tallies"]["vacuum"] + payload["tallies"]["single"] + payload[
        "tallies"
    ]["multi"] == 4


def test_consumption_table_flags_two_rows(capsys):
    code, out, _ = run(capsys, "consumption", "--table")
    assert code == 0
    lines = out.strip().splitlines()
    flagged = [line for line in lines[1:] if line.endswith(",true")]
    assert len(flagged) == 2
    assert any(line.startswith("555,") and ",1e-11," in line for line in flagged)
    assert any(line.startswith("760,") and ",1e-10," in line for line in flagged)


def test_consumption_single_point(capsys):
    payload = run_json(capsys, "consumption", "--dnu-hz", "5e11", "--epsilon", "1e-12")
    assert payload["rate_pairs_per_s"] == pytest.approx(19.93, rel=1e-3)


def test_geodesy_crb(capsys):
    payload = run_json(
        capsys, "geodesy", "crb", "--wavelength-nm", "1550", "--theta-deg", "90",
        "--photons", "1000000",
    )
    assert payload["delta_b_m"] == pytest.approx(2.4669e-10, rel=1e-4)


def test_geodesy_mc(capsys):
    payload = run_json(
        capsys, "geodesy", "mc", "--photons", "2000", "--shots", "24", "--seed", "5"
    )
    assert 0.5 < payload["variance_ratio"] < 2.0


def test_stirap_summary_and_csv(capsys):
    payload = run_json(capsys, "stirap", "--summary")
    assert payload["final_transfer"] >= 0.999
    code, out, _ = run(capsys, "stirap", "--stride", "2000")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "t_in_inv_g,p_photon,p_excited,p_stored"
    assert len(lines) == 12  # header + ceil(20001/2000)


def test_cavity_numbers(capsys):
    payload = run_json(capsys, "cavity")
    assert payload["cooperativity"] == pytest.approx(1500, rel=0.05)
    assert payload["kappa_over_2pi_mhz"] == pytest.approx(20, rel=0.10)
    assert payload["gamma_over_kappa"] == pytest.approx(0.3, rel=0.10)


def test_targets_table(capsys):
    code, out, _ = run(capsys, "targets", "--table", "exoplanets")
    assert code == 0
    lines = out.strip().splitlines()
    assert len(lines) == 6
    assert all(line.endswith("true") for line in lines[1:])


def test_precession_outputs(capsys):
    payload = run_json(
        capsys, "precession", "--mass-msun", "1", "--semi-major-au", "0.387",
        "--eccentricity", "0.2056",
    )
    assert payload["schwarzschild_rad_per_orbit"] == pytest.approx(5.02e-7, rel=5e-3)
    assert payload["ratio"] == "inf"


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as excinfo:
        dispatch(["no-such-command"])
    assert excinfo.value.code == 2
    with pytest.raises(SystemExit) as excinfo:
        dispatch([])
    assert excinfo.value.code == 2


def test_validation_error_exits_1(capsys):
    code, out, err = run(
        capsys, "photometry", "--mag", "9", "--dlambda-nm", "1", "--dnu-ghz", "10"
    )
    assert code == 1
    assert "error:" in err
    code, _, err = run(capsys, "protocol", "binary-search", "--bins", "4", "--photon-bin", "9")
    assert code == 1


def test_version_exits_0(capsys):
    with pytest.raises(SystemExit) as excinfo:
        dispatch(["--version"])
    assert excinfo.value.code == 0


def test_identical_invocations_are_byte_identical(capsys):
    argv = ["protocol", "unary", "--bins", "16", "--shots", "5", "--epsilon", "0.1",
            "--seed", "7"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second

    argv = ["geodesy", "mc", "--photons", "1000", "--shots", "8", "--seed", "3"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second


def test_seed_changes_sampled_output(capsys):
    base = ["protocol", "unary", "--bins", "16", "--shots", "5", "--epsilon", "0.1"]
    _, with_seed_1, _ = run(capsys, *base, "--seed", "1")
    _, with_seed_2, _ = run(capsys, *base, "--seed", "2")
    assert with_seed_1 != with_seed_2


def test_env_seed_overrides_default(capsys, monkeypatch):
    base = ["protocol", "unary", "--bins", "16", "--shots", "5", "--epsilon", "0.1"]
    monkeypatch.setenv("QVLBI_SEED", "123")
    _, from_env, _ = run(capsys, *base)
    monkeypatch.delenv("QVLBI_SEED")
    _, explicit, _ = run(capsys, *base, "--seed", "123")
    assert json.loads(from_env)["seed"] == 123
    assert from_env == explicit


def test_config_file_preloads_flags(capsys, tmp_path):
    config = tmp_path / "run.cfg"
    config.write_text("epsilon=0.05\nbins=32\nseed=11\n", encoding="utf-8")
    _, from_config, _ = run(capsys, "protocol", "unary", "--config", str(config))
    _, explicit, _ = run(
        capsys, "protocol", "unary", "--epsilon", "0.05", "--bins", "32", "--seed", "11"
    )
    assert from_config == explicit
    # explicit flags override config values
    _, overridden, _ = run(
        capsys, "protocol", "unary", "--config", str(config), "--bins", "64"
    )
    assert json.loads(overridden)["bins"] == 64


def test_reproduce_writes_manifest(capsys, tmp_path):
    code, out, _ = run(
        capsys, "reproduce", "--table", "consumption", "--table", "exoplanets",
        "--outdir", str(tmp_path),
    )
    assert code == 0
    manifest = json.loads((tmp_path / "manifest.json").read_text())
    assert manifest["all_pass"] is True
    assert {a["name"] for a in manifest["artifacts"]} == {"consumption", "exoplanets"}
    assert (tmp_path / "consumption_rates.csv").exists()
    assert (tmp_path / "exoplanet_separations.csv").exists()
    for artifact in manifest["artifacts"]:
        assert artifact["reference"]
        assert artifact["status"] == "pass"


def test_reproduce_all_is_deterministic(capsys, tmp_path):
    code, _, _ = run(capsys, "reproduce", "--all", "--outdir", str(tmp_path / "a"))
    assert code == 0
    code, _, _ = run(capsys, "reproduce", "--all", "--outdir", str(tmp_path / "b"))
    assert code == 0
    names = sorted(p.name for p in (tmp_path / "a").iterdir())
    assert names == sorted(p.name for p in (tmp_path / "b").iterdir())
    for name in names:
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_reproduce_requires_a_selection(capsys):
    code, _, err = run(capsys, "reproduce")
    assert code == 1
    assert "select artifacts" in err


def test_output_to_file(capsys, tmp_path):
    out_path = tmp_path / "result.json"
    code, out, _ = run(
        capsys, "cavity", "--out", str(out_path)
    )
    assert code == 0
    assert out == ""
    assert json.loads(out_path.read_text())["cooperativity"] == pytest.approx(1471.6, rel=1e-3)
