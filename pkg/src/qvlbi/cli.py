"""Command-line front end.

One subcommand per subsystem, JSON on stdout by default, CSV for
tabular and trajectory artifacts.  All stochastic subcommands take a
``--seed`` whose default is the fixed package seed (42), overridable
with the QVLBI_SEED environment variable; identical argv plus seed
always produce byte-identical output.  A plain ``key=value`` config
file can preload flags via ``--config``; explicit command-line flags
win.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 tolerance
failure inside ``reproduce``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, astro, cavity, estimation, geodesy, photometry, protocols, reference
from .constants import ASTRONOMICAL_UNIT, DEFAULT_SEED, SOLAR_MASS, TWO_PI
from .rng import derive_seed, rng_for
from .source_model import SourceParams, covariance, weak_state

__all__ = ["main", "dispatch", "build_parser"]


def default_seed() -> int:
    env = os.environ.get("QVLBI_SEED")
    return int(env) if env else DEFAULT_SEED


# --- deterministic serialization --------------------------------------------


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        # 12 significant digits, round-tripped so json prints the short form
        return float(f"{x:.12g}")
    return obj


def to_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2) + "\n"


def _cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        x = float(value)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return f"{x:.12g}"
    return str(value)


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    return buf.getvalue()


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# --- subcommand handlers -----------------------------------------------------


def cmd_photometry(args) -> int:
    if args.table:
        rows = reference.photon_budget_table()
        text = to_csv(
            (
                "m_ab",
                "wavelength_nm",
                "delta_lambda_nm",
                "delta_nu_hz",
                "photon_rate_per_s",
                "coherence_time_s",
                "epsilon_star",
                "epsilon_planet",
                "published_rate",
                "published_epsilon",
                "rate_ok",
                "epsilon_ok",
            ),
            [
                (
                    r.m_ab,
                    r.wavelength * 1e9,
                    r.delta_lambda * 1e9,
                    r.delta_nu,
                    r.photon_rate,
                    r.coherence_time,
                    r.epsilon_star,
                    r.epsilon_planet,
                    r.published_rate,
                    r.published_epsilon,
                    r.rate_ok,
                    r.epsilon_ok,
                )
                for r in rows
            ],
        )
        _emit(text, args.out)
        return 0
    if args.mag is None:
        raise ValueError("--mag is required unless --table is given")
    if (args.dlambda_nm is None) == (args.dnu_ghz is None):
        raise ValueError("give exactly one of --dlambda-nm or --dnu-ghz")
    spec = photometry.PhotometrySpec(
        m_ab=args.mag,
        wavelength=args.wavelength_nm * 1e-9,
        area=args.area_m2,
        delta_lambda=None if args.dlambda_nm is None else args.dlambda_nm * 1e-9,
        delta_nu=None if args.dnu_ghz is None else args.dnu_ghz * 1e9,
    )
    result = photometry.analyze(spec)
    _emit(
        to_json(
            {
                "flux_nu": result.flux_nu,
                "photon_rate": result.photon_rate,
                "coherence_time_s": result.coherence_time,
                "epsilon": result.epsilon,
            }
        ),
        args.out,
    )
    return 0


def cmd_state(args) -> int:
    params = SourceParams(epsilon=args.epsilon, gamma=args.gamma, phi=args.phi)
    cov = covariance(params)
    payload = {
        "epsilon": params.epsilon,
        "gamma": params.gamma,
        "phi": params.phi,
        "covariance": {
            "sigma": cov.sigma,
            "mean": cov.mean,
            "symplectic_eigenvalues": cov.symplectic_spectrum,
            "mean_photon_number": cov.mean_photon_number,
        },
    }
    if params.epsilon <= 1.0:
        state = weak_state(params, allow_large_epsilon=True)
        payload["weak_state"] = {
            "p_vac": state.p_vac,
            "p_plus": state.p_plus,
            "p_minus": state.p_minus,
            "phi": state.phi,
        }
    else:
        payload["weak_state"] = None
    _emit(to_json(payload), args.out)
    return 0


def cmd_qfi(args) -> int:
    params = SourceParams(epsilon=args.epsilon, gamma=args.gamma, phi=args.phi)
    if args.sweep:
        gammas = np.linspace(0.0, 0.99, args.sweep_points)
        rows = []
        for g in gammas:
            q = estimation.qfi_matrix(SourceParams(args.epsilon, float(g), args.phi))
            bound = estimation.crb(q, args.n_copies)
            rows.append((g, q.j_phi, q.j_gamma, bound.variances[0], bound.variances[1]))
        _emit(to_csv(("gamma", "j_phi", "j_gamma", "crb_phi", "crb_gamma"), rows), args.out)
        return 0
    q = estimation.qfi_matrix(params)
    bound = estimation.crb(q, args.n_copies)
    _emit(
        to_json(
            {
                "j_phi": q.j_phi,
                "j_gamma": q.j_gamma,
                "j_cross": q.j_cross,
                "gamma_divergent": q.gamma_divergent,
                "n_copies": args.n_copies,
                "crb_phi": bound.variances[0],
                "crb_gamma": bound.variances[1],
            }
        ),
        args.out,
    )
    return 0


def _distribution_payload(dist: protocols.GottesmanDistribution) -> dict:
    return {
        "patterns": {f"{a}+{b}": p for (a, b), p in sorted(dist.pattern_probs.items())},
        "p_coincidence": dist.p_coincidence,
        "p_correlated": dist.p_correlated,
        "p_anticorrelated": dist.p_anticorrelated,
    }


def cmd_protocol(args) -> int:
    if args.scheme == "gottesman":
        corr, anti = protocols.gottesman_probs(args.phi, args.delta, args.gamma)
        payload = {
            "phi": args.phi,
            "delta": args.delta,
            "gamma": args.gamma,
            "correlated": corr,
            "anticorrelated": anti,
            "oracle": {
                "plus_convention": _distribution_payload(
                    protocols.gottesman_oracle(args.phi, args.delta, args.gamma)
                ),
                "minus_convention": _distribution_payload(
                    protocols.gottesman_oracle(
                        args.phi, args.delta, args.gamma, ground_phase_sign=-1
                    )
                ),
            },
        }
        _emit(to_json(payload), args.out)
        return 0

    if args.scheme == "unary":
        rows = []
        total = 0
        for shot in range(args.shots):
            trace = protocols.sample_arrivals(
                args.epsilon, args.bins, args.gamma, args.phi,
                derive_seed(args.seed, shot),
            )
            located, ledger = protocols.unary_run(trace)
            total += ledger.consumed
            rows.append(
                {
                    "shot": shot,
                    "occupied_bins": list(located),
                    "consumed": ledger.consumed,
                }
            )
        payload = {
            "scheme": "unary",
            "bins": args.bins,
            "epsilon": args.epsilon,
            "seed": args.seed,
            "shots": rows,
            "total_consumed": total,
        }
        if args.format == "csv":
            _emit(
                to_csv(
                    ("shot", "n_occupied", "consumed", "occupied_bins"),
                    [
                        (r["shot"], len(r["occupied_bins"]), r["consumed"],
                         "|".join(map(str, r["occupied_bins"])))
                        for r in rows
                    ],
                ),
                args.out,
            )
        else:
            _emit(to_json(payload), args.out)
        return 0

    if args.scheme == "binary-search":
        if args.photon_bin is not None:
            trace = protocols.single_photon_trace(args.bins, args.photon_bin, phi=args.phi)
            located, ledger = protocols.binary_search_run(trace)
            _emit(
                to_json(
                    {
                        "scheme": "binary-search",
                        "bins": args.bins,
                        "photon_bin": args.photon_bin,
                        "located": located,
                        "consumed": ledger.consumed,
                        "outcomes": ledger.outcomes,
                    }
                ),
                args.out,
            )
            return 0
        rng = rng_for(args.seed)
        rows = []
        all_correct = True
        for shot in range(args.shots):
            position = int(rng.integers(1, args.bins + 1))
            trace = protocols.single_photon_trace(args.bins, position, phi=args.phi)
            located, ledger = protocols.binary_search_run(trace)
            correct = located == position
            all_correct = all_correct and correct
            rows.append((shot, position, located, ledger.consumed, correct))
        if args.format == "csv":
            _emit(to_csv(("shot", "photon_bin", "located", "consumed", "correct"), rows), args.out)
        else:
            _emit(
                to_json(
                    {
                        "scheme": "binary-search",
                        "bins": args.bins,
                        "seed": args.seed,
                        "shots": [
                            {
                                "shot": s,
                                "photon_bin": p,
                                "located": l,
                                "consumed": c,
                                "correct": ok,
                            }
                            for s, p, l, c, ok in rows
                        ],
                        "all_correct": all_correct,
                    }
                ),
                args.out,
            )
        return 0

    if args.scheme == "binary":
        rows = []
        tallies = {"vacuum": 0, "single": 0, "multi": 0}
        for shot in range(args.shots):
            trace = protocols.sample_arrivals(
                args.epsilon, args.bins, args.gamma, args.phi,
                derive_seed(args.seed, shot),
            )
            memory = protocols.binary_encode(trace)
            if memory.depolarized:
                outcome = "multi"
            elif memory.stored_bin is None:
                outcome = "vacuum"
            else:
                outcome = "single"
            tallies[outcome] += 1
            rows.append((shot, outcome, memory.stored_bin, memory.register_a))
        p_vac, p_single, p_multi = protocols.trinomial_decode(args.bins, args.epsilon)
        payload = {
            "scheme": "binary",
            "bins": args.bins,
            "epsilon": args.epsilon,
            "seed": args.seed,
            "register_width": protocols.memory_requirements(args.bins, "binary"),
            "tallies": tallies,
            "predicted": {"vacuum": p_vac, "single": p_single, "multi": p_multi},
            "single_photon_fidelity": protocols.multiphoton_fidelity(args.bins, args.epsilon),
            "shots": [
                {"shot": s, "outcome": o, "stored_bin": b, "register": r}
                for s, o, b, r in rows
            ],
        }
        if args.format == "csv":
            _emit(to_csv(("shot", "outcome", "stored_bin", "register"), rows), args.out)
        else:
            _emit(to_json(payload), args.out)
        return 0

    raise ValueError(f"unknown protocol scheme {args.scheme!r}")


def cmd_consumption(args) -> int:
    if args.table:
        rows = reference.consumption_table()
        _emit(
            to_csv(
                (
                    "wavelength_nm",
                    "delta_nu_hz",
                    "epsilon",
                    "rate_per_s",
                    "published_rate",
                    "ratio",
                    "discrepant",
                ),
                [
                    (
                        r.wavelength * 1e9,
                        r.delta_nu,
                        r.epsilon,
                        r.rate,
                        r.published_rate,
                        r.ratio,
                        r.discrepant,
                    )
                    for r in rows
                ],
            ),
            args.out,
        )
        return 0
    if args.dnu_hz is None or args.epsilon is None:
        raise ValueError("--dnu-hz and --epsilon are required unless --table is given")
    overhead = 10.0 if args.multiplex_overhead else 1.0
    rate = protocols.consumption_rate(args.dnu_hz, args.epsilon, multiplex_overhead=overhead)
    _emit(
        to_json(
            {
                "delta_nu_hz": args.dnu_hz,
                "epsilon": args.epsilon,
                "multiplex_overhead": overhead,
                "rate_pairs_per_s": rate,
            }
        ),
        args.out,
    )
    return 0


def cmd_geodesy(args) -> int:
    theta = math.radians(args.theta_deg)
    wavelength = args.wavelength_nm * 1e-9
    if args.mode == "crb":
        bound = geodesy.baseline_crb(
            theta, wavelength, args.photons, delta_phi=args.delta_phi
        )
        _emit(
            to_json(
                {
                    "wavelength_nm": args.wavelength_nm,
                    "theta_deg": args.theta_deg,
                    "n_photons": args.photons,
                    "delta_phi": args.delta_phi,
                    "delta_b_m": bound,
                }
            ),
            args.out,
        )
        return 0
    if args.mode == "mc":
        deltas = tuple(math.radians(float(d)) for d in args.delta_settings_deg.split(","))
        result = geodesy.phase_mc(
            args.phi_true, args.photons, deltas, args.seed, shots=args.shots
        )
        crb_variance = 1.0 / args.photons
        _emit(
            to_json(
                {
                    "phi_true": args.phi_true,
                    "n_photons": args.photons,
                    "shots": args.shots,
                    "seed": args.seed,
                    "delta_settings_deg": [float(d) for d in args.delta_settings_deg.split(",")],
                    "phi_hat": result.phi_hat,
                    "empirical_variance": result.variance,
                    "crb_variance": crb_variance,
                    "variance_ratio": result.variance / crb_variance,
                    "stderr": result.stderr,
                }
            ),
            args.out,
        )
        return 0
    raise ValueError(f"unknown geodesy mode {args.mode!r}")


def _stirap_config(args) -> cavity.StirapConfig:
    return cavity.StirapConfig(
        g=TWO_PI * args.g_mhz * 1e6,
        kappa=TWO_PI * args.kappa_mhz * 1e6,
        gamma_atom=TWO_PI * args.gamma_mhz * 1e6,
        coupling_peak=args.coupling_peak,
        omega_peak=args.omega_peak,
        omega_center=args.omega_center,
        coupling_center=args.coupling_center,
        pulse_width=args.pulse_width,
        total_time=args.total_time,
        dt=args.dt,
        include_decay=args.decay,
        detuning_form=args.detuning_form,
    )


def cmd_stirap(args) -> int:
    config = _stirap_config(args)
    trajectory = cavity.stirap_simulate(config)
    if args.summary:
        _emit(
            to_json(
                {
                    "final_transfer": trajectory.final_transfer,
                    "max_excited": trajectory.max_excited,
                    "norm_loss": trajectory.norm_loss,
                    "transfer_window_s": config.transfer_window,
                    "decay_fidelity_estimate": cavity.decay_fidelity(
                        config.transfer_window, config.kappa
                    ),
                }
            ),
            args.out,
        )
        return 0
    stride = max(1, args.stride)
    rows = [
        (trajectory.times[i], *trajectory.populations[i])
        for i in range(0, trajectory.times.size, stride)
    ]
    _emit(to_csv(("t_in_inv_g", "p_photon", "p_excited", "p_stored"), rows), args.out)
    return 0


def cmd_cavity(args) -> int:
    spec = cavity.CavitySpec(
        wavelength=args.wavelength_nm * 1e-9,
        finesse=args.finesse,
        waist=args.waist_um * 1e-6,
        length=args.length_um * 1e-6,
        gamma_atom=TWO_PI * args.gamma_mhz * 1e6,
    )
    coop = cavity.cooperativity(spec)
    kappa = cavity.cavity_kappa(spec.length, spec.finesse)
    g = cavity.coupling_from_cooperativity(coop, kappa, spec.gamma_atom)
    _emit(
        to_json(
            {
                "cooperativity": coop,
                "g_rad_per_s": g,
                "g_over_2pi_mhz": g / TWO_PI / 1e6,
                "kappa_rad_per_s": kappa,
                "kappa_over_2pi_mhz": kappa / TWO_PI / 1e6,
                "gamma_over_kappa": spec.gamma_atom / kappa,
            }
        ),
        args.out,
    )
    return 0


def cmd_targets(args) -> int:
    rows = reference.exoplanet_table()
    _emit(
        to_csv(
            (
                "name",
                "semi_major_au",
                "distance_pc",
                "separation_arcsec",
                "published_arcsec",
                "abs_error",
                "within_tolerance",
            ),
            [
                (
                    r.name,
                    r.semi_major_au,
                    r.distance_pc,
                    r.separation_arcsec,
                    r.published_arcsec,
                    r.abs_error,
                    r.within_tolerance,
                )
                for r in rows
            ],
        ),
        args.out,
    )
    return 0


def cmd_precession(args) -> int:
    orbit = astro.OrbitSpec(
        central_mass=args.mass_msun * SOLAR_MASS,
        semi_major=args.semi_major_au * ASTRONOMICAL_UNIT,
        eccentricity=args.eccentricity,
        spin=args.spin,
    )
    schw = astro.schwarzschild_precession(orbit)
    lt = astro.lense_thirring_precession(orbit)
    _emit(
        to_json(
            {
                "schwarzschild_radius_m": orbit.schwarzschild_radius,
                "schwarzschild_rad_per_orbit": schw,
                "lense_thirring_rad_per_orbit": lt,
                "ratio": schw / lt if lt > 0 else "inf",
                "schwarzschild_arcsec_per_orbit": math.degrees(schw) * 3600,
                "lense_thirring_arcsec_per_orbit": math.degrees(lt) * 3600,
            }
        ),
        args.out,
    )
    return 0


# --- reproduce ---------------------------------------------------------------


def _artifact_exoplanets(outdir: Path):
    rows = reference.exoplanet_table()
    path = outdir / "exoplanet_separations.csv"
    path.write_text(
        to_csv(
            ("name", "semi_major_au", "distance_pc", "separation_arcsec",
             "published_arcsec", "abs_error", "within_tolerance"),
            [
                (r.name, r.semi_major_au, r.distance_pc, r.separation_arcsec,
                 r.published_arcsec, r.abs_error, r.within_tolerance)
                for r in rows
            ],
        ),
        encoding="utf-8",
    )
    ok = all(r.within_tolerance for r in rows)
    detail = f"{sum(r.within_tolerance for r in rows)}/{len(rows)} separations within 0.001 arcsec"
    return path, "exoplanet separation table", ok, detail


def _artifact_consumption(outdir: Path):
    rows = reference.consumption_table()
    path = outdir / "consumption_rates.csv"
    path.write_text(
        to_csv(
            ("wavelength_nm", "delta_nu_hz", "epsilon", "rate_per_s",
             "published_rate", "ratio", "discrepant"),
            [
                (r.wavelength * 1e9, r.delta_nu, r.epsilon, r.rate,
                 r.published_rate, r.ratio, r.discrepant)
                for r in rows
            ],
        ),
        encoding="utf-8",
    )
    expected_discrepant = {(555e-9, 1e-11), (760e-9, 1e-10)}
    flagged = {(r.wavelength, r.epsilon) for r in rows if r.discrepant}
    ok = flagged == expected_discrepant
    detail = (
        f"{len(rows) - len(flagged)}/{len(rows)} rows within 15% of the formula; "
        f"flagged rows: {sorted(flagged)}"
    )
    return path, "entanglement consumption-rate table", ok, detail


def _artifact_photon_budget(outdir: Path):
    rows = reference.photon_budget_table()
    path = outdir / "photon_budget.csv"
    path.write_text(
        to_csv(
            ("m_ab", "wavelength_nm", "delta_lambda_nm", "delta_nu_hz",
             "photon_rate_per_s", "coherence_time_s", "epsilon_star",
             "epsilon_planet", "published_rate", "published_epsilon",
             "rate_ok", "epsilon_ok"),
            [
                (r.m_ab, r.wavelength * 1e9, r.delta_lambda * 1e9, r.delta_nu,
                 r.photon_rate, r.coherence_time, r.epsilon_star, r.epsilon_planet,
                 r.published_rate, r.published_epsilon, r.rate_ok, r.epsilon_ok)
                for r in rows
            ],
        ),
        encoding="utf-8",
    )
    ok = all(r.rate_ok and r.epsilon_ok for r in rows)
    detail = "rates within 2% and epsilon within 10% on all rows" if ok else "tolerance failure"
    return path, "photon budget table", ok, detail


def _artifact_c_factor(outdir: Path):
    path = outdir / "single_photon_fidelity.csv"
    rows = []
    for exponent in np.linspace(-8.0, -1.0, 29):
        eps = float(10.0**exponent)
        c_full = protocols.multiphoton_fidelity(max(1, round(1.0 / eps)), eps)
        c_tenth = protocols.multiphoton_fidelity(max(1, round(0.1 / eps)), eps)
        rows.append((eps, c_full, c_tenth))
    path.write_text(
        to_csv(("epsilon", "c_block_mean_1", "c_block_mean_0p1"), rows),
        encoding="utf-8",
    )
    plateau_full = protocols.multiphoton_fidelity(10**7, 1e-7)
    plateau_tenth = protocols.multiphoton_fidelity(10**6, 1e-7)
    ok = (
        abs(plateau_full - 1.0 / (math.e - 1.0)) <= 1e-4
        and abs(plateau_tenth - 0.1 / math.expm1(0.1)) <= 1e-4
    )
    detail = f"plateaus {plateau_full:.6f} and {plateau_tenth:.6f} vs 1/(e-1) and 0.1/(e^0.1-1)"
    return path, "post-selected single-photon fidelity curves", ok, detail


def _artifact_stirap(outdir: Path):
    config = cavity.StirapConfig()
    trajectory = cavity.stirap_simulate(config)
    path = outdir / "stirap_trajectory.csv"
    rows = [
        (trajectory.times[i], *trajectory.populations[i])
        for i in range(0, trajectory.times.size, 10)
    ]
    path.write_text(
        to_csv(("t_in_inv_g", "p_photon", "p_excited", "p_stored"), rows),
        encoding="utf-8",
    )
    ok = trajectory.final_transfer >= 0.999 and trajectory.max_excited <= 0.02
    detail = (
        f"final transfer {trajectory.final_transfer:.6f}, "
        f"peak excited population {trajectory.max_excited:.4f}"
    )
    return path, "three-level population-transfer trajectory", ok, detail


_ARTIFACTS = {
    "exoplanets": _artifact_exoplanets,
    "consumption": _artifact_consumption,
    "appendix": _artifact_photon_budget,
    "c-factor": _artifact_c_factor,
    "stirap": _artifact_stirap,
}


def cmd_reproduce(args) -> int:
    selected = []
    if args.all:
        selected = list(_ARTIFACTS)
    else:
        selected.extend(args.table or [])
        selected.extend(args.figure or [])
    if not selected:
        raise ValueError("select artifacts with --all, --table, or --figure")
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    manifest = {"artifacts": [], "all_pass": True}
    for name in selected:
        path, anchor, ok, detail = _ARTIFACTS[name](outdir)
        manifest["artifacts"].append(
            {
                "name": name,
                "path": path.name,
                "reference": anchor,
                "status": "pass" if ok else "fail",
                "detail": detail,
            }
        )
        manifest["all_pass"] = manifest["all_pass"] and ok
    (outdir / "manifest.json").write_text(to_json(manifest), encoding="utf-8")
    sys.stdout.write(to_json(manifest))
    return 0 if manifest["all_pass"] else 3


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qvlbi",
        description="Quantum-enabled optical VLBI toolkit",
    )
    parser.add_argument("--version", action="version", version=f"qvlbi {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("photometry", help="magnitudes to photon rates and epsilon")
    p.add_argument("--mag", type=float, help="AB magnitude")
    p.add_argument("--wavelength-nm", type=float, default=760.0)
    p.add_argument("--dlambda-nm", type=float, help="wavelength bandwidth (nm)")
    p.add_argument("--dnu-ghz", type=float, help="frequency bandwidth (GHz)")
    p.add_argument("--area-m2", type=float, default=10.0)
    p.add_argument("--table", choices=["appendix"], help="emit the photon-budget table as CSV")
    p.add_argument("--out")
    p.set_defaults(func=cmd_photometry)

    p = sub.add_parser("state", help="covariance and weak-source representations")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("qfi", help="Fisher information and Cramer-Rao bounds")
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--n-copies", type=int, default=1)
    p.add_argument("--sweep", action="store_true", help="emit a CSV grid over gamma")
    p.add_argument("--sweep-points", type=int, default=100)
    p.add_argument("--out")
    p.set_defaults(func=cmd_qfi)

    p = sub.add_parser("protocol", help="entanglement-assisted protocol runs")
    p.add_argument("scheme", choices=["gottesman", "unary", "binary-search", "binary"])
    p.add_argument("--epsilon", type=float, default=1e-2)
    p.add_argument("--bins", type=int, default=64)
    p.add_argument("--shots", type=int, default=8)
    p.add_argument("--gamma", type=float, default=1.0)
    p.add_argument("--phi", type=float, default=0.0)
    p.add_argument("--delta", type=float, default=0.0)
    p.add_argument("--photon-bin", type=int, help="deterministic photon position (binary-search)")
    p.add_argument("--seed", type=int, default=default_seed())
    p.add_argument("--format", choices=["json", "csv"], default="json")
    p.add_argument("--out")
    p.set_defaults(func=cmd_protocol)

    p = sub.add_parser("consumption", help="entanglement consumption rates")
    p.add_argument("--dnu-hz", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--multiplex-overhead", action="store_true",
                   help="apply the ~10x multiphoton-mitigation overhead")
    p.add_argument("--table", action="store_true", help="emit the published-band table as CSV")
    p.add_argument("--out")
    p.set_defaults(func=cmd_consumption)

    p = sub.add_parser("geodesy", help="baseline precision bounds and Monte Carlo")
    p.add_argument("mode", choices=["crb", "mc"])
    p.add_argument("--wavelength-nm", type=float, default=1550.0)
    p.add_argument("--theta-deg", type=float, default=90.0)
    p.add_argument("--photons", type=int, default=10**4)
    p.add_argument("--delta-phi", type=float, default=1.0)
    p.add_argument("--phi-true", type=float, default=0.7)
    p.add_argument("--shots", type=int, default=200)
    p.add_argument("--delta-settings-deg", default="0,90")
    p.add_argument("--seed", type=int, default=default_seed())
    p.add_argument("--out")
    p.set_defaults(func=cmd_geodesy)

    p = sub.add_parser("stirap", help="three-level transfer trajectory")
    p.add_argument("--g-mhz", type=float, default=400.0, help="cavity coupling / 2pi (MHz)")
    p.add_argument("--kappa-mhz", type=float, default=20.0)
    p.add_argument("--gamma-mhz", type=float, default=6.0)
    p.add_argument("--coupling-peak", type=float, default=1.0)
    p.add_argument("--omega-peak", type=float, default=1.2)
    p.add_argument("--omega-center", type=float, default=18.5)
    p.add_argument("--coupling-center", type=float, default=31.5)
    p.add_argument("--pulse-width", type=float, default=8.5)
    p.add_argument("--total-time", type=float, default=50.0)
    p.add_argument("--dt", type=float, default=2.5e-3)
    p.add_argument("--decay", action="store_true")
    p.add_argument("--detuning-form", choices=["scaled", "raw"], default="scaled")
    p.add_argument("--stride", type=int, default=10, help="CSV row decimation")
    p.add_argument("--summary", action="store_true", help="JSON summary instead of CSV")
    p.add_argument("--out")
    p.set_defaults(func=cmd_stirap)

    p = sub.add_parser("cavity", help="cavity figures of merit")
    p.add_argument("--wavelength-nm", type=float, default=780.0)
    p.add_argument("--finesse", type=float, default=2e5)
    p.add_argument("--waist-um", type=float, default=2.0)
    p.add_argument("--length-um", type=float, default=40.0)
    p.add_argument("--gamma-mhz", type=float, default=6.0, help="atomic linewidth / 2pi (MHz)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_cavity)

    p = sub.add_parser("targets", help="astrophysical target tables")
    p.add_argument("--table", choices=["exoplanets"], default="exoplanets")
    p.add_argument("--out")
    p.set_defaults(func=cmd_targets)

    p = sub.add_parser("precession", help="relativistic precession per orbit")
    p.add_argument("--mass-msun", type=float, required=True)
    p.add_argument("--semi-major-au", type=float, required=True)
    p.add_argument("--eccentricity", type=float, default=0.0)
    p.add_argument("--spin", type=float, default=0.0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_precession)

    p = sub.add_parser("reproduce", help="regenerate benchmark tables and figures")
    p.add_argument("--all", action="store_true")
    p.add_argument("--table", action="append", choices=["exoplanets", "consumption", "appendix"])
    p.add_argument("--figure", action="append", choices=["c-factor", "stirap"])
    p.add_argument("--outdir", default="artifacts")
    p.set_defaults(func=cmd_reproduce)

    return parser


def _apply_config(argv: list[str]) -> list[str]:
    """Expand ``--config file`` into flags inserted before the user's flags."""
    if "--config" not in argv:
        return argv
    argv = list(argv)
    i = argv.index("--config")
    if i + 1 >= len(argv):
        raise ValueError("--config requires a file path")
    path = argv[i + 1]
    del argv[i : i + 2]
    flags: list[str] = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"malformed config line (expected key=value): {line!r}")
        flag = "--" + key.strip().replace("_", "-")
        value = value.strip()
        if value.lower() in ("true", "yes"):
            flags.append(flag)
        elif value.lower() in ("false", "no"):
            continue
        else:
            flags.extend([flag, value])
    if not argv:
        return flags
    # insert right after the subcommand so later explicit flags override
    return argv[:1] + flags + argv[1:]


def dispatch(argv: list[str]) -> int:
    """Parse argv and run the matching subcommand; never raises for bad input."""
    try:
        argv = _apply_config(list(argv))
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, protocols.ProtocolError, cavity.IntegrationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main(argv: list[str] | None = None) -> int:
    return dispatch(sys.argv[1:] if argv is None else list(argv))


if __name__ == "__main__":
    sys.exit(main())
