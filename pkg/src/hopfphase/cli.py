"""Batch command-line front end.

Verbs: derive (coefficient report), simulate (one model run), compare
(full-model vs phase-model deviation report), cluster-scan (two-cluster root
and stability tables). All output is JSON or columnar text ready for external
plotting; every file records the seed, so a fixed config gives byte-identical
results. Exit codes: 0 success, 2 configuration problem, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from .cluster import (ClusterConfig, ab_coefficients, alpha_roots_for_psi,
                      find_roots_from_coefficients, polynomial_alpha_roots,
                      sync_frequency, sync_stability)
from .config import ConfigError, RunConfig, initial_full_state, initial_phases, parse_config
from .integrator import (AmplitudeCollapseError, IntegrationError, compare,
                         integrate, trajectory_text)
from .normal_form import full_rhs_array
from .phase_model import phase_rhs_fast
from .reduction import (build_coupling, canonical_xi_chi, coupling_to_text,
                        reduction_constants, xi_chi_lambda_split)


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def _write(path: Path, text: str):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text, encoding="utf-8")


def _out_path(cfg: RunConfig, args, default: str) -> Path:
    if args.out is not None:
        return Path(args.out)
    if cfg.output is not None:
        return Path(cfg.output)
    return Path(default)


def _load_config(args) -> RunConfig:
    try:
        text = Path(args.config).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file: {exc}") from exc
    cfg = parse_config(text)
    overrides = {}
    if args.seed is not None:
        if args.seed < 0:
            raise ConfigError("field 'seed' must be nonnegative")
        overrides["seed"] = args.seed
    if args.dt is not None:
        if args.dt <= 0:
            raise ConfigError("field 'dt' must be positive")
        overrides["dt"] = args.dt
    if args.t_end is not None:
        if args.t_end <= 0:
            raise ConfigError("field 't_end' must be positive")
        overrides["t_end"] = args.t_end
    return replace(cfg, **overrides) if overrides else cfg


def _require_t_end(cfg: RunConfig) -> float:
    if cfg.t_end is None:
        raise ConfigError("field 't_end' is required here; set it in the "
                          "config or pass --t-end")
    return cfg.t_end


def cmd_derive(cfg: RunConfig, args) -> int:
    params = cfg.system_params()
    consts = reduction_constants(params, cfg.delta)
    coupling = build_coupling(params, cfg.delta)
    doc = {
        "seed": cfg.seed,
        "constants": {
            "r_star_sq": consts.r_star_sq,
            "omega_cap": consts.omega_cap,
            "a0": consts.a0,
            "b0": consts.b0,
            "c0": consts.c0,
            "c_ratio": consts.c_ratio,
            "delta": consts.delta,
        },
        "coupling": json.loads(coupling_to_text(coupling)),
        "canonical_terms": [
            {"component": tag, "order": term.order,
             "xi": term.amplitude, "chi": term.phase_offset}
            for tag, term in canonical_xi_chi(coupling)
        ],
        "lambda_split": [
            {"component": tag, "lambda_power": power, "order": term.order,
             "xi": term.amplitude, "chi": term.phase_offset}
            for tag, power, term in xi_chi_lambda_split(coupling)
        ],
        "sync_frequency": sync_frequency(coupling, cfg.coeffs, cfg.delta, cfg.lam),
    }
    _write(_out_path(cfg, args, "derive.json"),
           json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_simulate(cfg: RunConfig, args) -> int:
    params = cfg.system_params()
    dt = cfg.resolved_dt()
    t_end = _require_t_end(cfg)
    header = {"dt": _fmt(dt)}
    if args.model == "full":
        z0 = initial_full_state(cfg)
        traj = integrate(lambda v: full_rhs_array(v, params), z0, dt, t_end)
        text = trajectory_text(traj, seed=cfg.seed, extra_header=header)
        default = "trajectory_full.txt"
    else:
        coupling = build_coupling(params, cfg.delta)
        phi0 = initial_phases(cfg)
        traj = integrate(lambda p: phase_rhs_fast(p, coupling), phi0, dt, t_end)
        r_star = math.sqrt(coupling.r_star_sq)
        text = trajectory_text(traj, seed=cfg.seed, r_star=r_star,
                               extra_header=header)
        default = "trajectory_phase.txt"
    _write(_out_path(cfg, args, default), text)
    return 0


def cmd_compare(cfg: RunConfig, args) -> int:
    params = cfg.system_params()
    coupling = build_coupling(params, cfg.delta)
    dt = cfg.resolved_dt()
    if cfg.t_end is not None:
        t_end = cfg.t_end
    else:
        # the phase reduction is expected to track over times of order
        # 1/(epsilon*lambda)
        t_end = 1.0 / (cfg.epsilon * cfg.lam)
    phi0 = initial_phases(cfg)
    z0 = math.sqrt(coupling.r_star_sq) * np.exp(1j * phi0)
    full_traj = integrate(lambda v: full_rhs_array(v, params), z0, dt, t_end)
    phase_traj = integrate(lambda p: phase_rhs_fast(p, coupling), phi0, dt, t_end)
    report = compare(full_traj, phase_traj)
    doc = {"seed": cfg.seed, "dt": dt, **report.as_dict()}
    _write(_out_path(cfg, args, "compare.json"),
           json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return 0


def _alpha_scan_lines(cfg: RunConfig, coupling) -> list:
    lines = ["# section=alpha-scan",
             "# columns: alpha, psi_root, stability_of_sync, tangential_flag"]
    n_alpha = cfg.cluster.alpha_grid
    alphas = np.linspace(-1.0, 1.0, n_alpha + 1)[1:-1]
    for alpha in alphas:
        ccfg = ClusterConfig.from_alpha(float(alpha))
        cc = ab_coefficients(ccfg, coupling)
        stability = sync_stability(cc)
        scan = find_roots_from_coefficients(cc)
        if scan.identically_zero:
            lines.append(f"{_fmt(alpha)}, nan, {stability}, identically-zero")
            continue
        if not scan.roots:
            lines.append(f"{_fmt(alpha)}, nan, {stability}, none")
            continue
        for root in scan.roots:
            flag = 1 if root.tangential else 0
            lines.append(f"{_fmt(alpha)}, {_fmt(root.psi)}, {stability}, {flag}")
    return lines


def _psi_scan_lines(cfg: RunConfig, coupling) -> list:
    lines = ["# section=psi-scan", "# columns: psi, alpha_root, flag"]
    n_psi = cfg.cluster.psi_grid
    psis = np.linspace(0.0, 2.0 * np.pi, n_psi, endpoint=False)[1:]
    synth = cfg.cluster.synthetic_ab
    for psi in psis:
        if synth is not None:
            result = polynomial_alpha_roots(float(psi), synth.a1_poly,
                                            synth.b1_poly, synth.a2_poly,
                                            synth.b2_poly)
        else:
            result = alpha_roots_for_psi(float(psi), coupling)
        if result.identically_zero:
            lines.append(f"{_fmt(psi)}, nan, identically-zero")
        elif not result.roots:
            lines.append(f"{_fmt(psi)}, nan, none")
        else:
            for root in result.roots:
                lines.append(f"{_fmt(psi)}, {_fmt(root)}, root")
    return lines


def cmd_cluster_scan(cfg: RunConfig, args) -> int:
    if args.alpha_grid is not None:
        cfg = replace(cfg, cluster=replace(cfg.cluster, alpha_grid=args.alpha_grid))
    if args.psi_grid is not None:
        cfg = replace(cfg, cluster=replace(cfg.cluster, psi_grid=args.psi_grid))
    if cfg.cluster.alpha_grid < 64 or cfg.cluster.psi_grid < 64:
        raise ConfigError("cluster-scan grids must be at least 64")
    params = cfg.system_params()
    coupling = build_coupling(params, cfg.delta)
    lines = [f"# seed={cfg.seed}", "# model=cluster-scan"]
    lines += _alpha_scan_lines(cfg, coupling)
    lines += _psi_scan_lines(cfg, coupling)
    _write(_out_path(cfg, args, "cluster_scan.txt"), "\n".join(lines) + "\n")
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfphase",
        description="Coupled-oscillator normal form and phase reduction runs")
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p):
        p.add_argument("--config", required=True, help="path to a JSON run config")
        p.add_argument("--out", help="output file (default from config or verb)")
        p.add_argument("--seed", type=int, help="override the config seed")
        p.add_argument("--dt", type=float, help="override the integration step")
        p.add_argument("--t-end", type=float, dest="t_end",
                       help="override the integration horizon")

    p = sub.add_parser("derive", help="write the reduced-model coefficient report")
    common(p)
    p.set_defaults(handler=cmd_derive)

    p = sub.add_parser("simulate", help="integrate one model and write the trajectory")
    common(p)
    p.add_argument("--model", choices=("full", "phase"), required=True)
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("compare", help="run both models and write the deviation report")
    common(p)
    p.set_defaults(handler=cmd_compare)

    p = sub.add_parser("cluster-scan", help="tabulate two-cluster roots and stability")
    common(p)
    p.add_argument("--alpha-grid", type=int, dest="alpha_grid",
                   help="number of alpha grid intervals (at least 64)")
    p.add_argument("--psi-grid", type=int, dest="psi_grid",
                   help="number of psi grid intervals (at least 64)")
    p.set_defaults(handler=cmd_cluster_scan)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        cfg = _load_config(args)
        return args.handler(cfg, args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    except (IntegrationError, AmplitudeCollapseError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


def run():
    raise SystemExit(main())
