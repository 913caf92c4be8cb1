"""Command-line interface: spectrum tables, wave-function tabulation, certification.

Output is deterministic: fixed row order, floats printed with 17 significant
digits in CSV; JSON uses Python's shortest round-trip float representation
(lossless, identical values).  Every payload carries the schema version, the
command echo and the configuration.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 numerical
failure (quadrature).  The default fine-structure constant may be overridden
with the HYDIRAC_ALPHA environment variable; an explicit --alpha flag wins.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import spectrum as spectrum_mod
from . import verify as verify_mod
from . import wavefn as wavefn_mod
from .core import ALPHA_CODATA, InvalidStateError, PhysicsConfig, make_state

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3

ALPHA_ENV_VAR = "HYDIRAC_ALPHA"


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _emit(stream, fmt: str, meta: dict, columns: list[str], rows: list[dict]) -> None:
    if fmt == "json":
        payload = {"meta": meta, "rows": [{c: row[c] for c in columns} for row in rows]}
        stream.write(json.dumps(payload, indent=2))
        stream.write("\n")
        return
    meta_cols = list(meta)  # insertion order: the fixed four, then any extras
    header = meta_cols + columns
    lines = [",".join(header)]
    meta_cells = [_fmt(meta[c]) for c in meta_cols]
    for row in rows:
        lines.append(",".join(meta_cells + [_fmt(row[c]) for c in columns]))
    stream.write("\n".join(lines))
    stream.write("\n")


def _resolve_alpha(args) -> float:
    if args.alpha is not None:
        return args.alpha
    env = os.environ.get(ALPHA_ENV_VAR)
    if env is not None:
        try:
            return float(env)
        except ValueError as exc:
            raise ValueError(f"invalid {ALPHA_ENV_VAR}={env!r}: {exc}") from exc
    return ALPHA_CODATA


def _meta(command_echo: str, config: PhysicsConfig, **extra) -> dict:
    meta = {
        "schema_version": SCHEMA_VERSION,
        "command": command_echo,
        "alpha": config.alpha,
        "rest_energy_eV": config.rest_energy_ev,
    }
    meta.update(extra)
    return meta


def cmd_spectrum(args, stream) -> int:
    config = PhysicsConfig(alpha=_resolve_alpha(args))
    rows = spectrum_mod.spectrum_table(args.n_max, config)
    columns = ["n", "kappa", "l", "j", "label", "n_r", "E_over_mc2", "lambda", "binding_eV"]
    payload = [
        {
            "n": r.n,
            "kappa": r.kappa,
            "l": r.l,
            "j": r.j,
            "label": r.label,
            "n_r": r.n_r,
            "E_over_mc2": r.e_over_mc2,
            "lambda": r.lam,
            "binding_eV": r.binding_ev,
        }
        for r in rows
    ]
    echo = f"spectrum --n-max {args.n_max} --alpha {_fmt(config.alpha)} --format {args.format}"
    _emit(stream, args.format, _meta(echo, config), columns, payload)
    return EXIT_OK


def cmd_wavefunction(args, stream) -> int:
    config = PhysicsConfig(alpha=_resolve_alpha(args))
    state = make_state(args.n, args.kappa, 0.5, config)
    e = spectrum_mod.energy(state, config)
    if not args.r_min > 0.0 or not args.r_max > args.r_min:
        raise InvalidStateError("need 0 < r_min < r_max")
    if args.points < 2:
        raise InvalidStateError("need at least 2 points")
    grid = np.geomspace(args.r_min, args.r_max, args.points)

    norm = 1.0
    extra_meta = {}
    if args.normalized:
        result = wavefn_mod.normalize(state, e)
        norm = result.constant
        extra_meta["normalization"] = norm
        extra_meta["norm_integral_error_bound"] = result.error_bound

    wanted = {
        "phi": ["phi"],
        "phi_tilde": ["phi_tilde"],
        "psi": ["psi_a", "psi_b"],
        "all": ["phi", "phi_tilde", "psi_a", "psi_b"],
    }[args.which]
    values = {}
    if "phi" in wanted:
        values["phi"] = norm * np.atleast_1d(wavefn_mod.radial_phi(state, e, grid))
    if "phi_tilde" in wanted:
        values["phi_tilde"] = norm * np.atleast_1d(wavefn_mod.radial_phi_tilde(state, e, grid))
    if "psi_a" in wanted:
        psi_a, psi_b = wavefn_mod.assemble_bispinor_radials(state, e, grid)
        values["psi_a"] = norm * psi_a
        values["psi_b"] = norm * psi_b

    columns = ["r_compton", "r_bohr"] + wanted
    payload = []
    for i, r in enumerate(grid):
        row = {"r_compton": float(r), "r_bohr": float(r * config.alpha)}
        for name in wanted:
            row[name] = float(values[name][i])
        payload.append(row)
    echo = (
        f"wavefunction --n {args.n} --kappa {args.kappa} --r-min {_fmt(args.r_min)} "
        f"--r-max {_fmt(args.r_max)} --points {args.points} --which {args.which}"
        f"{' --normalized' if args.normalized else ''} --alpha {_fmt(config.alpha)} "
        f"--format {args.format}"
    )
    _emit(stream, args.format, _meta(echo, config, **extra_meta), columns, payload)
    return EXIT_OK


def _verify_rows(n_max: int, tolerance: float, config: PhysicsConfig) -> list[dict]:
    rows = []

    def add(check, n, kappa, detail, value, tol):
        rows.append(
            {
                "check": check,
                "n": n,
                "kappa": kappa,
                "detail": detail,
                "value": value,
                "tolerance": tol,
                "passed": bool(value < tol),
            }
        )

    states = []
    for n in range(1, n_max + 1):
        for kappa in spectrum_mod.valid_kappas(n):
            states.append(make_state(n, kappa, 0.5, config))

    energies = {(s.n, s.kappa): spectrum_mod.energy(s, config) for s in states}
    for s in states:
        e = energies[(s.n, s.kappa)]
        for report in verify_mod.residual_suite(s, e, tolerance=tolerance):
            add(report.equation, s.n, s.kappa, "", report.relative_norm, tolerance)
        add("roundtrip_transform", s.n, s.kappa, "", verify_mod.roundtrip_max_error(s, e), tolerance)

    # orthogonality between same-kappa states of different n
    norm_consts = {}
    for s in states:
        norm_consts[(s.n, s.kappa)] = wavefn_mod.normalize(s, energies[(s.n, s.kappa)]).constant
    for s1 in states:
        for s2 in states:
            if s1.kappa == s2.kappa and s1.n < s2.n:
                value = abs(
                    wavefn_mod.overlap_integral(
                        s1,
                        energies[(s1.n, s1.kappa)],
                        s2,
                        energies[(s2.n, s2.kappa)],
                        norm_1=norm_consts[(s1.n, s1.kappa)],
                        norm_2=norm_consts[(s2.n, s2.kappa)],
                    )
                )
                add("orthogonality", s1.n, s1.kappa, f"n2={s2.n}", value, 1e-8)

    # energy vs O(alpha^4) expansion
    bound = 5.0 * config.alpha**6
    for s in states:
        diff = abs(energies[(s.n, s.kappa)].value - spectrum_mod.sommerfeld_expansion(s.n, s.j, config))
        add("sommerfeld_expansion", s.n, s.kappa, "", diff, bound)

    return rows


def cmd_verify(args, stream) -> int:
    config = PhysicsConfig(alpha=_resolve_alpha(args))
    if not args.tolerance > 0.0:
        raise InvalidStateError("tolerance must be positive")
    rows = _verify_rows(args.n_max, args.tolerance, config)
    columns = ["check", "n", "kappa", "detail", "value", "tolerance", "passed"]
    echo = (
        f"verify --n-max {args.n_max} --tolerance {_fmt(args.tolerance)} "
        f"--alpha {_fmt(config.alpha)} --format {args.format}"
    )
    _emit(stream, args.format, _meta(echo, config), columns, rows)
    return EXIT_OK if all(r["passed"] for r in rows) else EXIT_VERIFY_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hydirac",
        description="Dirac-Coulomb hydrogen: spectrum, wave functions and residual certification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--alpha", type=float, default=None, help="fine-structure constant override")
        p.add_argument("--format", choices=["csv", "json"], default="csv")

    p_spec = sub.add_parser("spectrum", help="bound-state energy table")
    p_spec.add_argument("--n-max", type=int, required=True)
    common(p_spec)
    p_spec.set_defaults(func=cmd_spectrum)

    p_wave = sub.add_parser("wavefunction", help="tabulate radial amplitudes")
    p_wave.add_argument("--n", type=int, required=True)
    p_wave.add_argument("--kappa", type=int, required=True)
    p_wave.add_argument("--r-min", type=float, default=1e-2, help="Compton units")
    p_wave.add_argument("--r-max", type=float, default=2e4, help="Compton units")
    p_wave.add_argument("--points", type=int, default=2000)
    p_wave.add_argument(
        "--which", choices=["phi", "phi_tilde", "psi", "all"], default="all"
    )
    p_wave.add_argument("--normalized", action="store_true")
    common(p_wave)
    p_wave.set_defaults(func=cmd_wavefunction)

    p_ver = sub.add_parser("verify", help="run the residual certification suite")
    p_ver.add_argument("--n-max", type=int, required=True)
    p_ver.add_argument("--tolerance", type=float, default=verify_mod.DEFAULT_TOLERANCE)
    common(p_ver)
    p_ver.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse already reported the problem
        return int(exc.code or 0)
    try:
        return args.func(args, sys.stdout)
    except wavefn_mod.QuadratureError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (InvalidStateError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
