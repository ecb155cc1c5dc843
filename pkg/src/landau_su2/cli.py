"""Command-line front end.

Subcommands: expect (single-point report, both evaluation paths), figure
(deterministic parameter sweeps for the reference plots), verify (the module
invariant suites), state (coefficient dump) and measure (density and moment
checks).  Output is CSV (comma separated, header row, 17-significant-digit
floats, LF line endings) or JSON with stable key order; repeated runs produce
byte-identical files regardless of the worker thread count.
"""

from __future__ import annotations

import argparse
import cmath
import dataclasses
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

from landau_su2 import fock_oracle as fo
from landau_su2 import measure as measure_mod
from landau_su2 import observables as obs
from landau_su2 import verification as verif
from landau_su2.coherent_states import (
    CoherencePoint,
    ModelParams,
    build_state,
    build_state_deformed,
)

EXIT_OK = 0
EXIT_IO = 1
EXIT_USAGE = 2
EXIT_VERIFY_FAILED = 3

PI = math.pi


def _fmt(value) -> str:
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def write_csv(path: str, header: list[str], rows: list[list]) -> None:
    text = ",".join(header) + "\n"
    for row in rows:
        text += ",".join(_fmt(v) for v in row) + "\n"
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def read_csv(path: str) -> tuple[list[str], list[list]]:
    """Parse a file emitted by write_csv back into typed rows."""
    with open(path, "r", encoding="utf-8", newline="") as fh:
        lines = fh.read().split("\n")
    header = lines[0].split(",")
    rows = []
    for line in lines[1:]:
        if not line:
            continue
        row = []
        for cell in line.split(","):
            try:
                row.append(int(cell))
            except ValueError:
                row.append(float(cell))
        rows.append(row)
    return header, rows


def write_json(path: str, payload) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True, allow_nan=True) + "\n"
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


# ------------------------------------------------------------------ expect


def _pair(closed, oracle):
    if isinstance(closed, complex) or isinstance(oracle, complex):
        closed_c, oracle_c = complex(closed), complex(oracle)
        return {
            "closed": [closed_c.real, closed_c.imag],
            "oracle": [oracle_c.real, oracle_c.imag],
            "residual": abs(closed_c - oracle_c) / max(1.0, abs(oracle_c)),
        }
    return {
        "closed": closed,
        "oracle": oracle,
        "residual": abs(closed - oracle) / max(1.0, abs(oracle)),
    }


def expect_report(params: ModelParams, z: CoherencePoint) -> dict:
    mc = obs.su2_moments(params, z, "closed")
    mo = obs.su2_moments(params, z, "oracle")
    report = {
        "params": {
            "n": params.n, "r": params.r, "t": z.t, "phi": z.phase,
            "hbar": params.hbar, "mass": params.mass, "omega": params.omega,
        },
        "su2_moments": {
            "k_plus": _pair(mc.k_plus, mo.k_plus),
            "k_plus_sq": _pair(mc.k_plus_sq, mo.k_plus_sq),
            "k_plus_k_minus": _pair(mc.k_plus_k_minus, mo.k_plus_k_minus),
            "k3": _pair(mc.k3, mo.k3),
        },
    }

    nc = obs.number_moments(params, z, "closed")
    no = obs.number_moments(params, z, "oracle")
    photon = {
        "mean_na": _pair(nc.mean_na, no.mean_na),
        "mean_nb": _pair(nc.mean_nb, no.mean_nb),
        "mean_na_sq": _pair(nc.mean_na_sq, no.mean_na_sq),
        "mean_nb_sq": _pair(nc.mean_nb_sq, no.mean_nb_sq),
    }
    try:
        photon["q_a"] = _pair(obs.mandel_q(params, z, "closed", mode="a"),
                              obs.mandel_q(params, z, "oracle", mode="a"))
    except obs.VacuumMode:
        photon["q_a"] = obs.VACUUM_B
    try:
        photon["q_b"] = _pair(obs.mandel_q(params, z, "closed", mode="b"),
                              obs.mandel_q(params, z, "oracle", mode="b"))
    except obs.VacuumMode:
        photon["q_b"] = obs.VACUUM_B
    try:
        photon["g2"] = _pair(obs.cross_correlation(params, z, "closed"),
                             obs.cross_correlation(params, z, "oracle"))
    except obs.DegenerateDenominator:
        photon["g2"] = "undefined: degenerate denominator"
    report["photon"] = photon

    qc = obs.quadrature_covariances(params, z, "closed")
    qo = obs.quadrature_covariances(params, z, "oracle")
    legacy = obs.legacy_quadrature_squeezes(params, z)
    report["quadrature"] = {
        "sigma_xx": _pair(qc.sigma_xx, qo.sigma_xx),
        "sigma_pp": _pair(qc.sigma_pp, qo.sigma_pp),
        "sigma_xp": _pair(qc.sigma_xp, qo.sigma_xp),
        "s_x": _pair(qc.s_x, qo.s_x),
        "s_p": _pair(qc.s_p, qo.s_p),
        "s_x_legacy": legacy[0],
        "s_p_legacy": legacy[1],
    }

    sc = obs.su2_squeeze(params, z, "closed")
    so = obs.su2_squeeze(params, z, "oracle")
    squeeze = {
        "var_x1": _pair(sc.var_x1, so.var_x1),
        "var_x2": _pair(sc.var_x2, so.var_x2),
    }
    if sc.s1 is None or so.s1 is None:
        squeeze["s1"] = sc.undefined_reason or so.undefined_reason
        squeeze["s2"] = sc.undefined_reason or so.undefined_reason
    else:
        squeeze["s1"] = _pair(sc.s1, so.s1)
        squeeze["s2"] = _pair(sc.s2, so.s2)
    report["su2_squeeze"] = squeeze
    return report


def _flatten_report(prefix: str, node, rows: list[list]):
    if isinstance(node, dict) and set(node) == {"closed", "oracle", "residual"}:
        closed, oracle = node["closed"], node["oracle"]
        if isinstance(closed, list):
            rows.append([prefix, closed[0], closed[1], oracle[0], oracle[1], node["residual"]])
        else:
            rows.append([prefix, closed, 0.0, oracle, 0.0, node["residual"]])
        return
    if isinstance(node, dict):
        for key in sorted(node):
            _flatten_report(f"{prefix}.{key}" if prefix else key, node[key], rows)
        return
    rows.append([prefix, str(node), "", "", "", ""])


def cmd_expect(args) -> int:
    params = ModelParams(args.n, args.r, args.hbar, args.mass, args.omega)
    z = CoherencePoint.from_t_phi(args.t, args.phi)
    report = expect_report(params, z)
    out = args.out or "-"
    if args.format == "json":
        write_json(out, report)
    else:
        rows: list[list] = []
        _flatten_report("", report["params"], rows)
        for section in ("su2_moments", "photon", "quadrature", "su2_squeeze"):
            _flatten_report(section, report[section], rows)
        write_csv(out, ["field", "closed_re", "closed_im", "oracle_re", "oracle_im", "residual"],
                  rows)
    return EXIT_OK


# ------------------------------------------------------------------ figure


FIGURE_DEFAULTS = {
    "fig1": {"n": [2], "r": [1, 2, 3, 4], "phi": [0.0], "values": ["k_density"]},
    "fig2": {"n": [1, 2, 3], "r": [1, 2, 3, 4], "phi": [0.0],
             "values": ["s_x", "s_p", "s_x_legacy", "s_p_legacy"]},
    "fig3": {"n": [2], "r": [2], "phi": [0.0, PI / 6, PI / 4, PI / 3, PI / 2],
             "values": ["s_x", "s_p", "s_x_legacy", "s_p_legacy"]},
    "fig4": {"n": [1], "r": [1], "phi": [0.0, PI / 6, PI / 4, PI / 2], "values": ["s_1", "s_2"]},
    "fig5": {"n": [1, 2, 3], "r": [2, 3, 4], "phi": [0.0], "values": ["s_1", "s_2"]},
    "fig6": {"n": [1, 2, 3], "r": [4], "phi": [0.0, PI / 6, PI / 4, PI / 3, PI / 2],
             "values": ["s_1", "s_2"]},
    "fig7": {"n": [2], "r": [1, 2, 3, 4], "phi": [0.0], "values": ["q_a", "q_b"]},
    "fig8": {"n": [2, 10], "r": [1, 2, 3, 4], "phi": [0.0], "values": ["g2"]},
}
DEFAULT_T_RANGE = (0.05, 8.0, 120)


def _t_values(t_range) -> list[float]:
    lo, hi, points = t_range
    if points < 2:
        raise ValueError("t range needs at least two points")
    if lo < 0:
        raise ValueError("t range must start at a nonnegative value")
    step = (hi - lo) / (points - 1)
    return [lo + i * step for i in range(points)]


def _figure_row(figure: str, n: int, r: int, phi: float, t: float,
                constants: tuple[float, float, float]) -> list:
    hbar, mass, omega = constants
    params = ModelParams(n, r, hbar, mass, omega)
    z = CoherencePoint.from_t_phi(t, phi)
    row: list = [n, r, phi, t]
    if figure == "fig1":
        row.append(measure_mod.density(measure_mod.MeasureParams(n, r), t) if t > 0
                   else 2.0 * (n + 1) / math.pi if r == 1 else float("nan"))
    elif figure in ("fig2", "fig3"):
        q = obs.quadrature_covariances(params, z, "closed")
        legacy = obs.legacy_quadrature_squeezes(params, z)
        row.extend([q.s_x, q.s_p, legacy[0], legacy[1]])
    elif figure in ("fig4", "fig5", "fig6"):
        sq = obs.su2_squeeze(params, z, "closed")
        row.extend([sq.s1 if sq.s1 is not None else float("nan"),
                    sq.s2 if sq.s2 is not None else float("nan")])
    elif figure == "fig7":
        try:
            q_a, q_b = obs.mandel_q(params, z, "closed")
        except obs.VacuumMode:
            q_a, q_b = obs.mandel_q(params, z, "closed", mode="a"), float("nan")
        row.extend([q_a, q_b])
    elif figure == "fig8":
        try:
            row.append(obs.cross_correlation(params, z, "closed"))
        except obs.DegenerateDenominator:
            row.append(float("nan"))
    else:
        raise ValueError(f"unknown figure {figure!r}")
    return row


def run_figure(figure: str, n_values, r_values, phi_values, t_range,
               constants=(1.0, 1.0, 1.0), threads: int = 1):
    spec = FIGURE_DEFAULTS[figure]
    points = [
        (n, r, phi, t)
        for n in sorted(n_values)
        for r in sorted(r_values)
        for phi in sorted(phi_values)
        for t in _t_values(t_range)
    ]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(
                lambda p: _figure_row(figure, p[0], p[1], p[2], p[3], constants), points))
    else:
        rows = [_figure_row(figure, *p, constants) for p in points]
    rows.sort(key=lambda row: (row[0], row[1], row[2], row[3]))
    header = ["n", "r", "phi", "t"] + spec["values"]
    return header, rows


def cmd_figure(args) -> int:
    figure = args.figure
    spec = FIGURE_DEFAULTS[figure]
    n_values = args.n_list or spec["n"]
    r_values = args.r_list or spec["r"]
    phi_values = args.phi_list or spec["phi"]
    t_range = (args.t_min, args.t_max, args.t_points)
    header, rows = run_figure(figure, n_values, r_values, phi_values, t_range,
                              (args.hbar, args.mass, args.omega), threads=args.threads)
    out = args.out or f"{figure}.csv"
    try:
        if args.format == "json":
            payload = [dict(zip(header, row)) for row in rows]
            write_json(out, payload)
        else:
            write_csv(out, header, rows)
    except OSError as exc:
        print(f"error: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


# ------------------------------------------------------------------ verify


def cmd_verify(args) -> int:
    names = list(verif.SUITES) if args.suite == "all" else [args.suite]
    tols = {}
    if args.dual_tol is not None:
        tols["dual"] = args.dual_tol
    if args.moment_tol is not None:
        tols["moment"] = args.moment_tol
    if args.algebra_tol is not None:
        tols["algebra"] = args.algebra_tol
    reports = verif.run_suites(names, tols)

    if args.format == "json":
        payload = [dataclasses.asdict(rep) | {"passed": rep.passed} for rep in reports]
        write_json(args.out or "-", payload)
    else:
        lines = []
        for rep in reports:
            for c in rep.checks:
                status = "PASS" if c.passed else "FAIL"
                lines.append(f"{rep.suite}/{c.name}: residual={c.residual:.3e} "
                             f"tol={c.tol:.1e} {status}")
            for rec in rep.reconciliations:
                lines.append(f"{rep.suite}/reconciliation {rec.name} [{rec.point}]: "
                             f"implemented={rec.implemented:.6g} legacy={rec.legacy:.6g} "
                             f"({rec.note})")
            lines.append(f"{rep.suite}: {'PASS' if rep.passed else 'FAIL'}")
        text = "\n".join(lines) + "\n"
        if args.out and args.out != "-":
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    return EXIT_OK if all(rep.passed for rep in reports) else EXIT_VERIFY_FAILED


# ------------------------------------------------------------------- state


def cmd_state(args) -> int:
    params = ModelParams(args.n, args.r, args.hbar, args.mass, args.omega)
    z = CoherencePoint.from_t_phi(args.t, args.phi)
    direct = build_state(params, z)
    deformed = build_state_deformed(params, z)
    rows = []
    for k, (c, d) in enumerate(zip(direct.coefficients, deformed.coefficients)):
        rows.append([k, c.real, c.imag, abs(c - d)])
    out = args.out or "-"
    if args.format == "json":
        payload = {
            "params": {"n": params.n, "r": params.r, "t": z.t, "phi": z.phase},
            "coefficients": [{"k": r[0], "re": r[1], "im": r[2], "deformed_residual": r[3]}
                             for r in rows],
            "norm_squared": direct.norm_squared(),
        }
        write_json(out, payload)
    else:
        write_csv(out, ["k", "re", "im", "deformed_residual"], rows)
    return EXIT_OK


# ----------------------------------------------------------------- measure


def cmd_measure(args) -> int:
    p = measure_mod.MeasureParams(args.n, args.r)
    payload = {"n": args.n, "r": args.r, "t": args.t,
               "density": measure_mod.density(p, args.t)}
    if args.moments:
        rep = measure_mod.identity_resolution_check(p)
        payload["moment_residuals"] = list(rep.residuals)
        payload["moments_pass"] = rep.passed
    out = args.out or "-"
    if args.format == "json":
        write_json(out, payload)
    else:
        rows = [["density", payload["density"]]]
        if args.moments:
            for k, res in enumerate(payload["moment_residuals"]):
                rows.append([f"moment_residual_{k}", res])
            rows.append(["moments_pass", str(payload["moments_pass"])])
        write_csv(out, ["field", "value"], rows)
    return EXIT_OK


# ------------------------------------------------------------ CLI plumbing


def _read_config(path: str) -> dict:
    values = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"malformed config line: {raw.strip()!r}")
            key, _, val = line.partition("=")
            values[key.strip()] = val.strip()
    return values

_CONFIG_TYPES = {
    "n": int, "r": int, "t": float, "phi": float,
    "hbar": float, "mass": float, "omega": float,
    "threads": int, "format": str, "out": str,
}


def _apply_config(args: argparse.Namespace, parser: argparse.ArgumentParser) -> None:
    """Config file values fill in anything the command line left at default."""
    if not getattr(args, "config", None):
        return
    try:
        values = _read_config(args.config)
    except (OSError, ValueError) as exc:
        parser.error(str(exc))
    for key, raw in values.items():
        if key not in _CONFIG_TYPES:
            parser.error(f"unknown config key {key!r}")
        if key in args._explicit:
            continue  # command-line flags win
        if hasattr(args, key):
            try:
                setattr(args, key, _CONFIG_TYPES[key](raw))
            except ValueError:
                parser.error(f"bad value for config key {key!r}: {raw!r}")


class _TrackingParser(argparse.ArgumentParser):
    """Remembers which destinations were set explicitly on the command line."""

    def parse_args(self, argv=None, namespace=None):  # type: ignore[override]
        args = super().parse_args(argv, namespace)
        explicit = set()
        argv = list(sys.argv[1:]) if argv is None else list(argv)
        for token in argv:
            if token.startswith("--"):
                explicit.add(token[2:].split("=", 1)[0].replace("-", "_"))
        args._explicit = explicit
        return args


def _add_common(parser):
    parser.add_argument("--n", type=int, default=2, help="level index (n >= 1)")
    parser.add_argument("--r", type=int, default=1, help="generalization order (r >= 1)")
    parser.add_argument("--t", type=float, default=1.0, help="|z|^2")
    parser.add_argument("--phi", type=float, default=0.0, help="phase of z")
    parser.add_argument("--hbar", type=float, default=1.0)
    parser.add_argument("--mass", type=float, default=1.0)
    parser.add_argument("--omega", type=float, default=1.0)
    parser.add_argument("--out", type=str, default=None, help="output path ('-' for stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default="json")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--config", type=str, default=None,
                        help="optional 'key = value' file; flags win over the file")


def build_parser() -> argparse.ArgumentParser:
    parser = _TrackingParser(prog="landau-su2",
                             description="Generalized two-mode su(2) coherent-state toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_expect = sub.add_parser("expect", help="all statistics at one parameter point")
    _add_common(p_expect)
    p_expect.set_defaults(func=cmd_expect)

    p_figure = sub.add_parser("figure", help="deterministic data sweep for one reference figure")
    p_figure.add_argument("figure", choices=sorted(FIGURE_DEFAULTS))
    _add_common(p_figure)
    p_figure.add_argument("--n-list", type=int, nargs="+", default=None)
    p_figure.add_argument("--r-list", type=int, nargs="+", default=None)
    p_figure.add_argument("--phi-list", type=float, nargs="+", default=None)
    p_figure.add_argument("--t-min", type=float, default=DEFAULT_T_RANGE[0])
    p_figure.add_argument("--t-max", type=float, default=DEFAULT_T_RANGE[1])
    p_figure.add_argument("--t-points", type=int, default=DEFAULT_T_RANGE[2])
    p_figure.set_defaults(func=cmd_figure, format="csv")

    p_verify = sub.add_parser("verify", help="run the invariant suites")
    _add_common(p_verify)
    p_verify.add_argument("--suite", choices=("algebra", "states", "observables", "measure", "all"),
                          default="all")
    p_verify.add_argument("--dual-tol", type=float, default=None)
    p_verify.add_argument("--moment-tol", type=float, default=None)
    p_verify.add_argument("--algebra-tol", type=float, default=None)
    p_verify.set_defaults(func=cmd_verify, format="text")
    p_verify.add_argument("--json", dest="format", action="store_const", const="json")

    p_state = sub.add_parser("state", help="coefficients of the state at one label")
    _add_common(p_state)
    p_state.set_defaults(func=cmd_state)

    p_measure = sub.add_parser("measure", help="density value and moment residuals")
    _add_common(p_measure)
    p_measure.add_argument("--moments", action="store_true",
                           help="also verify all n+1 moment conditions")
    p_measure.set_defaults(func=cmd_measure)
    return parser


def main(argv=None) -> int:
    precision = os.environ.get("TOOL_PRECISION", "double").strip().lower()
    if precision not in ("double", "extended"):
        print(f"error: TOOL_PRECISION must be 'double' or 'extended', got {precision!r}",
              file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser()
    args = parser.parse_args(argv)
    _apply_config(args, parser)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
