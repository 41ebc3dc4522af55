"""Command-line front end.

Every command computes a table (or a single record) and emits it as CSV or
JSON, deterministically: identical configuration gives byte-identical
output.  Numbers are written with 17 significant digits so they re-parse
exactly.  Exit codes: 0 success, 1 numerical failure (degenerate steady
state, unstable loop), 2 validation error.

Options may come from a JSON config file (``--config``); explicit flags win
over config values, which win over built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import analysis, dynamics, feedback, light, master
from .light import LightKind, Sign
from .superop import basis_state

_LIGHT_KEYS = ("kind", "lambda", "sign", "n", "m", "sign-of-m", "intensity",
               "n-up", "n-down", "m-up", "m-down")

# per-command config keys and hard defaults (None means "required" or "unset")
_COMMANDS = {
    "light": {
        "keys": _LIGHT_KEYS + ("format", "output"),
        "defaults": {"format": "json"},
    },
    "steady": {
        "keys": _LIGHT_KEYS + ("atom", "format", "output"),
        "defaults": {"atom": "3la", "format": "json"},
    },
    "scan": {
        "keys": ("atom", "kinds", "n-min", "n-max", "points", "format", "output", "plot"),
        "defaults": {"atom": "3la", "kinds": "squashed,squeezed,classical",
                     "n-min": 1e-4, "n-max": 0.2, "points": 25, "format": "csv"},
    },
    "transient": {
        "keys": _LIGHT_KEYS + ("atom", "from", "t-max", "steps", "format", "output", "plot"),
        "defaults": {"atom": "3la", "from": "upper", "t-max": 10.0, "steps": 200,
                     "format": "csv"},
    },
    "rates": {
        "keys": _LIGHT_KEYS + ("format", "output"),
        "defaults": {"format": "csv"},
    },
    "feedback-spectrum": {
        "keys": ("g", "response", "bandwidth", "tau", "omega-min", "omega-max",
                 "points", "format", "output", "plot"),
        "defaults": {"response": "ideal", "tau": 0.0, "omega-min": 0.0,
                     "omega-max": 10.0, "points": 101, "format": "csv"},
    },
    "phase-contour": {
        "keys": _LIGHT_KEYS + ("points", "format", "output", "plot"),
        "defaults": {"points": 361, "format": "csv"},
    },
}


def _add_light_options(sp):
    sp.add_argument("--kind", choices=[k.value for k in LightKind])
    sp.add_argument("--lambda", dest="lambda", type=float, metavar="LAM",
                    help="feedback parameter for squashed light, in [-1, 0)")
    sp.add_argument("--sign", choices=["plus", "minus"],
                    help="which twin-beam quadrature pair is squashed")
    sp.add_argument("--n", type=float, help="photon number N")
    sp.add_argument("--m", type=float, help="classical correlation M, |M| <= N")
    sp.add_argument("--sign-of-m", dest="sign-of-m", type=int, choices=[-1, 1],
                    help="sign of M for maximally squeezed light")
    sp.add_argument("--intensity", type=float,
                    help="photon flux; canonical signs are used for the kind")
    sp.add_argument("--n-up", dest="n-up", type=float, help="custom kind only")
    sp.add_argument("--n-down", dest="n-down", type=float, help="custom kind only")
    sp.add_argument("--m-up", dest="m-up", type=float, help="custom kind only")
    sp.add_argument("--m-down", dest="m-down", type=float, help="custom kind only")


def _add_output_options(sp, plot=False):
    sp.add_argument("--format", choices=["csv", "json"])
    sp.add_argument("--output", metavar="PATH", help="write here instead of stdout")
    sp.add_argument("--config", metavar="PATH", help="JSON file of option values")
    if plot:
        sp.add_argument("--plot", metavar="PATH",
                        help="also render the table as a figure to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squashlight",
        description="Atoms in squeezed, squashed (in-loop), and classical light.")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("light", help="effective rates and quadrature spectra")
    _add_light_options(sp)
    _add_output_options(sp)

    sp = sub.add_parser("steady", help="steady-state density matrix")
    sp.add_argument("--atom", choices=["2la", "3la"])
    _add_light_options(sp)
    _add_output_options(sp)

    sp = sub.add_parser("scan", help="steady upper-level population vs intensity")
    sp.add_argument("--atom", choices=["3la"])
    sp.add_argument("--kinds", help="comma-separated subset of squashed,squeezed,classical")
    sp.add_argument("--n-min", dest="n-min", type=float)
    sp.add_argument("--n-max", dest="n-max", type=float)
    sp.add_argument("--points", type=int)
    _add_output_options(sp, plot=True)

    sp = sub.add_parser("transient", help="cascade-atom trajectory")
    sp.add_argument("--atom", choices=["3la"])
    _add_light_options(sp)
    sp.add_argument("--from", dest="from", choices=["upper", "ground"],
                    help="initial state: upper |3><3| or ground |1><1|")
    sp.add_argument("--t-max", dest="t-max", type=float)
    sp.add_argument("--steps", type=int)
    _add_output_options(sp, plot=True)

    sp = sub.add_parser("rates", help="two-level Bloch decay rates")
    _add_light_options(sp)
    _add_output_options(sp)

    sp = sub.add_parser("feedback-spectrum", help="in-loop quadrature spectra")
    sp.add_argument("--g", type=float, help="round-loop gain")
    sp.add_argument("--response", choices=["ideal", "onepole"])
    sp.add_argument("--bandwidth", type=float, help="one-pole bandwidth")
    sp.add_argument("--tau", type=float, help="loop delay")
    sp.add_argument("--omega-min", dest="omega-min", type=float)
    sp.add_argument("--omega-max", dest="omega-max", type=float)
    sp.add_argument("--points", type=int)
    _add_output_options(sp, plot=True)

    sp = sub.add_parser(
        "phase-contour",
        help="rotated-quadrature spectrum S_X cos^2 + S_Y sin^2 vs angle "
             "(interpretive radial-contour view, valid for real correlations)")
    _add_light_options(sp)
    sp.add_argument("--points", type=int)
    _add_output_options(sp, plot=True)

    return parser


def _resolve_options(args: argparse.Namespace) -> dict:
    """Merge CLI flags, config file, and defaults; reject unknown config keys."""
    command = args.command
    spec = _COMMANDS[command]
    config = {}
    if getattr(args, "config", None):
        with open(args.config, encoding="utf-8") as fh:
            config = json.load(fh)
        if not isinstance(config, dict):
            raise ValueError("config file must hold a JSON object")
        unknown = sorted(set(config) - set(spec["keys"]))
        if unknown:
            raise ValueError(f"unknown config keys for '{command}': {', '.join(unknown)}")
    resolved = {}
    for key in spec["keys"]:
        cli_value = getattr(args, key, None)
        if cli_value is not None:
            resolved[key] = cli_value
        elif key in config:
            resolved[key] = config[key]
        else:
            resolved[key] = spec["defaults"].get(key)
    return resolved


def _require(options: dict, key: str):
    if options.get(key) is None:
        raise ValueError(f"missing required option --{key}")
    return options[key]


def _light_from_options(options: dict) -> light.LightParams:
    kind = _require(options, "kind")
    if kind == "vacuum":
        return light.vacuum()
    if kind == "squashed":
        sign = Sign.MINUS if options.get("sign") == "minus" else Sign.PLUS
        if options.get("lambda") is not None:
            return light.make_squashed(float(options["lambda"]), sign)
        if options.get("intensity") is not None:
            return light.make_squashed(
                light.lambda_for_intensity(float(options["intensity"])), sign)
        raise ValueError("squashed light needs --lambda or --intensity")
    if kind == "squeezed":
        n = options.get("n", None)
        if n is None:
            n = options.get("intensity")
        if n is None:
            raise ValueError("squeezed light needs --n or --intensity")
        sign_of_m = options.get("sign-of-m")
        return light.make_squeezed_max(float(n), -1 if sign_of_m is None else int(sign_of_m))
    if kind == "classical":
        if options.get("intensity") is not None:
            n = float(options["intensity"])
            return light.make_classical(n, -n)
        n = _require(options, "n")
        m = _require(options, "m")
        return light.make_classical(float(n), float(m))
    if kind == "custom":
        values = [_require(options, key) for key in ("n-up", "n-down", "m-up", "m-down")]
        return light.make_custom(*map(float, values))
    raise ValueError(f"unknown light kind: {kind}")


def _fmt(value) -> str:
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _emit(options: dict, header: list, rows: list, single_record=False):
    """Write rows (list of dicts) as CSV or a JSON document."""
    if options["format"] == "json":
        payload = rows[0] if single_record and len(rows) == 1 else rows
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [",".join(header)]
        lines += [",".join(_fmt(row[key]) for key in header) for row in rows]
        text = "\n".join(lines) + "\n"
    if options.get("output"):
        with open(options["output"], "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _maybe_plot(options: dict, make_figure):
    if options.get("plot"):
        from . import plotting

        fig = make_figure(plotting)
        plotting.save_figure(fig, options["plot"])


def _cmd_light(options: dict) -> int:
    p = _light_from_options(options)
    spectra = light.twin_beam_spectra(p)
    record = {
        "kind": p.kind.value,
        "n_up": p.n_up, "n_down": p.n_down, "m_up": p.m_up, "m_down": p.m_down,
        "intensity": light.intensity(p),
        "s_x": spectra.s_x, "s_y": spectra.s_y,
        "s_x_plus": spectra.s_x_plus, "s_y_plus": spectra.s_y_plus,
        "s_x_minus": spectra.s_x_minus, "s_y_minus": spectra.s_y_minus,
    }
    _emit(options, list(record), [record], single_record=True)
    return 0


def _generator_for(options: dict, atom: str):
    p = _light_from_options(options)
    if atom == "2la":
        return p, master.gen_2la_unified(p)
    return p, master.gen_3la_unified(p)


def _cmd_steady(options: dict) -> int:
    atom = options["atom"]
    p, gen = _generator_for(options, atom)
    rho = dynamics.steady_state(gen)
    rows = [{"i": i + 1, "j": j + 1,
             "re": float(rho[i, j].real), "im": float(rho[i, j].imag)}
            for i in range(gen.dim) for j in range(gen.dim)]
    _emit(options, ["i", "j", "re", "im"], rows)
    return 0


def _parse_kinds(text: str) -> list:
    kinds = []
    for token in text.split(","):
        token = token.strip()
        if token not in ("squashed", "squeezed", "classical"):
            raise ValueError(f"scan supports kinds squashed, squeezed, classical; got '{token}'")
        kinds.append(LightKind(token))
    return kinds


def _cmd_scan(options: dict) -> int:
    kinds = _parse_kinds(options["kinds"])
    n_lo, n_hi = float(options["n-min"]), float(options["n-max"])
    points = int(options["points"])
    if not 0 < n_lo <= n_hi:
        raise ValueError(f"need 0 < n-min <= n-max, got ({n_lo}, {n_hi})")
    grid = np.logspace(math.log10(n_lo), math.log10(n_hi), points)
    scan_rows = analysis.population_scan(kinds, grid)
    rows = [{"kind": row.kind.value, "intensity": row.intensity,
             "rho33_numeric": row.rho33_numeric, "rho33_closed": row.rho33_closed_form,
             "abs_err": row.abs_error} for row in scan_rows]
    _emit(options, ["kind", "intensity", "rho33_numeric", "rho33_closed", "abs_err"], rows)
    _maybe_plot(options, lambda plotting: plotting.population_scan_figure(scan_rows))
    return 0


def _cmd_transient(options: dict) -> int:
    _, gen = _generator_for(options, "3la")
    start = options["from"]
    rho0 = basis_state(3, 2 if start == "upper" else 0)
    t_max = float(options["t-max"])
    steps = int(options["steps"])
    if t_max <= 0 or steps < 1:
        raise ValueError("transient needs t-max > 0 and steps >= 1")
    times = np.linspace(0.0, t_max, steps + 1)
    trace = dynamics.transient_trace(gen, rho0, times)
    obs = trace.observables
    rows = [{"t": float(t), "rho11": float(obs["rho11"][k]),
             "rho22": float(obs["rho22"][k]), "rho33": float(obs["rho33"][k]),
             "re_rho13": float(obs["re_rho13"][k])}
            for k, t in enumerate(trace.times)]
    _emit(options, ["t", "rho11", "rho22", "rho33", "re_rho13"], rows)
    _maybe_plot(options, lambda plotting: plotting.transient_figure(trace))
    return 0


def _cmd_rates(options: dict) -> int:
    p = _light_from_options(options)
    rates = master.bloch_rates(p)
    row = {"kind": p.kind.value, "gamma_x": rates.gamma_x, "gamma_y": rates.gamma_y,
           "gamma_z": rates.gamma_z, "c": rates.c}
    _emit(options, list(row), [row], single_record=True)
    return 0


def _cmd_feedback_spectrum(options: dict) -> int:
    g = _require(options, "g")
    if options["response"] == "onepole":
        response = feedback.ResponseSpec.one_pole(float(_require(options, "bandwidth")))
    else:
        response = feedback.ResponseSpec.ideal()
    loop = feedback.FeedbackLoop(g=float(g), tau=float(options["tau"]), response=response)
    omegas = np.linspace(float(options["omega-min"]), float(options["omega-max"]),
                         int(options["points"]))
    curve = feedback.inloop_spectrum(loop, omegas)
    rows = [{"omega": float(w), "s_x": float(x), "s_y": float(y)}
            for w, x, y in zip(curve.omegas, curve.s_x, curve.s_y)]
    _emit(options, ["omega", "s_x", "s_y"], rows)
    _maybe_plot(options, lambda plotting: plotting.spectrum_figure(curve))
    return 0


def _cmd_phase_contour(options: dict) -> int:
    p = _light_from_options(options)
    points = int(options["points"])
    if points < 2:
        raise ValueError("phase contour needs at least 2 points")
    thetas = np.linspace(0.0, 2.0 * math.pi, points)
    values = analysis.phase_contour(p, thetas)
    rows = [{"theta": float(t), "s_q": float(v)} for t, v in zip(thetas, values)]
    _emit(options, ["theta", "s_q"], rows)
    _maybe_plot(options, lambda plotting: plotting.phase_contour_figure(
        thetas, values, label=p.kind.value))
    return 0


_HANDLERS = {
    "light": _cmd_light,
    "steady": _cmd_steady,
    "scan": _cmd_scan,
    "transient": _cmd_transient,
    "rates": _cmd_rates,
    "feedback-spectrum": _cmd_feedback_spectrum,
    "phase-contour": _cmd_phase_contour,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        options = _resolve_options(args)
        return _HANDLERS[args.command](options)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"squashlight: error: {exc}", file=sys.stderr)
        return 2
    except RuntimeError as exc:
        print(f"squashlight: numerical failure: {exc}", file=sys.stderr)
        return 1


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
