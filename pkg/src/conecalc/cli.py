"""``conecalc <command> <scenario> [options]``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 when the
input cannot be used.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .charcycle import TableInvariantError, cell_cc_table, cell_pipeline_sum
from .cones import ImproperProjectionError
from .density import density_function
from .exact import NonGenericError, format_fraction
from .localization import DecompositionError, decompose_multiplicity, localization_series
from .plot import heckman_overlays, parse_window, render_svg, term_overlays
from .sampling import resolve_seed
from .scenario import BUILTINS, Scenario, ScenarioError, load, write_examples
from .toric import brianchon_gram_sum
from .verify import (
    DEFAULT_LATTICE_DILATIONS,
    bg_checks,
    cc_checks,
    heckman_checks,
    heckman_sum,
    lattice_checks,
    moment_checks,
    verify,
)

COMMANDS = ("heckman", "bg", "cc", "moments", "lattice-count", "verify", "plot", "examples")
EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise InputError(message)


def cmd_heckman(sc: Scenario, args) -> tuple[dict, list]:
    _need(sc.direction_v is not None, "scenario has no direction_v")
    H = heckman_sum(sc)
    f = density_function(H)
    result = {
        "direction_v": [format_fraction(c) for c in sc.direction_v],
        "decompositions": [decompose_multiplicity(d, sc.direction_v).to_json() for d in sc.fixed_points],
        "terms": H.to_json(),
        "density_table": [
            {"point": [format_fraction(c) for c in p.point], "density": format_fraction(f(p.point))}
            for p in sc.probes
        ],
    }
    return result, heckman_checks(sc, args.samples, args.seed)


def cmd_bg(sc: Scenario, args) -> tuple[dict, list]:
    _need(sc.polytope is not None, "bg needs a polytope")
    return {"terms": brianchon_gram_sum(sc.polytope).to_json()}, bg_checks(sc, args.samples, args.seed)


def cmd_cc(sc: Scenario, args) -> tuple[dict, list]:
    _need(sc.circle_s is not None or bool(sc.strata), "cc needs circle_s or strata")
    return {}, cc_checks(sc, args.samples, args.seed)


def cmd_moments(sc: Scenario, args) -> tuple[dict, list]:
    _need(sc.xi0 is not None or bool(sc.directions_xi), "moments needs xi0 or directions_xi")
    result = {}
    if sc.xi0 is not None:
        series = localization_series(sc.fixed_points, sc.xi0, args.order)
        result = {"xi0": [format_fraction(c) for c in sc.xi0], "series": series.format(), "order": series.order}
    return result, moment_checks(sc, args.order)


def cmd_lattice(sc: Scenario, args) -> tuple[dict, list]:
    _need(sc.polytope is not None, "lattice-count needs a polytope")
    if args.d is None:
        dilations = DEFAULT_LATTICE_DILATIONS
    else:
        _need(args.d >= 1, "--d must be positive")
        dilations = sorted({d for d in DEFAULT_LATTICE_DILATIONS if d < args.d} | {args.d})
    return {}, lattice_checks(sc, dilations)


def cmd_verify(sc: Scenario, args) -> tuple[dict, list]:
    return {}, verify(sc, args.samples, args.seed, args.order)


def cmd_plot(sc: Scenario, args) -> tuple[dict, list]:
    _need(sc.rank in (1, 2), "only rank 1 and 2 scenarios can be plotted")
    window_text = args.window or sc.param("window")
    _need(window_text is not None, "plot needs --window")
    try:
        window = parse_window(window_text, sc.rank)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    res = args.res or sc.param("res", 100)
    _need(res >= 1, "--res must be positive")
    measure = args.measure
    if measure == "heckman":
        _need(sc.direction_v is not None, "scenario has no direction_v")
        cone_sum, overlays = heckman_sum(sc), heckman_overlays(sc.fixed_points, sc.direction_v)
    elif measure == "bg":
        _need(sc.polytope is not None, "bg plot needs a polytope")
        cone_sum = brianchon_gram_sum(sc.polytope)
        overlays = term_overlays(cone_sum)
    else:
        _need(sc.polytope is not None and sc.circle_s is not None, "cells plot needs a polytope and circle_s")
        cone_sum = cell_pipeline_sum(cell_cc_table(sc.polytope, sc.circle_s))
        overlays = term_overlays(cone_sum)
    svg = render_svg(cone_sum, window, res, overlays, title=f"{sc.name}: {measure}", seed=args.seed)
    path = Path(args.out or f"{sc.name}-{measure}.svg")
    path.write_text(svg)
    return {"svg": str(path), "measure": measure, "window": window_text, "res": res}, []


HANDLERS = {
    "heckman": cmd_heckman,
    "bg": cmd_bg,
    "cc": cmd_cc,
    "moments": cmd_moments,
    "lattice-count": cmd_lattice,
    "verify": cmd_verify,
    "plot": cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conecalc", description="Exact Duistermaat-Heckman cone sums and their checks.")
    p.add_argument("--version", action="version", version=f"conecalc {__version__}")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("scenario", help=f"scenario JSON path or built-in name ({', '.join(BUILTINS)}); for 'examples', a directory")
    p.add_argument("--d", type=int, help="largest dilation for lattice-count")
    p.add_argument("--order", type=int, default=4, help="Laurent truncation order")
    p.add_argument("--samples", type=int, default=24, help="sample points per measure comparison")
    p.add_argument("--seed", type=int, help="sampling seed (CONECALC_SEED overrides)")
    p.add_argument("--window", help="plot window a:b[,c:d]")
    p.add_argument("--res", type=int, help="plot cells per axis")
    p.add_argument("--measure", choices=("heckman", "bg", "cells"), default="heckman", help="what to plot")
    p.add_argument("--out", help="report path (JSON) or, for plot, the SVG path")
    return p


def _join_window(argv: list[str]) -> list[str]:
    # windows start with a minus sign more often than not; argparse would read them as flags
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--window" and i + 1 < len(argv):
            out.append(f"--window={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def run(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_join_window(argv))
    args.seed = resolve_seed(args.seed)
    if args.command == "examples":
        paths = write_examples(args.scenario)
        print(json.dumps({"command": "examples", "written": [str(p) for p in paths]}, indent=2))
        return EXIT_OK
    try:
        sc = load(args.scenario)
        result, checks = HANDLERS[args.command](sc, args)
    except (ScenarioError, InputError, OSError) as exc:
        print(f"conecalc: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DecompositionError, TableInvariantError, ImproperProjectionError, NonGenericError) as exc:
        print(f"conecalc: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    passed = all(c.passed for c in checks)
    report = {
        "command": args.command,
        "scenario": sc.name,
        "digest": sc.digest(),
        "seed": args.seed,
        "passed": passed,
        "checks": [c.to_json() for c in checks],
        "result": result,
    }
    text = json.dumps(report, indent=2) + "\n"
    if args.out and args.command != "plot":
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
