"""Command-line front end.

Subcommands:

* ``run``    integrate a configured simulation and write its output files
* ``check``  execute a numerical inequality suite, report JSON to stdout
* ``norms``  evaluate norms of a stored snapshot

Exit codes: 0 success (and verdict/suite PASS), 1 a verdict or suite
FAILed, 2 configuration problem, 3 numerical or I/O failure (a JSON
error object is printed in that case).
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from .checks import SUITES, run_suite
from .diagnostics import NumericsError
from .dynamics import CflError
from .multipliers import MultiplierError
from .norms import lq_norm, sobolev_norm
from .presets import RUN_PRESETS
from .runner import ConfigError, RunConfig, load_config_file, run
from .snapshots import SnapshotError, read_snapshot

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

_RUN_OVERRIDES = (
    ("--ic", "ic", str, ("shear", "random", "rough", "file")),
    ("--n", "n", int, None),
    ("--alpha", "alpha", float, None),
    ("--seed", "seed", int, None),
    ("--band", "band", int, None),
    ("--vort-amplitude", "vort_amplitude", float, None),
    ("--rho-amplitude", "rho_amplitude", float, None),
    ("--formulation", "formulation", str, ("vorticity", "zeta")),
    ("--t-final", "t_final", float, None),
    ("--dt", "dt", float, None),
    ("--cfl-safety", "cfl_safety", float, None),
    ("--samples-per-unit", "samples_per_unit", int, None),
    ("--s", "s", float, None),
    ("--q", "q", float, None),
    ("--tail-threshold", "tail_threshold", float, None),
    ("--b-ceiling", "b_ceiling", float, None),
    ("--rho-drift-tol", "rho_drift_tol", float, None),
    ("--vort-snapshot", "vort_snapshot", str, None),
    ("--rho-snapshot", "rho_snapshot", str, None),
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fracbouss",
        description="Pseudo-spectral surface-driven flow simulator and "
        "numerical inequality checker.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="integrate a configured simulation")
    source = p_run.add_mutually_exclusive_group()
    source.add_argument("--preset", choices=sorted(RUN_PRESETS))
    source.add_argument("--config", help="flat TOML file of run settings")
    p_run.add_argument("--outdir", required=True)
    for flag, dest, typ, choices in _RUN_OVERRIDES:
        kwargs = {"dest": dest, "type": typ, "default": None}
        if choices:
            kwargs["choices"] = choices
        p_run.add_argument(flag, **kwargs)

    p_check = sub.add_parser("check", help="run a numerical inequality suite")
    p_check.add_argument("--suite", required=True,
                         choices=sorted(SUITES) + ["all"])
    p_check.add_argument("--trials", type=int, default=None)
    p_check.add_argument("--seed", type=int, default=None)
    p_check.add_argument("--n", type=int, default=None)
    p_check.add_argument("--alpha", type=float, default=None)
    p_check.add_argument("--s", type=float, default=None)
    p_check.add_argument("--q", type=float, default=None)

    p_norms = sub.add_parser("norms", help="norms of a stored snapshot")
    p_norms.add_argument("--snapshot", required=True)
    p_norms.add_argument("--s", type=float, default=1.5)
    p_norms.add_argument("--q", type=float, default=4.0)

    return parser


def _warn_parameter_range(s: float, q: float) -> None:
    if not 2.0 < q < math.inf:
        print(
            f"warning: q = {q:g} is outside the range (2, inf) the "
            "regularity argument covers; proceeding anyway",
            file=sys.stderr,
        )
    if s <= 1.0:
        print(
            f"warning: s = {s:g} is at or below 1, outside the regime the "
            "regularity argument covers; proceeding anyway",
            file=sys.stderr,
        )


def _cmd_run(args) -> int:
    data: dict = {}
    if args.preset:
        data.update(RUN_PRESETS[args.preset])
    elif args.config:
        data.update(load_config_file(args.config))
    for _, dest, _, _ in _RUN_OVERRIDES:
        value = getattr(args, dest)
        if value is not None:
            data[dest] = value
    cfg = RunConfig.from_dict(data)
    _warn_parameter_range(cfg.s, cfg.q)
    result = run(cfg, args.outdir)
    print(json.dumps(result.verdict.to_json_dict(), indent=2))
    return EXIT_OK if result.verdict.passed else EXIT_FAIL


def _cmd_check(args) -> int:
    params = {
        key: getattr(args, key)
        for key in ("trials", "seed", "n", "alpha", "s", "q")
        if getattr(args, key) is not None
    }
    if "s" in params or "q" in params:
        _warn_parameter_range(params.get("s", 1.5), params.get("q", 4.0))
    if args.suite == "all":
        reports = []
        for name in SUITES:
            forward = dict(params)
            if name == "kp" and not 0.0 < forward.get("s", 0.5) < 1.0:
                forward.pop("s", None)
            reports.append(run_suite(name, **forward))
        passed = all(r.passed for r in reports)
        print(json.dumps(
            {"passed": passed, "suites": [r.to_json_dict() for r in reports]},
            indent=2,
        ))
        return EXIT_OK if passed else EXIT_FAIL
    report = run_suite(args.suite, **params)
    print(json.dumps(report.to_json_dict(), indent=2))
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_norms(args) -> int:
    field = read_snapshot(args.snapshot)
    _warn_parameter_range(args.s, args.q)
    out = {
        "file": args.snapshot,
        "n": field.grid.n,
        "length": field.grid.length,
        "lq": {
            "2": lq_norm(field, 2.0),
            f"{args.q:g}": lq_norm(field, args.q),
            "inf": lq_norm(field, math.inf),
        },
        "sobolev": {
            "s": args.s,
            "q": args.q,
            "value": sobolev_norm(field, args.s, args.q),
        },
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    handlers = {"run": _cmd_run, "check": _cmd_check, "norms": _cmd_norms}
    try:
        return handlers[args.command](args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (CflError, NumericsError, SnapshotError, MultiplierError,
            OSError) as exc:
        print(json.dumps({
            "error": {"type": type(exc).__name__, "message": str(exc)}
        }))
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
