"""Command-line front end.

Exit status: 0 on success, 1 on usage errors, 2 on data errors.
"""
from __future__ import annotations

import argparse
import contextlib
import sys
import warnings

from . import __version__
from .compare import compare_tables, write_report_csv, write_report_json
from .experiment import (
    DEFAULT_ROWS,
    DEFAULT_SEED,
    RNG_ALGORITHM,
    ExperimentConfig,
    Mode,
    Scenario,
    ScenarioError,
)
from .geometry import (
    DEFAULT_ALTITUDES_M,
    DEFAULT_SEA_LENGTH_M,
    DEFAULT_VISIBILITIES_KM,
    ModelConstants,
)
from .objects import ParseError, default_catalog, load_catalog
from .sensors import ConfigError, HumanEyeConfig
from .sweep import analytic_w, lrc_of, run_scenario, scenario_stream, sweep_all
from .tables import (
    load_reference_table,
    read_results,
    write_lrc_csv,
    write_results_csv,
    write_results_json,
)

EXIT_USAGE = 1
EXIT_DATA = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _csv_list(conv):
    def parse(text):
        try:
            return tuple(conv(v) for v in text.split(",") if v.strip())
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a comma-separated list: {text!r}")
    return parse


def _u64(text):
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return v


def _model_options(p, with_mode=True):
    g = p.add_argument_group("model")
    g.add_argument("--lambda-nm", type=float, default=550.0,
                   help="wavelength of light in nm (default 550)")
    g.add_argument("--pupil-mm", type=float, default=5.0,
                   help="pupil diameter in mm (default 5.0)")
    g.add_argument("--sea-length-m", type=int, default=DEFAULT_SEA_LENGTH_M,
                   help="grid width in metres, one column per metre (default 54200)")
    g.add_argument("--objects", metavar="FILE",
                   help="objects CSV (name,size_m); default is the built-in catalog")
    g.add_argument("--altitudes", type=_csv_list(int), default=DEFAULT_ALTITUDES_M,
                   metavar="M,M,...", help="sensor altitudes in metres")
    g.add_argument("--visibilities", type=_csv_list(float), default=DEFAULT_VISIBILITIES_KM,
                   metavar="KM,KM,...", help="visibilities in km")
    if with_mode:
        g = p.add_argument_group("experiment")
        g.add_argument("--seed", type=_u64, default=DEFAULT_SEED, help="master seed (default 42)")
        g.add_argument("--rows", type=int, default=DEFAULT_ROWS,
                       help="detection opportunities per scenario in mc mode (default 600000)")
        g.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.EXHAUSTIVE.value)


def _scenario_options(p):
    p.add_argument("--object", required=True, help="object name from the catalog")
    p.add_argument("--alt", type=int, required=True, help="sensor altitude in metres")
    p.add_argument("--vis", type=float, required=True, help="visibility in km")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sweepwidth",
                description="Effective sweep width of the human eye searching from a helicopter.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("sweep", help="W for every object, altitude and visibility")
    _model_options(s)
    s.add_argument("--workers", type=int, default=1, help="scenarios run in parallel")
    s.add_argument("--out", help="output file (default stdout)")
    s.add_argument("--format", choices=("csv", "json"), default="csv")

    s = sub.add_parser("lrc", help="lateral range curve CSV for one scenario")
    _model_options(s)
    _scenario_options(s)
    s.add_argument("--out", help="output file (default stdout)")

    s = sub.add_parser("oracle", help="closed-form W for one scenario")
    _model_options(s, with_mode=False)
    _scenario_options(s)

    s = sub.add_parser("compare", help="compare a results file with a reference W table")
    s.add_argument("model", help="results file from `sweepwidth sweep` (CSV or JSON)")
    s.add_argument("reference", help="reference CSV: object,altitude_m,visibility_km,w_km")
    s.add_argument("--out", help="report file (default stdout)")
    s.add_argument("--format", choices=("csv", "json"), default="csv")
    return p


def _load_inputs(args):
    sensor = HumanEyeConfig.from_cli_units(args.lambda_nm, args.pupil_mm)
    constants = ModelConstants(altitudes_m=args.altitudes, visibilities_km=args.visibilities,
                               sea_length_m=args.sea_length_m)
    if args.objects:
        with open(args.objects, encoding="utf-8", newline="") as fh:
            catalog = load_catalog(fh)
    else:
        catalog = default_catalog()
    return sensor, constants, catalog


def _exp_config(args, constants):
    return ExperimentConfig(rows=args.rows, columns=constants.sea_length_m,
                            seed=args.seed, mode=Mode(args.mode))


def _metadata(args, constants, exp_cfg=None):
    meta = {"tool": f"sweepwidth-{__version__}"}
    if exp_cfg is not None:
        meta.update(rng=RNG_ALGORITHM, mode=exp_cfg.mode.value, seed=exp_cfg.seed,
                    rows=exp_cfg.rows)
    meta.update(
        lambda_nm=repr(args.lambda_nm),
        pupil_mm=repr(args.pupil_mm),
        sea_length_m=constants.sea_length_m,
        unlimited_visibility_km=repr(constants.unlimited_visibility_km),
        altitudes_m=",".join(map(str, constants.altitudes_m)),
        visibilities_km=",".join(map(repr, constants.visibilities_km)),
        objects=args.objects or "builtin",
    )
    return meta


def _scenario(args, catalog):
    if args.object not in catalog:
        raise ScenarioError(f"unknown object {args.object!r}")
    return Scenario(catalog[args.object], args.alt, args.vis)


@contextlib.contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            yield fh


def cmd_sweep(args):
    sensor, constants, catalog = _load_inputs(args)
    exp_cfg = _exp_config(args, constants)
    results = sweep_all(catalog, constants, sensor, exp_cfg, workers=max(1, args.workers))
    meta = _metadata(args, constants, exp_cfg)
    with _output(args.out) as out:
        if args.format == "json":
            write_results_json(results, out, meta)
        else:
            write_results_csv(results, out, meta)


def cmd_lrc(args):
    sensor, constants, catalog = _load_inputs(args)
    exp_cfg = _exp_config(args, constants)
    scenario = _scenario(args, catalog)
    stream = scenario_stream(catalog, constants, scenario)
    result, data = run_scenario(scenario, sensor, exp_cfg, constants,
                                stream=stream if stream is not None else 0)
    meta = _metadata(args, constants, exp_cfg)
    meta.update(object=repr(scenario.object.name), altitude_m=scenario.altitude_m,
                visibility_km=repr(scenario.visibility_km), w_km=repr(result.w_km))
    with _output(args.out) as out:
        write_lrc_csv(lrc_of(data, exp_cfg.columns), out, meta)


def cmd_oracle(args):
    sensor, constants, catalog = _load_inputs(args)
    w = analytic_w(sensor, _scenario(args, catalog), constants)
    print(repr(w))


def cmd_compare(args):
    with open(args.model, encoding="utf-8", newline="") as fh:
        model = read_results(fh)
    with open(args.reference, encoding="utf-8", newline="") as fh:
        reference = load_reference_table(fh, known_objects={r.object for r in model})
    report = compare_tables(model, reference)
    with _output(args.out) as out:
        if args.format == "json":
            write_report_json(report, out)
        else:
            write_report_csv(report, out)
    if args.out is not None:
        print(" ".join(f"{k}={v}" for k, v in report.summary().items()))


COMMANDS = {"sweep": cmd_sweep, "lrc": cmd_lrc, "oracle": cmd_oracle, "compare": cmd_compare}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        warnings.showwarning = _show_warning
        try:
            COMMANDS[args.command](args)
        except (ParseError, ScenarioError, ConfigError, ValueError, OSError) as exc:
            print(f"sweepwidth {args.command}: error: {exc}", file=sys.stderr)
            return EXIT_DATA
    return 0


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"sweepwidth: warning: {message}", file=sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
