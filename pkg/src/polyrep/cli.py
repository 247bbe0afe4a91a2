"""
Command line entry point.

    polyrep sieve --limit L --out cache.bin
    polyrep avg --config exp.cfg
    polyrep decomp --config exp.cfg --n N
    polyrep l2|tolev|kernel --config exp.cfg
    polyrep plot --report r.csv --out dir/

Exit codes: 0 success, 2 configuration error, 3 precondition error,
4 numeric tolerance failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from . import mangoldt
from .errors import ConfigError, PolyrepError
from .lab import experiments
from .lab.config import ExperimentConfig
from .lab.plots import emit_plots

log = logging.getLogger("polyrep")


def _int_list(text):
    try:
        return [int(float(t)) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_config_args(p):
    p.add_argument("--config", help="TOML experiment file")
    p.add_argument("--phi", help="polynomial coefficients 'a1,...,ak'")
    p.add_argument("--j", type=int)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--theta", type=float, dest="h_exponent", help="H = round(N^theta)")
    p.add_argument("--n-grid", type=_int_list, dest="n_grid")
    p.add_argument("--truncation-tol", type=float, dest="truncation_tol")
    p.add_argument("--threads", type=int)
    p.add_argument("--sieve-cache", dest="sieve_cache")
    p.add_argument("--out-dir", dest="out_dir")
    p.add_argument("--json", action="store_true", help="also write a JSON mirror of the report")


def build_parser():
    parser = argparse.ArgumentParser(prog="polyrep", description=__doc__.split("\n\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sieve", help="build a von Mangoldt cache file")
    p.add_argument("--limit", type=int, required=True)
    p.add_argument("--out", required=True)

    for name, text in [("avg", "short-interval average against the main term"),
                       ("decomp", "circle-method decomposition at one N"),
                       ("l2", "major-arc mean-square error scaling"),
                       ("tolev", "mean square of the sum near zero"),
                       ("kernel", "kernel integral against its closed form")]:
        p = sub.add_parser(name, help=text)
        _add_config_args(p)
        if name == "decomp":
            p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("plot", help="SVG charts from a report CSV")
    p.add_argument("--report", required=True)
    p.add_argument("--out", required=True)
    return parser


def _config(args) -> ExperimentConfig:
    base = ExperimentConfig.load(args.config) if args.config else ExperimentConfig()
    overrides = {key: getattr(args, key) for key in
                 ("phi", "j", "epsilon", "h_exponent", "n_grid", "truncation_tol", "threads",
                  "sieve_cache", "out_dir")}
    return base.replace(**overrides)


def _emit(report, config, as_json):
    for path in report.write(config.out_dir, as_json):
        print(f"wrote {path}")
    sys.stdout.write(report.to_csv())
    for key, value in report.summary.items():
        print(f"# {key}: {value}")


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.command == "sieve":
        table = mangoldt.build(args.limit)
        mangoldt.save_cache(table, args.out)
        print(f"wrote {args.out} (limit {table.limit}, psi = {mangoldt.chebyshev_psi(table, table.limit):.6f})")
        return 0
    if args.command == "plot":
        for path in emit_plots(args.report, args.out):
            print(f"wrote {path}")
        return 0

    config = _config(args)
    if args.command == "avg":
        report = experiments.run_average(config)
    elif args.command == "decomp":
        report = experiments.run_decomposition(config, args.n)
    elif args.command == "l2":
        report = experiments.run_l2_scaling(config)
    elif args.command == "tolev":
        report = experiments.run_tolev_scaling(config)
    else:
        report = experiments.run_kernel_check(config)
    _emit(report, config, args.json)
    return 0


def main(argv=None):
    try:
        code = run(argv)
    except PolyrepError as exc:
        print(f"polyrep: error: {exc}", file=sys.stderr)
        code = exc.exit_code
    except OSError as exc:
        print(f"polyrep: error: {exc}", file=sys.stderr)
        code = ConfigError.exit_code if isinstance(exc, FileNotFoundError) else 1
    sys.exit(code)


if __name__ == "__main__":
    main()
