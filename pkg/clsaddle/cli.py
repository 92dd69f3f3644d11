"""Command line interface.

Exit codes: ``0`` on success, ``2`` for configuration errors and ``3``
for numerical failures, each with a one-line diagnostic on stderr.
"""

import argparse
import contextlib
import logging
import os
import sys

import clsaddle
from clsaddle.config import default_jobs, load_config
from clsaddle.core.assembly import assemble, dump_matrix
from clsaddle.core.contour import build_contour
from clsaddle.core.observables import (
    GridSpec, compute_jk, density_grid, gammas
)
from clsaddle.core.params import DerivedParams
from clsaddle.core.solver import factorize
from clsaddle.errors import (
    ClSaddleError, InvalidConfigValueError, MissingConfigKeyError,
    NumericalError
)
from clsaddle.tools import fit_linear, run_axis_sweep, run_comparison, table


logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _window(text):
    try:
        lo, hi = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            "expected t_lo,t_hi, got {!r}".format(text)
        ) from None
    return lo, hi


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--set", action="append", default=[], metavar="KEY=VALUE",
        help="Override a configuration key (repeatable)."
    )
    common.add_argument(
        "--jobs", type=_positive_int, default=None, metavar="N",
        help="Number of worker processes (default: physical cores)."
    )
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("--verbose", "-v", action="store_true")
    verbosity.add_argument("--quiet", "-q", action="store_true")

    parser = argparse.ArgumentParser(
        prog="clsaddle",
        description="Decoherence widths of the Caldeira-Leggett model."
    )
    parser.add_argument(
        "--version", action="version",
        version="%(prog)s " + clsaddle.__version__
    )
    commands = parser.add_subparsers(dest="command", required=True)

    run = commands.add_parser(
        "run", parents=[common], help="Run a sweep and write CSV tables."
    )
    run.add_argument("config")

    fit = commands.add_parser(
        "fit", parents=[common], help="Refit an existing observables CSV."
    )
    fit.add_argument("csv")
    fit.add_argument("--window", type=_window, required=True)
    fit.add_argument("--series", type=float, default=None)

    grid = commands.add_parser(
        "grid", parents=[common], help="Sample |rho| on a square grid."
    )
    grid.add_argument("config")
    grid.add_argument("--t", type=float, required=True)
    grid.add_argument("--points", type=int, default=101)
    grid.add_argument(
        "--width", type=float, default=5.0,
        help="Half-width of the grid in units of the narrower fall-off."
    )
    grid.add_argument("--out", default=None)

    compare = commands.add_parser(
        "compare", parents=[common],
        help="Compare lattice widths with the continuum oracle."
    )
    compare.add_argument("config")
    compare.add_argument("--out", default=None)

    dump = commands.add_parser(
        "dump-matrix", parents=[common],
        help="Write the assembled matrix as (row, col, re, im) lines."
    )
    dump.add_argument("config")
    dump.add_argument("--t", type=float, required=True)
    dump.add_argument("--out", required=True)
    return parser


def _configure_logging(args):
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(
        level=level, stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s"
    )
    logging.captureWarnings(True)


@contextlib.contextmanager
def _output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", newline="", encoding="utf8") as f:
            yield f


def _fit_path(out):
    stem, ext = os.path.splitext(out)
    return "{}_fit{}".format(stem, ext or ".csv")


def cmd_run(args):
    config = load_config(args.config, args.set)
    if config.out is None:
        raise MissingConfigKeyError("out")
    result = run_axis_sweep(config, args.jobs)
    with _output(config.out) as f:
        table.write_observables(result.rows, f)
    logger.info("Wrote %d row(s) to %s", len(result.rows), config.out)
    if config.fit_window is not None:
        path = _fit_path(config.out)
        with _output(path) as f:
            table.write_fits(result.fits, f)
        logger.info("Wrote %d fit(s) to %s", len(result.fits), path)


def cmd_fit(args):
    try:
        with open(args.csv, newline="", encoding="utf8") as f:
            axis_name, axis_value, points = table.read_series(f, args.series)
    except OSError as exc:
        raise InvalidConfigValueError("csv", args.csv, exc.strerror) from exc
    result = fit_linear(points, args.window)
    table.write_fits([(axis_name, axis_value, result)], sys.stdout)


def _base_form(config, t):
    lattice = config.lattice(t)
    model = config.model
    contour = build_contour(lattice.n_t, lattice.n_beta, model.n_env)
    return assemble(DerivedParams.from_model(model), model, lattice, contour)


def cmd_grid(args):
    config = load_config(args.config, args.set)
    form = _base_form(config, args.t)
    factorization = factorize(form)
    gamma_diag, gamma_offdiag = gammas(*compute_jk(form, factorization))
    grid_spec = GridSpec.around(
        gamma_diag, gamma_offdiag, widths=args.width, n_points=args.points
    )
    grid = density_grid(form, factorization, grid_spec, config.normalization)
    with _output(args.out) as f:
        table.write_grid(grid, f)


def cmd_compare(args):
    config = load_config(args.config, args.set)
    rows = run_comparison(config, args.jobs)
    with _output(args.out) as f:
        table.write_comparison(rows, f)


def cmd_dump_matrix(args):
    config = load_config(args.config, args.set)
    form = _base_form(config, args.t)
    with _output(args.out) as f:
        dump_matrix(form, f)
    logger.info("Wrote %dx%d matrix to %s", form.d, form.d, args.out)


COMMANDS = {
    "run": cmd_run,
    "fit": cmd_fit,
    "grid": cmd_grid,
    "compare": cmd_compare,
    "dump-matrix": cmd_dump_matrix,
}


def _diagnostic(exc):
    return "clsaddle: error: {}".format(" ".join(str(exc).split()))


def main(argv=None):
    """Run the command line and return its exit code."""
    args = build_parser().parse_args(argv)
    _configure_logging(args)
    if args.jobs is None:
        args.jobs = default_jobs()
    try:
        COMMANDS[args.command](args)
    except NumericalError as exc:
        print(_diagnostic(exc), file=sys.stderr)
        return EXIT_NUMERICAL
    except (ClSaddleError, ValueError, OSError) as exc:
        print(_diagnostic(exc), file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK
