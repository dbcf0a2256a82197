"""Command-line entry point.

Exit codes: 0 success, 1 validation problem, 2 run finished with failed
jobs, 3 I/O or file-format problem.
"""

import argparse
import sys

from ..errors import ConfigurationError, FormatError, RepaxesError

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_PARTIAL = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; 2 is taken, so route
    # usage problems through the validation path instead
    def error(self, message):
        raise ConfigurationError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="repaxes",
        description="Evaluate embeddings along informativeness, equivariance, "
        "invariance, and disentanglement axes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute every job in a config")
    run.add_argument("config", help="path to the run config (JSON)")
    run.add_argument("--force", action="store_true", help="rerun completed jobs")
    run.add_argument("--jobs", type=int, default=1, metavar="N",
                     help="worker pool size (default 1)")

    report = sub.add_parser("report", help="consolidate reports into CSV tables")
    report.add_argument("results_dir", help="output directory of a previous run")

    plot = sub.add_parser("plot", help="render reports as SVG figures")
    plot.add_argument("results_dir", help="output directory of a previous run")

    validate = sub.add_parser("validate", help="check a config without running it")
    validate.add_argument("config", help="path to the run config (JSON)")
    return parser


def _dispatch(args) -> int:
    if args.command == "run":
        from .runner import cmd_run

        summary = cmd_run(args.config, force=args.force, jobs=args.jobs)
        for job in summary.jobs:
            line = f"{job.job_id}: {job.status} ({job.wall_clock_s:.1f}s)"
            if job.error:
                line += f" {job.error}"
            print(line)
        print(f"config hash {summary.config_hash}")
        if summary.failed:
            print(f"{len(summary.failed)} of {len(summary.jobs)} jobs failed", file=sys.stderr)
            return EXIT_PARTIAL
        return EXIT_OK

    if args.command == "report":
        from .tables import cmd_report

        for path in cmd_report(args.results_dir):
            print(path)
        return EXIT_OK

    if args.command == "plot":
        from .plots import cmd_plot

        for path in cmd_plot(args.results_dir):
            print(path)
        return EXIT_OK

    from .runner import cmd_validate

    config = cmd_validate(args.config)
    print(f"config OK: {len(config.jobs)} jobs over {len(config.datasets)} datasets")
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args)
    except FormatError as exc:
        # corrupt or unreadable binary payloads group with I/O problems
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except RepaxesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
