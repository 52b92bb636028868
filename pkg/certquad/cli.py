"""
certquad CLI
Convergence sweeps, method comparisons, single integrations and inequality checks as CSV
"""

import argparse
import asyncio
import csv
import io
import sys
from typing import Iterable, List, Optional, Sequence

import aiofiles
from pydantic import ValidationError

from certquad.bounds import require_log_bounded
from certquad.checks import CheckReport, run_all
from certquad.engine import SweepRecord, sweep_async
from certquad.errors import CertQuadError, NonFiniteTerm, UsageError
from certquad.log import configure_logging, get_logger
from certquad.plans import CLI_METHOD_NAMES, Method
from certquad.problems import Problem, builtin, from_expression
from certquad.profile import Family
from certquad.settings import CheckSettings, SweepSettings

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_VIOLATION = 3

SWEEP_HEADER = ["n", "h", "M", "N", "evals", "approx", "abs_error", "bound", "skipped"]
CHECK_HEADER = ["name", "samples", "violations", "worst_margin"]
COMPARE_METHODS = ("se-new", "se-existing", "de-new", "de-existing")

logger = get_logger("CLI")


def format_field(value) -> str:
    """CSV text for one value: shortest round-trip floats, true/false, empty for None."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def sweep_row(record: SweepRecord) -> List[str]:
    values = [record.n, record.h, record.M, record.N, record.evals, record.approx, record.abs_error, record.bound]
    return [format_field(v) for v in values] + [format_field(record.skipped)]


def render_csv(header: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


async def emit(text: str, out: Optional[str]) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    async with aiofiles.open(out, "w", newline="") as f:
        await f.write(text)
    logger.info(f"Wrote {out}")


def build_problem(settings: SweepSettings) -> Problem:
    if settings.example is not None:
        return builtin(settings.example)
    profile = settings.profile()
    return from_expression(settings.expr, profile)


def _require_method(settings: SweepSettings) -> str:
    if settings.method is None:
        raise UsageError(f"--method is required, one of {', '.join(CLI_METHOD_NAMES)}")
    return settings.method


async def cmd_sweep(settings: SweepSettings) -> int:
    problem = build_problem(settings)
    method = Method.resolve(_require_method(settings), problem.family)
    records = await sweep_async(problem, method, settings.n.values(), refined=settings.refined)
    await emit(render_csv(SWEEP_HEADER, (sweep_row(r) for r in records)), settings.out)
    return _violation_code(records)


async def cmd_integrate(settings: SweepSettings) -> int:
    if not settings.n.is_single:
        raise UsageError(f"integrate takes a single n, got {settings.n.lo}:{settings.n.hi}:{settings.n.step}")
    return await cmd_sweep(settings)


async def cmd_compare(settings: SweepSettings) -> int:
    problem = build_problem(settings)
    if problem.family is not Family.FINITE:
        raise UsageError("compare needs a finite interval; the existing methods only cover (0, T)")

    methods = [Method.resolve(name, problem.family) for name in COMPARE_METHODS]
    for method in methods:
        require_log_bounded(method, problem.profile_for(method))

    rows = []
    records_all = []
    for method in methods:
        records = await sweep_async(problem, method, settings.n.values())
        records_all.extend(records)
        rows.extend([method.cli_name] + sweep_row(r) for r in records)
    await emit(render_csv(["method"] + SWEEP_HEADER, rows), settings.out)
    return _violation_code(records_all)


async def cmd_check(settings: CheckSettings) -> int:
    reports = await asyncio.to_thread(run_all, settings.samples, settings.seed)
    rows = [[r.name, format_field(r.samples), format_field(r.violations), format_field(r.worst_margin)] for r in reports]
    await emit(render_csv(CHECK_HEADER, rows), settings.out)
    for line in check_summary(reports):
        print(line, file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VIOLATION


def check_summary(reports: Sequence[CheckReport]) -> List[str]:
    lines = []
    for r in reports:
        mark = "ok" if r.passed else "FAILED"
        lines.append(f"{r.name}: {mark} ({r.violations}/{r.samples} violations, worst margin {r.worst_margin:.3e})")
    return lines


def _violation_code(records: Sequence[SweepRecord]) -> int:
    """Exit code for a finished sweep; a row that could not be evaluated outranks a bound violation."""
    violations = [r for r in records if r.violates_bound]
    for r in violations:
        logger.error(f"n={r.n}: abs_error {r.abs_error!r} exceeds bound {r.bound!r}")
    failed = [r for r in records if r.failed]
    for r in failed:
        print(f"certquad: error: n={r.n}: {r.reason}", file=sys.stderr)
    if failed:
        return EXIT_FAILURE
    return EXIT_VIOLATION if violations else EXIT_OK


def _add_problem_arguments(parser: argparse.ArgumentParser, with_method: bool, with_refined: bool) -> None:
    parser.add_argument("--example", type=int, help="Built-in example 1..4")
    parser.add_argument("--expr", help="Integrand expression in t, e.g. 'log(t)/(1+t)'")
    parser.add_argument("--interval", help="0:T for a finite interval or 0:inf")
    parser.add_argument("--decay", choices=["alg", "exp"], help="Decay type on 0:inf")
    parser.add_argument("--K", type=float, dest="K", help="Profile constant K")
    parser.add_argument("--alpha", type=float, help="Left endpoint exponent")
    parser.add_argument("--beta", type=float, help="Right endpoint exponent")
    parser.add_argument("--d", type=float, dest="d", help="Strip half-width")
    if with_method:
        parser.add_argument("--method", choices=CLI_METHOD_NAMES, help="Quadrature method")
    parser.add_argument("--n", required=True, help="n values as LO:HI:STEP or a single N")
    parser.add_argument("--out", help="Write CSV to this file instead of stdout")
    if with_refined:
        parser.add_argument("--refined", action="store_true", help="Use the n-dependent bound constant")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="certquad", description="SE/DE quadrature with certified error bounds")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="More log output on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    _add_problem_arguments(sub.add_parser("sweep", help="Convergence sweep over n"), True, True)
    _add_problem_arguments(sub.add_parser("integrate", help="Single n"), True, True)
    _add_problem_arguments(sub.add_parser("compare", help="New vs existing methods on a finite interval"), False, False)

    check = sub.add_parser("check", help="Sampled checks of the inequalities behind the bounds")
    check.add_argument("--samples", type=int, default=100_000)
    check.add_argument("--seed", type=int, default=42)
    check.add_argument("--out", help="Write CSV to this file instead of stdout")
    return parser


def _settings_from(args: argparse.Namespace):
    fields = {k: v for k, v in vars(args).items() if k not in ("command", "verbose") and v is not None}
    if args.command == "check":
        return CheckSettings(**fields)
    return SweepSettings(**fields)


COMMANDS = {
    "sweep": cmd_sweep,
    "integrate": cmd_integrate,
    "compare": cmd_compare,
    "check": cmd_check,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)

    try:
        settings = _settings_from(args)
        return asyncio.run(COMMANDS[args.command](settings))
    except ValidationError as e:
        messages = "; ".join(err["msg"] for err in e.errors())
        print(f"certquad: error: {messages}", file=sys.stderr)
        return EXIT_USAGE
    except NonFiniteTerm as e:
        print(f"certquad: error: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except (CertQuadError, ValueError) as e:
        print(f"certquad: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
