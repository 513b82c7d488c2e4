"""Command-line front-end.

Every command prints a property report (text or JSON) and exits with 0 when
all laws pass, 1 when a law fails and 2 on usage or configuration errors.
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .completion import (
    LIFTED_EPS,
    LIFTED_SAMPLES,
    CompletionSpace,
    check_modulus,
    completeness_transfer_check,
    completion_suite,
    load_fixtures,
    select_fixtures,
)
from .conf import fraction_tuple, settings
from .exceptions import ConfigurationError, DomainError, FixtureError, GyrofuzzError
from .fuzzy_metric import (
    Side,
    absolute_metric,
    check_invariance,
    check_klee,
    check_round_trip,
    metric_from_fuzzy_gyronorm,
    standard_fuzzy_metric,
    verify_fuzzy_metric,
    verify_metric,
)
from .gyro_core import verify_gyrogroup_axioms, verify_identities
from .instances import Instance, resolve_instance, table_source
from .norms import (
    check_mobius_sharp_bound,
    fuzzy_from_gyronorm,
    verify_fuzzy_gyronorm,
    verify_gyronorm,
)
from .reals import format_number, to_fraction
from .reports import PropertyReport
from .sampling import resolve_seed
from .table_io import Verdict, load_table, prove_gyrogroup
from .tnorm import TNorm, by_name

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

EVAL_ARITY = {"oplus": 2, "neg": 1, "gyr": 3, "norm": 1, "fuzzynorm": 1, "metric": 2}


def _t_grid(raw: str):
    try:
        grid = fraction_tuple(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"invalid t grid {raw!r}") from exc
    if not grid or any(t <= 0 for t in grid):
        raise argparse.ArgumentTypeError("t grid values must be positive")
    return tuple(sorted(set(grid)))


def _positive_float(raw: str) -> float:
    value = float(raw)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--instance", default="mobius-exact", help="instance selector")
    common.add_argument("--tnorm", default="min", help="min, product, lukasiewicz or file:<path>")
    common.add_argument("--seed", type=int, default=None, help="defaults to GYROFUZZ_SEED or 0")
    common.add_argument("--samples", type=int, default=None)
    common.add_argument("--t-grid", type=_t_grid, default=None, help="e.g. 1/2,1,2")
    common.add_argument("--tolerance", type=_positive_float, default=None)
    common.add_argument("--output", choices=("text", "json"), default="text")
    common.add_argument("--report-file", type=Path, default=None, help="write the report here")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(
        prog="gyrofuzz", description="Law checks for gyrogroups and fuzzy metrics."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    verify = commands.add_parser("verify", parents=[common], help="run every law suite")
    verify.set_defaults(handler=cmd_verify)

    evaluate = commands.add_parser("eval", parents=[common], help="evaluate one operation")
    evaluate.add_argument("expr", choices=tuple(EVAL_ARITY))
    evaluate.add_argument("operands", nargs="*", help="element literals such as 1/2+1/3i")
    evaluate.add_argument("--t", default=None, help="t for fuzzynorm and metric")
    evaluate.set_defaults(handler=cmd_eval)

    klee = commands.add_parser("klee", parents=[common], help="Klee conditions and their audit")
    klee.set_defaults(handler=cmd_klee)

    invariance = commands.add_parser("invariance", parents=[common], help="invariance check")
    invariance.add_argument("--side", choices=[side.value for side in Side], default="left")
    invariance.set_defaults(handler=cmd_invariance)

    complete = commands.add_parser("complete", parents=[common], help="completion demos")
    complete.add_argument("--base", default="q-add", help="q-add or mobius-exact")
    complete.add_argument("--fixture", action="append", default=[], dest="fixtures")
    complete.add_argument("--fixtures-file", type=Path, default=None)
    complete.add_argument("--eps", default=str(LIFTED_EPS))
    complete.set_defaults(handler=cmd_complete)

    table_check = commands.add_parser("table-check", parents=[common], help="prove a table")
    table_check.add_argument("path")
    table_check.set_defaults(handler=cmd_table_check)
    return parser


def configure_logging(verbosity: int):
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, str(settings.LOG_LEVEL).upper(), logging.WARNING)
    logging.basicConfig(
        level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr
    )


def settings_overrides(args) -> dict:
    options = {}
    if args.seed is not None:
        options["SEED"] = args.seed
    if args.samples is not None:
        if args.samples < 1:
            raise ConfigurationError("--samples must be positive")
        options["SAMPLES"] = args.samples
    if args.t_grid is not None:
        options["T_GRID"] = args.t_grid
    return options


def emit(args, report: PropertyReport) -> int:
    text = report.to_json() if args.output == "json" else report.to_text()
    if args.report_file is not None:
        args.report_file.write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _tnorm_for(args, instance: Instance) -> TNorm:
    star = by_name(args.tnorm)
    return star if instance.group.exact else star.as_floating()


def verify_instance(
    instance: Instance,
    tnorm: TNorm,
    n: Optional[int] = None,
    seed: Optional[int] = None,
    t_grid=None,
    tolerance=None,
) -> PropertyReport:
    """Every suite that applies to ``instance``, merged into one report."""
    G = instance.group
    report = PropertyReport(f"verify:{instance.selector}:{tnorm.name}", resolve_seed(seed), 0)
    if instance.table is not None:
        diagnosis = prove_gyrogroup(instance.table)
        report.extend(diagnosis.to_report(), "table")
        if diagnosis.verdict is Verdict.NOT_GYROGROUP:
            return report

    axioms = verify_gyrogroup_axioms(G, n=n, seed=seed)
    report.samples = axioms.samples
    report.extend(axioms, "gyrogroup")
    report.extend(verify_identities(G, n=n, seed=seed), "identities")
    nrm = instance.gyronorm
    if nrm is None:
        return report
    sampled = {"n": n, "seed": seed, "tolerance": tolerance}
    report.extend(verify_gyronorm(nrm, **sampled), "gyronorm")
    if instance.is_mobius:
        report.extend(check_mobius_sharp_bound(G, **sampled), "gyronorm")
    if instance.metric is not None:
        report.extend(verify_metric(instance.metric, **sampled), "metric")

    N = fuzzy_from_gyronorm(nrm, tnorm)
    options = {**sampled, "t_grid": t_grid}
    report.extend(verify_fuzzy_gyronorm(N, **options), "fuzzy-gyronorm")
    M = metric_from_fuzzy_gyronorm(N)
    report.extend(verify_fuzzy_metric(M, **options), "fuzzy-metric")
    report.extend(check_invariance(M, Side.LEFT, **options), "invariance")
    report.extend(check_invariance(M, Side.GYRATION, **options), "invariance")
    report.extend(check_round_trip(N, **options), "round-trip")
    return report


def cmd_verify(args) -> int:
    instance = resolve_instance(args.instance, args.tolerance)
    report = verify_instance(
        instance,
        _tnorm_for(args, instance),
        n=args.samples,
        seed=args.seed,
        t_grid=args.t_grid,
        tolerance=args.tolerance,
    )
    return emit(args, report)


def _require_norm(instance: Instance):
    if instance.gyronorm is None:
        raise ConfigurationError(f"{instance.selector} has no gyronorm")
    return instance.gyronorm


def _time(instance: Instance, raw: Optional[str]):
    if raw is None:
        raise ConfigurationError("--t is required for this expression")
    t = to_fraction(raw) if instance.group.exact else float(raw)
    if not t > 0:
        raise DomainError(f"t must be positive, got {raw}")
    return t


def evaluate_expression(instance: Instance, tnorm: TNorm, expr: str, operands, t=None) -> str:
    G = instance.group
    arity = EVAL_ARITY[expr]
    if len(operands) != arity:
        raise ConfigurationError(f"{expr} takes {arity} operand(s), got {len(operands)}")
    values = [G.parse(literal) for literal in operands]
    if expr == "oplus":
        return G.format(G.oplus(*values))
    if expr == "neg":
        return G.format(G.neg(*values))
    if expr == "gyr":
        return G.format(G.gyr(*values))
    nrm = _require_norm(instance)
    if expr == "norm":
        return format_number(nrm(*values))
    N = fuzzy_from_gyronorm(nrm, tnorm)
    if expr == "fuzzynorm":
        return format_number(N(values[0], _time(instance, t)))
    return format_number(metric_from_fuzzy_gyronorm(N)(*values, _time(instance, t)))


def cmd_eval(args) -> int:
    instance = resolve_instance(args.instance, args.tolerance)
    value = evaluate_expression(
        instance, _tnorm_for(args, instance), args.expr, args.operands, args.t
    )
    if args.output == "json":
        text = json.dumps(
            {"expression": args.expr, "operands": args.operands, "value": value}, sort_keys=True
        )
    else:
        text = value
    if args.report_file is not None:
        args.report_file.write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_PASS


def _fuzzy_metric(args, instance: Instance):
    N = fuzzy_from_gyronorm(_require_norm(instance), _tnorm_for(args, instance))
    return metric_from_fuzzy_gyronorm(N)


def cmd_klee(args) -> int:
    instance = resolve_instance(args.instance, args.tolerance)
    klee = check_klee(
        _fuzzy_metric(args, instance),
        n=args.samples,
        seed=args.seed,
        t_grid=args.t_grid,
        tolerance=args.tolerance,
    )
    report = klee.to_report()
    emit(args, report)
    # a failing condition is a finding; only an inconsistent audit is a failure
    return EXIT_PASS if klee.consistent else EXIT_FAIL


def cmd_invariance(args) -> int:
    instance = resolve_instance(args.instance, args.tolerance)
    report = check_invariance(
        _fuzzy_metric(args, instance),
        Side(args.side),
        n=args.samples,
        seed=args.seed,
        t_grid=args.t_grid,
        tolerance=args.tolerance,
    )
    return emit(args, report)


ADDITIVE_BASES = ("group:q-add", "group:r-add")


def completion_instance(base: str) -> Instance:
    selector = base if ":" in base or base.startswith("mobius") else f"group:{base}"
    instance = resolve_instance(selector)
    if instance.metric is None:
        raise ConfigurationError(f"{base} carries no metric to complete")
    return instance


def _points(space: CompletionSpace, fixtures, explicit: bool):
    points = []
    for fixture in fixtures:
        if not fixture.cauchy:
            continue
        try:
            points.append(fixture.point(space))
        except FixtureError:
            if explicit:
                raise
            logger.info("fixture %s does not fit %s, skipped", fixture.name, space.base.name)
    return points


def cmd_complete(args) -> int:
    eps = to_fraction(args.eps)
    if eps <= 0:
        raise DomainError("--eps must be positive")
    tnorm = by_name(args.tnorm)
    instance = completion_instance(args.base)
    space = CompletionSpace(instance.metric, tnorm, seed=args.seed)
    fixtures = select_fixtures(load_fixtures(args.fixtures_file), args.fixtures)
    report = PropertyReport(f"complete:{space.name}", resolve_seed(args.seed), 0)
    report.extend(space.invariance, "gate")
    if not space.invariant:
        return emit(args, report)

    points = _points(space, fixtures, explicit=bool(args.fixtures))
    if not points:
        raise ConfigurationError(f"no Cauchy fixture fits {space.base.name}")
    for point in points:
        report.extend(check_modulus(point), f"modulus:{point.name}")
    suite = completion_suite(
        space, points, eps, n=args.samples or LIFTED_SAMPLES, t_grid=args.t_grid
    )
    report.samples = suite.samples
    report.extend(suite, "completion")

    if instance.selector in ADDITIVE_BASES:
        # Nc from d, M from 2d: both invariant, so Cauchy sequences must transfer
        names = {point.name for point in points}
        scanned = [f for f in fixtures if f.cauchy is False or f.name in names]
        M = standard_fuzzy_metric(absolute_metric(space.base, 2), tnorm)
        transfer = completeness_transfer_check(M, space.fuzzy, scanned, t_grid=args.t_grid)
        report.extend(transfer, "transfer")
    return emit(args, report)


def cmd_table_check(args) -> int:
    source = table_source(args.path)
    diagnosis = prove_gyrogroup(load_table(source))
    report = diagnosis.to_report(f"table:{source.stem}:{diagnosis.verdict.value}")
    if args.output == "text" and args.report_file is None:
        print(diagnosis.verdict.value)
    return emit(args, report)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        with settings.override(**settings_overrides(args)):
            return args.handler(args)
    except GyrofuzzError as exc:
        print(f"gyrofuzz: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
