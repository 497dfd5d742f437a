"""
Command-line interface: ``mixvol <command> ...``.

Every command prints one JSON document to standard output. The exit status
is 0 when the command succeeded and found no violated inequality, 1 when a
suite or bound comparison found a violation and 2 for invalid input.
"""

import argparse
import json
import logging
import sys
from typing import (
    Any,
    Dict,
    List,
    Optional,
    Sequence,
    Tuple,
)

import mixvol
from mixvol import (
    MixvolError,
    ViolationError,
)
from mixvol.discriminant import (
    load_matrix,
    mixed_discriminant,
    mixed_discriminant_by_interpolation,
)
from mixvol.geometry import (
    load_polytope,
    VPolytope,
)
from mixvol.harness import (
    dump_summary,
    ResultsStore,
    run_suite,
    tightness_survey,
    TRIALS,
)
from mixvol.inradius import (
    check_diskant_bound,
    inradius,
)
from mixvol.mixed_volume import (
    mixed_volume,
    mixed_volume_by_interpolation,
    MixedVolumeQuery,
)
from mixvol.newton import (
    compare_bounds,
    parse_system,
)
from mixvol.util import format_rational

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_ERROR = 2


def _with_multiplicity(value: str) -> Tuple[str, int]:
    """
    Split ``FILE[:MULT]``; a suffix that is not an integer is part of the path.
    """
    path, sep, suffix = value.rpartition(":")
    if sep and suffix.isdigit():
        return path, int(suffix)
    return value, 1


def _dims(value: str) -> List[int]:
    try:
        dims = [int(item) for item in value.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated dimensions, got {value!r}")
    if not dims or any(n < 1 for n in dims):
        raise argparse.ArgumentTypeError(f"dimensions must be positive, got {value!r}")
    return dims


def _groups(value: str) -> List[int]:
    try:
        return [int(item) for item in value.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated group sizes, got {value!r}")


def _emit(data: Dict[str, Any]) -> None:
    print(json.dumps(data, sort_keys=True, indent=2))


def _compute_mixed_volume(args: argparse.Namespace) -> int:
    entries: List[Tuple[VPolytope, int]] = []
    for path, multiplicity in map(_with_multiplicity, args.body):
        entries.append((load_polytope(path), multiplicity))
    query = MixedVolumeQuery(entries)
    value = mixed_volume(query, workers=args.workers)
    output: Dict[str, Any] = {"mixed_volume": format_rational(value), "dim": query.dim}
    if args.check_oracle:
        oracle = mixed_volume_by_interpolation(query)
        output.update(interpolation=format_rational(oracle), agrees=oracle == value)
        if oracle != value:
            _emit(output)
            return EXIT_VIOLATION
    _emit(output)
    return EXIT_OK


def _compute_mixed_discriminant(args: argparse.Namespace) -> int:
    entries = [(load_matrix(path), multiplicity) for path, multiplicity in map(_with_multiplicity, args.matrix)]
    value = mixed_discriminant(entries, workers=args.workers)
    output: Dict[str, Any] = {"mixed_discriminant": format_rational(value)}
    if args.check_oracle:
        oracle = mixed_discriminant_by_interpolation(entries)
        output.update(interpolation=format_rational(oracle), agrees=oracle == value)
        if oracle != value:
            _emit(output)
            return EXIT_VIOLATION
    _emit(output)
    return EXIT_OK


def _inradius(args: argparse.Namespace) -> int:
    k = load_polytope(args.outer)
    l = load_polytope(args.inner)
    result = inradius(k, l)
    output: Dict[str, Any] = {
        "inradius": format_rational(result.lambda_star),
        "translate": [format_rational(x) for x in result.translate],
        "certified": result.verify(k, l),
    }
    if l.is_full_dimensional:
        report = check_diskant_bound(k, l)
        output["diskant_bound"] = format_rational(report.lhs)
        output["diskant_holds"] = report.holds
    _emit(output)
    return EXIT_OK if output["certified"] and output.get("diskant_holds", True) else EXIT_VIOLATION


def _verify(args: argparse.Namespace) -> int:
    store = ResultsStore(args.out) if args.out else None
    result = run_suite(args.inequality, args.trials, args.dim, args.seed, workers=args.workers, store=store)
    ratios = result.ratios
    _emit(
        {
            "inequality_id": args.inequality,
            "trials": args.trials,
            "dims": args.dim,
            "seed": args.seed,
            "asserted": result.asserted,
            "violations": [report.digest for report in result.violations],
            "min_ratio": format_rational(min(ratios)) if ratios else None,
        }
    )
    return EXIT_OK if result.ok else EXIT_VIOLATION


def _survey(args: argparse.Namespace) -> int:
    store = ResultsStore(args.out) if args.out else None
    summary = tightness_survey(args.inequality, args.trials, args.dim, args.seed, store=store, workers=args.workers)
    print(dump_summary(summary))
    return EXIT_VIOLATION if summary["asserted"] and summary["violations"] else EXIT_OK


def _bkk(args: argparse.Namespace) -> int:
    with open(args.system, encoding="utf-8") as f:
        system = parse_system(f.read())
    try:
        comparison = compare_bounds(system, args.group)
    except ViolationError as e:
        _emit({"violations": [report.to_dict() for report in e.reports]})
        return EXIT_VIOLATION
    _emit(dict(comparison.to_dict()))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mixvol", description="Exact mixed volumes and Bezout-type inequalities")
    parser.add_argument("--version", action="version", version=f"%(prog)s {mixvol.get_version()}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="log INFO (-v) or DEBUG (-vv) to stderr")
    parser.add_argument(
        "--workers", type=int, default=None, help="thread count (default: the configured harness workers)"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    compute = commands.add_parser("compute", help="compute a mixed volume or mixed discriminant")
    what = compute.add_subparsers(dest="quantity", required=True)
    volume_parser = what.add_parser("mixed-volume", help="V(K_1^a_1, ..., K_r^a_r) of polytope files")
    volume_parser.add_argument("--body", action="append", required=True, metavar="FILE[:MULT]")
    volume_parser.add_argument("--check-oracle", action="store_true", help="cross-check by interpolation")
    volume_parser.set_defaults(handler=_compute_mixed_volume)
    discriminant_parser = what.add_parser("mixed-discriminant", help="D(M_1^a_1, ..., M_r^a_r) of matrix files")
    discriminant_parser.add_argument("--matrix", action="append", required=True, metavar="FILE[:MULT]")
    discriminant_parser.add_argument("--check-oracle", action="store_true", help="cross-check by interpolation")
    discriminant_parser.set_defaults(handler=_compute_mixed_discriminant)

    radius = commands.add_parser("inradius", help="relative inradius r(K, L)")
    radius.add_argument("--outer", required=True, metavar="FILE", help="polytope K")
    radius.add_argument("--inner", required=True, metavar="FILE", help="polytope L")
    radius.set_defaults(handler=_inradius)

    for name, handler, help_text in (
        ("verify", _verify, "run a seeded inequality suite"),
        ("survey", _survey, "summarize how tight an inequality is on seeded instances"),
    ):
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("--inequality", required=True, choices=sorted(TRIALS))
        sub.add_argument("--trials", type=int, default=100)
        sub.add_argument("--dim", type=_dims, default=[2], metavar="N[,N...]")
        sub.add_argument("--seed", type=int, default=0)
        sub.add_argument("--out", metavar="FILE", help="newline-delimited JSON results")
        sub.set_defaults(handler=handler)

    bkk = commands.add_parser("bkk", help="BKK count against the Bezout bounds")
    bkk.add_argument("--system", required=True, metavar="FILE", help="one Laurent polynomial per line")
    bkk.add_argument("--group", type=_groups, default=None, metavar="a1,...,ar")
    bkk.set_defaults(handler=_bkk)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verbose:
        mixvol.set_stream_logger("mixvol", level=logging.DEBUG if args.verbose > 1 else logging.INFO)
    if args.workers is None:
        args.workers = mixvol.config.harness_int("workers")
    try:
        return args.handler(args)
    except (MixvolError, OSError, ValueError) as e:
        log.debug("Command failed", exc_info=True)
        print(f"mixvol: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
