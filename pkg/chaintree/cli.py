"""Command line interface of chaintree.

Every command writes its result to standard output in a bit-exact format;
notes and warnings go to standard error. Exit codes are listed in
`chaintree.errors.ExitCode`.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Callable, Sequence

from .core import ChainProfile, PruferSequence, RootedDiagram, check_diagram, element_name
from .counting import (
    CountMethod,
    CountTable,
    closed_form_table,
    count_irregular,
    count_irregular_as_printed,
    count_regular,
    recurrence_table,
    series_table,
)
from .crosscheck import MISPRINTED_D3_Q3, run_crosscheck
from .errors import ChaintreeError, ExitCode, MethodDisagreement
from .io import (
    iter_records_csv,
    parse_diagram,
    prepare_csv,
    prepare_diagram,
    prepare_diagram_csv,
    prepare_json_lines,
    prepare_plain,
    prepare_records_csv,
    prepare_sequence,
    prepare_sequence_csv,
    prepare_series,
    prepare_series_csv,
    render_dot,
    table_rows,
)
from .io.formats import prepare_raw_object, series_to_strings
from .oracle import EnumerationBudget, count_unrooted, enumerate_rooted, state_space_size
from .prufer import decode, encode
from .series import solve_H, solve_psi, verify_identities
from .settings import ChaintreeSettings, parse_budget

logger = logging.getLogger(__name__)

PROGRAM = "chaintree"
MISPRINT_NOTE = (
    "note: d_3 for q=3 is 189 (closed form, recurrence, series and exhaustive count "
    "agree); the value 183 found in some listings is a misprint"
)
AS_PRINTED_WATERMARK = "as printed, NOT VALIDATED"


def _write(text: str):
    sys.stdout.write(text)


def _note(text: str):
    print(text, file=sys.stderr)


def _read_input(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except OSError as e:
        raise ValueError(f"cannot read {source}: {e}") from None


def _settings(args: argparse.Namespace) -> ChaintreeSettings:
    settings = ChaintreeSettings.from_environment()
    if getattr(args, "budget", None) is not None:
        settings.oracle_budget = args.budget
    return settings


def _render_tables(tables: list[CountTable], output_format: str) -> str:
    if output_format == "csv":
        return prepare_csv(tables)
    if output_format == "json":
        return prepare_json_lines(table_rows(tables))
    # values from the printed irregular formula always carry their method tag
    labeled = any(table.method is CountMethod.AS_PRINTED for table in tables)
    if len(tables) == 1 and not labeled:
        return prepare_plain(tables[0])
    values = {table.values[-1] for table in tables}
    if len(values) == 1 and not labeled:
        return f"{values.pop()}\n"
    return ",".join(f"{table.method}={table.values[-1]}" for table in tables) + "\n"


def _single(value: int, k: int, method: CountMethod, q: int | None = None,
            profile: ChainProfile | None = None) -> CountTable:
    return CountTable(rows=((k, value),), method=method, q=q, profile=profile)


def _regular_count(q: int, k: int, method: str, budget: EnumerationBudget) -> list[CountTable]:
    methods = (
        [CountMethod.CLOSED_FORM, CountMethod.RECURRENCE, CountMethod.SERIES, CountMethod.ORACLE]
        if method == "all" else [CountMethod(method)]
    )
    tables = []
    for current in methods:
        if current is CountMethod.CLOSED_FORM:
            value = count_regular(q, k)
        elif current is CountMethod.RECURRENCE:
            value = recurrence_table(q, k)[k]
        elif current is CountMethod.SERIES:
            value = series_table(q, k)[k]
        else:
            if k == 0:
                if method == "all":
                    continue
                raise ValueError("the oracle needs at least one element")
            profile = ChainProfile.regular(q, k)
            if method == "all" and not budget.allows(state_space_size(profile)):
                _note(f"note: oracle skipped, {state_space_size(profile)} states "
                      f"exceed the budget of {budget.max_states}")
                continue
            value = count_unrooted(profile, budget)
        tables.append(_single(value, k, current, q=q))
    return tables


def _irregular_count(
        profile: ChainProfile,
        method: str,
        as_printed: bool,
        budget: EnumerationBudget) -> list[CountTable]:
    if method in ("recurrence", "series"):
        raise ValueError(f"method {method!r} only applies to --q/--k counts")
    tables = []
    if method in ("closed", "all"):
        if as_printed:
            printed = count_irregular_as_printed(profile)
            if printed.denominator != 1:
                raise ValueError(f"the printed form gives the non-integer {printed}")
            _note(f"warning: closed form {AS_PRINTED_WATERMARK}")
            tables.append(_single(printed.numerator, profile.k, CountMethod.AS_PRINTED,
                                  profile=profile))
        else:
            tables.append(_single(count_irregular(profile), profile.k, CountMethod.CLOSED_FORM,
                                  profile=profile))
    if method in ("oracle", "all"):
        if method == "all" and not budget.allows(state_space_size(profile)):
            _note(f"note: oracle skipped, {state_space_size(profile)} states "
                  f"exceed the budget of {budget.max_states}")
        else:
            tables.append(_single(count_unrooted(profile, budget), profile.k,
                                  CountMethod.ORACLE, profile=profile))
    return tables


def cmd_count(args: argparse.Namespace) -> int:
    budget = EnumerationBudget.from_settings(_settings(args))
    if args.profile is not None:
        profile = ChainProfile.parse(args.profile)
        tables = _irregular_count(profile, args.method, args.as_printed, budget)
        label = f"profile {profile}"
    else:
        if args.k is None:
            raise ValueError("--q needs --k")
        if args.as_printed:
            raise ValueError("--as-printed only applies to --profile counts")
        tables = _regular_count(args.q, args.k, args.method, budget)
        label = f"q={args.q} k={args.k}"
        if args.q == 3 and args.k == 3:
            _note(MISPRINT_NOTE)
    _write(_render_tables(tables, args.format))
    values = {str(table.method): table.values[-1] for table in tables}
    if len(set(values.values())) > 1:
        raise MethodDisagreement(label, values)
    if len(tables) > 1:
        _note(f"agreement of {len(tables)} methods: {', '.join(values)}")
    return ExitCode.OK


def cmd_table(args: argparse.Namespace) -> int:
    if args.k_max < 0:
        raise ValueError(f"--k-max must be non-negative, got {args.k_max}")
    builders: dict[str, Callable[[int, int], CountTable]] = {
        "closed": closed_form_table,
        "recurrence": recurrence_table,
        "series": series_table,
    }
    table = builders[args.method](args.q, args.k_max)
    if args.q == 3 and args.k_max >= 3:
        _note(MISPRINT_NOTE)
    _write(_render_tables([table], args.format))
    return ExitCode.OK


def _render_diagram(diagram: RootedDiagram, output_format: str) -> str:
    if output_format == "csv":
        return prepare_diagram_csv(diagram)
    if output_format == "dot":
        return render_dot(diagram)
    return prepare_diagram(diagram) + "\n"


def _render_sequence(sequence: PruferSequence, output_format: str) -> str:
    if output_format == "csv":
        return prepare_sequence_csv(sequence)
    if output_format == "json":
        return prepare_sequence(sequence) + "\n"
    return sequence.render() + "\n"


def cmd_encode(args: argparse.Namespace) -> int:
    diagram = check_diagram(parse_diagram(_read_input(args.diagram)))
    _write(_render_sequence(encode(diagram), args.format))
    return ExitCode.OK


def cmd_decode(args: argparse.Namespace) -> int:
    profile = ChainProfile.parse(args.profile)
    sequence = PruferSequence.parse(args.sequence, profile)
    _write(_render_diagram(decode(sequence), args.format))
    return ExitCode.OK


def cmd_dot(args: argparse.Namespace) -> int:
    diagram = check_diagram(parse_diagram(_read_input(args.diagram)))
    _write(_render_diagram(diagram, args.format))
    return ExitCode.OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    profile = _profile_argument(args)
    budget = EnumerationBudget.from_settings(_settings(args))
    budget.require(state_space_size(profile), f"oracle for profile {profile}")
    diagrams = enumerate_rooted(profile, budget)
    output_format = args.format or ("plain" if args.sequences else "json")
    if output_format == "csv":
        if args.sequences:
            columns = ["sequence"]
            records = ({"sequence": encode(d).render()} for d in diagrams)
        else:
            columns = [element_name(element) for element in profile.elements()]
            records = ({element_name(e): p.render() for e, p in d} for d in diagrams)
        for line in iter_records_csv(columns, records):
            _write(line)
    elif args.sequences:
        for diagram in diagrams:
            sequence = encode(diagram)
            if output_format == "json":
                _write(prepare_raw_object([token.render() for token in sequence]) + "\n")
            else:
                _write(sequence.render() + "\n")
    else:
        for diagram in diagrams:
            _write(prepare_diagram(diagram) + "\n")
    return ExitCode.OK


def cmd_series(args: argparse.Namespace) -> int:
    order = args.order if args.order is not None else _settings(args).series_order
    if args.of == "psi":
        series = solve_psi(args.q * (args.q - 1), order)
    else:
        series = solve_H(args.q, order)
    if args.format == "json":
        _write(prepare_series(series) + "\n")
    elif args.format == "csv":
        _write(prepare_series_csv(series))
    else:
        _write(",".join(series_to_strings(series)) + "\n")
    return ExitCode.OK


def cmd_identities(args: argparse.Namespace) -> int:
    order = args.order if args.order is not None else _settings(args).series_order
    report = verify_identities(args.q, order)
    if args.format == "json":
        _write(prepare_raw_object({
            "q": report.q,
            "order": report.order,
            "verified_order": report.verified_order,
            "passed": report.passed,
            "residuals": {name: series_to_strings(r) for name, r in report.residuals.items()},
        }) + "\n")
    elif args.format == "csv":
        _write(prepare_records_csv(
            ("residual", "first_nonzero", "order"),
            (
                {"residual": name, "first_nonzero": r.first_nonzero(), "order": r.order}
                for name, r in report.residuals.items()
            ),
        ))
    else:
        for name, residual in report.residuals.items():
            index = residual.first_nonzero()
            status = "zero" if index is None else f"nonzero at z^{index}"
            _write(f"{name}: {status} through z^{residual.order}\n")
        _write(("PASS" if report.passed else "FAIL") + "\n")
    return ExitCode.OK if report.passed else ExitCode.FAILURE


def cmd_crosscheck(args: argparse.Namespace) -> int:
    settings = _settings(args)
    report = run_crosscheck(
        q_max=args.q_max,
        k_max=args.k_max,
        sum_q_max=args.sum_q_max,
        codec_k_max=args.codec_k_max,
        overrides=MISPRINTED_D3_Q3 if args.inject_183 else None,
        settings=settings,
    )
    if args.format == "json":
        _write(prepare_raw_object(report.to_object()) + "\n")
    elif args.format == "csv":
        _write(prepare_records_csv(
            ("name", "passed", "cases", "failures", "seconds"),
            (
                {**check.to_object(), "failures": len(check.failures)}
                for check in report.checks
            ),
        ))
    else:
        _write(report.render())
    return ExitCode.OK if report.passed else ExitCode.FAILURE


def _profile_argument(args: argparse.Namespace) -> ChainProfile:
    if args.profile is not None:
        return ChainProfile.parse(args.profile)
    if args.q is None or args.k is None:
        raise ValueError("give either --profile or both --q and --k")
    return ChainProfile.regular(args.q, args.k)


def _budget_type(raw: str) -> int:
    try:
        return parse_budget(raw)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROGRAM,
        description="Exact enumeration of tree-type diagrams assembled from oriented chains.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="log progress to standard error (repeat for debug output)")
    commands = parser.add_subparsers(dest="command", required=True)

    def add_budget(command: argparse.ArgumentParser):
        command.add_argument("--budget", type=_budget_type, default=None,
                             help="cap on the oracle's state space (overrides CHAINTREE_BUDGET)")

    count = commands.add_parser("count", help="count diagrams by one or all methods")
    source = count.add_mutually_exclusive_group(required=True)
    source.add_argument("--q", type=int, help="common chain length")
    source.add_argument("--profile", help="comma separated chain lengths, e.g. 1,2,3")
    count.add_argument("--k", type=int, help="number of chains (with --q)")
    count.add_argument("--method", default="closed",
                       choices=["closed", "recurrence", "series", "oracle", "all"])
    count.add_argument("--format", default="plain", choices=["plain", "csv", "json"])
    count.add_argument("--as-printed", action="store_true",
                       help=f"use the literal printed irregular formula ({AS_PRINTED_WATERMARK})")
    add_budget(count)
    count.set_defaults(handler=cmd_count)

    table = commands.add_parser("table", help="print d_0 .. d_kmax for one chain length")
    table.add_argument("--q", type=int, required=True)
    table.add_argument("--k-max", type=int, required=True)
    table.add_argument("--method", default="closed", choices=["closed", "recurrence", "series"])
    table.add_argument("--format", default="plain", choices=["plain", "csv", "json"])
    table.set_defaults(handler=cmd_table)

    encode_ = commands.add_parser("encode", help="encode a diagram (JSON) as a sequence")
    encode_.add_argument("diagram", nargs="?", default="-", help="JSON file, - for stdin")
    encode_.add_argument("--format", default="plain", choices=["plain", "json", "csv"])
    encode_.set_defaults(handler=cmd_encode)

    decode_ = commands.add_parser("decode", help="decode a sequence into a diagram (JSON)")
    decode_.add_argument("--profile", required=True)
    decode_.add_argument("sequence", help='comma separated tokens, e.g. "b2,0,b1,a1,e2"')
    decode_.add_argument("--format", default="json", choices=["json", "csv", "dot"])
    decode_.set_defaults(handler=cmd_decode)

    dot = commands.add_parser("dot", help="render a diagram (JSON) in Graphviz DOT")
    dot.add_argument("diagram", nargs="?", default="-", help="JSON file, - for stdin")
    dot.add_argument("--format", default="dot", choices=["dot", "json", "csv"])
    dot.set_defaults(handler=cmd_dot)

    enumerate_ = commands.add_parser("enumerate", help="list every rooted diagram of a profile")
    enumerate_.add_argument("--profile")
    enumerate_.add_argument("--q", type=int)
    enumerate_.add_argument("--k", type=int)
    enumerate_.add_argument("--sequences", action="store_true",
                            help="print the encoded sequences instead of JSON")
    enumerate_.add_argument("--format", default=None, choices=["json", "csv", "plain"],
                            help="defaults to plain with --sequences, json otherwise")
    add_budget(enumerate_)
    enumerate_.set_defaults(handler=cmd_enumerate)

    series = commands.add_parser("series", help="print coefficients of H_q or psi")
    series.add_argument("--q", type=int, required=True)
    series.add_argument("--of", default="H", choices=["H", "psi"])
    series.add_argument("--order", type=int, default=None)
    series.add_argument("--format", default="plain", choices=["plain", "json", "csv"])
    series.set_defaults(handler=cmd_series)

    identities = commands.add_parser("identities", help="check the functional equations")
    identities.add_argument("--q", type=int, required=True)
    identities.add_argument("--order", type=int, default=None)
    identities.add_argument("--format", default="plain", choices=["plain", "json", "csv"])
    identities.set_defaults(handler=cmd_identities)

    crosscheck = commands.add_parser("crosscheck", help="run every agreement check")
    crosscheck.add_argument("--q-max", type=int, default=3)
    crosscheck.add_argument("--k-max", type=int, default=12)
    crosscheck.add_argument("--sum-q-max", type=int, default=None)
    crosscheck.add_argument("--codec-k-max", type=int, default=None)
    crosscheck.add_argument("--inject-183", action="store_true",
                            help="negative control: use 183 as the closed-form d_3 for q=3")
    crosscheck.add_argument("--format", default="plain", choices=["plain", "json", "csv"])
    add_budget(crosscheck)
    crosscheck.set_defaults(handler=cmd_crosscheck)
    return parser


def _configure_logging(verbosity: int):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s",
                        stream=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    """Run the command line interface and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    _configure_logging(args.verbose)
    try:
        return int(args.handler(args))
    except (ChaintreeError, ValueError) as e:
        code = ExitCode.for_exception(e)
        print(f"{PROGRAM}: {str(code).lower()}: {e}", file=sys.stderr)
        return int(code)
