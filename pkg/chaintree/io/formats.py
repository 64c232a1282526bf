import csv
import io
import json
from fractions import Fraction
from typing import Any, Final, Iterable, Iterator, Sequence

from ..core import (
    ChainProfile,
    PruferSequence,
    RootedDiagram,
    element_name,
    parse_attach_point,
    parse_element_name,
)
from ..counting import CountTable
from ..errors import ParseError
from ..series import FormalPowerSeries

_DIAGRAM_FIELDS: Final[set[str]] = {"profile", "parents"}
_PARENT_FIELDS: Final[set[str]] = {"elem", "attach"}
_PARENT_COLUMNS: Final[tuple[str, str]] = ("elem", "attach")
_SEPARATORS: Final[tuple[str, str]] = (",", ":")


def prepare_raw_object(obj: Any) -> str:
    """Serialise *obj* as compact JSON without spaces."""
    return json.dumps(obj, separators=_SEPARATORS)


def load_raw_object(raw: str | bytes | bytearray | memoryview) -> Any:
    """Parse JSON text, turning decoding failures into `ParseError`."""
    if not isinstance(raw, str):
        try:
            raw = str(raw, encoding="utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"Parse error: {e}") from None
    try:
        return json.loads(raw.strip("\0\r\n\t "))
    except json.JSONDecodeError as e:
        raise ParseError(f"Parse error: {e}") from None


def _check_keys(obj: Any, expected: set[str], what: str):
    if not isinstance(obj, dict):
        raise ParseError(f"Invalid {what}: expected an object, got {type(obj).__name__}")
    missing = expected.difference(obj)
    if missing:
        raise ParseError(f"Invalid {what}: missing {', '.join(repr(k) for k in sorted(missing))}")
    unknown = set(obj).difference(expected)
    if unknown:
        raise ParseError(f"Invalid {what}: unknown {', '.join(repr(k) for k in sorted(unknown))}")


def diagram_to_object(diagram: RootedDiagram) -> dict[str, Any]:
    return {
        "profile": list(diagram.profile.lengths),
        "parents": [
            {"elem": element_name(element), "attach": point.render()}
            for element, point in diagram
        ],
    }


def prepare_diagram(diagram: RootedDiagram) -> str:
    """Return the canonical JSON text of *diagram*."""
    return prepare_raw_object(diagram_to_object(diagram))


def diagram_from_object(obj: Any) -> RootedDiagram:
    """Build a `RootedDiagram` from its decoded JSON object.

    The result is not validated against the diagram invariants; only the
    format (keys, element names, attach point syntax and bounds) is checked.
    """
    _check_keys(obj, _DIAGRAM_FIELDS, "diagram")
    lengths = obj["profile"]
    if not isinstance(lengths, list) or not all(
            isinstance(length, int) and not isinstance(length, bool) for length in lengths):
        raise ParseError("Invalid diagram: 'profile' must be an array of integers")
    try:
        profile = ChainProfile(tuple(lengths))
    except ValueError as e:
        raise ParseError(f"Invalid diagram: {e}") from None
    entries = obj["parents"]
    if not isinstance(entries, list):
        raise ParseError("Invalid diagram: 'parents' must be an array")
    parents = {}
    for entry in entries:
        _check_keys(entry, _PARENT_FIELDS, "parent entry")
        if not isinstance(entry["elem"], str) or not isinstance(entry["attach"], str):
            raise ParseError("Invalid parent entry: 'elem' and 'attach' must be strings")
        element = parse_element_name(entry["elem"], profile.k)
        if element in parents:
            raise ParseError(f"Invalid diagram: element {entry['elem']!r} is listed twice")
        parents[element] = parse_attach_point(entry["attach"], profile)
    try:
        return RootedDiagram.from_mapping(profile, parents)
    except ValueError as e:
        raise ParseError(f"Invalid diagram: {e}") from None


def parse_diagram(raw: str | bytes | bytearray | memoryview) -> RootedDiagram:
    """Parse the canonical JSON text of a diagram."""
    return diagram_from_object(load_raw_object(raw))


def series_to_strings(series: FormalPowerSeries) -> list[str]:
    """Return the coefficients as exact fraction strings such as ``"45/2"``."""
    return [str(c) for c in series]


def prepare_series(series: FormalPowerSeries) -> str:
    return prepare_raw_object(series_to_strings(series))


def parse_series(raw: str | bytes | bytearray | memoryview) -> FormalPowerSeries:
    obj = load_raw_object(raw)
    if not isinstance(obj, list) or not obj or not all(isinstance(c, str) for c in obj):
        raise ParseError("Invalid series: expected a non-empty array of fraction strings")
    try:
        return FormalPowerSeries(Fraction(c) for c in obj)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"Invalid series: {e}") from None


def _label(table: CountTable) -> tuple[str, str]:
    if table.profile is not None:
        return "profile", table.profile.render()
    return "q", str(table.q)


def table_rows(tables: Iterable[CountTable]) -> list[dict[str, Any]]:
    """Flatten count tables into row objects in table order."""
    rows = []
    for table in tables:
        key, label = _label(table)
        for k, value in table.rows:
            rows.append({
                key: table.q if table.profile is None else label,
                "k": k,
                "d_k": value,
                "method": str(table.method),
            })
    return rows


def prepare_csv(tables: Iterable[CountTable]) -> str:
    """Render tables as CSV with header ``q,k,d_k,method`` (``profile`` for irregular ones)."""
    tables = list(tables)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header_key = "profile" if any(table.profile is not None for table in tables) else "q"
    writer.writerow([header_key, "k", "d_k", "method"])
    for table in tables:
        _, label = _label(table)
        for k, value in table.rows:
            writer.writerow([label, k, value, table.method])
    return buffer.getvalue()


def prepare_json_lines(rows: Iterable[Any]) -> str:
    return "".join(prepare_raw_object(row) + "\n" for row in rows)


def prepare_plain(table: CountTable) -> str:
    """Render the values of one table as a comma separated line, e.g. ``1,1,4,32``."""
    return ",".join(str(value) for value in table.values) + "\n"


def parse_csv(text: str) -> list[dict[str, str]]:
    """Read CSV produced by `prepare_csv` back into row dictionaries."""
    return list(csv.DictReader(io.StringIO(text)))


def _drain(buffer: io.StringIO) -> str:
    text = buffer.getvalue()
    buffer.seek(0)
    buffer.truncate(0)
    return text


def iter_records_csv(
        columns: Sequence[str],
        records: Iterable[dict[str, Any]]) -> Iterator[str]:
    """Yield the CSV header line naming *columns*, then one line per record.

    Lines are produced as the records are consumed, so arbitrarily long
    enumerations can be streamed.
    """
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=list(columns), lineterminator="\n")
    writer.writeheader()
    yield _drain(buffer)
    for record in records:
        writer.writerow(record)
        yield _drain(buffer)


def prepare_records_csv(columns: Sequence[str], records: Iterable[dict[str, Any]]) -> str:
    return "".join(iter_records_csv(columns, records))


def prepare_diagram_csv(diagram: RootedDiagram) -> str:
    """Render *diagram* as ``elem,attach`` rows in element order."""
    return prepare_records_csv(_PARENT_COLUMNS, diagram_to_object(diagram)["parents"])


def sequence_to_object(sequence: PruferSequence) -> dict[str, Any]:
    return {
        "profile": list(sequence.profile.lengths),
        "sequence": [token.render() for token in sequence],
    }


def prepare_sequence(sequence: PruferSequence) -> str:
    return prepare_raw_object(sequence_to_object(sequence))


def prepare_sequence_csv(sequence: PruferSequence) -> str:
    """Render *sequence* as ``position,attach`` rows, positions counted from 1."""
    return prepare_records_csv(
        ("position", "attach"),
        ({"position": n, "attach": token.render()} for n, token in enumerate(sequence, start=1)),
    )


def prepare_series_csv(series: FormalPowerSeries) -> str:
    return prepare_records_csv(
        ("k", "coefficient"),
        ({"k": k, "coefficient": c} for k, c in enumerate(series_to_strings(series))),
    )
