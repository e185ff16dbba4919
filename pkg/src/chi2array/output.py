"""Record emission: CSV and JSON with reproducible number formatting.

Floats are written with `repr`, i.e. the shortest decimal that
round-trips to the same double (never more than 17 significant digits).
CSV files are UTF-8 with LF line endings, a mandatory header row, and
optional leading `#` comment lines; JSON output is an array of objects
carrying the same fields.
"""

from __future__ import annotations

import json
from typing import IO, Iterable, Sequence

from .runner import Record

BASE_COLUMNS = ("scenario_id", "time", "observable", "i", "j", "k", "phi", "value")


def format_float(x: float) -> str:
    """Shortest round-trip decimal representation of a double."""
    return repr(float(x))


def _axis_names(records: Sequence[Record]) -> list[str]:
    names: list[str] = []
    for rec in records:
        for name, _ in rec.axes:
            if name not in names:
                names.append(name)
    return names


def csv_header(axis_names: Sequence[str] = ()) -> str:
    return ",".join([BASE_COLUMNS[0], *axis_names, *BASE_COLUMNS[1:]])


def write_csv(records: Sequence[Record], stream: IO[str],
              comments: Iterable[str] = ()) -> None:
    """Write records as CSV; sweep axis columns slot in after scenario_id."""
    axis_names = _axis_names(records)
    for line in comments:
        stream.write(f"# {line}\n")
    stream.write(csv_header(axis_names) + "\n")
    for rec in records:
        coords = dict(rec.axes)
        cells = [rec.scenario_id]
        cells += [format_float(coords[n]) if n in coords else "" for n in axis_names]
        cells += [
            format_float(rec.time),
            rec.observable,
            "" if rec.i is None else str(rec.i),
            "" if rec.j is None else str(rec.j),
            "" if rec.k is None else str(rec.k),
            format_float(rec.phi),
            format_float(rec.value),
        ]
        stream.write(",".join(cells) + "\n")


def write_json(records: Sequence[Record], stream: IO[str],
               comments: Iterable[str] = ()) -> None:
    """Write records as a JSON array of flat objects.

    The output is always a plain array; preset comment lines are a
    CSV-only metadata channel and are dropped here.
    """
    payload = []
    for rec in records:
        entry = {
            "scenario_id": rec.scenario_id,
            "time": rec.time,
            "observable": rec.observable,
            "i": rec.i,
            "j": rec.j,
            "k": rec.k,
            "phi": rec.phi,
            "value": rec.value,
        }
        if rec.axes:
            entry["axes"] = dict(rec.axes)
        payload.append(entry)
    json.dump(payload, stream, indent=1)
    stream.write("\n")


def write_records(records: Sequence[Record], stream: IO[str], fmt: str,
                  comments: Iterable[str] = ()) -> None:
    if fmt == "csv":
        write_csv(records, stream, comments)
    elif fmt == "json":
        write_json(records, stream, comments)
    else:
        raise ValueError(f"unknown output format {fmt!r}")
