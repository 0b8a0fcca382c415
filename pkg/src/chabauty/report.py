"""Report assembly and serialization: JSON, plain tables and CSV.

Every number is an exact integer or a "num/den" string; floats are rejected.
"""

import csv
import dataclasses
import io
import json
from fractions import Fraction

from .numfield import NumberField, SSpec

SCHEMA_VERSION = 1


def jsonable(obj):
    """Convert a result object into plain JSON data."""
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        raise TypeError("floating-point value %r in report" % (obj,))
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else "%d/%d" % (obj.numerator, obj.denominator)
    if isinstance(obj, NumberField):
        return obj.label
    if isinstance(obj, SSpec):
        return obj.sorted()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [jsonable(v) for v in obj]
        return sorted(items, key=json.dumps) if isinstance(obj, (set, frozenset)) else items
    if hasattr(obj, "to_dict"):
        return jsonable(obj.to_dict())
    if dataclasses.is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    return str(obj)


def parse_rational(value):
    """Inverse of the rational encoding: "3/4" -> Fraction(3, 4), 5 -> 5."""
    if isinstance(value, str) and "/" in value:
        num, den = value.split("/")
        return Fraction(int(num), int(den))
    return value


def make_report(command, instance, results, warnings=(), elapsed_ms=None):
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "instance": jsonable(instance),
        "results": jsonable(results),
        "warnings": list(warnings),
        "timing": {"milliseconds": elapsed_ms},
    }


def payload(report):
    """The report without its timing block, for determinism comparisons."""
    return {k: v for k, v in report.items() if k != "timing"}


def render_json(report):
    return json.dumps(report, sort_keys=True, indent=2)


def render_table(header, rows):
    rows = [[_cell(c) for c in r] for r in rows]
    header = [str(h) for h in header]
    widths = [max([len(header[k])] + [len(r[k]) for r in rows]) for k in range(len(header))]
    lines = [" | ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(),
             "-+-".join("-" * w for w in widths)]
    for r in rows:
        lines.append(" | ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(lines)


def render_csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_cell(c) for c in r])
    return buf.getvalue().rstrip("\n")


def _cell(c):
    v = jsonable(c)
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return "" if v is None else str(v)
