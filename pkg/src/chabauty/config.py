"""Flat key-value configuration files with repeated blocks.

    # comment
    [field]
    label = Q(sqrt2)
    poly = -2, 0, 1

    [tower]
    fields = Q, Q(sqrt2)
    embedding = 0

    [curve]
    field = Q(sqrt2)
    points = 0; 1; [0,1]

A key may repeat inside a block; values are kept in order.  Q is always
available as a field label.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ChabautyError, ConfigError
from .numfield import parse_number_field, rational_field, sspec, tower
from .puncture import build_x_alpha_q, curve_from_points, make_curve, parse_element


@dataclass
class Block:
    name: str
    entries: list = field(default_factory=list)

    def get(self, key, default=None):
        vals = self.all(key)
        return vals[-1] if vals else default

    def all(self, key):
        return [v for k, v in self.entries if k == key]

    def has(self, key):
        return any(k == key for k, _ in self.entries)


def parse_config(text):
    blocks = []
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            current = Block(line[1:-1].strip().lower())
            blocks.append(current)
            continue
        if "=" not in line:
            raise ConfigError("line %d: expected key = value" % lineno)
        if current is None:
            raise ConfigError("line %d: entry outside a block" % lineno)
        k, v = line.split("=", 1)
        current.entries.append((k.strip().lower(), v.strip()))
    return blocks


def load_config(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError("cannot read config %s: %s" % (path, exc.strerror)) from exc


def blocks_named(blocks, name):
    return [b for b in blocks if b.name == name]


def one_block(blocks, name, required=True):
    found = blocks_named(blocks, name)
    if len(found) > 1:
        raise ConfigError("more than one [%s] block" % name)
    if not found:
        if required:
            raise ConfigError("missing [%s] block" % name)
        return None
    return found[0]


def int_list(text):
    text = (text or "").strip().strip("[]")
    return [int(x) for x in text.replace(";", ",").split(",") if x.strip()]


def rational_list(text):
    text = (text or "").strip().strip("[]")
    return [Fraction(x.strip()) for x in text.split(",") if x.strip()]


def element_list(text):
    """Semicolon-separated elements; each may be "3", "1/2", "[1,2]" or "1+a"."""
    return [x.strip() for x in (text or "").split(";") if x.strip()]


def truthy(text, default=True):
    if text is None:
        return default
    return text.strip().lower() in ("1", "yes", "true", "on")


def fields_from(blocks):
    """Label -> NumberField from [field] blocks, always including Q."""
    out = {"Q": rational_field()}
    for b in blocks_named(blocks, "field"):
        poly = b.get("poly")
        if poly is None:
            raise ConfigError("[field] block without poly")
        label = b.get("label")
        try:
            F = parse_number_field(int_list(poly), label)
        except (ChabautyError, ValueError) as exc:
            raise ConfigError("field %s: %s" % (label or poly, exc)) from exc
        out[F.label] = F
    return out


def lookup_field(fields, label):
    if label not in fields:
        raise ConfigError("unknown field %r (known: %s)" % (label, ", ".join(sorted(fields))))
    return fields[label]


def tower_from(blocks, fields, base=None):
    b = one_block(blocks, "tower", required=False)
    if b is None:
        if base is None:
            raise ConfigError("missing [tower] block")
        chain = [fields["Q"], base] if base.degree > 1 else [base]
        embs = [[0]] if base.degree > 1 else []
        return tower(chain, embs)
    labels = [x.strip() for x in b.get("fields", "").split(",") if x.strip()]
    chain = [lookup_field(fields, lab) for lab in labels]
    embs = [rational_list(e) for e in b.all("embedding")]
    return tower(chain, embs)


def curve_from(blocks, fields):
    b = one_block(blocks, "curve")
    base = lookup_field(fields, b.get("field", "Q"))
    s = sspec(int_list(b.get("s0", "")))
    label = b.get("label", "")
    if b.has("alpha") or b.has("q"):
        return build_x_alpha_q(base, s, b.get("alpha", "1"), int(b.get("q", "5")))
    inf = truthy(b.get("infinity"), True)
    try:
        if b.has("points"):
            pts = [parse_element(base, x) for x in element_list(b.get("points"))]
            return curve_from_points(base, s, pts, inf, label)
        if b.has("divisor"):
            coeffs = [parse_element(base, x) for x in element_list(b.get("divisor"))]
            return make_curve(base, s, coeffs, inf, label)
    except ValueError as exc:
        raise ConfigError("[curve]: %s" % exc) from exc
    raise ConfigError("[curve] needs points, divisor or alpha and q")
