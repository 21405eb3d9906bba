"""Circuit JSON, CSV tables and a bare SVG line chart.

Circuit files look like::

    {"schema": 1,
     "inputs": [{"kind": "squeezed_vacuum", "r": 0.1}, {"kind": "vacuum"}],
     "ops": [{"bs": [0, 1], "theta": 0.7853981634}],
     "tracked": [0, 1]}

``theta`` may be the string ``"sweep"`` to mark the angle varied by a sweep.
"""

from __future__ import annotations

import io
import json
import math

from .gauss import KINDS, ModeSpec
from .scenarios import SWEEP, Circuit
from .symplectic import BeamSplitter

SCHEMA_VERSION = 1


class ConfigError(ValueError):
    """Malformed configuration or circuit file."""


def _number(obj, key, where, default=None):
    if key not in obj:
        if default is None:
            raise ConfigError(f"{where}: missing field {key!r}")
        return default
    val = obj[key]
    if isinstance(val, bool) or not isinstance(val, (int, float)) or not math.isfinite(val):
        raise ConfigError(f"{where}.{key}: expected a finite number, got {val!r}")
    return float(val)


def parse_mode(obj, where="inputs[?]") -> ModeSpec:
    if not isinstance(obj, dict):
        raise ConfigError(f"{where}: expected an object")
    kind = obj.get("kind")
    if kind not in KINDS:
        raise ConfigError(f"{where}.kind: expected one of {list(KINDS)}, got {kind!r}")
    unknown = set(obj) - {"kind", "r", "nbar", "squeeze_phase"}
    if unknown:
        raise ConfigError(f"{where}: unknown fields {sorted(unknown)}")
    try:
        return ModeSpec(
            kind,
            r=_number(obj, "r", where, 0.0),
            nbar=_number(obj, "nbar", where, 0.0),
            squeeze_phase=_number(obj, "squeeze_phase", where, 0.0),
        )
    except ValueError as exc:
        raise ConfigError(f"{where}: {exc}") from exc


def parse_circuit(data) -> Circuit:
    """Build a :class:`Circuit` from decoded JSON, naming the offending field on error."""
    if not isinstance(data, dict):
        raise ConfigError("circuit: expected a JSON object")
    schema = data.get("schema", SCHEMA_VERSION)
    if schema != SCHEMA_VERSION:
        raise ConfigError(f"schema: unsupported version {schema!r}")
    unknown = set(data) - {"schema", "inputs", "ops", "tracked"}
    if unknown:
        raise ConfigError(f"circuit: unknown fields {sorted(unknown)}")
    inputs = data.get("inputs")
    if not isinstance(inputs, list) or not inputs:
        raise ConfigError("inputs: expected a non-empty list")
    modes = [parse_mode(m, f"inputs[{i}]") for i, m in enumerate(inputs)]

    ops = []
    raw_ops = data.get("ops", [])
    if not isinstance(raw_ops, list):
        raise ConfigError("ops: expected a list")
    for i, op in enumerate(raw_ops):
        where = f"ops[{i}]"
        if not isinstance(op, dict):
            raise ConfigError(f"{where}: expected an object")
        pair = op.get("bs")
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in pair)):
            raise ConfigError(f"{where}.bs: expected a pair of mode indices")
        theta = op.get("theta")
        if theta != SWEEP:
            theta = _number(op, "theta", where)
        try:
            ops.append(BeamSplitter(pair[0], pair[1], theta))
        except ValueError as exc:
            raise ConfigError(f"{where}.bs: {exc}") from exc

    tracked = data.get("tracked")
    if tracked is not None and (not isinstance(tracked, list)
                                or not all(isinstance(x, int) for x in tracked)):
        raise ConfigError("tracked: expected a list of mode indices")
    try:
        return Circuit(modes, ops, None if tracked is None else tuple(tracked))
    except ValueError as exc:
        raise ConfigError(f"circuit: {exc}") from exc


def load_circuit(path) -> Circuit:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror}") from exc
    return parse_circuit(data)


def circuit_to_json(c: Circuit) -> dict:
    def mode(m):
        d = {"kind": m.kind}
        if m.kind == "squeezed_vacuum":
            d["r"] = m.r
            if m.squeeze_phase:
                d["squeeze_phase"] = m.squeeze_phase
        if m.kind == "thermal":
            d["nbar"] = m.nbar
        return d

    return {
        "schema": SCHEMA_VERSION,
        "inputs": [mode(m) for m in c.inputs],
        "ops": [{"bs": [op.mode_a, op.mode_b], "theta": op.theta} for op in c.ops],
        "tracked": list(c.tracked_modes),
    }


def fmt(x) -> str:
    """Locale-free number formatting with 12 significant digits."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    return format(float(x), ".12g")


def to_csv(header, rows) -> str:
    buf = io.StringIO()
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(fmt(x) for x in row) + "\n")
    return buf.getvalue()


def to_svg(x, series: dict, width=640, height=400, xlabel="theta") -> str:
    """Polyline chart of each series against ``x``, one shared y axis."""
    pad = 50
    xs = [float(v) for v in x]
    ys = [float(v) for s in series.values() for v in s if v is not None]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if y1 - y0 < 1e-12:
        y0, y1 = y0 - 0.5, y1 + 0.5
    if x1 - x0 < 1e-12:
        x1 = x0 + 1.0

    def px(v):
        return pad + (v - x0) / (x1 - x0) * (width - 2 * pad)

    def py(v):
        return height - pad - (v - y0) / (y1 - y0) * (height - 2 * pad)

    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf"]
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect x="{pad}" y="{pad}" width="{width - 2 * pad}" height="{height - 2 * pad}" '
        'fill="none" stroke="black"/>',
        f'<text x="{width / 2:.1f}" y="{height - 10}" text-anchor="middle">{xlabel}</text>',
        f'<text x="5" y="{pad - 5}">{fmt(y1)}</text>',
        f'<text x="5" y="{height - pad + 15}">{fmt(y0)}</text>',
    ]
    for i, (name, vals) in enumerate(series.items()):
        color = colors[i % len(colors)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(xs, vals) if b is not None)
        out.append(f'<polyline fill="none" stroke="{color}" points="{pts}"/>')
        out.append(f'<text x="{width - pad + 5}" y="{pad + 15 * (i + 1)}" fill="{color}" '
                   f'font-size="10">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
