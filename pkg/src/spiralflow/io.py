"""File output: atomic writes, CSV tables and stroke-only SVG curves."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import tempfile
from pathlib import Path

import numpy as np

from .flow import CurveSample, fmt17


def atomic_write_text(path, text: str) -> Path:
    """Write ``text`` to ``path`` via a temporary file and an atomic rename.

    Either the old file survives untouched or the new one is complete.
    """
    path = Path(path)
    directory = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except FileNotFoundError:
            pass
        raise
    return path


def dumps_json(obj) -> str:
    """Canonical JSON: sorted keys, non-finite floats as null, trailing newline."""
    return json.dumps(_finite(obj), sort_keys=True, indent=2) + "\n"


def _finite(o):
    if isinstance(o, float) and not math.isfinite(o):
        return None
    if isinstance(o, dict):
        return {k: _finite(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [_finite(v) for v in o]
    if isinstance(o, np.floating):
        return _finite(float(o))
    if isinstance(o, np.integer):
        return int(o)
    return o


def table_csv(header: list[str], columns: list) -> str:
    """CSV with every float printed to 17 significant digits (round-trips exactly)."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    cols = [np.asarray(c, dtype=np.float64) for c in columns]
    for row in zip(*cols):
        w.writerow([fmt17(v) for v in row])
    return buf.getvalue()


def read_table_csv(text: str) -> tuple[list[str], np.ndarray]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ValueError("empty CSV")
    data = np.array([[float(v) for v in r] for r in rows[1:]], dtype=np.float64)
    return rows[0], data.reshape(len(rows) - 1, len(rows[0]))


# ---------------------------------------------------------------------------
# SVG

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f")


def _num(v: float) -> str:
    return format(float(v), ".6g")


def curves_svg(samples: list[CurveSample], *, size: int = 480, margin: float = 0.05) -> str:
    """Polylines of the curves in one equal-aspect viewBox.

    The y axis is flipped so Im z points up.  Each curve ends in an arrow
    marking the direction of increasing x.
    """
    if not samples:
        raise ValueError("nothing to draw")
    re = np.concatenate([s.zs.real for s in samples])
    im = np.concatenate([s.zs.imag for s in samples])
    span = max(float(re.max() - re.min()), float(im.max() - im.min()), 1e-12)
    pad = margin * span
    x0 = float(re.min()) - pad
    y0 = -float(im.max()) - pad
    w = float(re.max() - re.min()) + 2 * pad
    h = float(im.max() - im.min()) + 2 * pad
    stroke = span / size * 1.5
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{_num(size * h / w)}" '
        f'viewBox="{_num(x0)} {_num(y0)} {_num(w)} {_num(h)}" preserveAspectRatio="xMidYMid meet">',
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="8" refY="5" markerWidth="6" markerHeight="6" '
        'orient="auto-start-reverse"><path d="M0,0 L10,5 L0,10 z" fill="context-stroke"/></marker>',
        "</defs>",
    ]
    for i, s in enumerate(samples):
        pts = " ".join(f"{_num(z.real)},{_num(-z.imag)}" for z in s.zs)
        colour = _PALETTE[i % len(_PALETTE)]
        lines.append(
            f'<polyline data-t="{fmt17(s.t)}" fill="none" stroke="{colour}" '
            f'stroke-width="{_num(stroke)}" marker-end="url(#arrow)" points="{pts}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def graph_svg(x, y, *, size: int = 480, aspect: float = 0.5) -> str:
    """One function graph y(x), scaled to fill a ``size`` by ``aspect*size`` box."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    W, H = float(size), float(size) * aspect
    ylo, yhi = float(y.min()), float(y.max())
    if yhi == ylo:
        yhi = ylo + 1.0
    px = (x - x[0]) / (x[-1] - x[0]) * W
    py = H - (y - ylo) / (yhi - ylo) * H
    pts = " ".join(f"{_num(a)},{_num(b)}" for a, b in zip(px, py))
    axis = H - (0.0 - ylo) / (yhi - ylo) * H
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(W)}" height="{_num(H)}" '
        f'viewBox="0 0 {_num(W)} {_num(H)}">\n'
        f'<line x1="0" y1="{_num(axis)}" x2="{_num(W)}" y2="{_num(axis)}" stroke="#999" stroke-width="0.5"/>\n'
        f'<polyline fill="none" stroke="#1f77b4" stroke-width="1" points="{pts}"/>\n'
        "</svg>\n"
    )
