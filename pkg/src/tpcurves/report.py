"""Deterministic CSV / JSON / SVG emission.

Identical inputs must produce byte-identical outputs: floats are formatted
with 17 significant digits in CSV, JSON keys are sorted, CSV uses LF line
endings and UTF-8, and the SVG writer emits fixed-precision coordinates
with no timestamps or generated ids.
"""

import json

__all__ = ["fmt", "write_csv", "to_json", "write_text", "parameter_plot_svg"]


def fmt(x):
    """17 significant digits; enough to round-trip any double."""
    return format(float(x), ".17g")


def write_csv(path, header, rows):
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(x) if isinstance(x, (int, float)) else str(x)
                              for x in row))
    write_text(path, "\n".join(lines) + "\n")


def _canonical(obj):
    if isinstance(obj, float):
        # Round-trip through the fixed format so JSON output is stable.
        return float(fmt(obj))
    if isinstance(obj, dict):
        return {k: _canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_canonical(v) for v in obj]
    return obj


def to_json(obj):
    return json.dumps(_canonical(obj), sort_keys=True, indent=2) + "\n"


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def parameter_plot_svg(u_range, v_range, polyline, seed=None,
                       width=640, height=480):
    """Static plot of the parameter domain with a traced polyline."""
    margin = 40.0
    u0, u1 = u_range
    v0, v1 = v_range
    su = (width - 2 * margin) / (u1 - u0)
    sv = (height - 2 * margin) / (v1 - v0)

    def px(u, v):
        return (margin + (u - u0) * su,
                height - margin - (v - v0) * sv)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
        f'height="{height}" viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<rect x="{margin:.2f}" y="{margin:.2f}" '
        f'width="{width - 2 * margin:.2f}" height="{height - 2 * margin:.2f}" '
        'fill="none" stroke="#888" stroke-width="1"/>',
    ]
    if len(polyline):
        points = " ".join(f"{x:.4f},{y:.4f}"
                          for x, y in (px(u, v) for u, v in polyline))
        parts.append(f'<polyline points="{points}" fill="none" '
                     'stroke="#1f77b4" stroke-width="1.5"/>')
    if seed is not None:
        x, y = px(seed[0], seed[1])
        parts.append(f'<circle cx="{x:.4f}" cy="{y:.4f}" r="4" '
                     'fill="#d62728"/>')
    parts.append(
        f'<text x="{margin:.2f}" y="{height - 12:.2f}" font-size="12" '
        f'fill="#444">u: [{fmt(u0)}, {fmt(u1)}]  v: [{fmt(v0)}, {fmt(v1)}]'
        '</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
