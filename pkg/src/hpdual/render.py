"""Deterministic text and SVG rendering of profiles, chessboards, and traces.

Text output uses box-drawing and block characters; SVG output is static
shapes and text only, with integer coordinates, so identical inputs always
produce identical bytes and golden-file tests stay stable.  Unequal actual
sizes of the boxes are drawn uniformly; a footnote glyph marks that
simplification.
"""

from __future__ import annotations

from dataclasses import dataclass

from .chessboard import TENSOR, BoxSymbol, ChessboardSpec, Region
from .profiles import LefschetzProfile, validate_profile
from .prover import ProofTrace
from .symbols import AMB, AMB_L

TEXT = "text"
SVG = "svg"

# fixed palette: style tags available for highlights
PALETTE = (
    ("accent1", "#e41a1c"),
    ("accent2", "#377eb8"),
    ("accent3", "#4daf4a"),
    ("accent4", "#984ea3"),
)
_PALETTE_MAP = dict(PALETTE)
_STYLE_GLYPHS = {"accent1": "1", "accent2": "2", "accent3": "3", "accent4": "4"}

_MAX_N = 200
_FOOTNOTE = "~ boxes drawn with uniform size"


@dataclass(frozen=True)
class RenderOptions:
    format: str = TEXT
    cell_size: int = 24
    highlight: tuple[tuple[Region, str], ...] = ()
    serre_columns: bool = False

    def __post_init__(self) -> None:
        if self.format not in (TEXT, SVG):
            raise ValueError(f"format must be {TEXT!r} or {SVG!r}")
        if self.cell_size <= 0:
            raise ValueError("cell size must be positive")
        for _, style in self.highlight:
            if style not in _PALETTE_MAP:
                raise ValueError(f"unknown style tag {style!r}")


def _svg_doc(width: int, height: int, body: list[str]) -> bytes:
    head = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
    )
    return (head + "".join(line + "\n" for line in body) + "</svg>\n").encode("utf-8")


def _rect(x: int, y: int, w: int, h: int, fill: str, stroke: str = "#333333") -> str:
    return (
        f'<rect x="{x}" y="{y}" width="{w}" height="{h}" '
        f'fill="{fill}" stroke="{stroke}" stroke-width="1"/>'
    )


def _text(x: int, y: int, s: str, size: int, anchor: str = "start") -> str:
    return (
        f'<text x="{x}" y="{y}" font-family="monospace" font-size="{size}" '
        f'text-anchor="{anchor}">{_esc(s)}</text>'
    )


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


# ---------------------------------------------------------------------------
# Profile strips.


def render_profile_pair(p: LefschetzProfile, opts: RenderOptions) -> bytes:
    """The N-wide strip: chain diagram unshaded, complementary dual shaded."""
    report = validate_profile(p)
    if not report.valid:
        raise ValueError(f"invalid profile {p.name!r}")
    if p.N > _MAX_N:
        raise ValueError(f"N = {p.N} exceeds the renderable limit {_MAX_N}")
    rows = [
        (j, b) for j, b in enumerate(p.blocks) if not b.is_zero_category
    ]
    if opts.format == TEXT:
        label_w = max([len(_row_label(b)) for _, b in rows] or [0])
        lines = [f"profile {p.name}  N={p.N}  length={p.length}  ({p.orientation})"]
        for j, b in rows:
            cells = "".join("░" if c <= j else "▓" for c in range(p.N))
            lines.append(f"{_row_label(b).ljust(label_w)} |{cells}|")
        lines.append(_FOOTNOTE)
        return ("\n".join(lines) + "\n").encode("utf-8")
    cs = opts.cell_size
    label_pad = 9 * cs
    width = label_pad + p.N * cs + cs
    height = (len(rows) + 2) * cs
    body = [_text(cs // 2, cs, f"profile {p.name}  N={p.N}", cs // 2)]
    for r, (j, b) in enumerate(rows):
        y = (r + 1) * cs + cs // 2
        body.append(_text(cs // 2, y + (2 * cs) // 3, _row_label(b), cs // 2))
        for c in range(p.N):
            fill = "#ffffff" if c <= j else "#bbbbbb"
            body.append(_rect(label_pad + c * cs, y, cs, cs, fill))
    body.append(
        _text(cs // 2, (len(rows) + 2) * cs - cs // 4, _FOOTNOTE, cs // 2)
    )
    return _svg_doc(width, height, body)


def _row_label(b) -> str:
    sign = "+" if b.euler >= 0 else ""
    return f"{b.label} [chi={sign}{b.euler}]"


# ---------------------------------------------------------------------------
# Chessboards.


def _cells_of_region(region: Region) -> set[tuple[int, str, int]]:
    cells = set()
    for box in region:
        cell = _cell_of_box(box)
        if cell is not None:
            cells.add(cell)
    return cells


def _cell_of_box(box: BoxSymbol) -> tuple[int, str, int] | None:
    if box.kind != TENSOR:
        return None
    xf, sf = box.xfactor, box.sfactor
    if xf.kind != AMB or xf.twist != xf.index:
        return None
    if sf.kind == AMB and sf.twist == sf.index:
        return (xf.index, "C", sf.index)
    if sf.kind == AMB_L:
        return (xf.index, "L", sf.index)
    return None


def _columns(spec: ChessboardSpec, serre: bool) -> list[tuple[str, int]]:
    cols: list[tuple[str, int]] = [("C", b) for b in range(spec.l)]
    if serre:
        cols += [("L", b) for b in range(1, spec.l)]
    return cols


def _column_label(tag: str, b: int, l: int) -> str:
    if tag == "C":
        return f"C_{b}({b})" if b else "C_0"
    t = b + 1 - l
    return f"C^L_{b}({t})" if t else f"C^L_{b}"


def render_chessboard(spec: ChessboardSpec, opts: RenderOptions) -> bytes:
    """Grid of boxes A_a(a) [x] C_b(b), optionally with the Serre columns."""
    spec.validate()
    if spec.N > _MAX_N:
        raise ValueError(f"N = {spec.N} exceeds the renderable limit {_MAX_N}")
    i, l = spec.i, spec.l
    serre = opts.serre_columns or any(
        tag == "L"
        for region, _ in opts.highlight
        for cell in _cells_of_region(region)
        for tag in [cell[1]]
    )
    cols = _columns(spec, serre)
    styled: dict[tuple[int, str, int], str] = {}
    for region, style in opts.highlight:
        for cell in _cells_of_region(region):
            styled.setdefault(cell, style)
    if opts.format == TEXT:
        col_w = max(len(_column_label(tag, b, l)) for tag, b in cols) + 1
        row_w = max(len(f"A_{a}({a})") for a in range(i))
        lines = [f"chessboard  i={i}  l={l}  N={spec.N}"]
        header = " " * row_w + "".join(
            _column_label(tag, b, l).rjust(col_w) for tag, b in cols
        )
        lines.append(header)
        for a in range(i - 1, -1, -1):
            row = (f"A_{a}({a})" if a else "A_0").ljust(row_w)
            for tag, b in cols:
                style = styled.get((a, tag, b))
                glyph = _STYLE_GLYPHS[style] if style else "."
                row += glyph.rjust(col_w)
            lines.append(row)
        lines.append(_FOOTNOTE)
        return ("\n".join(lines) + "\n").encode("utf-8")
    cs = opts.cell_size
    left = 5 * cs
    top = 3 * cs
    width = left + len(cols) * cs + cs
    height = top + i * cs + cs
    body = [_text(cs // 2, cs, f"chessboard i={i} l={l} N={spec.N}", cs // 2)]
    for cidx, (tag, b) in enumerate(cols):
        body.append(
            _text(
                left + cidx * cs + cs // 2,
                top - cs // 3,
                _column_label(tag, b, l),
                cs // 3,
                anchor="middle",
            )
        )
    for a in range(i):
        y = top + (i - 1 - a) * cs
        body.append(_text(cs // 2, y + (2 * cs) // 3, f"A_{a}({a})", cs // 3))
        for cidx, (tag, b) in enumerate(cols):
            style = styled.get((a, tag, b))
            fill = _PALETTE_MAP[style] if style else "#ffffff"
            body.append(_rect(left + cidx * cs, y, cs, cs, fill))
    body.append(_text(cs // 2, height - cs // 4, _FOOTNOTE, cs // 3))
    return _svg_doc(width, height, body)


# ---------------------------------------------------------------------------
# Proof traces.


def render_trace(trace: ProofTrace, opts: RenderOptions) -> bytes:
    """Text table of the obligations, or the zig-zag path over the board."""
    if opts.format == TEXT:
        rows = [
            ("phase", "source", "target", "rule", "status"),
        ]
        for o in trace.obligations:
            rows.append(
                (o.phase, str(o.source), str(o.target), o.rule or "-", o.status)
            )
        widths = [max(len(r[c]) for r in rows) for c in range(5)]
        lines = [
            f"trace  i={trace.spec.i}  l={trace.spec.l}  N={trace.spec.N}  "
            f"phase={trace.phase}"
        ]
        for idx, r in enumerate(rows):
            lines.append("  ".join(r[c].ljust(widths[c]) for c in range(5)))
            if idx == 0:
                lines.append("  ".join("-" * widths[c] for c in range(5)))
        failed = sum(1 for o in trace.obligations if not o.discharged)
        lines.append(
            f"summary: {len(trace.obligations)} obligations, {failed} failed"
        )
        return ("\n".join(lines) + "\n").encode("utf-8")
    # SVG: chessboard with the zig-zag arrow path of the elimination order
    from .prover import zigzag_order

    spec = trace.spec
    cs = opts.cell_size
    i, l = spec.i, spec.l
    left, top = 5 * cs, 3 * cs
    cols = _columns(spec, True)
    width = left + len(cols) * cs + cs
    height = top + i * cs + 3 * cs
    body = [
        _text(cs // 2, cs, f"trace i={i} l={l} N={spec.N} phase={trace.phase}", cs // 2)
    ]
    for cidx, (tag, b) in enumerate(cols):
        body.append(
            _text(
                left + cidx * cs + cs // 2,
                top - cs // 3,
                _column_label(tag, b, l),
                cs // 3,
                anchor="middle",
            )
        )
    for a in range(i):
        y = top + (i - 1 - a) * cs
        body.append(_text(cs // 2, y + (2 * cs) // 3, f"A_{a}({a})", cs // 3))
        for cidx, _ in enumerate(cols):
            body.append(_rect(left + cidx * cs, y, cs, cs, "#ffffff"))
    points = []
    for beta, alpha in zigzag_order(spec):
        cidx = l + beta - 1  # Serre column block sits after the l plain columns
        x = left + cidx * cs + cs // 2
        y = top + (i - 1 - alpha) * cs + cs // 2
        points.append(f"{x},{y}")
    if points:
        body.append(
            f'<polyline points="{" ".join(points)}" fill="none" '
            f'stroke="#888888" stroke-width="2"/>'
        )
    failed = sum(1 for o in trace.obligations if not o.discharged)
    body.append(
        _text(
            cs // 2,
            height - cs // 2,
            f"summary: {len(trace.obligations)} obligations, {failed} failed",
            cs // 2,
        )
    )
    return _svg_doc(width, height, body)
