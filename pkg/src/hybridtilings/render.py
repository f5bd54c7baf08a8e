"""SVG drawings of regions, their cut diagonals, and single tilings."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .regions import Region, RegionError, cell_centroid, cell_polygon

__all__ = ["render_region_svg"]

_SCALE = 28.0
_MARGIN = 1.2

_FILL = {"white": "#f7f3e8", "black": "#5b7c99"}


def _tx(x: float) -> float:
    return x * _SCALE


def _ty(y: float) -> float:
    return -y * _SCALE


def render_region_svg(
    region: Region,
    tiling: tuple[tuple[int, int], ...] | None = None,
    title: str | None = None,
) -> str:
    """Render the region as a standalone SVG document.

    Cells are polygons filled by color class; the cut diagonals are drawn as
    dashed lines.  ``tiling`` optionally overlays one perfect matching of the
    cell-adjacency graph as thick connectors between matched cell centroids.
    """
    cells = region.cells
    xs = [p[0] for c in cells for p in cell_polygon(c)]
    ys = [p[1] for c in cells for p in cell_polygon(c)]
    if not xs:
        raise RegionError("region has no cells to draw")
    x0, x1 = min(xs) - _MARGIN, max(xs) + _MARGIN
    y0, y1 = min(ys) - _MARGIN, max(ys) + _MARGIN
    width = _tx(x1) - _tx(x0)
    height = _ty(y0) - _ty(y1)
    parts: list[str] = []
    parts.append(
        '<svg xmlns="http://www.w3.org/2000/svg" '
        f'viewBox="{_tx(x0):.1f} {_ty(y1):.1f} {width:.1f} {height:.1f}" '
        f'width="{width:.0f}" height="{height:.0f}">'
    )
    if title:
        parts.append(f"<title>{escape(title)}</title>")
    parts.append('<g stroke="#44413a" stroke-width="0.9">')
    for cell in cells:
        points = " ".join(f"{_tx(px):.1f},{_ty(py):.1f}" for px, py in cell_polygon(cell))
        parts.append(
            f'<polygon class="cell {cell.color}" fill="{_FILL[cell.color]}" '
            f'points="{points}"/>'
        )
    parts.append("</g>")
    # the cut diagonals, drawn across the full region width at each offset
    parts.append('<g stroke="#b3402e" stroke-width="1.6" stroke-dasharray="6,4">')
    for offset in region.drawn_offsets:
        i0, j0 = region.sw_path[-offset]
        i1, j1 = region.ne_path[-offset]
        parts.append(
            f'<line class="diagonal" x1="{_tx(i0):.1f}" y1="{_ty(j0):.1f}" '
            f'x2="{_tx(i1):.1f}" y2="{_ty(j1):.1f}"/>'
        )
    parts.append("</g>")
    if tiling is not None:
        parts.append(
            '<g class="tiling" stroke="#1b1b1b" stroke-width="5.0" '
            'stroke-linecap="round" opacity="0.75">'
        )
        for u, v in tiling:
            ax, ay = cell_centroid(cells[u])
            bx, by = cell_centroid(cells[v])
            parts.append(
                f'<line class="tile" x1="{_tx(ax):.1f}" y1="{_ty(ay):.1f}" '
                f'x2="{_tx(bx):.1f}" y2="{_ty(by):.1f}"/>'
            )
        parts.append("</g>")
    parts.append("</svg>")
    return "\n".join(parts)
