"""Square-lattice regions cut by three families of parallel diagonals.

A region is described by a width parameter ``a`` and three gap lists.  The
diagonals run in the (1,1) direction at offsets ``c = y - x``; the first list
places the upper family below offset 0, the second continues from the last
upper diagonal, and the third continues to the bottom diagonal.  Each drawn
diagonal bisects the squares it crosses into an upper-left and a lower-right
triangle, so the region is a mix of whole squares and half-square triangles.
The boundary consists of two monotone staircase paths joined by the four
diagonal sides; the south-west staircase is the point reflection of the
north-east one.

Cells are checkerboard-colored; rows of cells strictly alternate color from
the top.  A triangle is *regular* when it points away from the lower dividing
diagonal; squares are always regular.  The statistics collected here (three
heights, two widths, three regular-cell counts, per-layer middle widths, and
the corner-color type) drive the closed-form counting formulas.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .graphs import InternalInvariantError, PMGraph

WHITE = "white"
BLACK = "black"


class RegionError(ValueError):
    """A region description is malformed or the region degenerates."""


@dataclass(frozen=True)
class DiagonalSpec:
    """Parameters of a three-family diagonal cut: ``a`` plus the gap lists."""

    a: int
    upper_gaps: tuple[int, ...]
    middle_gaps: tuple[int, ...]
    lower_gaps: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "upper_gaps", tuple(int(x) for x in self.upper_gaps))
        object.__setattr__(self, "middle_gaps", tuple(int(x) for x in self.middle_gaps))
        object.__setattr__(self, "lower_gaps", tuple(int(x) for x in self.lower_gaps))
        if self.a < 1:
            raise RegionError("a must be a positive integer")
        for name, gaps in (
            ("d", self.upper_gaps),
            ("dbar", self.middle_gaps),
            ("dprime", self.lower_gaps),
        ):
            if not gaps:
                raise RegionError(f"gap list {name} must be nonempty")
            if any(g < 1 for g in gaps):
                raise RegionError(f"gap list {name} must contain positive integers")
        if sum(self.middle_gaps) < len(self.middle_gaps):
            raise RegionError("the middle diagonals do not fit between their bounding diagonals")

    def to_string(self) -> str:
        return (
            f"a={self.a}"
            f" d={','.join(map(str, self.upper_gaps))}"
            f" dbar={','.join(map(str, self.middle_gaps))}"
            f" dprime={','.join(map(str, self.lower_gaps))}"
        )


def parse_spec_string(text: str) -> DiagonalSpec:
    """Parse ``"a=<int> d=<csv> dbar=<csv> dprime=<csv>"`` into a DiagonalSpec."""
    fields: dict[str, str] = {}
    for token in text.split():
        if "=" not in token:
            raise RegionError(f"malformed token {token!r}: expected key=value")
        key, _, value = token.partition("=")
        if key in fields:
            raise RegionError(f"repeated key {key!r}")
        fields[key] = value
    expected = {"a", "d", "dbar", "dprime"}
    if set(fields) != expected:
        missing = expected - set(fields)
        extra = set(fields) - expected
        parts = []
        if missing:
            parts.append(f"missing {sorted(missing)}")
        if extra:
            parts.append(f"unknown {sorted(extra)}")
        raise RegionError("bad spec string: " + ", ".join(parts))

    def csv(key: str) -> tuple[int, ...]:
        try:
            return tuple(int(x) for x in fields[key].split(","))
        except ValueError:
            raise RegionError(f"{key} must be a comma-separated list of integers") from None

    try:
        a = int(fields["a"])
    except ValueError:
        raise RegionError("a must be an integer") from None
    return DiagonalSpec(a, csv("d"), csv("dbar"), csv("dprime"))


@dataclass(frozen=True)
class Cell:
    """One cell: a whole square or a half-square triangle.

    ``anchor`` is the lattice point at the lower-left corner of the owning
    unit square; ``half`` is 'S' (whole square), 'U' (upper-left triangle) or
    'L' (lower-right triangle).  ``offset`` is the diagonal offset of the row
    the cell belongs to.
    """

    anchor: tuple[int, int]
    half: str
    offset: int
    color: str
    regular: bool

    @property
    def kind(self) -> str:
        if self.half == "S":
            return "square"
        return "triangle-away" if self.regular else "triangle-toward"


def cell_polygon(cell: Cell) -> list[tuple[int, int]]:
    """Corner coordinates of a cell, counterclockwise."""
    i, j = cell.anchor
    if cell.half == "S":
        return [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)]
    if cell.half == "U":
        return [(i, j), (i + 1, j + 1), (i, j + 1)]
    return [(i, j), (i + 1, j), (i + 1, j + 1)]


def cell_centroid(cell: Cell) -> tuple[float, float]:
    i, j = cell.anchor
    if cell.half == "S":
        return (i + 0.5, j + 0.5)
    if cell.half == "U":
        return (i + 1.0 / 3.0, j + 2.0 / 3.0)
    return (i + 2.0 / 3.0, j + 1.0 / 3.0)


@dataclass(frozen=True)
class Region:
    """A constructed region: rows of cells between two staircase boundaries."""

    spec: DiagonalSpec | None
    a: int
    ell_index: int
    ell_prime_index: int
    bottom_index: int
    drawn_offsets: tuple[int, ...]
    rows: tuple[tuple[int, str], ...]
    row_colors: tuple[str, ...]
    ne_path: tuple[tuple[int, int], ...]
    sw_path: tuple[tuple[int, int], ...]
    cells: tuple[Cell, ...]
    corners: Mapping[str, tuple[int, int]]

    @property
    def is_octagon(self) -> bool:
        return self.ell_index != self.bottom_index

    def width_at(self, offset: int) -> int:
        """Number of unit squares the region meets on diagonal offset."""
        if not self.bottom_index <= offset <= 0:
            raise RegionError(f"offset {offset} outside region")
        return self.ne_path[-offset][0] - self.sw_path[-offset][0]

    def row_color(self, offset: int, prefer: str) -> str:
        return self._color_table[(offset, prefer)]

    @property
    def _color_table(self) -> dict[tuple[int, str], str]:
        table = {}
        for (offset, half), color in zip(self.rows, self.row_colors):
            table[(offset, half)] = color
            if half == "S":
                table[(offset, "U")] = color
                table[(offset, "L")] = color
        return table

    @property
    def bottom_color(self) -> str:
        return self.row_colors[-1]


def _row_sequence(drawn: frozenset[int], c_bot: int) -> list[tuple[int, str]]:
    rows: list[tuple[int, str]] = []
    for v in range(0, c_bot - 1, -1):
        if v == 0:
            rows.append((v, "L"))
        elif v == c_bot:
            rows.append((v, "U"))
        elif v in drawn:
            rows.append((v, "U"))
            rows.append((v, "L"))
        else:
            rows.append((v, "S"))
    return rows


def _build(a: int, upper: tuple[int, ...], middle: tuple[int, ...], lower: tuple[int, ...],
           spec: DiagonalSpec | None) -> Region:
    c_ell = -sum(upper)
    c_ell2 = c_ell - sum(middle)
    c_bot = c_ell2 - sum(lower)
    drawn = {0, c_ell, c_ell2, c_bot}
    acc = 0
    for g in upper[:-1]:
        acc -= g
        drawn.add(acc)
    acc = c_ell
    for g in middle[:-1]:
        acc -= g
        drawn.add(acc)
    # the lower gaps are listed bottom-up: the first entry is the gap at the
    # bottom edge, the last is adjacent to the middle section's bottom diagonal
    acc = c_ell2
    for g in reversed(lower[1:] if lower else []):
        acc -= g
        drawn.add(acc)
    drawn_set = frozenset(drawn)

    rows = _row_sequence(drawn_set, c_bot)
    row_colors = tuple(WHITE if i % 2 == 0 else BLACK for i in range(len(rows)))
    color_table: dict[tuple[int, str], str] = {}
    for (offset, half), color in zip(rows, row_colors):
        color_table[(offset, half)] = color
        if half == "S":
            color_table[(offset, "U")] = color
            color_table[(offset, "L")] = color

    def row_color(offset: int, prefer: str) -> str:
        return color_table[(offset, prefer)]

    ne_path = [(0, 0)]
    x = y = 0
    for v in range(0, c_bot, -1):
        if v > c_ell:
            east = row_color(v - 1, "U") == BLACK
        elif v > c_ell2:
            east = row_color(v, "L") == BLACK
        else:
            east = row_color(v - 1, "U") == BLACK
        if east:
            x += 1
        else:
            y -= 1
        ne_path.append((x, y))
    sw_path = [(-a - py, -a - px) for (px, py) in ne_path]

    cells: list[Cell] = []
    for offset, half in rows:
        lo = sw_path[-offset][0]
        hi = ne_path[-offset][0]
        if hi < lo:
            raise RegionError(
                f"region degenerates: boundary paths cross at offset {offset}"
            )
        color = color_table[(offset, half)]
        if half == "S":
            regular = True
        elif half == "U":
            regular = offset >= c_ell2
        else:
            regular = offset <= c_ell2
        for i in range(lo, hi):
            cells.append(Cell((i, i + offset), half, offset, color, regular))

    corners = {
        "A": ne_path[0],
        "B": ne_path[-c_ell],
        "C": ne_path[-c_ell2],
        "D": ne_path[-c_bot],
        "E": sw_path[-c_bot],
        "F": sw_path[-c_ell2],
        "G": sw_path[-c_ell],
        "H": sw_path[0],
    }
    return Region(
        spec=spec,
        a=a,
        ell_index=c_ell,
        ell_prime_index=c_ell2,
        bottom_index=c_bot,
        drawn_offsets=tuple(sorted(drawn_set, reverse=True)),
        rows=tuple(rows),
        row_colors=row_colors,
        ne_path=tuple(ne_path),
        sw_path=tuple(sw_path),
        cells=tuple(cells),
        corners=corners,
    )


def build_region(spec: DiagonalSpec) -> Region:
    """Construct the region for a full three-family diagonal cut."""
    return _build(spec.a, spec.upper_gaps, spec.middle_gaps, spec.lower_gaps, spec)


def strip_region(a: int, gaps: Sequence[int]) -> Region:
    """Construct just the band above the last upper diagonal (one family).

    This is the region whose graph the composite rewrite replaces wholesale.
    """
    gaps = tuple(int(g) for g in gaps)
    if a < 1:
        raise RegionError("a must be a positive integer")
    if not gaps or any(g < 1 for g in gaps):
        raise RegionError("gaps must be a nonempty list of positive integers")
    return _build(a, gaps, (), (), None)


# -- statistics -------------------------------------------------------------


@dataclass(frozen=True)
class RegionStats:
    """Shape statistics of a full region (all fields exact integers)."""

    h1: int
    h2: int
    h3: int
    w1: int
    w2: int
    c1: int
    c2: int
    c3: int
    layers: tuple[tuple[int, int], ...]
    octagon_type: int

    @property
    def balanced(self) -> bool:
        return balancing_holds(self)


def balancing_holds(stats: RegionStats) -> bool:
    """Equal numbers of black and white cells, in terms of shape statistics."""
    return stats.h1 + stats.h3 == stats.w1 + stats.h2


def classify_type(region: Region) -> int:
    """Corner-color type 1..4 from the triangle colors at the two dividing
    diagonals (above the upper one, below the lower one)."""
    if not region.is_octagon:
        raise RegionError("type classification needs a full region")
    upper = region.row_color(region.ell_index, "U")
    lower = region.row_color(region.ell_prime_index, "L")
    return {
        (BLACK, BLACK): 1,
        (WHITE, WHITE): 2,
        (BLACK, WHITE): 3,
        (WHITE, BLACK): 4,
    }[(upper, lower)]


def _section_rows(region: Region, first: tuple[int, str], last: tuple[int, str]):
    rows = list(zip(region.rows, region.row_colors))
    i = rows.index((first, region.row_colors[region.rows.index(first)]))
    j = rows.index((last, region.row_colors[region.rows.index(last)]))
    return rows[i : j + 1]


def region_stats(region: Region) -> RegionStats:
    """Collect the closed-form inputs: heights, widths, cell counts, layers."""
    if not region.is_octagon:
        raise RegionError("statistics need a full region")
    c_ell, c_ell2, c_bot = region.ell_index, region.ell_prime_index, region.bottom_index

    def regular(offset: int, half: str) -> bool:
        if half == "S":
            return True
        if half == "U":
            return offset >= c_ell2
        return offset <= c_ell2

    enriched = [
        (offset, half, color, region.width_at(offset), regular(offset, half))
        for (offset, half), color in zip(region.rows, region.row_colors)
    ]

    def index_of(offset: int, half: str) -> int:
        for i, (o, h, *_rest) in enumerate(enriched):
            if (o, h) == (offset, half):
                return i
        raise InternalInvariantError(f"row ({offset}, {half}) missing")

    upper = enriched[: index_of(c_ell, "U") + 1]
    middle = enriched[index_of(c_ell, "L") : index_of(c_ell2, "U") + 1]
    lower = enriched[index_of(c_ell2, "L") :]

    h1 = sum(1 for _, _, col, _, reg in upper if col == BLACK and reg)
    c1 = sum(w for _, _, col, w, reg in upper if col == BLACK and reg)
    h2 = sum(1 for _, _, col, _, reg in middle if col == WHITE and reg)
    c2 = sum(w for _, _, col, w, reg in middle if col == WHITE and reg)
    h3 = sum(1 for _, _, col, _, reg in lower if col == BLACK and reg)
    c3 = sum(w for _, _, col, w, reg in lower if col == BLACK and reg)

    # middle layers: between consecutive diagonals of the middle family
    mids = [c_ell]
    acc = c_ell
    for g in region.spec.middle_gaps if region.spec else ():
        acc -= g
        mids.append(acc)
    layers = []
    for top_off, bot_off in zip(mids, mids[1:]):
        seg = enriched[index_of(top_off, "L") : index_of(bot_off, "U") + 1]
        whites = [(w, reg) for _, _, col, w, reg in seg if col == WHITE]
        widths = {w for w, _ in whites}
        if len(widths) != 1:
            raise InternalInvariantError(
                f"layer {top_off}..{bot_off} has white rows of differing widths {sorted(widths)}"
            )
        layers.append((sum(1 for _, reg in whites if reg), widths.pop()))

    return RegionStats(
        h1=h1,
        h2=h2,
        h3=h3,
        w1=region.width_at(c_ell),
        w2=region.width_at(c_ell2),
        c1=c1,
        c2=c2,
        c3=c3,
        layers=tuple(layers),
        octagon_type=classify_type(region),
    )


@dataclass(frozen=True)
class StripStats:
    """Shape statistics of a one-family band region."""

    h: int
    w: int
    c_black: int
    bottom_color: str


def strip_stats(region: Region) -> StripStats:
    """Height, bottom width, and black regular cell count of a band region."""
    if region.is_octagon:
        raise RegionError("strip statistics apply to one-family bands")
    blacks = [
        (offset, half)
        for (offset, half), color in zip(region.rows, region.row_colors)
        if color == BLACK and half != "L"
    ]
    return StripStats(
        h=len(blacks),
        w=region.width_at(region.bottom_index),
        c_black=sum(region.width_at(o) for o, _ in blacks),
        bottom_color=region.bottom_color,
    )


def stats_to_json(stats: RegionStats) -> dict:
    return {
        "h1": stats.h1,
        "h2": stats.h2,
        "h3": stats.h3,
        "w1": stats.w1,
        "w2": stats.w2,
        "c1": stats.c1,
        "c2": stats.c2,
        "c3": stats.c3,
        "layers": [[a, b] for a, b in stats.layers],
        "type": stats.octagon_type,
    }


# -- dual graph -------------------------------------------------------------


def _cell_segments(cell: Cell) -> list[tuple]:
    i, j = cell.anchor
    if cell.half == "S":
        return [("H", i, j), ("H", i, j + 1), ("V", i, j), ("V", i + 1, j)]
    if cell.half == "U":
        return [("V", i, j), ("H", i, j + 1), ("D", i, j)]
    return [("H", i, j), ("V", i + 1, j), ("D", i, j)]


def dual_graph(region: Region) -> PMGraph:
    """Tile-adjacency graph: one vertex per cell, edges where two cells share
    a boundary segment.  White cells are class 0.  Vertices are numbered row
    by row from the top, left to right; boundary lists ``top`` and ``bottom``
    hold the first and last rows of cells."""
    cells = region.cells
    classes = tuple(0 if c.color == WHITE else 1 for c in cells)
    seg_owner: dict[tuple, list[int]] = {}
    for idx, cell in enumerate(cells):
        for seg in _cell_segments(cell):
            seg_owner.setdefault(seg, []).append(idx)
    edges = []
    for seg, owners in seg_owner.items():
        if len(owners) == 2:
            edges.append((owners[0], owners[1]))
        elif len(owners) > 2:
            raise InternalInvariantError(f"segment {seg} shared by {len(owners)} cells")
    coords = {idx: cell_centroid(c) for idx, c in enumerate(cells)}
    first_row = region.rows[0]
    last_row = region.rows[-1]
    top = tuple(i for i, c in enumerate(cells) if (c.offset, c.half) == first_row)
    bottom = tuple(i for i, c in enumerate(cells) if (c.offset, c.half) == last_row)
    return PMGraph(
        len(cells),
        classes,
        tuple(edges),
        {"top": top, "bottom": bottom},
        coords,
        None,
    )
