"""Count-preserving graph rewrites, each returning an exact multiplier.

Every operation produces a :class:`TransformPair` holding the graph before
the rewrite, the graph after, and the exact rational ``multiplier`` kappa
satisfying ``count(before) = kappa * count(after)``.  Rewrites never mutate
their inputs.

Local rewrites (vertex split, star scaling, the four-leg spider reduction)
act on a caller-designated location inside an arbitrary graph.  Pattern
rewrites (the band-to-rectangle composite and the pendant-edge family)
construct both sides from explicit parameters plus a tail graph to glue on,
because their callers always know where the pattern sits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graphs import (
    GraphError,
    PMGraph,
    aztec_rectangle,
    baseless_aztec_rectangle,
    connected_sum_with_map,
    flip_classes,
    hexagon_graph,
    make_graph,
    odd_aztec_rectangle,
    remove_vertices,
)
from .regions import WHITE, dual_graph, strip_region, strip_stats

__all__ = [
    "TransformPair",
    "vertex_split",
    "star_scale",
    "urban_renewal",
    "composite_transform",
    "t1_transfer",
    "otrans_a",
    "otrans_b",
    "t6_transfer",
    "hexagon_pair_reduce",
]


@dataclass(frozen=True)
class TransformPair:
    """A rewrite instance: count(before) = multiplier * count(after)."""

    before: PMGraph
    after: PMGraph
    multiplier: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "multiplier", Fraction(self.multiplier))


# -- local rewrites -----------------------------------------------------------


def vertex_split(g: PMGraph, v: int, split_neighbors: Sequence[int]) -> TransformPair:
    """Replace ``v`` by a path v'-x-v'' that routes ``split_neighbors``
    through v' and the remaining neighbors through v''.  Count unchanged."""
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    neighbors = set(g.neighbors(v))
    h_set = set(split_neighbors)
    if not h_set <= neighbors:
        raise GraphError("split set must be a subset of the vertex's neighbors")
    # v keeps the role of v'; x and v'' are appended
    x = g.n
    v2 = g.n + 1
    classes = list(g.classes) + [1 - g.classes[v], g.classes[v]]
    edges = []
    for a, b, w in g.edges:
        if a == v and b not in h_set:
            edges.append((v2, b, w))
        elif b == v and a not in h_set:
            edges.append((a, v2, w))
        else:
            edges.append((a, b, w))
    edges.append((v, x, Fraction(1)))
    edges.append((x, v2, Fraction(1)))
    coords = dict(g.coords) if g.coords is not None else None
    if coords is not None and v in coords:
        px, py = coords[v]
        coords[x] = (px + 0.35, py)
        coords[v2] = (px + 0.7, py)
    after = PMGraph(g.n + 2, tuple(classes), tuple(edges), dict(g.boundary), coords, None)
    return TransformPair(g, after, Fraction(1))


def star_scale(g: PMGraph, v: int, t: Fraction) -> TransformPair:
    """Scale every edge weight at ``v`` by ``t`` > 0.

    The scaled graph counts t times the original, so the conservation
    multiplier is 1/t.
    """
    t = Fraction(t)
    if t <= 0:
        raise GraphError(f"scale factor must be positive, got {t}")
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range")
    edges = tuple(
        (a, b, w * t) if v in (a, b) else (a, b, w) for a, b, w in g.edges
    )
    after = PMGraph(g.n, g.classes, edges, dict(g.boundary), g.coords, None)
    return TransformPair(g, after, Fraction(1, 1) / t)


def urban_renewal(g: PMGraph, cell: Sequence[int]) -> TransformPair:
    """Contract a four-leg spider to a weighted 4-cycle on its leg ends.

    ``cell`` lists eight vertices (A, B, C, D, a, b, c, d): outer vertices in
    cyclic order, then the inner cycle vertex attached to each.  The inner
    cycle carries weights x = ab, y = bc, z = cd, t = da; legs must have
    weight 1 and inner vertices no outside neighbors.  The replacement joins
    A-B with z/D, B-C with t/D, C-D with x/D, D-A with y/D where
    D = xz + yt, and the count divides by exactly that D.
    """
    if len(cell) != 8 or len(set(cell)) != 8:
        raise GraphError("spider cell needs eight distinct vertices")
    outer = tuple(cell[:4])
    inner = tuple(cell[4:])
    for o, i in zip(outer, inner):
        if not g.has_edge(o, i):
            raise GraphError(f"missing leg edge ({o}, {i})")
        if g.weight(o, i) != 1:
            raise GraphError(f"leg edge ({o}, {i}) must have weight 1")
    ring = []
    for j in range(4):
        u, v = inner[j], inner[(j + 1) % 4]
        if not g.has_edge(u, v):
            raise GraphError(f"missing inner cycle edge ({u}, {v})")
        ring.append(g.weight(u, v))
    x, y, z, t = ring
    for j, i in enumerate(inner):
        allowed = {outer[j], inner[(j + 1) % 4], inner[(j - 1) % 4]}
        if set(g.neighbors(i)) - allowed:
            raise GraphError(f"inner vertex {i} has neighbors outside the spider")
    delta = x * z + y * t
    keep = [v for v in range(g.n) if v not in set(inner)]
    new_id = {v: j for j, v in enumerate(keep)}
    classes = tuple(g.classes[v] for v in keep)
    edges = [
        (new_id[a], new_id[b], w)
        for a, b, w in g.edges
        if a in new_id and b in new_id
    ]
    na, nb, nc, nd = (new_id[o] for o in outer)
    edges.append((na, nb, z / delta))
    edges.append((nb, nc, t / delta))
    edges.append((nc, nd, x / delta))
    edges.append((nd, na, y / delta))
    coords = None
    if g.coords is not None:
        coords = {new_id[v]: g.coords[v] for v in keep if v in g.coords}
    boundary = {
        name: tuple(new_id[v] for v in vs if v in new_id)
        for name, vs in g.boundary.items()
    }
    after = make_graph(len(keep), classes, edges, boundary, coords)
    return TransformPair(g, after, delta)


# -- gluing helpers -----------------------------------------------------------


def _attach_classes(g: PMGraph, vertices: Sequence[int]) -> set[int]:
    return {g.classes[v] for v in vertices}


def _glue_tail(
    pattern: PMGraph, attach: Sequence[int], tail: PMGraph, tail_attach: Sequence[int]
) -> PMGraph:
    """Connected sum of ``tail`` onto ``pattern`` along paired vertex lists,
    flipping the tail's classes when needed to keep the coloring proper."""
    if len(attach) != len(tail_attach):
        raise GraphError(
            f"attachment arity mismatch: {len(attach)} pattern vs {len(tail_attach)} tail"
        )
    want = tuple(pattern.classes[v] for v in attach)
    got = tuple(tail.classes[v] for v in tail_attach)
    if want != got:
        flipped = tuple(1 - c for c in got)
        if want != flipped:
            raise GraphError("attachment classes do not line up even after flipping")
        tail = flip_classes(tail)
    glued, _ = connected_sum_with_map(pattern, tail, attach, tail_attach)
    return glued


def _pendant_row(g: PMGraph, list_name: str, new_name: str, dy: float) -> PMGraph:
    """Append one weight-1 pendant to each vertex of a named list."""
    row = g.boundary_list(list_name)
    classes = list(g.classes)
    edges = list(g.edges)
    coords = dict(g.coords) if g.coords is not None else None
    pendants = []
    for v in row:
        p = len(classes)
        classes.append(1 - g.classes[v])
        edges.append((v, p, Fraction(1)))
        pendants.append(p)
        if coords is not None and v in coords:
            x, y = coords[v]
            coords[p] = (x, y + dy)
    boundary = dict(g.boundary)
    boundary[new_name] = tuple(pendants)
    return PMGraph(len(classes), tuple(classes), tuple(edges), boundary, coords, None)


# -- pattern rewrites ---------------------------------------------------------


def composite_transform(
    a: int,
    gaps: Sequence[int],
    holes: Sequence[int],
    tail: PMGraph,
    tail_attach: Sequence[int],
) -> TransformPair:
    """Swap a one-family band graph for a plain diamond-grid rectangle.

    Builds the band above the last of ``k`` diagonals (top width ``a``, gap
    list ``gaps``), removes the 1-based ``holes`` from its bottom row, glues
    ``tail`` along the surviving bottom vertices, and produces the equivalent
    instance where the band is replaced by the rectangle with the same bottom
    arity and the same holes.  White bottom row: rectangle rows 2h+1 and
    multiplier 2^(C - h(w+1)); black bottom row: the baseless rectangle on
    w-1 columns and multiplier 2^(C - hw), with C the band's count of black
    regular cells.  An empty gap list is the degenerate height-0 band: the
    transform is the identity with multiplier 2^0.
    """
    gaps = tuple(int(g) for g in gaps)
    holes = tuple(int(r) for r in holes)
    if not gaps:
        if holes:
            raise GraphError("holes make no sense for the empty band")
        return TransformPair(tail, tail, Fraction(1))
    band = strip_region(a, gaps)
    st = strip_stats(band)
    if st.w < 1:
        raise GraphError("band pinches to width zero; nothing to attach")
    band_graph = dual_graph(band)
    if len(band_graph.boundary_list("bottom")) != st.w:
        raise GraphError("band bottom arity disagrees with its width")
    if any(not 1 <= r <= st.w for r in holes):
        raise GraphError(f"hole positions must lie in 1..{st.w}")
    if len(set(holes)) != len(holes):
        raise GraphError("hole positions must be distinct")
    if st.bottom_color == WHITE:
        rect = aztec_rectangle(st.h, st.w)
        power = st.c_black - st.h * (st.w + 1)
    else:
        if st.w < 2:
            raise GraphError(
                "black-bottom band of width 1: the replacement rectangle is empty"
            )
        rect = baseless_aztec_rectangle(st.h, st.w - 1)
        power = st.c_black - st.h * st.w
    before_pat = remove_vertices(band_graph, "bottom", holes)
    after_pat = remove_vertices(rect, "bottom", holes)
    b_attach = before_pat.boundary_list("bottom")
    a_attach = after_pat.boundary_list("bottom")
    before = _glue_tail(before_pat, b_attach, tail, tail_attach)
    after = _glue_tail(after_pat, a_attach, tail, tail_attach)
    return TransformPair(before, after, Fraction(2) ** power)


def t1_transfer(p: int, q: int, tail: PMGraph, tail_attach: Sequence[int]) -> TransformPair:
    """Trade the rectangle-with-bottom-pendants for the baseless rectangle.

    Before: rows 2p+1 on q columns plus q bottom pendants, tail glued to the
    pendant ends.  After: the baseless rectangle on q-1 columns (bottom row
    q vertices), tail glued to its bottom.  Multiplier 2^p.
    """
    if p < 1 or q < 2:
        raise GraphError("need p >= 1 and q >= 2")
    ar = _pendant_row(aztec_rectangle(p, q), "bottom", "bottom_pendants", -1.0)
    before = _glue_tail(ar, ar.boundary_list("bottom_pendants"), tail, tail_attach)
    bar = baseless_aztec_rectangle(p, q - 1)
    after = _glue_tail(bar, bar.boundary_list("bottom"), tail, tail_attach)
    return TransformPair(before, after, Fraction(2) ** p)


def otrans_a(p: int, q: int, tail: PMGraph, tail_attach: Sequence[int]) -> TransformPair:
    """Trade the doubly-pendanted rectangle for the companion grid.

    Before: rows 2p+1 on q columns with q pendants on top and q on bottom;
    the tail glues along top pendants then bottom pendants (2q vertices).
    After: the companion grid on q-1 columns, tail along its top then bottom
    rows.  Multiplier 2^p.
    """
    if p < 1 or q < 2:
        raise GraphError("need p >= 1 and q >= 2")
    ar = _pendant_row(aztec_rectangle(p, q), "top", "top_pendants", 1.0)
    ar = _pendant_row(ar, "bottom", "bottom_pendants", -1.0)
    attach = ar.boundary_list("top_pendants") + ar.boundary_list("bottom_pendants")
    before = _glue_tail(ar, attach, tail, tail_attach)
    o = odd_aztec_rectangle(p, q - 1)
    after = _glue_tail(o, o.boundary_list("top") + o.boundary_list("bottom"), tail, tail_attach)
    return TransformPair(before, after, Fraction(2) ** p)


def otrans_b(p: int, q: int, tail: PMGraph, tail_attach: Sequence[int]) -> TransformPair:
    """Inverse-direction companion trade: plain rectangle before, pendanted
    companion grid after.  Multiplier 2^p."""
    if p < 1 or q < 2:
        raise GraphError("need p >= 1 and q >= 2")
    ar = aztec_rectangle(p, q)
    attach = ar.boundary_list("top") + ar.boundary_list("bottom")
    before = _glue_tail(ar, attach, tail, tail_attach)
    o = _pendant_row(odd_aztec_rectangle(p, q - 1), "top", "top_pendants", 1.0)
    o = _pendant_row(o, "bottom", "bottom_pendants", -1.0)
    o_attach = o.boundary_list("top_pendants") + o.boundary_list("bottom_pendants")
    after = _glue_tail(o, o_attach, tail, tail_attach)
    return TransformPair(before, after, Fraction(2) ** p)


def t6_transfer(p: int, q: int, tail: PMGraph, tail_attach: Sequence[int]) -> TransformPair:
    """One-sided variant: bottom-pendanted rectangle before, top-pendanted
    companion grid after; tail glues along top row then bottom pendants on
    the before side, top pendants then bottom row on the after side.
    Multiplier 2^p."""
    if p < 1 or q < 2:
        raise GraphError("need p >= 1 and q >= 2")
    ar = _pendant_row(aztec_rectangle(p, q), "bottom", "bottom_pendants", -1.0)
    attach = ar.boundary_list("top") + ar.boundary_list("bottom_pendants")
    before = _glue_tail(ar, attach, tail, tail_attach)
    o = _pendant_row(odd_aztec_rectangle(p, q - 1), "top", "top_pendants", 1.0)
    o_attach = o.boundary_list("top_pendants") + o.boundary_list("bottom")
    after = _glue_tail(o, o_attach, tail, tail_attach)
    return TransformPair(before, after, Fraction(2) ** p)


def hexagon_pair_reduce(
    a: int, b: int, c: int, d: int, a2: int, b2: int
) -> TransformPair:
    """Glue two hexagon duals along a shared side and trade the pair for one
    rectangle with a partially emptied row.

    The first hexagon has sides (b, a-d, d, a+b-c-d, c, a-c) clockwise from
    the north side, the second (a+b-c-d, d, a2-d, b2, a2-c, c); they join
    along the first's bottom and the second's top (a+b-c-d vertices each).
    The equivalent rectangle has rows 2(a+a2)-1 on a+b-1 columns with the
    positions {1..c} and {a+b-d+1..a+b} removed from the long row 2a, and the
    pair counts 2^(-a(a-1)/2 - a2(a2-1)/2) times the rectangle.
    """
    if min(a, b, c, d, a2, b2) < 1:
        raise GraphError("all six parameters must be positive")
    if a + b != a2 + b2:
        raise GraphError("the total side length must match: a+b == a2+b2")
    if not (c < min(a, a2) and d < min(a, a2)):
        raise GraphError("need c, d < min(a, a2)")
    h1 = hexagon_graph((b, a - d, d, a + b - c - d, c, a - c))
    h2 = hexagon_graph((a + b - c - d, d, a2 - d, b2, a2 - c, c))
    before = _glue_tail(
        h1, h1.boundary_list("bottom"), h2, h2.boundary_list("top")
    )
    rect = aztec_rectangle(a + a2 - 1, a + b - 1, hole_row_offset=a - a2)
    removal = tuple(range(1, c + 1)) + tuple(range(a + b - d + 1, a + b + 1))
    after = remove_vertices(rect, "hole_row", removal)
    power = -(a * (a - 1)) // 2 - (a2 * (a2 - 1)) // 2
    return TransformPair(before, after, Fraction(2) ** power)
