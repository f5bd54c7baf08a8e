"""Vertex-2-colored weighted graphs, named families, and gluing operations.

Each graph models tile adjacency: vertices are cells, edges are the allowed
tile placements covering two cells, and weighted perfect matchings correspond
to tilings.  All arithmetic is exact (`fractions.Fraction`); drawings carry
optional coordinates and rotation systems for the planar matching counter and
the SVG renderer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence


class GraphError(ValueError):
    """Structural problem with a graph or a graph operation's input."""


class EmbeddingError(GraphError):
    """No usable planar embedding is available for the requested operation."""


class InternalInvariantError(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""


def _as_weight(value: object) -> Fraction:
    weight = Fraction(value)  # type: ignore[arg-type]
    if weight <= 0:
        raise GraphError(f"edge weights must be positive, got {weight}")
    return weight


@dataclass(frozen=True)
class PMGraph:
    """An immutable 2-colored graph with positive rational edge weights.

    Vertices are ``0..n-1``; ``classes[v]`` is 0 or 1 and every edge joins
    opposite classes.  ``boundary`` holds named ordered vertex lists used by
    gluing operations.  ``coords`` (drawing positions) and ``embedding``
    (cyclic neighbor order per vertex) are optional geometric data.
    """

    n: int
    classes: tuple[int, ...]
    edges: tuple[tuple[int, int, Fraction], ...]
    boundary: Mapping[str, tuple[int, ...]] = field(default_factory=dict)
    coords: Mapping[int, tuple[float, float]] | None = None
    embedding: Mapping[int, tuple[int, ...]] | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "classes", tuple(int(c) for c in self.classes))
        if len(self.classes) != self.n:
            raise GraphError("classes length must equal vertex count")
        if any(c not in (0, 1) for c in self.classes):
            raise GraphError("vertex classes must be 0 or 1")
        norm: dict[tuple[int, int], Fraction] = {}
        for item in self.edges:
            if len(item) == 2:
                u, v = item  # type: ignore[misc]
                w = Fraction(1)
            else:
                u, v, w = item
                w = _as_weight(w)
            u, v = int(u), int(v)
            if u > v:
                u, v = v, u
            if not (0 <= u < self.n and 0 <= v < self.n) or u == v:
                raise GraphError(f"bad edge endpoints ({u}, {v})")
            if self.classes[u] == self.classes[v]:
                raise GraphError(f"edge ({u}, {v}) joins two class-{self.classes[u]} vertices")
            if (u, v) in norm:
                raise GraphError(f"duplicate edge ({u}, {v})")
            norm[(u, v)] = w
        object.__setattr__(
            self, "edges", tuple((u, v, norm[(u, v)]) for (u, v) in sorted(norm))
        )
        lists = {}
        for name, seq in dict(self.boundary).items():
            vids = tuple(int(v) for v in seq)
            if any(not 0 <= v < self.n for v in vids):
                raise GraphError(f"boundary list {name!r} has out-of-range vertices")
            if len(set(vids)) != len(vids):
                raise GraphError(f"boundary list {name!r} has repeated vertices")
            lists[str(name)] = vids
        object.__setattr__(self, "boundary", lists)
        if self.coords is not None:
            object.__setattr__(
                self,
                "coords",
                {int(v): (float(x), float(y)) for v, (x, y) in dict(self.coords).items()},
            )
        if self.embedding is not None:
            emb = {int(v): tuple(int(u) for u in nbrs) for v, nbrs in dict(self.embedding).items()}
            for v in range(self.n):
                if sorted(emb.get(v, ())) != sorted(self.neighbors(v)):
                    raise GraphError(f"embedding at vertex {v} is not a permutation of its neighbors")
            object.__setattr__(self, "embedding", emb)

    # -- derived views ----------------------------------------------------

    @cached_property
    def weight_map(self) -> dict[tuple[int, int], Fraction]:
        return {(u, v): w for u, v, w in self.edges}

    @cached_property
    def adjacency(self) -> tuple[tuple[tuple[int, Fraction], ...], ...]:
        adj: list[list[tuple[int, Fraction]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return tuple(tuple(sorted(row)) for row in adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(u for u, _ in self.adjacency[v])

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def weight(self, u: int, v: int) -> Fraction:
        if u > v:
            u, v = v, u
        return self.weight_map[(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        if u > v:
            u, v = v, u
        return (u, v) in self.weight_map

    def class_sizes(self) -> tuple[int, int]:
        ones = sum(self.classes)
        return self.n - ones, ones

    def boundary_list(self, name: str) -> tuple[int, ...]:
        try:
            return self.boundary[name]
        except KeyError:
            raise GraphError(f"graph has no boundary list named {name!r}") from None


def make_graph(
    n: int,
    classes: Sequence[int],
    edges: Iterable[tuple],
    boundary: Mapping[str, Sequence[int]] | None = None,
    coords: Mapping[int, tuple[float, float]] | None = None,
    embedding: Mapping[int, Sequence[int]] | None = None,
) -> PMGraph:
    """Build a PMGraph, normalizing edge tuples and weights."""
    return PMGraph(n, tuple(classes), tuple(edges), dict(boundary or {}), coords, embedding)


# -- elementary rewrites of a whole graph ---------------------------------


def flip_classes(g: PMGraph) -> PMGraph:
    """Swap the two vertex classes everywhere."""
    return PMGraph(
        g.n,
        tuple(1 - c for c in g.classes),
        g.edges,
        g.boundary,
        g.coords,
        g.embedding,
    )


def _resolve_list(g: PMGraph, which: str | Sequence[int]) -> tuple[int, ...]:
    if isinstance(which, str):
        return g.boundary_list(which)
    vids = tuple(int(v) for v in which)
    if any(not 0 <= v < g.n for v in vids):
        raise GraphError("vertex list out of range")
    if len(set(vids)) != len(vids):
        raise GraphError("vertex list has repeats")
    return vids


def delete_vertices(g: PMGraph, vertices: Iterable[int]) -> PMGraph:
    """Remove the given vertices (and incident edges); survivors are relabeled
    in increasing old-index order and boundary lists are filtered."""
    doomed = set(int(v) for v in vertices)
    if any(not 0 <= v < g.n for v in doomed):
        raise GraphError("vertex to delete out of range")
    keep = [v for v in range(g.n) if v not in doomed]
    new_id = {v: i for i, v in enumerate(keep)}
    edges = [
        (new_id[u], new_id[v], w)
        for u, v, w in g.edges
        if u not in doomed and v not in doomed
    ]
    boundary = {
        name: tuple(new_id[v] for v in seq if v not in doomed)
        for name, seq in g.boundary.items()
    }
    coords = None
    if g.coords is not None:
        coords = {new_id[v]: g.coords[v] for v in keep if v in g.coords}
    embedding = None
    if g.embedding is not None:
        embedding = {
            new_id[v]: tuple(new_id[u] for u in g.embedding[v] if u not in doomed)
            for v in keep
        }
    return PMGraph(len(keep), tuple(g.classes[v] for v in keep), tuple(edges), boundary, coords, embedding)


def remove_vertices(g: PMGraph, list_name: str, positions: Iterable[int]) -> PMGraph:
    """Remove, from the named boundary list, the vertices at the given
    1-based positions.  Other lists are filtered and reindexed."""
    row = g.boundary_list(list_name)
    pos = sorted(set(int(p) for p in positions))
    for p in pos:
        if not 1 <= p <= len(row):
            raise GraphError(
                f"position {p} outside 1..{len(row)} for boundary list {list_name!r}"
            )
    return delete_vertices(g, (row[p - 1] for p in pos))


def connected_sum_with_map(
    g: PMGraph,
    h: PMGraph,
    g_list: str | Sequence[int],
    h_list: str | Sequence[int],
) -> tuple[PMGraph, tuple[int, ...]]:
    """Glue ``h`` onto ``g`` by identifying paired boundary vertices.

    ``h_list[i]`` is merged into ``g_list[i]``; the merged vertex keeps ``g``'s
    class.  Returns the glued graph and the new index of every ``h`` vertex.
    Raises GraphError on length mismatch, resulting class conflicts, or
    parallel edges.  Empty lists give the disjoint union.
    """
    gl = _resolve_list(g, g_list)
    hl = _resolve_list(h, h_list)
    if len(gl) != len(hl):
        raise GraphError(f"boundary lists have different lengths ({len(gl)} vs {len(hl)})")
    merged = {hv: gv for hv, gv in zip(hl, gl)}
    h_to_new = [0] * h.n
    next_id = g.n
    for v in range(h.n):
        if v in merged:
            h_to_new[v] = merged[v]
        else:
            h_to_new[v] = next_id
            next_id += 1
    classes = list(g.classes) + [
        h.classes[v] for v in range(h.n) if v not in merged
    ]
    edge_map = dict(g.weight_map)
    for u, v, w in h.edges:
        a, b = h_to_new[u], h_to_new[v]
        if a > b:
            a, b = b, a
        if classes[a] == classes[b]:
            raise GraphError(
                f"class conflict: glued edge ({a}, {b}) would join equal classes"
            )
        if (a, b) in edge_map:
            raise GraphError(f"parallel edge ({a}, {b}) created by gluing")
        edge_map[(a, b)] = w
    boundary = dict(g.boundary)
    out = PMGraph(
        next_id,
        tuple(classes),
        tuple((u, v, w) for (u, v), w in sorted(edge_map.items())),
        boundary,
        None,
        None,
    )
    return out, tuple(h_to_new)


def connected_sum(
    g: PMGraph,
    h: PMGraph,
    g_list: str | Sequence[int],
    h_list: str | Sequence[int],
) -> PMGraph:
    """Glue ``h`` onto ``g`` along paired boundary vertices (see
    :func:`connected_sum_with_map`)."""
    return connected_sum_with_map(g, h, g_list, h_list)[0]


def disjoint_union(g: PMGraph, h: PMGraph) -> PMGraph:
    """Place two graphs side by side with no identifications."""
    return connected_sum(g, h, (), ())


def add_pendants(
    g: PMGraph,
    list_name: str,
    pendant_list_name: str,
    direction: tuple[float, float] = (0.0, -1.0),
) -> PMGraph:
    """Attach one weight-1 pendant edge to each vertex of a named list.

    The new vertices are appended in list order and recorded under
    ``pendant_list_name``.
    """
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
            coords[p] = (x + direction[0], y + direction[1])
    boundary = dict(g.boundary)
    boundary[pendant_list_name] = tuple(pendants)
    return PMGraph(len(classes), tuple(classes), tuple(edges), boundary, coords, None)


def prune_forced_edges(g: PMGraph) -> tuple[PMGraph, Fraction]:
    """Repeatedly remove degree-1 vertices together with their forced partner.

    Returns ``(reduced, multiplier)`` with ``count(g) = multiplier *
    count(reduced)``.  If an isolated vertex appears, the multiplier is 0 and
    the graph at that point (still containing the isolated vertex) is
    returned.  Always picks the lowest-index degree-1 vertex, so the result is
    deterministic.
    """
    alive = set(range(g.n))
    adj = {v: dict() for v in range(g.n)}
    for u, v, w in g.edges:
        adj[u][v] = w
        adj[v][u] = w
    multiplier = Fraction(1)
    removed: set[int] = set()
    while True:
        isolated = [v for v in sorted(alive) if not adj[v]]
        if isolated and len(alive) > 0:
            multiplier = Fraction(0)
            break
        candidates = [v for v in sorted(alive) if len(adj[v]) == 1]
        if not candidates:
            break
        v = candidates[0]
        (u, w), = adj[v].items()
        multiplier *= w
        for x in (v, u):
            for nbr in list(adj[x]):
                del adj[nbr][x]
            adj[x].clear()
            alive.discard(x)
            removed.add(x)
    return delete_vertices(g, removed), multiplier


# -- JSON (de)serialization ------------------------------------------------


def graph_to_json_dict(g: PMGraph) -> dict:
    """Plain-JSON description: vertices with classes, weighted edges, lists."""
    return {
        "vertices": [{"index": v, "class": g.classes[v]} for v in range(g.n)],
        "edges": [
            {"u": u, "v": v, "weight": f"{w.numerator}/{w.denominator}"}
            for u, v, w in g.edges
        ],
        "boundary": {name: list(seq) for name, seq in sorted(g.boundary.items())},
    }


def graph_from_json_dict(data: Mapping) -> PMGraph:
    """Inverse of :func:`graph_to_json_dict` (geometry is not round-tripped)."""
    verts = sorted(data["vertices"], key=lambda d: d["index"])
    if [d["index"] for d in verts] != list(range(len(verts))):
        raise GraphError("vertex indices must be 0..n-1")
    classes = tuple(d["class"] for d in verts)
    edges = tuple((e["u"], e["v"], Fraction(e["weight"])) for e in data["edges"])
    boundary = {name: tuple(seq) for name, seq in data.get("boundary", {}).items()}
    return PMGraph(len(verts), classes, edges, boundary, None, None)


# -- named graph families --------------------------------------------------


def aztec_rectangle(m: int, n: int, hole_row_offset: int | None = None) -> PMGraph:
    """Diagonal-grid graph with alternating rows of n and n+1 vertices.

    Rows 1..2m+1 from the top: odd rows have n vertices, even rows n+1, and
    each vertex is joined to its nearest neighbors in the adjacent rows.
    Boundary lists: ``top`` (row 1), ``bottom`` (row 2m+1) and, when
    ``hole_row_offset`` is given, ``hole_row`` = the even row that many rows
    below the central one (offset may be negative or zero).
    """
    if m < 1 or n < 1:
        raise GraphError("aztec_rectangle needs m, n >= 1")
    return _diagonal_grid(
        rows=2 * m + 1,
        n=n,
        odd_cols_even=True,
        hole_row=None if hole_row_offset is None else _even_row(m, hole_row_offset),
    )


def _even_row(m: int, offset: int) -> int:
    row = (m + 1) + offset
    if not 1 <= row <= 2 * m + 1:
        raise GraphError(f"hole row offset {offset} leaves the graph")
    if row % 2 != 0:
        raise GraphError(f"hole row offset {offset} does not land on a long row")
    return row


def odd_aztec_rectangle(m: int, n: int) -> PMGraph:
    """Companion diagonal-grid graph: odd rows have n+1 vertices, even rows n.

    Rows 1..2m+1; boundary lists ``top`` and ``bottom`` (n+1 vertices each).
    """
    if m < 1 or n < 1:
        raise GraphError("odd_aztec_rectangle needs m, n >= 1")
    return _diagonal_grid(rows=2 * m + 1, n=n, odd_cols_even=False, hole_row=None)


def baseless_aztec_rectangle(m: int, n: int) -> PMGraph:
    """Diagonal-grid graph on rows 1..2m only (the base row is missing), so
    the bottom row is a long one with n+1 vertices."""
    if m < 1 or n < 1:
        raise GraphError("baseless_aztec_rectangle needs m, n >= 1")
    return _diagonal_grid(rows=2 * m, n=n, odd_cols_even=True, hole_row=None)


def _diagonal_grid(rows: int, n: int, odd_cols_even: bool, hole_row: int | None) -> PMGraph:
    """Shared construction for the diagonal-grid families.

    Vertices live on board columns; odd rows use even columns iff
    ``odd_cols_even`` (n per row) and the other rows use the complementary
    columns (n+1 per row).  Adjacency is diagonal: (r, c) ~ (r+1, c±1).
    """
    cols_for: dict[int, list[int]] = {}
    for r in range(1, rows + 1):
        short = (r % 2 == 1) == odd_cols_even
        if short:
            cols_for[r] = list(range(2, 2 * n + 1, 2))
        else:
            cols_for[r] = list(range(1, 2 * n + 2, 2))
    ids: dict[tuple[int, int], int] = {}
    classes: list[int] = []
    coords: dict[int, tuple[float, float]] = {}
    for r in range(1, rows + 1):
        for c in cols_for[r]:
            ids[(r, c)] = len(classes)
            classes.append((r - 1) % 2)
            coords[ids[(r, c)]] = (float(c), float(-r))
    edges = []
    for r in range(1, rows):
        for c in cols_for[r]:
            for dc in (-1, 1):
                if (r + 1, c + dc) in ids:
                    edges.append((ids[(r, c)], ids[(r + 1, c + dc)], Fraction(1)))
    boundary = {
        "top": tuple(ids[(1, c)] for c in cols_for[1]),
        "bottom": tuple(ids[(rows, c)] for c in cols_for[rows]),
    }
    if hole_row is not None:
        boundary["hole_row"] = tuple(ids[(hole_row, c)] for c in cols_for[hole_row])
    return PMGraph(len(classes), tuple(classes), tuple(edges), boundary, coords, None)


def hexagon_graph(sides: Sequence[int]) -> PMGraph:
    """Triangle-adjacency graph of a hexagonal region on the triangular lattice.

    ``sides`` are the six edge lengths clockwise from the top edge; opposite
    sides must satisfy s1 - s4 = s5 - s2 = s3 - s6.  Vertices are the unit
    triangles (down-pointing = class 0, up-pointing = class 1) and edges join
    triangles sharing a side.  Boundary lists: ``top`` = the s1 down-triangles
    along the top edge, ``bottom`` = the s4 up-triangles along the bottom edge.
    """
    s1, s2, s3, s4, s5, s6 = (int(s) for s in sides)
    if min(s1, s2, s3, s4, s5, s6) < 0:
        raise GraphError("hexagon sides must be nonnegative")
    if not (s1 - s4 == s5 - s2 == s3 - s6):
        raise GraphError(f"hexagon sides {sides} do not close up")
    height = s2 + s3
    if height == 0:
        if s1 > 0:
            raise GraphError("degenerate hexagon: positive top side but zero height")
        return PMGraph(0, (), (), {"top": (), "bottom": ()}, {}, None)

    def left_at(depth: int) -> int:  # doubled x-coordinate of left boundary
        return -min(depth, s6) + max(0, depth - s6)

    def right_at(depth: int) -> int:
        return 2 * s1 + min(depth, s2) - max(0, depth - s2)

    ids: dict[tuple[str, int, int], int] = {}
    classes: list[int] = []
    coords: dict[int, tuple[float, float]] = {}
    for r in range(1, height + 1):
        lt, rt = left_at(r - 1), right_at(r - 1)
        lb, rb = left_at(r), right_at(r)
        cells = [("D", r, h) for h in range(lt, rt - 1, 2)]
        cells += [("U", r, h) for h in range(lb, rb - 1, 2)]
        for kind, rr, h in sorted(cells, key=lambda c: (c[2], c[0])):
            ids[(kind, rr, h)] = len(classes)
            classes.append(0 if kind == "D" else 1)
            y = -(rr - 1) - 1.0 / 3.0 if kind == "D" else -rr + 1.0 / 3.0
            coords[ids[(kind, rr, h)]] = ((h + 1) / 2.0, y)
    edges = []
    for (kind, r, h), vid in ids.items():
        if kind != "U":
            continue
        for nb in (("D", r, h - 1), ("D", r, h + 1), ("D", r + 1, h)):
            if nb in ids:
                edges.append((ids[nb], vid, Fraction(1)))
    top = tuple(
        ids[("D", 1, h)] for h in range(left_at(0), right_at(0) - 1, 2)
    )
    bottom = tuple(
        ids[("U", height, h)] for h in range(left_at(height), right_at(height) - 1, 2)
    )
    return PMGraph(
        len(classes),
        tuple(classes),
        tuple(edges),
        {"top": top, "bottom": bottom},
        coords,
        None,
    )


def semihexagon(a: int, b: int) -> PMGraph:
    """Trapezoidal triangle-adjacency graph: top side a+b, height a, base b.

    ``top`` lists the a+b down-triangles along the top edge left to right;
    removing a subset of them produces the dented counters used in tests.
    """
    if a < 1 or b < 0:
        raise GraphError("semihexagon needs a >= 1, b >= 0")
    return hexagon_graph((a + b, 0, a, b, a, 0))


# -- planar structure -------------------------------------------------------


def rotation_system(g: PMGraph) -> dict[int, tuple[int, ...]]:
    """Cyclic neighbor order for every vertex.

    Uses the stored embedding if present, else sorts neighbors by angle around
    the stored coordinates, else computes a combinatorial planar embedding
    (raising EmbeddingError for nonplanar graphs).
    """
    if g.embedding is not None:
        return {v: tuple(g.embedding[v]) for v in range(g.n)}
    if g.coords is not None and all(v in g.coords for v in range(g.n)):
        rot = {}
        for v in range(g.n):
            x0, y0 = g.coords[v]

            def angle(u: int) -> float:
                x1, y1 = g.coords[u]  # type: ignore[index]
                return math.atan2(y1 - y0, x1 - x0)

            rot[v] = tuple(sorted(g.neighbors(v), key=angle))
        return rot
    import networkx as nx

    G = nx.Graph()
    G.add_nodes_from(range(g.n))
    G.add_edges_from((u, v) for u, v, _ in g.edges)
    ok, emb = nx.check_planarity(G)
    if not ok:
        raise EmbeddingError("graph is not planar; no embedding available")
    return {v: tuple(emb.neighbors_cw_order(v)) for v in range(g.n)}
