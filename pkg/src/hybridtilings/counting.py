"""Exact weighted perfect-matching counters.

Three independent backends: recursive elimination with memoization
(`count_bruteforce`), an inclusion-exclusion permanent (`count_permanent`),
and a Pfaffian/determinant method for plane graphs (`count_fkt`).  They must
agree; the test-suite leans on that redundancy.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, Sequence

from .graphs import EmbeddingError, InternalInvariantError, PMGraph, rotation_system

__all__ = [
    "count_bruteforce",
    "count_permanent",
    "count_fkt",
    "enumerate_tilings",
]


def _compact_weight(w: Fraction) -> int | Fraction:
    return w.numerator if w.denominator == 1 else w


def count_bruteforce(g: PMGraph) -> Fraction:
    """Sum of weight products over all perfect matchings, by elimination.

    Repeatedly matches the remaining vertex of minimum remaining degree
    (lowest index on ties) and recurses, memoizing on the set of remaining
    vertices.  Exact for any graph the caller has patience for; comfortable
    into the low hundreds of vertices for band-shaped graphs.
    """
    n = g.n
    if n == 0:
        return Fraction(1)
    sizes = g.class_sizes()
    if n % 2 == 1 or sizes[0] != sizes[1]:
        return Fraction(0)
    adj: list[tuple[tuple[int, int | Fraction], ...]] = [
        tuple((u, _compact_weight(w)) for u, w in row) for row in g.adjacency
    ]
    full = (1 << n) - 1
    memo: dict[int, int | Fraction] = {}

    def best_vertex(mask: int) -> tuple[int, int]:
        best = (n + 1, -1)
        rem = mask
        while rem:
            v = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            deg = 0
            for u, _ in adj[v]:
                if (mask >> u) & 1:
                    deg += 1
            if deg < best[0]:
                best = (deg, v)
                if deg <= 1:
                    break
        return best

    def rec(mask: int) -> int | Fraction:
        if mask == 0:
            return 1
        cached = memo.get(mask)
        if cached is not None:
            return cached
        deg, v = best_vertex(mask)
        if deg == 0:
            memo[mask] = 0
            return 0
        total: int | Fraction = 0
        rest = mask & ~(1 << v)
        for u, w in adj[v]:
            if (rest >> u) & 1:
                total += w * rec(rest & ~(1 << u))
        memo[mask] = total
        return total

    return Fraction(rec(full))


def count_permanent(g: PMGraph) -> Fraction:
    """Permanent of the class-0 x class-1 weight matrix, by Gray-coded
    inclusion-exclusion.  Exponential in n/2; returns 0 when the classes have
    different sizes."""
    rows = [v for v in range(g.n) if g.classes[v] == 0]
    cols = [v for v in range(g.n) if g.classes[v] == 1]
    if len(rows) != len(cols):
        return Fraction(0)
    n = len(rows)
    if n == 0:
        return Fraction(1)
    col_index = {v: j for j, v in enumerate(cols)}
    matrix: list[list[int | Fraction]] = [[0] * n for _ in rows]
    for i, v in enumerate(rows):
        for u, w in g.adjacency[v]:
            matrix[i][col_index[u]] = _compact_weight(w)
    sums: list[int | Fraction] = [0] * n
    total: int | Fraction = 0
    gray = 0
    for k in range(1, 1 << n):
        new_gray = k ^ (k >> 1)
        j = (gray ^ new_gray).bit_length() - 1
        sign = 1 if (new_gray >> j) & 1 else -1
        for i in range(n):
            w = matrix[i][j]
            if w:
                sums[i] = sums[i] + w if sign > 0 else sums[i] - w
        gray = new_gray
        prod: int | Fraction = 1
        for s in sums:
            if not s:
                prod = 0
                break
            prod *= s
        if prod:
            total += prod if (n - gray.bit_count()) % 2 == 0 else -prod
    return Fraction(total)


# -- planar (Pfaffian) backend ----------------------------------------------


def _faces(rot: dict[int, tuple[int, ...]]) -> list[list[tuple[int, int]]]:
    """Orbits of directed edges under arrive-at-v-leave-after-u traversal."""
    position = {
        (v, u): i for v, nbrs in rot.items() for i, u in enumerate(nbrs)
    }
    seen: set[tuple[int, int]] = set()
    faces = []
    for start in sorted(position):
        if start in seen:
            continue
        face = []
        edge = start
        while edge not in seen:
            seen.add(edge)
            face.append(edge)
            u, v = edge
            nbrs = rot[v]
            i = position[(v, u)]
            edge = (v, nbrs[(i + 1) % len(nbrs)])
        faces.append(face)
    return faces


def _pfaffian_orientation(
    vertices: list[int],
    edges: list[tuple[int, int]],
    rot: dict[int, tuple[int, ...]],
) -> dict[tuple[int, int], int]:
    """Orient a connected plane graph so every face but one has an odd number
    of traversal-agreeing edges.  Returns {undirected pair: +1 or -1} where +1
    means the stored (u, v) direction with u < v."""
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    root = min(vertices)
    parent: dict[int, int | None] = {root: None}
    order = [root]
    for v in order:
        for u in sorted(adj[v]):
            if u not in parent:
                parent[u] = v
                order.append(u)
    if len(order) != len(vertices):
        raise InternalInvariantError("component is not connected")
    orient: dict[tuple[int, int], int] = {}
    tree_pairs = set()
    for v in order[1:]:
        p = parent[v]
        assert p is not None
        pair = (p, v) if p < v else (v, p)
        tree_pairs.add(pair)
        orient[pair] = 1 if p < v else -1  # orient parent -> child
    nontree = [
        (u, v) for u, v in edges if ((u, v) if u < v else (v, u)) not in tree_pairs
    ]
    faces = _faces(rot)
    n_v, n_e, n_f = len(vertices), len(edges), len(faces)
    if n_v - n_e + n_f != 2:
        raise EmbeddingError(
            f"rotation system is not planar (V-E+F = {n_v}-{n_e}+{n_f} != 2)"
        )
    face_of: dict[tuple[int, int], int] = {}
    for idx, face in enumerate(faces):
        for half in face:
            face_of[half] = idx
    # The non-tree edges connect the faces in a tree; orient leaves first.
    dual_adj: dict[int, list[tuple[int, tuple[int, int]]]] = {i: [] for i in range(n_f)}
    for u, v in nontree:
        a, b = face_of[(u, v)], face_of[(v, u)]
        pair = (u, v) if u < v else (v, u)
        dual_adj[a].append((b, pair))
        dual_adj[b].append((a, pair))
    dual_parent: dict[int, tuple[int, tuple[int, int]] | None] = {0: None}
    dual_order = [0]
    for f in dual_order:
        for nb, pair in dual_adj[f]:
            if nb not in dual_parent:
                dual_parent[nb] = (f, pair)
                dual_order.append(nb)
    if len(dual_order) != n_f:
        raise InternalInvariantError("face adjacency through non-tree edges is not connected")
    for f in reversed(dual_order[1:]):
        entry = dual_parent[f]
        assert entry is not None
        _, free_pair = entry
        agree = 0
        for u, v in faces[f]:
            pair = (u, v) if u < v else (v, u)
            if pair == free_pair:
                continue
            direction = orient[pair]
            if (direction == 1) == (pair == (u, v)):
                agree += 1
        # choose the free edge so the face's agreeing count becomes odd
        half_forward = next(
            (u, v) for u, v in faces[f] if ((u, v) if u < v else (v, u)) == free_pair
        )
        forward = half_forward == free_pair
        if agree % 2 == 0:
            orient[free_pair] = 1 if forward else -1
        else:
            orient[free_pair] = -1 if forward else 1
    return orient


def _bareiss_det(matrix: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [row[:] for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k] != 0:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            row_i = m[i]
            row_k = m[k]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - factor * row_k[j]) // prev
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _sqrt_exact(x: Fraction) -> Fraction:
    num, den = x.numerator, x.denominator
    if num < 0:
        raise InternalInvariantError(f"determinant {x} is negative, cannot be a square")
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise InternalInvariantError(f"determinant {x} is not a perfect square")
    return Fraction(rn, rd)


def count_fkt(g: PMGraph) -> Fraction:
    """Matching count via a face-parity edge orientation and a determinant.

    Requires planarity: uses the stored embedding or coordinates when present,
    otherwise computes an embedding, and raises EmbeddingError for nonplanar
    graphs.  A non-square determinant raises InternalInvariantError.
    """
    n = g.n
    if n == 0:
        return Fraction(1)
    sizes = g.class_sizes()
    if n % 2 == 1 or sizes[0] != sizes[1]:
        return Fraction(0)
    if any(g.degree(v) == 0 for v in range(g.n)):
        return Fraction(0)
    rot = rotation_system(g)
    # split into connected components
    seen: set[int] = set()
    result = Fraction(1)
    for s in range(n):
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        for v in comp:
            for u in g.neighbors(v):
                if u not in seen:
                    seen.add(u)
                    comp.append(u)
        comp.sort()
        if len(comp) % 2 == 1:
            return Fraction(0)
        comp_edges = [(u, v) for u, v, _ in g.edges if u in set(comp)]
        comp_rot = {v: rot[v] for v in comp}
        orient = _pfaffian_orientation(comp, comp_edges, comp_rot)
        index = {v: i for i, v in enumerate(comp)}
        k = len(comp)
        denom_lcm = 1
        for u, v in comp_edges:
            denom_lcm = math.lcm(denom_lcm, g.weight(u, v).denominator)
        mat = [[0] * k for _ in range(k)]
        for u, v in comp_edges:
            w = g.weight(u, v)
            scaled = w.numerator * (denom_lcm // w.denominator)
            signed = scaled * orient[(u, v) if u < v else (v, u)]
            mat[index[u]][index[v]] = signed
            mat[index[v]][index[u]] = -signed
        det = _bareiss_det(mat)
        result *= _sqrt_exact(Fraction(det, denom_lcm**k))
    return result


def enumerate_tilings(
    g: PMGraph, limit: int | None = None
) -> list[tuple[tuple[int, int], ...]]:
    """List perfect matchings in a deterministic order.

    Branches exactly like :func:`count_bruteforce` (minimum remaining degree,
    lowest index, neighbors in increasing order); each matching is a sorted
    tuple of (u, v) edges.  Stops after ``limit`` matchings when given.
    """
    n = g.n
    if n == 0:
        return [()]
    if n % 2 == 1:
        return []
    adj = g.adjacency
    out: list[tuple[tuple[int, int], ...]] = []
    chosen: list[tuple[int, int]] = []

    def rec(mask: int) -> bool:
        if limit is not None and len(out) >= limit:
            return False
        if mask == 0:
            out.append(tuple(sorted(chosen)))
            return limit is None or len(out) < limit
        best = (n + 1, -1)
        rem = mask
        while rem:
            v = (rem & -rem).bit_length() - 1
            rem &= rem - 1
            deg = sum(1 for u, _ in adj[v] if (mask >> u) & 1)
            if deg < best[0]:
                best = (deg, v)
                if deg <= 1:
                    break
        deg, v = best
        if deg == 0:
            return True
        rest = mask & ~(1 << v)
        for u, _ in adj[v]:
            if (rest >> u) & 1:
                chosen.append((v, u) if v < u else (u, v))
                keep_going = rec(rest & ~(1 << u))
                chosen.pop()
                if not keep_going:
                    return False
        return True

    rec((1 << n) - 1)
    return out
