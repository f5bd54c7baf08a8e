"""Graph container, family builders, and gluing operations."""

from fractions import Fraction

import pytest

from hybridtilings.graphs import (
    GraphError,
    PMGraph,
    add_pendants,
    aztec_rectangle,
    baseless_aztec_rectangle,
    connected_sum,
    delete_vertices,
    disjoint_union,
    flip_classes,
    graph_from_json_dict,
    graph_to_json_dict,
    hexagon_graph,
    make_graph,
    odd_aztec_rectangle,
    prune_forced_edges,
    remove_vertices,
    semihexagon,
)


def path3() -> PMGraph:
    return make_graph(3, (0, 1, 0), [(0, 1), (1, 2)], {"ends": (0, 2)})


class TestPMGraph:
    def test_edges_normalized_and_sorted(self):
        g = make_graph(3, (0, 1, 0), [(2, 1, 2), (1, 0)])
        assert g.edges == ((0, 1, Fraction(1)), (1, 2, Fraction(2)))

    def test_same_class_edge_rejected(self):
        with pytest.raises(GraphError):
            make_graph(2, (0, 0), [(0, 1)])

    def test_duplicate_edge_rejected(self):
        with pytest.raises(GraphError):
            make_graph(2, (0, 1), [(0, 1), (1, 0)])

    def test_nonpositive_weight_rejected(self):
        with pytest.raises(GraphError):
            make_graph(2, (0, 1), [(0, 1, 0)])

    def test_boundary_list_lookup(self):
        g = path3()
        assert g.boundary_list("ends") == (0, 2)
        with pytest.raises(GraphError):
            g.boundary_list("nope")

    def test_class_sizes_and_neighbors(self):
        g = path3()
        assert g.class_sizes() == (2, 1)
        assert g.neighbors(1) == (0, 2)
        assert g.degree(1) == 2
        assert g.weight(2, 1) == 1

    def test_flip_classes(self):
        g = flip_classes(path3())
        assert g.classes == (1, 0, 1)
        assert g.edges == path3().edges


class TestEditing:
    def test_delete_vertices_reindexes_boundary(self):
        g = make_graph(4, (0, 1, 0, 1), [(0, 1), (1, 2), (2, 3)], {"all": (0, 1, 2, 3)})
        h = delete_vertices(g, [1])
        assert h.n == 3
        assert h.boundary_list("all") == (0, 1, 2)
        assert h.edges == ((1, 2, Fraction(1)),)

    def test_remove_vertices_positions_are_one_based(self):
        g = make_graph(4, (0, 1, 0, 1), [(0, 1), (1, 2), (2, 3)], {"row": (3, 2, 1)})
        h = remove_vertices(g, "row", [1])  # vertex 3
        assert h.n == 3
        assert h.boundary_list("row") == (2, 1)
        with pytest.raises(GraphError):
            remove_vertices(g, "row", [4])

    def test_add_pendants(self):
        g = add_pendants(path3(), "ends", "hairs")
        assert g.n == 5
        assert g.boundary_list("hairs") == (3, 4)
        assert g.classes[3] == 1 and g.classes[4] == 1
        assert g.has_edge(0, 3) and g.has_edge(2, 4)

    def test_prune_forced_edges_chain(self):
        # a path with 4 vertices collapses to nothing with multiplier 1*1
        g = make_graph(4, (0, 1, 0, 1), [(0, 1, 2), (1, 2), (2, 3, 3)])
        reduced, mult = prune_forced_edges(g)
        assert reduced.n == 0
        assert mult == 6

    def test_prune_forced_edges_isolated_vertex(self):
        g = make_graph(3, (0, 1, 0), [(0, 1)])
        reduced, mult = prune_forced_edges(g)
        assert mult == 0
        assert reduced.n >= 1


class TestConnectedSum:
    def test_merges_and_keeps_host_class(self):
        g = make_graph(2, (0, 1), [(0, 1)], {"port": (1,)})
        h = make_graph(2, (1, 0), [(0, 1, 3)], {"port": (0,)})
        s = connected_sum(g, h, "port", "port")
        assert s.n == 3
        assert s.classes == (0, 1, 0)
        assert s.weight(1, 2) == 3

    def test_class_conflict_raises(self):
        g = make_graph(2, (0, 1), [(0, 1)], {"port": (1,)})
        h = make_graph(2, (0, 1), [(0, 1)], {"port": (0,)})
        with pytest.raises(GraphError):
            connected_sum(g, h, "port", "port")

    def test_parallel_edge_raises(self):
        g = make_graph(2, (0, 1), [(0, 1)])
        h = make_graph(2, (0, 1), [(0, 1)])
        with pytest.raises(GraphError):
            connected_sum(g, h, (0, 1), (0, 1))

    def test_disjoint_union(self):
        u = disjoint_union(path3(), path3())
        assert u.n == 6
        assert len(u.edges) == 4


class TestFamilies:
    def test_aztec_rectangle_shape(self):
        g = aztec_rectangle(3, 5)
        # rows alternate 5 and 6 vertices: 4*5 + 3*6
        assert g.n == 38
        assert len(g.boundary_list("top")) == 5
        assert len(g.boundary_list("bottom")) == 5
        assert g.classes[g.boundary_list("top")[0]] == 0

    def test_aztec_rectangle_hole_row(self):
        g = aztec_rectangle(3, 3, hole_row_offset=0)
        row = g.boundary_list("hole_row")
        assert len(row) == 4
        assert all(g.classes[v] == 1 for v in row)
        with pytest.raises(GraphError):
            aztec_rectangle(3, 3, hole_row_offset=1)  # lands on a short row

    def test_odd_aztec_rectangle_shape(self):
        g = odd_aztec_rectangle(2, 3)
        # odd rows have n+1 vertices of class 0
        assert g.n == 3 * 4 + 2 * 3
        assert len(g.boundary_list("top")) == 4

    def test_baseless_aztec_rectangle_shape(self):
        g = baseless_aztec_rectangle(2, 3)
        assert g.n == 2 * (3 + 4)  # m short rows and m long rows
        assert len(g.boundary_list("bottom")) == 4

    def test_hexagon_closure_enforced(self):
        with pytest.raises(GraphError):
            hexagon_graph((1, 2, 1, 1, 1, 1))

    def test_hexagon_unit(self):
        g = hexagon_graph((1, 1, 1, 1, 1, 1))
        assert g.n == 6
        assert len(g.boundary_list("top")) == 1
        assert len(g.boundary_list("bottom")) == 1

    def test_semihexagon_rows(self):
        g = semihexagon(2, 1)
        assert len(g.boundary_list("top")) == 3
        assert g.n == 3 + 2 + 2 + 1


class TestJson:
    def test_round_trip(self):
        g = aztec_rectangle(3, 2, hole_row_offset=0)
        data = graph_to_json_dict(g)
        h = graph_from_json_dict(data)
        assert h.n == g.n
        assert h.classes == g.classes
        assert h.edges == g.edges
        assert h.boundary == g.boundary
