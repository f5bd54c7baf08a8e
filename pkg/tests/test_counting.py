"""Counting backends: brute-force, permanent, FKT, and the enumerator."""

from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from hybridtilings.counting import (
    count_bruteforce,
    count_fkt,
    count_permanent,
    enumerate_tilings,
)
from hybridtilings.formulas import hexagon_count
from hybridtilings.graphs import (
    EmbeddingError,
    aztec_rectangle,
    hexagon_graph,
    make_graph,
    semihexagon,
)

BACKENDS = (count_bruteforce, count_permanent, count_fkt)


class TestSmallGraphs:
    def test_empty_graph_counts_one(self):
        g = make_graph(0, (), [])
        for fn in BACKENDS:
            assert fn(g) == 1

    def test_odd_graph_counts_zero(self):
        g = make_graph(3, (0, 1, 0), [(0, 1), (1, 2)])
        for fn in BACKENDS:
            assert fn(g) == 0

    def test_single_edge(self):
        g = make_graph(2, (0, 1), [(0, 1, Fraction(5, 3))])
        for fn in BACKENDS:
            assert fn(g) == Fraction(5, 3)

    def test_four_cycle(self):
        g = make_graph(4, (0, 1, 0, 1), [(0, 1), (1, 2), (2, 3), (3, 0)])
        for fn in BACKENDS:
            assert fn(g) == 2

    def test_weighted_four_cycle(self):
        g = make_graph(
            4, (0, 1, 0, 1), [(0, 1, 2), (1, 2, 3), (2, 3, 5), (3, 0, 7)]
        )
        for fn in BACKENDS:
            assert fn(g) == 2 * 5 + 3 * 7

    def test_disconnected_product(self):
        g = make_graph(4, (0, 1, 0, 1), [(0, 1, 2), (2, 3, 3)])
        for fn in BACKENDS:
            assert fn(g) == 6


class TestKnownFamilies:
    @pytest.mark.parametrize("n", range(1, 5))
    def test_diamond_powers(self, n):
        assert count_bruteforce(aztec_rectangle(n, n)) == 2 ** (n * (n + 1) // 2)

    @pytest.mark.parametrize(
        "sides,count",
        [((1, 1, 1, 1, 1, 1), 2), ((2, 2, 2, 2, 2, 2), 20), ((2, 1, 2, 2, 1, 2), 6)],
    )
    def test_hexagons_match_triple_product(self, sides, count):
        g = hexagon_graph(sides)
        assert count_bruteforce(g) == count
        assert hexagon_count(sides[0], sides[1], sides[2]) == count

    def test_backends_agree_on_rectangles(self):
        for m, n in ((1, 3), (2, 3), (3, 2)):
            g = aztec_rectangle(m, n)
            vals = {fn(g) for fn in BACKENDS}
            assert len(vals) == 1

    def test_backends_agree_on_semihexagon(self):
        g = semihexagon(2, 2)
        assert count_bruteforce(g) == count_permanent(g) == count_fkt(g)


class TestEnumerator:
    def test_matches_count_and_is_sorted(self):
        g = aztec_rectangle(2, 2)
        tilings = enumerate_tilings(g)
        assert len(tilings) == count_bruteforce(g)
        assert tilings == sorted(tilings)
        for t in tilings:
            used = [v for e in t for v in e]
            assert len(used) == g.n
            assert len(set(used)) == g.n
            assert all(g.has_edge(u, v) for u, v in t)

    def test_limit(self):
        g = aztec_rectangle(2, 2)
        assert len(enumerate_tilings(g, limit=3)) == 3
        assert enumerate_tilings(g, limit=3) == enumerate_tilings(g)[:3]

    def test_no_tilings(self):
        g = make_graph(2, (0, 1), [])
        assert enumerate_tilings(g) == []


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 3), st.data())
def test_random_bipartite_backends_agree(half, data):
    n = 2 * half
    classes = [0] * half + [1] * half
    possible = [(i, half + j) for i in range(half) for j in range(half)]
    chosen = data.draw(st.sets(st.sampled_from(possible)) if possible else st.just(set()))
    weights = data.draw(
        st.lists(
            st.sampled_from([1, 2, Fraction(1, 2), Fraction(3, 2)]),
            min_size=len(chosen),
            max_size=len(chosen),
        )
    )
    g = make_graph(n, classes, [(u, v, w) for (u, v), w in zip(sorted(chosen), weights)])
    assert count_bruteforce(g) == count_permanent(g)
    try:
        fkt = count_fkt(g)
    except EmbeddingError:
        # the planar backend may refuse, but only honestly (e.g. K33)
        G = nx.Graph()
        G.add_nodes_from(range(g.n))
        G.add_edges_from((u, v) for u, v, _ in g.edges)
        assert not nx.check_planarity(G)[0]
    else:
        assert fkt == count_bruteforce(g)
