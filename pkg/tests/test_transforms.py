"""Count-conserving graph rewrites: every rule must satisfy
count(before) == multiplier * count(after) exactly."""

import random
from fractions import Fraction

import pytest

from hybridtilings.counting import count_bruteforce, count_fkt
from hybridtilings.graphs import GraphError, make_graph
from hybridtilings.regions import dual_graph, strip_region
from hybridtilings.transforms import (
    composite_transform,
    hexagon_pair_reduce,
    otrans_a,
    otrans_b,
    star_scale,
    t1_transfer,
    t6_transfer,
    urban_renewal,
    vertex_split,
)
from hybridtilings.verify import check_conservation, random_tail, transform_instance


def four_cycle(weights=(1, 1, 1, 1)):
    edges = [
        (0, 1, Fraction(weights[0])),
        (1, 2, Fraction(weights[1])),
        (2, 3, Fraction(weights[2])),
        (3, 0, Fraction(weights[3])),
    ]
    return make_graph(4, (0, 1, 0, 1), edges, {}, None)


def spider(x=1, y=1, z=1, t=1):
    """Four outer degree-1 vertices 0..3, inner 4-cycle 4..7 with the given
    weights, unit legs."""
    edges = [
        (0, 4, Fraction(1)),
        (1, 5, Fraction(1)),
        (2, 6, Fraction(1)),
        (3, 7, Fraction(1)),
        (4, 5, Fraction(x)),
        (5, 6, Fraction(y)),
        (6, 7, Fraction(z)),
        (7, 4, Fraction(t)),
    ]
    return make_graph(8, (1, 0, 1, 0, 0, 1, 0, 1), edges, {}, None)


class TestVertexSplit:
    def test_count_preserved(self):
        g = four_cycle()
        pair = vertex_split(g, 0, [1])
        assert pair.multiplier == 1
        assert pair.after.n == g.n + 2
        assert count_bruteforce(pair.before) == count_bruteforce(pair.after) == 2

    def test_split_all_or_none(self):
        g = four_cycle((2, 3, 5, 7))
        for subset in ([], [1], [3], [1, 3]):
            pair = vertex_split(g, 0, subset)
            assert count_bruteforce(pair.after) == count_bruteforce(g)

    def test_rejects_non_neighbors(self):
        with pytest.raises(GraphError):
            vertex_split(four_cycle(), 0, [2])

    def test_rejects_bad_vertex(self):
        with pytest.raises(GraphError):
            vertex_split(four_cycle(), 9, [])


class TestStarScale:
    def test_conservation_with_weights(self):
        g = four_cycle((2, 3, 5, 7))
        pair = star_scale(g, 1, Fraction(3, 2))
        assert pair.multiplier == Fraction(2, 3)
        before, after, ok = check_conservation(pair)
        assert ok and before == 2 * 5 + 3 * 7

    def test_only_incident_edges_scaled(self):
        pair = star_scale(four_cycle((2, 3, 5, 7)), 0, 2)
        weights = {frozenset((a, b)): w for a, b, w in pair.after.edges}
        assert weights[frozenset((0, 1))] == 4
        assert weights[frozenset((3, 0))] == 14
        assert weights[frozenset((1, 2))] == 3

    def test_rejects_nonpositive_factor(self):
        with pytest.raises(GraphError):
            star_scale(four_cycle(), 0, 0)


class TestSpiderContraction:
    CELL = (0, 1, 2, 3, 4, 5, 6, 7)

    def test_unit_weights(self):
        pair = urban_renewal(spider(), self.CELL)
        assert pair.multiplier == 2
        assert pair.after.n == 4
        assert count_bruteforce(pair.before) == 1
        assert count_bruteforce(pair.after) == Fraction(1, 2)

    def test_weighted_cycle(self):
        pair = urban_renewal(spider(x=2), self.CELL)
        assert pair.multiplier == 3  # x*z + y*t = 2 + 1
        before, after, ok = check_conservation(pair)
        assert ok and before == 1 and after == Fraction(1, 3)

    def test_rejects_weighted_leg(self):
        g = spider()
        bad = make_graph(
            g.n,
            g.classes,
            tuple((a, b, Fraction(2)) if (a, b) == (0, 4) else (a, b, w) for a, b, w in g.edges),
            {},
            None,
        )
        with pytest.raises(GraphError):
            urban_renewal(bad, self.CELL)

    def test_rejects_inner_outside_neighbor(self):
        g = spider()
        bad = make_graph(
            g.n + 1,
            g.classes + (1,),
            g.edges + ((4, 8, Fraction(1)),),
            {},
            None,
        )
        with pytest.raises(GraphError):
            urban_renewal(bad, self.CELL)

    def test_rejects_wrong_cell_size(self):
        with pytest.raises(GraphError):
            urban_renewal(spider(), (0, 1, 2, 3, 4, 5, 6))

    def test_random_host_instance(self):
        pair = transform_instance("urban_renewal", random.Random("unit:0"))
        _, _, ok = check_conservation(pair)
        assert ok


class TestCompositeBand:
    def test_empty_band_is_identity(self):
        tail = four_cycle()
        pair = composite_transform(3, (), (), tail, ())
        assert pair.before is tail and pair.after is tail
        assert pair.multiplier == 1

    def test_empty_band_rejects_holes(self):
        with pytest.raises(GraphError):
            composite_transform(3, (), (1,), four_cycle(), ())

    def test_black_width_one_rejected(self):
        # the strip a=1, gaps (2, 2) pinches to a single black bottom cell,
        # and the replacement rectangle would be empty
        tail = make_graph(1, (0,), (), {"attach": (0,)}, None)
        with pytest.raises(GraphError):
            composite_transform(1, (2, 2), (), tail, (0,))

    def test_hole_validation(self):
        band = dual_graph(strip_region(2, (2,)))
        classes = [band.classes[v] for v in band.boundary_list("bottom")]
        tail = random_tail(classes, random.Random(0))
        with pytest.raises(GraphError):
            composite_transform(2, (2,), (0,), tail, tail.boundary_list("attach"))
        with pytest.raises(GraphError):
            composite_transform(2, (2,), (1, 1), tail, tail.boundary_list("attach"))

    def test_nontrivial_multiplier_instance(self):
        band = dual_graph(strip_region(3, (2, 1)))
        classes = [band.classes[v] for v in band.boundary_list("bottom")]
        tail = random_tail(classes, random.Random("ct:0"), -1)
        pair = composite_transform(3, (2, 1), (), tail, tail.boundary_list("attach"))
        assert pair.multiplier == 2
        before, after, ok = check_conservation(pair)
        assert ok and (before, after) == (4, 2)

    @pytest.mark.parametrize("rule", ["composite_white", "composite_black"])
    def test_seeded_instances(self, rule):
        pair = transform_instance(rule, random.Random("unit:0"))
        before, after, ok = check_conservation(pair)
        assert ok and before > 0


class TestTransferRules:
    @pytest.mark.parametrize(
        "rule,seed,expected",
        [
            ("t1", "unit:1", (6, 3, 2)),
            ("otrans_a", "unit:2", (2, 1, 2)),
            ("otrans_b", "unit:3", (Fraction(33, 8), Fraction(33, 16), 2)),
            ("t6", "unit:0", (8, 4, 2)),
        ],
    )
    def test_seeded_conservation(self, rule, seed, expected):
        pair = transform_instance(rule, random.Random(seed))
        before, after, ok = check_conservation(pair)
        assert ok
        assert (before, after, pair.multiplier) == expected

    @pytest.mark.parametrize("builder", [t1_transfer, otrans_a, otrans_b, t6_transfer])
    def test_rejects_degenerate_dimensions(self, builder):
        tail = four_cycle()
        with pytest.raises(GraphError):
            builder(0, 2, tail, ())
        with pytest.raises(GraphError):
            builder(1, 1, tail, ())

    def test_multiplier_is_power_of_two(self):
        for rule in ("t1", "otrans_a", "otrans_b", "t6"):
            pair = transform_instance(rule, random.Random("unit:5"))
            assert pair.multiplier.denominator == 1
            assert pair.multiplier.numerator & (pair.multiplier.numerator - 1) == 0


class TestHexagonPair:
    def test_smallest_instance_is_degenerate(self):
        # both sides have an odd vertex count, so both counts vanish and the
        # conservation law holds vacuously
        pair = hexagon_pair_reduce(2, 1, 1, 1, 2, 1)
        assert (pair.before.n, pair.after.n) == (11, 15)
        assert pair.multiplier == Fraction(1, 4)
        before, after, ok = check_conservation(pair)
        assert ok and before == after == 0

    def test_seeded_nonzero_instance(self):
        pair = transform_instance("hexagon_pair", random.Random("unit:10"))
        before, after, ok = check_conservation(pair)
        assert ok
        assert (before, after, pair.multiplier) == (96, 49152, Fraction(1, 512))

    def test_figure_scale_instance(self):
        pair = hexagon_pair_reduce(8, 3, 3, 4, 10, 1)
        assert pair.multiplier == Fraction(1, 2**73)
        fb = count_fkt(pair.before)
        fa = count_fkt(pair.after)
        assert fb == 23708160
        assert fb == pair.multiplier * fa

    def test_parameter_validation(self):
        with pytest.raises(GraphError):
            hexagon_pair_reduce(2, 1, 1, 1, 3, 1)  # totals differ
        with pytest.raises(GraphError):
            hexagon_pair_reduce(2, 2, 2, 1, 2, 2)  # c too large
        with pytest.raises(GraphError):
            hexagon_pair_reduce(2, 1, 1, 0, 2, 1)  # nonpositive


class TestAllRulesRandomized:
    """A quick randomized pass across every rule (the deep sweep lives in the
    verification layer)."""

    @pytest.mark.parametrize(
        "rule",
        [
            "vertex_split",
            "star_scale",
            "urban_renewal",
            "composite_white",
            "composite_black",
            "t1",
            "otrans_a",
            "otrans_b",
            "t6",
            "hexagon_pair",
        ],
    )
    def test_ten_instances(self, rule):
        rng = random.Random(f"quick:{rule}")
        for _ in range(10):
            pair = transform_instance(rule, rng)
            _, _, ok = check_conservation(pair)
            assert ok
