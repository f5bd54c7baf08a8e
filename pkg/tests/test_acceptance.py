"""Acceptance gate: one test per stated criterion, exact equality throughout.

Every sweep compares closed-form values against independent brute-force
enumeration over the full stated box; any mismatch record fails the gate.
Shared sweeps are module-scoped fixtures so the reading-resolution criterion
reuses the tallies gathered by the big sweeps.
"""

import time

import pytest

from hybridtilings.verify import (
    resolve_readings,
    sweep_backends,
    sweep_dented_semihexagon,
    sweep_equal_width,
    sweep_special_cases,
    sweep_thinned_row,
    sweep_transforms,
    sweep_unequal_width,
)


def _timed(fn, *args, **kwargs):
    start = time.time()
    report = fn(*args, **kwargs)
    return report, time.time() - start


def _describe(report, elapsed):
    return (
        f"{report.name}: checked={report.checked} "
        f"mismatches={len(report.mismatches)} complete={report.complete} "
        f"elapsed={elapsed:.1f}s"
        + (f" first={report.mismatches[0]}" if report.mismatches else "")
    )


@pytest.fixture(scope="module")
def equal_width():
    return _timed(sweep_equal_width, (3, 3, 3), max_height=4, max_width=6)


@pytest.fixture(scope="module")
def unequal_width():
    return _timed(sweep_unequal_width, max_w1=5)


def test_criterion_1_equal_width_counts_across_full_box(equal_width):
    """Every region with k, t, l <= 3, heights <= 4, equal widths <= 6 that
    exceed every height: black-bottom and unbalanced regions enumerate to
    zero; balanced white-bottom regions match the closed product exactly."""
    report, elapsed = equal_width
    assert report.passed, _describe(report, elapsed)
    buckets = report.detail["buckets"]
    assert buckets["black_bottom"] > 0
    assert buckets["white_unbalanced"] > 0
    assert buckets["white_balanced"] > 0
    assert elapsed < 3600, f"sweep took {elapsed:.0f}s; expected minutes"


def test_criterion_2_boundary_cases_and_pure_powers():
    """Equal-width regions where some height reaches the width: all four
    boundary variants match enumeration over the k, t, l <= 2, heights <= 5,
    widths <= 4 box, and the smallest equal-heights instances hit the exact
    powers of two."""
    report, elapsed = _timed(
        sweep_special_cases, (2, 2, 2), max_height=5, max_width=4
    )
    assert report.passed, _describe(report, elapsed)
    assert set(report.detail["variants"]) == {
        "special:a",
        "special:b",
        "special:c",
        "special:d",
    }
    power_rows = {entry["w"]: entry for entry in report.detail["reduced_power"]}
    for w in (2, 3):
        entry = power_rows[w]
        assert entry["ok"], entry
        assert int(entry["power_value"]) == 2 ** (3 * w * (w - 1) // 2)


def test_criterion_3_unequal_width_sum_on_type_reduced_shapes(unequal_width):
    """Widths differing by one on every type-reduced shape with upper width
    <= 5: the column-split sum matches enumeration exactly (black-bottom and
    unbalanced shapes enumerate to zero)."""
    report, elapsed = unequal_width
    assert report.passed, _describe(report, elapsed)
    assert report.checked == 681
    assert report.detail["buckets"]["white_balanced"] == 21


def test_criterion_4_thinned_row_product_everywhere_defined():
    """The thinned-row rectangle product matches enumeration on every
    parameter tuple whose graph stays within 36 vertices, and both degenerate
    branches of the product fire somewhere in the domain."""
    report, elapsed = _timed(sweep_thinned_row, max_vertices=36)
    assert report.passed, _describe(report, elapsed)
    assert report.detail["empty_branch_hit"]
    assert report.detail["zero_branch_hit"]


def test_criterion_5_dented_semihexagons_all_removals():
    """Half-hexagon counts with dents: every top size a + b <= 6 and every
    removal set matches enumeration."""
    report, elapsed = _timed(sweep_dented_semihexagon, max_total=6)
    assert report.passed, _describe(report, elapsed)
    # one case per (total, a, removal set): sum over totals of 2^total - 1
    assert report.checked == sum(2**total - 1 for total in range(1, 7)) == 120


def test_criterion_6_conservation_of_all_rewrite_rules():
    """200 randomized instances of each of the ten rewrite rules conserve the
    count exactly through the stated multiplier."""
    report, elapsed = _timed(sweep_transforms, per_rule=200, seed=2026)
    assert report.passed, _describe(report, elapsed)
    assert report.checked == 2000
    nonzero = report.detail["nonzero_instances"]
    assert all(nonzero[rule] > 0 for rule in nonzero), nonzero


def test_criterion_7_backends_agree_and_diamond_powers():
    """The three counting backends agree on every corpus graph within 36
    vertices, and the square diamonds hit 2^(n(n+1)/2) for n <= 5."""
    report, elapsed = _timed(sweep_backends, max_vertices=36, max_diamond=5)
    assert report.passed, _describe(report, elapsed)
    diamonds = {entry["n"]: int(entry["count"]) for entry in report.detail["diamonds"]}
    for n in range(1, 6):
        assert diamonds[n] == 2 ** (n * (n + 1) // 2)


def test_criterion_8_garbled_readings_resolve_uniquely(equal_width, unequal_width):
    """Across the full sweeps, exactly one reading of each garbled formula
    survives: the sweep data itself must name the resolution."""
    eq_report, _ = equal_width
    un_report, _ = unequal_width
    readings = resolve_readings(
        eq_report.detail["eq1_readings"],
        eq_report.detail["p_readings"],
        un_report.detail["w_readings"],
    )
    assert readings["all_unique"], readings
    assert readings["eq1_exponent"]["survivor"] == "h1+2h2+h3"
    assert readings["p_third_argument"]["survivor"] == "h2+h3"
    assert readings["prefactor_width"]["survivor"] == "w1,w2,w2"
