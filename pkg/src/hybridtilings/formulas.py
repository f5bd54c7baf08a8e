"""Closed-form tiling counts for the region family and its building blocks.

Every public function evaluates one exact product or sum expression.  Where
the source typography admits more than one reading, the function takes an
explicit ``reading`` tag and evaluates that candidate; the sweep harness
compares candidates against counting oracles and records the unique survivor.
All arithmetic is exact (integers and fractions); results carry an
integrality flag so callers can assert denominator-1 outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb, factorial

__all__ = [
    "FormulaError",
    "FormulaResult",
    "EQ1_EXPONENT_READINGS",
    "P_THIRD_ARG_READINGS",
    "PREFACTOR_W_READINGS",
    "delta_op",
    "semihex_dented",
    "hexagon_count",
    "krattenthaler",
    "equal_width_product",
    "equal_width_composed",
    "quasi_octagon_count",
    "special_cases",
    "unequal_width_sum",
]


class FormulaError(ValueError):
    """Inputs outside a formula's domain."""


@dataclass(frozen=True)
class FormulaResult:
    """An exact evaluation plus the reading tag it was computed under."""

    value: Fraction
    variant_used: str
    integrality_ok: bool

    @property
    def as_integer(self) -> int:
        if not self.integrality_ok:
            raise FormulaError(f"non-integer formula value {self.value}")
        return int(self.value)


def _result(value: Fraction | int, variant: str) -> FormulaResult:
    value = Fraction(value)
    return FormulaResult(value, variant, value.denominator == 1)


# candidate readings for the three typographically ambiguous spots
EQ1_EXPONENT_READINGS = ("h1+2h2+h3", "h1+3h2")
P_THIRD_ARG_READINGS = ("h2+h3", "h1+h3")
PREFACTOR_W_READINGS = ("w1", "w2", "w1,w2,w2", "w1,w1,w2")


# -- small building blocks ----------------------------------------------------


def delta_op(values) -> int:
    """Product of pairwise differences over the set, taken in increasing order."""
    s = sorted(values)
    if len(s) != len(set(s)):
        raise FormulaError("delta_op needs distinct integers")
    out = 1
    for i in range(len(s)):
        for j in range(i + 1, len(s)):
            out *= s[j] - s[i]
    return out


def semihex_dented(a: int, b: int, removed) -> FormulaResult:
    """Matching count of the half-hexagon of top width a+b with the top
    vertices at the given a labels removed: prod (r_j - r_i)/(j - i)."""
    r = tuple(removed)
    if a < 1 or b < 0:
        raise FormulaError("need a >= 1 and b >= 0")
    if len(r) != a:
        raise FormulaError(f"need exactly {a} removed labels, got {len(r)}")
    if list(r) != sorted(set(r)) or r[0] < 1 or r[-1] > a + b:
        raise FormulaError("labels must be strictly increasing within range")
    value = Fraction(1)
    for i in range(a):
        for j in range(i + 1, a):
            value *= Fraction(r[j] - r[i], j - i)
    return _result(value, "hexdent")


def hexagon_count(a: int, b: int, c: int) -> int:
    """Lozenge tilings of the hexagon with side lengths a,b,c,a,b,c."""
    if min(a, b, c) < 0:
        raise FormulaError("side lengths must be nonnegative")
    value = Fraction(1)
    for i in range(1, a + 1):
        for j in range(1, b + 1):
            for k in range(1, c + 1):
                value *= Fraction(i + j + k - 1, i + j + k - 2)
    assert value.denominator == 1
    return int(value)


def _factorial_range(lo: int, hi: int) -> int:
    """prod_{i=lo}^{hi} (i-1)!, empty product = 1, reversed-by-two-or-more = 0."""
    if hi == lo - 1:
        return 1
    if hi < lo - 1:
        return 0
    out = 1
    for i in range(lo, hi + 1):
        if i - 1 < 0:
            return 0
        out *= factorial(i - 1)
    return out


def krattenthaler(m: int, n: int, c: int, f: int, d: int) -> FormulaResult:
    """Matching count of the tall diamond-grid rectangle with one row thinned
    to an arithmetic progression of surviving vertices (start c, step f).

    Evaluates the closed product for the (2m+d-1) x n instance whose removal
    row sits d half-steps below the central row.  Degenerate index ranges
    follow the stated conventions: an empty range is 1, a reversed range is 0;
    a negative factorial in the denominator makes the whole value 0.
    """
    if min(m, n, c, f) < 1 or d < 0:
        raise FormulaError("need m,n,c,f >= 1 and d >= 0")
    two_exp = comb(2 * m + d, 2) + (n + 1) * (n - 2 * m - d + 1)
    f_exp = m * m + (d - 1) * m + comb(d, 2) + n * (n - 2 * m - d + 1)
    ranges = (
        (m + 1, n + 1),
        (m + d + 1, n + 1),
        (1, n - m + 1),
        (1, n - m - d + 1),
    )
    variant = "krat"
    if any(hi == lo - 1 for lo, hi in ranges):
        variant = "krat:empty-range"
    numerator = 1
    for lo, hi in ranges:
        numerator *= _factorial_range(lo, hi)
    if numerator == 0:
        return _result(0, "krat:zero-range")
    denominator = 1
    for i in range(1, 2 * n - 2 * m - d + 2 + 1):
        top = c + f * (i - 1) - 1
        bottom = n + 1 - c - f * (i - 1)
        if bottom < 0:
            return _result(0, "krat:neg-denominator")
        denominator *= factorial(top) * factorial(bottom)
    if 2 * n - 2 * m - d + 2 < 0:
        raise FormulaError("index range for the denominator is negative")
    value = Fraction(2) ** two_exp * Fraction(f) ** f_exp * Fraction(numerator, denominator)
    return _result(value, variant)


# -- equal-width region count -------------------------------------------------


def _triangle_exponent(h: int, w: int) -> int:
    """h(2w - h + 1)/2, always an integer."""
    prod = h * (2 * w - h + 1)
    assert prod % 2 == 0
    return prod // 2


def equal_width_product(
    h1: int, h2: int, h3: int, w: int, c1: int, c2: int, c3: int,
    reading: str = "h1+2h2+h3",
) -> FormulaResult:
    """Direct product form of the equal-width count.

    ``reading`` selects the resolution of the garbled binomial in the second
    exponent: "h1+2h2+h3" (subscript-repair reading) or "h1+3h2" (literal).
    """
    if reading == "h1+2h2+h3":
        top = h1 + 2 * h2 + h3
    elif reading == "h1+3h2":
        top = h1 + 3 * h2
    else:
        raise FormulaError(f"unknown exponent reading {reading!r}")
    e1 = (
        c1 + c2 + c3
        - _triangle_exponent(h1, w)
        - _triangle_exponent(h2, w)
        - _triangle_exponent(h3, w)
    )
    e2 = comb(top, 2) - 2 * h2 * (w + h2) - comb(h1 + h2, 2) - comb(h2 + h3, 2)
    numerator = (
        _factorial_range(h2 + h3 + 1, h2 + w)
        * _factorial_range(h1 + h2 + 1, h2 + w)
        * _factorial_range(1, w - h3)
        * _factorial_range(1, w - h1)
    )
    denominator = 1
    for i in range(1, w - h2 + 1):
        if w - i < 0:
            return _result(0, f"eq1:{reading}")
        denominator *= factorial(h2 + i - 1) * factorial(w - i)
    value = Fraction(2) ** (e1 + e2) * Fraction(numerator, denominator)
    return _result(value, f"eq1:{reading}")


def equal_width_composed(
    h1: int, h2: int, h3: int, w: int, c1: int, c2: int, c3: int,
    reading: str = "h2+h3",
) -> FormulaResult:
    """Equivalent composed form: power-of-2 prefactor times the thinned-row
    rectangle product with arguments (h2+1, 1, m, h1-h3, w+h2-1).

    ``reading`` selects the third argument m: "h2+h3" or "h1+h3" (the source
    uses both in different displays).  Inputs are normalized to h1 >= h3 by
    the up-down reflection, under which the target count is invariant.
    """
    if h1 < h3:
        h1, h3 = h3, h1
        c1, c3 = c3, c1
    if reading == "h2+h3":
        third = h2 + h3
    elif reading == "h1+h3":
        third = h1 + h3
    else:
        raise FormulaError(f"unknown composition reading {reading!r}")
    e = (
        c1 + c2 + c3
        - _triangle_exponent(h1, w)
        - _triangle_exponent(h2, w)
        - _triangle_exponent(h3, w)
        - comb(h1 + h2, 2)
        - comb(h2 + h3, 2)
    )
    if third < 1:
        # the thinned-row product needs a positive first dimension; the only
        # such degenerate inputs are height-0 middles+lowers, where the
        # rectangle collapses and the product contributes 1
        core = _result(1, "krat")
    else:
        core = krattenthaler(third, w + h2 - 1, h2 + 1, 1, h1 - h3)
    value = Fraction(2) ** e * core.value
    return _result(value, f"P:{reading}")


def quasi_octagon_count(
    stats,
    eq1_reading: str = "h1+2h2+h3",
    p_reading: str = "h2+h3",
    cross_check: bool = True,
) -> FormulaResult:
    """Tiling count of an equal-width region from its statistics.

    Returns 0 when the balancing relation fails; otherwise evaluates the
    direct product form and (optionally) the composed form and insists they
    agree — the two must be one number under the resolved readings.
    """
    h1, h2, h3 = stats.h1, stats.h2, stats.h3
    if stats.w1 != stats.w2:
        raise FormulaError("equal-width count needs w1 == w2")
    w = stats.w1
    if w <= max(h1, h2, h3):
        raise FormulaError("width must exceed every height; see special_cases")
    if h1 + h3 != w + h2:
        return _result(0, f"eq1:{eq1_reading}")
    direct = equal_width_product(h1, h2, h3, w, stats.c1, stats.c2, stats.c3, eq1_reading)
    if cross_check:
        composed = equal_width_composed(
            h1, h2, h3, w, stats.c1, stats.c2, stats.c3, p_reading
        )
        if composed.value != direct.value:
            raise FormulaError(
                f"product and composed forms disagree: {direct.value} vs "
                f"{composed.value} under ({eq1_reading}, {p_reading})"
            )
    return _result(direct.value, f"eq1:{eq1_reading}+P:{p_reading}")


def special_cases(stats) -> FormulaResult:
    """Boundary cases where some height reaches the common width."""
    h1, h2, h3 = stats.h1, stats.h2, stats.h3
    if stats.w1 != stats.w2:
        raise FormulaError("special cases apply to equal widths")
    w = stats.w1
    if h1 + h3 != w + h2:
        raise FormulaError("special cases assume the balancing relation")
    if w < max(h1, h2, h3):
        return _result(0, "special:a")
    power = (
        stats.c1 + stats.c2 + stats.c3
        - _triangle_exponent(h1, w)
        - _triangle_exponent(h2, w)
        - _triangle_exponent(h3, w)
    )
    if h2 == w:
        return _result(Fraction(2) ** power, "special:b")
    if h1 == w and h2 == h3 < w:
        return _result(Fraction(2) ** power * hexagon_count(h2, w - h2, h2), "special:c")
    if h3 == w and h1 == h2 < w:
        return _result(Fraction(2) ** power * hexagon_count(h2, w - h2, h2), "special:d")
    raise FormulaError("no special case applies to these statistics")


# -- unequal-width region count -----------------------------------------------


def _prefactor_widths(reading: str, w1: int, w2: int) -> tuple[int, int, int]:
    if reading == "w1":
        return (w1, w1, w1)
    if reading == "w2":
        return (w2, w2, w2)
    if reading == "w1,w2,w2":
        return (w1, w2, w2)
    if reading == "w1,w1,w2":
        return (w1, w1, w2)
    raise FormulaError(f"unknown width reading {reading!r}")


def unequal_width_sum(stats, reading: str = "w1,w2,w2") -> FormulaResult:
    """Sum formula for regions whose upper width exceeds the lower width.

    ``reading`` fixes which width substitutes for the ambiguous symbol in the
    three prefactor exponent slots (order: the h1, h2, h3 terms).
    """
    h1, h2, h3 = stats.h1, stats.h2, stats.h3
    w1, w2 = stats.w1, stats.w2
    if not (w1 > w2):
        raise FormulaError("sum formula needs w1 > w2")
    if not (h1 < w1 and h2 < w2 and h3 < w2):
        raise FormulaError("sum formula needs h1 < w1 and h2, h3 < w2")
    if h1 + h3 != w1 + h2:
        return _result(0, f"sum:{reading}")
    wa, wb, wc = _prefactor_widths(reading, w1, w2)
    power = (
        stats.c1 + stats.c2 + stats.c3
        - _triangle_exponent(h1, wa)
        - _triangle_exponent(h2, wb)
        - _triangle_exponent(h3, wc)
    )
    ground = list(range(1, w2 - h2 + 1))
    size_a = w2 - h3
    size_b = w1 - h1
    if size_a < 0 or size_b < 0 or size_a + size_b != len(ground):
        return _result(0, f"sum:{reading}:infeasible")
    denom = Fraction(
        delta_op(range(1, h1 + h2 + w1 - w2 + 1)) * delta_op(range(1, h2 + h3 + 1))
    )
    left_universe = set(range(1, h2 + 2 * w1 - w2 + 1))
    right_universe = set(range(1, w2 + h2 + 1))
    total = Fraction(0)
    for a_set in combinations(ground, size_a):
        b_set = [x for x in ground if x not in a_set]
        left = left_universe - {h2 + w1 - w2 + x for x in b_set}
        right = right_universe - {h2 + x for x in a_set}
        total += Fraction(delta_op(left) * delta_op(right))
    value = Fraction(2) ** power * total / denom
    return _result(value, f"sum:{reading}")
