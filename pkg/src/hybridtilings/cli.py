"""Command-line surface: region inspection, counting, formula evaluation,
rewrite demos, sweep verification, and SVG rendering.

JSON output is canonical: keys sorted, compact separators, and every count
or multiplier rendered as a decimal string (fractions as "p/q") so arbitrary
precision survives any consumer.  Exit codes: 0 success, 1 verification
mismatch, 2 usage error, 3 internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .counting import count_bruteforce, count_fkt, count_permanent, enumerate_tilings
from .formulas import (
    FormulaError,
    FormulaResult,
    krattenthaler,
    quasi_octagon_count,
    semihex_dented,
    special_cases,
    unequal_width_sum,
)
from .graphs import GraphError, InternalInvariantError, graph_to_json_dict
from .regions import (
    RegionError,
    build_region,
    dual_graph,
    parse_spec_string,
    region_stats,
    stats_to_json,
)
from .render import render_region_svg
from .transforms import TransformPair
from .verify import TRANSFORM_RULES, full_verify, transform_instance

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3


class UsageError(ValueError):
    """Bad user input (unparseable spec, out-of-domain request)."""


def _num(value: Fraction | int) -> str:
    """Decimal-string encoding of an exact number."""
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def _emit(payload: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
        return
    for key in sorted(payload):
        print(f"{key}: {json.dumps(payload[key], sort_keys=True)}")


def _parse_kv(tokens: list[str], spec: dict[str, str]) -> dict:
    """Parse ``key=value`` tokens against a {key: kind} spec; kinds are
    'int' or 'csv'."""
    seen: dict = {}
    for token in tokens:
        if "=" not in token:
            raise UsageError(f"malformed token {token!r}: expected key=value")
        key, _, raw = token.partition("=")
        if key not in spec:
            raise UsageError(f"unknown parameter {key!r}; expected {sorted(spec)}")
        if key in seen:
            raise UsageError(f"repeated parameter {key!r}")
        try:
            if spec[key] == "int":
                seen[key] = int(raw)
            else:
                seen[key] = tuple(int(x) for x in raw.split(","))
        except ValueError:
            raise UsageError(f"parameter {key!r} must be {spec[key]}") from None
    missing = set(spec) - set(seen)
    if missing:
        raise UsageError(f"missing parameters {sorted(missing)}")
    return seen


def _guard_vertices(n: int, max_vertices: int, what: str) -> None:
    if n > max_vertices:
        raise UsageError(
            f"{what} has {n} vertices, above the --max-vertices guard "
            f"({max_vertices}); raise the guard to proceed"
        )


# -- subcommands ----------------------------------------------------------------


def cmd_region(args: argparse.Namespace) -> int:
    spec = parse_spec_string(" ".join(args.spec))
    region = build_region(spec)
    payload = dict(stats_to_json(region_stats(region)))
    payload["spec"] = spec.to_string()
    if args.dump_graph:
        payload["graph"] = graph_to_json_dict(dual_graph(region))
    _emit(payload, args.json)
    return EXIT_OK


_BACKENDS = {
    "brute": count_bruteforce,
    "permanent": count_permanent,
    "fkt": count_fkt,
}


def cmd_count(args: argparse.Namespace) -> int:
    spec = parse_spec_string(" ".join(args.spec))
    g = dual_graph(build_region(spec))
    _guard_vertices(g.n, args.max_vertices, "the region's dual graph")
    payload: dict = {"spec": spec.to_string(), "vertices": g.n}
    if args.backend == "all":
        values = {name: fn(g) for name, fn in _BACKENDS.items()}
        for name, value in values.items():
            payload[name] = _num(value)
        payload["agree"] = len(set(values.values())) == 1
        _emit(payload, args.json)
        return EXIT_OK if payload["agree"] else EXIT_MISMATCH
    payload["backend"] = args.backend
    payload["count"] = _num(_BACKENDS[args.backend](g))
    _emit(payload, args.json)
    return EXIT_OK


def _formula_result(args: argparse.Namespace) -> FormulaResult:
    tokens = args.params
    if args.which in ("thm1", "thm32", "thm33"):
        spec = parse_spec_string(" ".join(tokens))
        stats = region_stats(build_region(spec))
        if args.which == "thm1":
            return quasi_octagon_count(stats)
        if args.which == "thm32":
            return special_cases(stats)
        return unequal_width_sum(stats)
    if args.which == "krat":
        p = _parse_kv(tokens, {k: "int" for k in "mncfd"})
        return krattenthaler(p["m"], p["n"], p["c"], p["f"], p["d"])
    p = _parse_kv(tokens, {"a": "int", "b": "int", "r": "csv"})
    return semihex_dented(p["a"], p["b"], p["r"])


def cmd_formula(args: argparse.Namespace) -> int:
    res = _formula_result(args)
    _emit(
        {
            "value": _num(res.value),
            "variant_used": res.variant_used,
            "integrality_ok": res.integrality_ok,
        },
        args.json,
    )
    return EXIT_OK


_RULE_TOKENS = {
    "vs": "vertex_split",
    "star": "star_scale",
    "spider": "urban_renewal",
    "composite": None,  # white or black variant, decided by the seed
    "t1": "t1",
    "otrans-a": "otrans_a",
    "otrans-b": "otrans_b",
    "t6": "t6",
    "hexpair": "hexagon_pair",
}


def cmd_transform(args: argparse.Namespace) -> int:
    rng = random.Random(f"{args.seed}:{args.rule}")
    rule = _RULE_TOKENS[args.rule]
    if rule is None:
        rule = rng.choice(["composite_white", "composite_black"])
    if rule not in TRANSFORM_RULES:
        raise InternalInvariantError(f"rule {rule!r} missing from the registry")
    pair: TransformPair = transform_instance(rule, rng)
    payload = {
        "rule": rule,
        "seed": args.seed,
        "multiplier": _num(pair.multiplier),
        "before_vertices": pair.before.n,
        "after_vertices": pair.after.n,
    }
    exit_code = EXIT_OK
    if args.verify:
        _guard_vertices(
            max(pair.before.n, pair.after.n), args.max_vertices, "a side of the rewrite"
        )
        before = count_bruteforce(pair.before)
        after = count_bruteforce(pair.after)
        payload["before_count"] = _num(before)
        payload["after_count"] = _num(after)
        payload["conserved"] = before == pair.multiplier * after
        if not payload["conserved"]:
            exit_code = EXIT_MISMATCH
    _emit(payload, args.json)
    return exit_code


def cmd_verify(args: argparse.Namespace) -> int:
    report = full_verify(
        max_family=(args.max_family, args.max_family, args.max_family),
        max_height=args.max_height,
        max_width=args.max_width,
        max_w1=args.max_w1,
        special_height=args.special_height,
        special_width=args.special_width,
        per_rule=args.per_rule,
        seed=args.seed,
        processes=args.processes,
        time_budget=args.budget_seconds,
    )
    if args.json:
        print(json.dumps(report, sort_keys=True, separators=(",", ":")))
    else:
        for sweep in report["sweeps"]:
            status = "PASS" if sweep["passed"] else "FAIL"
            extra = "" if sweep["complete"] else " (incomplete)"
            print(f"{status} {sweep['name']}: {sweep['checked']} checks{extra}")
            for rec in sweep["mismatches"][:10]:
                print(f"  mismatch {rec}")
        readings = report["readings"]
        for key in ("eq1_exponent", "p_third_argument", "prefactor_width"):
            info = readings[key]
            name = info["survivor"] if info["unique"] else f"AMBIGUOUS {info['survivors']}"
            print(f"reading {key}: {name}")
        print(
            f"{'PASS' if report['passed'] else 'FAIL'} overall"
            f"{'' if report['complete'] else ' (partial: time budget hit)'}"
        )
    mismatch_total = sum(len(s["mismatches"]) for s in report["sweeps"])
    if mismatch_total > 0:
        return EXIT_MISMATCH
    if report["complete"] and not report["readings"]["all_unique"]:
        return EXIT_MISMATCH
    return EXIT_OK


def cmd_render(args: argparse.Namespace) -> int:
    spec = parse_spec_string(" ".join(args.spec))
    region = build_region(spec)
    tiling = None
    if args.tiling is not None:
        if args.tiling < 0:
            raise UsageError("--tiling index must be nonnegative")
        g = dual_graph(region)
        _guard_vertices(g.n, args.max_vertices, "the region's dual graph")
        found = enumerate_tilings(g, limit=args.tiling + 1)
        if not found:
            raise UsageError("no tilings: the region has no tilings to draw")
        if args.tiling >= len(found):
            raise UsageError(
                f"tiling index {args.tiling} out of range: "
                f"only {len(found)} tilings enumerated"
            )
        tiling = found[args.tiling]
    svg = render_region_svg(region, tiling=tiling, title=spec.to_string())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            handle.write(svg)
    else:
        sys.stdout.write(svg)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hybridtilings",
        description="Exact tiling counts for square-lattice regions with diagonal cuts.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit canonical JSON")
    common.add_argument("--seed", type=int, default=0, help="randomized-instance seed")
    common.add_argument(
        "--max-vertices",
        type=int,
        default=40,
        help="refuse brute-force work above this size (default 40)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("region", parents=[common], help="region statistics")
    p.add_argument("spec", nargs="+", help="a=<int> d=<csv> dbar=<csv> dprime=<csv>")
    p.add_argument("--dump-graph", action="store_true", help="include the dual graph")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("count", parents=[common], help="tiling counts")
    p.add_argument("spec", nargs="+", help="a=<int> d=<csv> dbar=<csv> dprime=<csv>")
    p.add_argument(
        "--backend",
        choices=("brute", "permanent", "fkt", "all"),
        default="brute",
        help="counting backend ('all' cross-checks the three)",
    )
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("formula", parents=[common], help="closed-form evaluation")
    p.add_argument(
        "--which",
        required=True,
        choices=("thm1", "thm32", "thm33", "krat", "hexdent"),
        help="which closed form to evaluate",
    )
    p.add_argument(
        "--params",
        required=True,
        nargs="+",
        help="region spec string (thm1/thm32/thm33), m= n= c= f= d= (krat), "
        "or a= b= r=<csv> (hexdent)",
    )
    p.set_defaults(func=cmd_formula)

    p = sub.add_parser("transform", parents=[common], help="rewrite-rule demo")
    p.add_argument("--rule", required=True, choices=sorted(_RULE_TOKENS))
    p.add_argument(
        "--verify",
        action="store_true",
        help="brute-force both sides and check the multiplier",
    )
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("verify", parents=[common], help="run the sweep harness")
    p.add_argument("--max-family", type=int, default=2, help="cap on k, t, l")
    p.add_argument("--max-height", type=int, default=3)
    p.add_argument("--max-width", type=int, default=4)
    p.add_argument("--max-w1", type=int, default=4, help="cap for the unequal-width sweep")
    p.add_argument("--special-height", type=int, default=4)
    p.add_argument("--special-width", type=int, default=3)
    p.add_argument("--per-rule", type=int, default=25, help="rewrite instances per rule")
    p.add_argument("--processes", type=int, default=None, help="parallel workers")
    p.add_argument(
        "--budget-seconds",
        type=float,
        default=None,
        help="soft time limit; exceeding it yields a partial report",
    )
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", parents=[common], help="SVG drawing of a region")
    p.add_argument("spec", nargs="+", help="a=<int> d=<csv> dbar=<csv> dprime=<csv>")
    p.add_argument("--tiling", type=int, default=None, help="overlay the k-th tiling")
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, RegionError, GraphError, FormulaError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInvariantError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
