"""Command-line interface: output contracts and exit codes, in process."""

import json

import pytest

from hybridtilings.cli import main

ANCHOR = ["a=2", "d=3", "dbar=2", "dprime=3"]
TINY_VERIFY = [
    "verify",
    "--max-family", "1",
    "--max-height", "2",
    "--max-width", "3",
    "--special-height", "2",
    "--special-width", "2",
    "--per-rule", "1",
]


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv + ["--json"])
    return code, json.loads(out), err


class TestRegion:
    def test_stats_json(self, capsys):
        code, data, _ = run_json(capsys, ["region", *ANCHOR])
        assert code == 0
        assert data["h1"] == 2 and data["h2"] == 1 and data["h3"] == 2
        assert data["w1"] == data["w2"] == 3
        assert data["spec"] == "a=2 d=3 dbar=2 dprime=3"

    def test_human_output_lines(self, capsys):
        code, out, _ = run(capsys, ["region", *ANCHOR])
        assert code == 0
        assert "h1: 2" in out and "w1: 3" in out

    def test_dump_graph(self, capsys):
        code, data, _ = run_json(capsys, ["region", *ANCHOR, "--dump-graph"])
        assert code == 0
        assert len(data["graph"]["vertices"]) > 0
        assert len(data["graph"]["edges"]) > 0

    def test_malformed_spec_is_usage_error(self, capsys):
        code, out, err = run(capsys, ["region", "a=0", "d=1", "dbar=1", "dprime=1"])
        assert code == 2
        assert not out and "error:" in err


class TestCount:
    def test_single_backend(self, capsys):
        code, data, _ = run_json(capsys, ["count", *ANCHOR, "--backend", "fkt"])
        assert code == 0
        assert data["count"] == "72"
        assert isinstance(data["count"], str)

    def test_all_backends_agree(self, capsys):
        code, data, _ = run_json(capsys, ["count", *ANCHOR, "--backend", "all"])
        assert code == 0
        assert data["agree"] is True
        assert data["brute"] == data["permanent"] == data["fkt"] == "72"

    def test_vertex_guard(self, capsys):
        big = ["a=6", "d=5,3", "dbar=4,4,4", "dprime=3,5"]
        code, out, err = run(capsys, ["count", *big])
        assert code == 2
        assert "max-vertices" in err

    def test_vertex_guard_can_be_raised(self, capsys):
        big = ["a=6", "d=5,3", "dbar=4,4,4", "dprime=3,5"]
        code, data, _ = run_json(
            capsys, ["count", *big, "--backend", "fkt", "--max-vertices", "300"]
        )
        assert code == 0
        assert data["count"] == "0"  # unbalanced region


class TestFormula:
    def test_main_interior_formula(self, capsys):
        code, data, _ = run_json(capsys, ["formula", "--which", "thm1", "--params", *ANCHOR])
        assert code == 0
        assert data == {
            "integrality_ok": True,
            "value": "72",
            "variant_used": "eq1:h1+2h2+h3+P:h2+h3",
        }

    def test_boundary_cases(self, capsys):
        code, data, _ = run_json(
            capsys,
            ["formula", "--which", "thm32", "--params", "a=1", "d=2", "dbar=2", "dprime=2"],
        )
        assert code == 0
        assert data["value"] == "8" and data["variant_used"] == "special:b"

    def test_unequal_width(self, capsys):
        code, data, _ = run_json(
            capsys,
            ["formula", "--which", "thm33", "--params", "a=2", "d=3", "dbar=1", "dprime=2"],
        )
        assert code == 0
        assert data["value"] == "24"

    def test_thinned_row_product(self, capsys):
        code, data, _ = run_json(
            capsys,
            ["formula", "--which", "krat", "--params", "m=1", "n=2", "c=1", "f=1", "d=1"],
        )
        assert code == 0
        assert data["value"] == "8" and data["variant_used"] == "krat"

    def test_dented_semihexagon(self, capsys):
        code, data, _ = run_json(
            capsys,
            ["formula", "--which", "hexdent", "--params", "a=2", "b=1", "r=1,3"],
        )
        assert code == 0
        assert data["value"] == "2"

    def test_bad_params_usage_error(self, capsys):
        code, _, err = run(capsys, ["formula", "--which", "krat", "--params", "m=1"])
        assert code == 2 and "error:" in err

    def test_formula_domain_error_is_usage_error(self, capsys):
        code, _, err = run(
            capsys,
            ["formula", "--which", "thm1", "--params", "a=2", "d=3", "dbar=1", "dprime=2"],
        )
        assert code == 2 and "error:" in err


class TestTransform:
    @pytest.mark.parametrize("rule", ["vs", "star", "spider", "t1", "composite"])
    def test_verified_instance(self, capsys, rule):
        code, data, _ = run_json(capsys, ["transform", "--rule", rule, "--verify"])
        assert code == 0
        assert data["conserved"] is True

    def test_seed_changes_instance(self, capsys):
        _, a, _ = run_json(capsys, ["transform", "--rule", "star", "--seed", "1"])
        _, b, _ = run_json(capsys, ["transform", "--rule", "star", "--seed", "2"])
        assert a != b

    def test_without_verify_no_counts(self, capsys):
        code, data, _ = run_json(capsys, ["transform", "--rule", "t6"])
        assert code == 0
        assert "before_count" not in data
        assert "multiplier" in data


class TestVerify:
    def test_passes_when_readings_resolve(self, capsys):
        code, out, _ = run(capsys, TINY_VERIFY + ["--max-w1", "4"])
        assert code == 0
        assert out.count("PASS") == 8  # seven sweeps plus the overall line
        assert "reading prefactor_width: w1,w2,w2" in out

    def test_ambiguous_reading_fails(self, capsys):
        code, out, _ = run(capsys, TINY_VERIFY + ["--max-w1", "3"])
        assert code == 1
        assert "AMBIGUOUS" in out
        assert "FAIL overall" in out

    def test_json_report(self, capsys):
        code, data, _ = run_json(capsys, TINY_VERIFY + ["--max-w1", "4"])
        assert code == 0
        assert data["passed"] is True
        assert [s["name"] for s in data["sweeps"]] == [
            "equal_width",
            "special_cases",
            "unequal_width",
            "thinned_row",
            "dented_semihexagon",
            "transforms",
            "backends",
        ]

    def test_budget_partial_is_clean_exit(self, capsys):
        # bounds large enough that the budget check fires mid-sweep
        code, out, _ = run(
            capsys,
            [
                "verify",
                "--max-family", "2",
                "--max-height", "3",
                "--max-width", "4",
                "--max-w1", "4",
                "--per-rule", "1",
                "--budget-seconds", "0",
            ],
        )
        assert code == 0
        assert "(partial: time budget hit)" in out
        assert "(incomplete)" in out


class TestRender:
    def test_svg_to_stdout(self, capsys):
        code, out, _ = run(capsys, ["render", *ANCHOR])
        assert code == 0
        assert out.startswith("<svg") or "<svg" in out
        assert "polygon" in out

    def test_svg_to_file(self, capsys, tmp_path):
        target = tmp_path / "region.svg"
        code, out, _ = run(capsys, ["render", *ANCHOR, "--out", str(target)])
        assert code == 0 and not out
        assert "<svg" in target.read_text()

    def test_tiling_overlay(self, capsys):
        code, out, _ = run(capsys, ["render", *ANCHOR, "--tiling", "0"])
        assert code == 0
        assert "<line" in out

    def test_tiling_index_out_of_range(self, capsys):
        code, _, err = run(capsys, ["render", *ANCHOR, "--tiling", "99"])
        assert code == 2
        assert "out of range" in err

    def test_untileable_region(self, capsys):
        code, _, err = run(
            capsys, ["render", "a=1", "d=1", "dbar=1", "dprime=1", "--tiling", "0"]
        )
        assert code == 2
        assert "no tilings" in err

    def test_negative_tiling_index(self, capsys):
        code, _, err = run(capsys, ["render", *ANCHOR, "--tiling", "-1"])
        assert code == 2
        assert "nonnegative" in err


class TestDeterminism:
    def test_byte_identical_json(self, capsys):
        _, first, _ = run(capsys, ["count", *ANCHOR, "--backend", "all", "--json"])
        _, second, _ = run(capsys, ["count", *ANCHOR, "--backend", "all", "--json"])
        assert first == second

    def test_json_is_compact_and_sorted(self, capsys):
        _, out, _ = run(capsys, ["region", *ANCHOR, "--json"])
        data = json.loads(out)
        assert out == json.dumps(data, sort_keys=True, separators=(",", ":")) + "\n"


class TestUsage:
    def test_unknown_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            main(["bogus"])
        assert exc.value.code == 2

    def test_no_subcommand(self):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2
