"""Exercises the command-line surface through main() return codes and output."""

import json

import pytest

from srcover.cli import main

P2222 = ["--q", "2", "--m", "2", "--eta", "2", "--ell", "2"]


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


# -- argument handling ------------------------------------------------


def test_no_subcommand_is_a_usage_error(capsys):
    rc, _, _ = run(capsys, [])
    assert rc == 2


def test_unknown_subcommand_is_a_usage_error(capsys):
    rc, _, _ = run(capsys, ["frobnicate"])
    assert rc == 2


def test_help_exits_zero(capsys):
    rc, out, _ = run(capsys, ["--help"])
    assert rc == 0
    assert "volumes" in out


def test_malformed_int_list_is_a_usage_error(capsys):
    rc, _, _ = run(capsys, ["table", "--q", "2,x", "--m", "1", "--eta", "1", "--ell", "2"])
    assert rc == 2


def test_invalid_params_exit_two(capsys):
    rc, _, err = run(capsys, ["volumes", "--q", "2", "--m", "2", "--eta", "0", "--ell", "2"])
    assert rc == 2
    assert "error" in err


def test_nonprime_power_field_exits_two(capsys):
    rc, _, _ = run(capsys, ["volumes", "--q", "6", "--m", "1", "--eta", "1", "--ell", "2"])
    assert rc == 2


def test_zero_budget_space_exits_two(capsys):
    rc, _, _ = run(capsys, ["verify", *P2222, "--budget-space", "0"])
    assert rc == 2


# -- volumes ----------------------------------------------------------

SPHERES_2222 = ["1", "18", "93", "108", "36"]
BALLS_2222 = ["1", "19", "112", "220", "256"]


def test_volumes_csv_values(capsys):
    rc, out, _ = run(capsys, ["volumes", *P2222, "--format", "csv"])
    assert rc == 0
    lines = out.strip().split("\n")
    assert lines[0] == "t,sphere_volume,ball_volume"
    cells = [line.split(",") for line in lines[1:]]
    assert [row[0] for row in cells] == ["0", "1", "2", "3", "4"]
    assert [row[1] for row in cells] == SPHERES_2222
    assert [row[2] for row in cells] == BALLS_2222


def test_volumes_json_matches_csv(capsys):
    rc, out, _ = run(capsys, ["volumes", *P2222, "--format", "json"])
    assert rc == 0
    payload = json.loads(out)
    assert payload["params"]["q"] == 2
    assert payload["params"]["space_size"] == "256"
    assert [row["sphere_volume"] for row in payload["rows"]] == SPHERES_2222
    assert [row["ball_volume"] for row in payload["rows"]] == BALLS_2222


def test_volumes_plain_mentions_every_radius(capsys):
    rc, out, _ = run(capsys, ["volumes", *P2222])
    assert rc == 0
    for value in SPHERES_2222:
        assert value in out


# -- bounds -----------------------------------------------------------


def test_bounds_single_radius_json_is_an_object(capsys):
    rc, out, _ = run(capsys, ["bounds", *P2222, "--rho", "1", "--format", "json"])
    assert rc == 0
    payload = json.loads(out)
    assert payload["rho"] == 1
    assert payload["best_lower"] == "14"
    assert payload["best_upper"] == "64"
    names = {entry["name"] for entry in payload["bounds"]}
    assert "sphere_covering" in names
    assert "systematic" in names


def test_bounds_sweep_json_is_an_array(capsys):
    rc, out, _ = run(capsys, ["bounds", *P2222, "--rho", "1", "--rho-max", "3", "--format", "json"])
    assert rc == 0
    payload = json.loads(out)
    assert [entry["rho"] for entry in payload] == [1, 2, 3]
    # the bracket can only tighten downward as the radius grows
    uppers = [int(entry["best_upper"]) for entry in payload]
    assert uppers == sorted(uppers, reverse=True)


def test_bounds_csv_has_summary_rows(capsys):
    rc, out, _ = run(capsys, ["bounds", *P2222, "--rho", "2", "--format", "csv"])
    assert rc == 0
    lines = out.strip().split("\n")
    assert lines[0] == "rho,name,kind,value,applicable,note"
    summaries = [line for line in lines if ",best_lower," in line or ",best_upper," in line]
    assert len(summaries) == 2
    assert summaries[0].startswith("2,best_lower,summary,3,")
    assert summaries[1].startswith("2,best_upper,summary,16,")


def test_bounds_plain_shows_the_bracket(capsys):
    rc, out, _ = run(capsys, ["bounds", *P2222, "--rho", "1"])
    assert rc == 0
    assert "bracket [14, 64]" in out


def test_bounds_inapplicable_entries_are_flagged(capsys):
    # over F_{2^2} two words can cover, so the three-word floor refuses binary m=1
    rc, out, _ = run(capsys, ["bounds", "--q", "2", "--m", "1", "--eta", "1", "--ell", "3", "--rho", "1", "--format", "json"])
    assert rc == 0
    payload = json.loads(out)
    entry = next(bv for bv in payload["bounds"] if bv["name"] == "minimum_three")
    assert entry["applicable"] is False
    assert entry["value"] is None
    assert entry["assumptions"]


def test_bounds_rho_out_of_range_exits_two(capsys):
    rc, _, _ = run(capsys, ["bounds", *P2222, "--rho", "5"])
    assert rc == 2


def test_bounds_backwards_sweep_exits_two(capsys):
    rc, _, _ = run(capsys, ["bounds", *P2222, "--rho", "2", "--rho-max", "1"])
    assert rc == 2


# -- table ------------------------------------------------------------

TABLE_HEADER = (
    "q,m,eta,ell,n,rho,sphere_covering,simplified_sphere_covering,minimum_three,"
    "iterative,rank_relation,systematic,msrd_extension,product_partition,"
    "hamming_relation,best_lower,best_upper,gap_ratio"
)


def test_table_default_radii_skip_the_extremes(capsys):
    rc, out, _ = run(capsys, ["table", "--q", "2,3", "--m", "1", "--eta", "1", "--ell", "2,3"])
    assert rc == 0
    lines = out.strip().split("\n")
    assert lines[0] == TABLE_HEADER
    # ell=2 contributes rho=1, ell=3 contributes rho=1,2; twice over for q
    assert len(lines) == 1 + 2 * (1 + 2)


def test_table_tight_bracket_reports_unit_gap(capsys):
    rc, out, _ = run(capsys, ["table", "--q", "2", "--m", "1", "--eta", "1", "--ell", "2"])
    assert rc == 0
    row = out.strip().split("\n")[1].split(",")
    assert row[:6] == ["2", "1", "1", "2", "2", "1"]
    assert row[-3:] == ["2", "2", "1"]


def test_table_json_round_trips_the_csv_cells(capsys):
    argv = ["table", "--q", "2", "--m", "2", "--eta", "1,2", "--ell", "2", "--rho", "1,2"]
    rc, csv_out, _ = run(capsys, [*argv, "--format", "csv"])
    assert rc == 0
    rc, json_out, _ = run(capsys, [*argv, "--format", "json"])
    assert rc == 0
    payload = json.loads(json_out)
    assert payload["columns"] == TABLE_HEADER.split(",")
    csv_rows = [line.split(",") for line in csv_out.strip().split("\n")[1:]]
    assert len(payload["rows"]) == len(csv_rows) == 4
    for obj, cells in zip(payload["rows"], csv_rows):
        rendered = ["" if obj[col] is None else str(obj[col]) for col in payload["columns"]]
        assert rendered == cells


def test_table_explicit_radius_out_of_range_exits_two(capsys):
    rc, _, _ = run(capsys, ["table", "--q", "2", "--m", "1", "--eta", "1", "--ell", "2", "--rho", "5"])
    assert rc == 2


def test_table_empty_grid_prints_only_the_header(capsys):
    rc, out, _ = run(capsys, ["table", "--q", "", "--m", "2", "--eta", "1", "--ell", "2"])
    assert rc == 0
    assert out == TABLE_HEADER + "\n"


@pytest.mark.parametrize("fmt", ["csv", "json"])
def test_table_reruns_are_byte_identical(capsys, fmt):
    argv = [
        "table", "--q", "2,3", "--m", "2", "--eta", "1,2", "--ell", "2",
        "--seed", "7", "--format", fmt,
    ]
    rc, first, _ = run(capsys, argv)
    assert rc == 0
    rc, second, _ = run(capsys, argv)
    assert rc == 0
    assert first == second


# -- verify -----------------------------------------------------------


def test_verify_small_instance_passes(capsys):
    rc, out, _ = run(capsys, ["verify", *P2222])
    assert rc == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("self checks for")
    assert all(line.lstrip().startswith("PASS") for line in lines[1:])
    assert any("bound_bracket_vs_oracle" in line for line in lines)


def test_verify_json_reports_its_own_exit_code(capsys):
    rc, out, _ = run(capsys, ["verify", *P2222, "--seed", "3", "--format", "json"])
    payload = json.loads(out)
    assert rc == payload["exit_code"] == 0
    assert payload["seed"] == 3
    assert {check["status"] for check in payload["checks"]} == {"pass"}


def test_verify_exhausts_the_budget_with_exit_three(capsys):
    rc, out, _ = run(capsys, ["verify", *P2222, "--budget-space", "16"])
    assert rc == 3
    assert "SKIP" in out
    assert "FAIL" not in out


def test_verify_budget_env_var_is_the_fallback(capsys, monkeypatch):
    monkeypatch.setenv("SRCOVER_BUDGET_SPACE", "16")
    rc, out, _ = run(capsys, ["verify", *P2222])
    assert rc == 3
    assert "SKIP" in out


def test_verify_corrupted_formula_fails_with_exit_one(capsys, monkeypatch):
    # the knob swaps in a deliberately mis-shifted count so the harness has a
    # way to prove it can distinguish a wrong formula from its enumeration
    monkeypatch.setenv("SRCOVER_SELFTEST_CORRUPT", "composition")
    rc, out, _ = run(capsys, ["verify", *P2222])
    assert rc == 1
    assert "FAIL composition_count_vs_enumeration" in out


def test_verify_rho_out_of_range_exits_two(capsys):
    rc, _, _ = run(capsys, ["verify", *P2222, "--rho", "9"])
    assert rc == 2


def test_verify_exact_cross_check_runs_on_tiny_spaces(capsys):
    # space of 16 sits under the exact-search gate, so a wrong bracket would trip
    rc, out, _ = run(capsys, ["verify", "--q", "2", "--m", "2", "--eta", "1", "--ell", "2", "--rho", "1"])
    assert rc == 0
    assert "PASS bound_bracket_vs_oracle" in out
