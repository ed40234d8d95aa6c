import json

import pytest

from dirspan import (
    BadSpec,
    Caps,
    RunConfig,
    build_graph,
    caps_from_env,
    dumps_report,
    run_claims,
    run_oracle,
    run_solve,
    serialize_graph,
    trial_seed,
)
from dirspan.cli import main
from dirspan.pipeline import load_input, resolve_mode, splitmix64


def cycle_text(n):
    return serialize_graph(build_graph(n, [(i, (i + 1) % n, 1.0) for i in range(n)]))


TRIANGLE_TEXT = "3 3\n0 1 1\n0 2 1\n1 2 1\n"


def test_splitmix64_known_answers():
    # reference outputs of the SplitMix64 stream seeded at 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF
    assert splitmix64(1) == 0x910A2DEC89025CC1
    assert trial_seed(0, 0) == 0xE220A8397B1DCDAF
    assert trial_seed(0, 1) == 0x910A2DEC89025CC1


def test_trial_seed_wraps_and_spreads():
    assert trial_seed(2**64 - 1, 1) == splitmix64(0)
    seeds = {trial_seed(42, i) for i in range(100)}
    assert len(seeds) == 100


def test_caps_env_overrides(monkeypatch):
    monkeypatch.setenv("DIRSPAN_MAX_PATHS", "123")
    monkeypatch.setenv("DIRSPAN_MAX_FREE_EDGES", "5")
    caps = caps_from_env()
    assert caps.max_paths == 123
    assert caps.max_free_edges == 5
    assert caps.max_trees == Caps().max_trees


def test_caps_env_rejects_garbage(monkeypatch):
    monkeypatch.setenv("DIRSPAN_MAX_PATHS", "lots")
    with pytest.raises(BadSpec):
        caps_from_env()


def test_load_input_generator_and_file(tmp_path):
    g, label = load_input("gen:cycle:n=5")
    assert g.n == 5
    assert label == "gen:cycle:n=5"
    p = tmp_path / "g.txt"
    p.write_text(TRIANGLE_TEXT)
    g2, _ = load_input(str(p))
    assert g2.m == 3


def test_mode_auto_detects_unit():
    unit, _ = load_input("gen:cycle:n=4")
    assert resolve_mode(RunConfig(k=3, input=""), unit) == "unit"
    weighted, _ = load_input("gen:cycle:n=4,max_len=3,seed=2")
    assert resolve_mode(RunConfig(k=3, input=""), weighted) == "general"
    forced = RunConfig(k=3, input="", mode="general")
    assert resolve_mode(forced, unit) == "general"


def test_run_solve_saturated_cycle():
    # alpha 3 > sqrt(8): every keep probability clamps to 1
    config = RunConfig(k=3, input="gen:cycle:n=8", alpha_override=3.0, trials=5, seed=1)
    report = run_solve(config)
    assert report["lp"]["value"] == pytest.approx(8.0, abs=1e-9)
    assert report["aggregate"]["feasible_fraction"] == 1.0
    assert all(r["eh_size"] == 8 for r in report["trials"])
    assert all(r["feasible"] for r in report["trials"])


def test_run_solve_aggregate_arithmetic():
    config = RunConfig(k=3, input="gen:er:n=9,p=0.35,seed=11", alpha_override=0.8, trials=12, seed=4)
    report = run_solve(config)
    records = report["trials"]
    assert len(records) == 12
    agg = report["aggregate"]
    assert agg["feasible_fraction"] == sum(r["feasible"] for r in records) / 12
    assert agg["mean_eh"] == sum(r["eh_size"] for r in records) / 12
    assert agg["max_eh"] == max(r["eh_size"] for r in records)
    m = report["instance"]["m"]
    for r in records:
        assert r["eh_size"] <= m
        assert r["seed"] == trial_seed(4, r["trial"])


def test_run_solve_trial_records_are_reproducible():
    config = RunConfig(k=3, input="gen:er:n=10,p=0.3,seed=2", alpha_override=1.1, trials=8, seed=9)
    a = run_solve(config)
    b = run_solve(config)
    assert dumps_report(a["trials"]) == dumps_report(b["trials"])
    # timing may differ; everything else must not
    a.pop("timing")
    b.pop("timing")
    assert dumps_report(a) == dumps_report(b)


def test_run_solve_jobs_do_not_change_records():
    base = RunConfig(k=3, input="gen:er:n=10,p=0.3,seed=2", alpha_override=1.1, trials=8, seed=9)
    par = RunConfig(k=3, input="gen:er:n=10,p=0.3,seed=2", alpha_override=1.1, trials=8, seed=9, jobs=4)
    assert dumps_report(run_solve(base)["trials"]) == dumps_report(run_solve(par)["trials"])


def test_run_oracle_triangle(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text(TRIANGLE_TEXT)
    report = run_oracle(RunConfig(k=2, input=str(p)))
    assert report["opt"] == 2
    assert sorted(report["witness"]) == [0, 2]


def test_run_claims_cycle():
    config = RunConfig(k=3, input="gen:cycle:n=6", trials=4, seed=0)
    report = run_claims(config)
    assert report["demands_checked"] == 6
    assert report["claim1"]["checks"] == 24
    assert report["claim1"]["disagreements"] == 0
    assert report["claim2"]["violations"] == 0
    assert report["claim2"]["min_cut_mass"] == pytest.approx(1.0, abs=1e-9)


def _run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_cli_gen_and_solve(tmp_path, capsys):
    gpath = tmp_path / "g.txt"
    code, _, err = _run(capsys, ["gen", "--spec", "er:n=7,p=0.4,seed=3", "--out", str(gpath)])
    assert code == 0
    assert "generated" in err

    code, out, err = _run(capsys, ["solve", str(gpath), "-k", "3", "--trials", "3", "--seed", "5"])
    assert code == 0
    report = json.loads(out)
    assert report["aggregate"]["trials"] == 3
    assert "lp=" in err


def test_cli_solve_with_oracle_and_outfile(tmp_path, capsys):
    gpath = tmp_path / "t.txt"
    gpath.write_text(TRIANGLE_TEXT)
    rpath = tmp_path / "report.json"
    code, out, _ = _run(
        capsys,
        ["solve", str(gpath), "-k", "2", "--trials", "2", "--oracle", "--out", str(rpath)],
    )
    assert code == 0
    assert out == ""
    report = json.loads(rpath.read_text())
    assert report["opt"] == 2
    assert report["aggregate"]["ratio_vs_opt"] is not None


def test_cli_lp_round_chain(tmp_path, capsys):
    gpath = tmp_path / "g.txt"
    gpath.write_text(cycle_text(6))
    dump = tmp_path / "lp.json"
    code, _, err = _run(capsys, ["lp", str(gpath), "-k", "3", "--out", str(dump)])
    assert code == 0
    assert "lp objective 6" in err

    code, out, _ = _run(
        capsys,
        ["round", str(gpath), "-k", "3", "--lp", str(dump), "--trials", "4", "--alpha", "3.0"],
    )
    assert code == 0
    report = json.loads(out)
    assert report["aggregate"]["feasible_fraction"] == 1.0


def test_cli_round_rejects_mismatched_dump(tmp_path, capsys):
    gpath = tmp_path / "g.txt"
    gpath.write_text(cycle_text(6))
    other = tmp_path / "h.txt"
    other.write_text(TRIANGLE_TEXT)
    dump = tmp_path / "lp.json"
    code, _, _ = _run(capsys, ["lp", str(gpath), "-k", "3", "--out", str(dump)])
    assert code == 0
    code, _, err = _run(capsys, ["round", str(other), "-k", "3", "--lp", str(dump)])
    assert code == 2
    assert "error" in err


def test_cli_lp_export_text(tmp_path, capsys):
    gpath = tmp_path / "t.txt"
    gpath.write_text(TRIANGLE_TEXT)
    lpfile = tmp_path / "model.lp"
    code, _, _ = _run(capsys, ["lp", str(gpath), "-k", "2", "--export-lp", str(lpfile)])
    assert code == 0
    assert "Minimize" in lpfile.read_text()


def test_cli_verify_paths(tmp_path, capsys):
    gpath = tmp_path / "t.txt"
    gpath.write_text(TRIANGLE_TEXT)
    sub = tmp_path / "h.txt"
    sub.write_text("0 1\n1 2\n")
    code, out, _ = _run(capsys, ["verify", str(gpath), "-k", "2", "--subgraph", str(sub)])
    assert code == 0
    assert json.loads(out)["feasible"] is True

    sub.write_text("0 1\n")
    code, out, _ = _run(capsys, ["verify", str(gpath), "-k", "2", "--subgraph", str(sub)])
    assert code == 0
    report = json.loads(out)
    assert report["feasible"] is False
    # head of the violated demand is unreachable, reported as null
    assert report["violation"]["dist_h"] is None
    assert report["violation"]["dist_g"] == 1.0

    code, _, _ = _run(
        capsys,
        ["verify", str(gpath), "-k", "2", "--subgraph", str(sub), "--require-feasible"],
    )
    assert code == 4


def test_cli_oracle(tmp_path, capsys):
    gpath = tmp_path / "t.txt"
    gpath.write_text(TRIANGLE_TEXT)
    code, out, _ = _run(capsys, ["oracle", str(gpath), "-k", "2"])
    assert code == 0
    assert json.loads(out)["opt"] == 2


def test_cli_claims(capsys):
    code, out, _ = _run(capsys, ["claims", "gen:cycle:n=5", "-k", "3", "--trials", "2"])
    assert code == 0
    report = json.loads(out)
    assert report["claim1"]["disagreements"] == 0


def test_cli_bad_graph_is_exit_2(tmp_path, capsys):
    gpath = tmp_path / "broken.txt"
    gpath.write_text("not a graph\n")
    code, _, err = _run(capsys, ["solve", str(gpath), "-k", "3"])
    assert code == 2
    assert "error" in err


def test_cli_missing_file_is_exit_2(capsys):
    code, _, _ = _run(capsys, ["solve", "/nonexistent/g.txt", "-k", "3"])
    assert code == 2


def test_cli_bad_gen_spec_is_exit_2(capsys):
    code, _, _ = _run(capsys, ["gen", "--spec", "er:n=5"])
    assert code == 2


def test_cli_path_cap_is_exit_3(tmp_path, capsys):
    gpath = tmp_path / "t.txt"
    gpath.write_text(TRIANGLE_TEXT)
    code, _, err = _run(capsys, ["solve", str(gpath), "-k", "2", "--max-paths", "1"])
    assert code == 3
    assert "cap exceeded" in err


def test_cli_oracle_cap_is_exit_3(tmp_path, capsys):
    gpath = tmp_path / "t.txt"
    gpath.write_text(TRIANGLE_TEXT)
    code, _, _ = _run(capsys, ["oracle", str(gpath), "-k", "2", "--max-free-edges", "0"])
    assert code == 3


def test_cli_infeasible_trials_exit_4(capsys):
    code, _, _ = _run(
        capsys,
        [
            "solve",
            "gen:cycle:n=8",
            "-k",
            "3",
            "--alpha",
            "0.001",
            "--trials",
            "4",
            "--require-feasible",
        ],
    )
    assert code == 4


def test_cli_numerical_failure_exit_5(tmp_path, capsys, monkeypatch):
    from dirspan.errors import NumericalFailure
    import dirspan.cli as cli

    def boom(config, **kwargs):
        raise NumericalFailure("pivot limit")

    monkeypatch.setattr(cli, "run_solve", boom)
    gpath = tmp_path / "t.txt"
    gpath.write_text(TRIANGLE_TEXT)
    code, _, err = _run(capsys, ["solve", str(gpath), "-k", "2"])
    assert code == 5
    assert "numerical failure" in err
