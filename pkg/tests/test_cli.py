import json

import pytest

from pwlab.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_a1_json_schema(tmp_path, capsys):
    out = tmp_path / "r.json"
    code, _, _ = run(capsys, "verify", "--type", "A", "--rank", "1", "--max-degree", "2", "--out", str(out))
    assert code == 0
    rep = json.loads(out.read_text())
    assert set(rep) == {"suite", "config", "checks", "verdict"}
    assert rep["verdict"] == "pass"
    for c in rep["checks"]:
        assert set(c) == {"id", "anchor", "status", "witness", "ms"}
        assert c["anchor"] and c["status"] == "pass" and c["ms"] == 0
    dims = [c["witness"]["flag_quotient_dim"] for c in rep["checks"] if c["id"].startswith("phi.")]
    assert dims == [1, 3, 5]


def test_census_csv(tmp_path, capsys):
    csv_path = tmp_path / "c.csv"
    code, out, _ = run(capsys, "census", "--type", "A", "--rank", "3", "--csv", str(csv_path))
    assert code == 0
    lines = csv_path.read_text().splitlines()
    assert lines[0] == "I,w_len,dim_a_I,dim_pi_I,finite,orbit_count"
    assert len(lines) == 9
    assert '"{1,3}",2,2,1,false,inf' in lines
    assert json.loads(out)["verdict"] == "pass"


def test_census_subset_filter(tmp_path, capsys):
    csv_path = tmp_path / "c.csv"
    code, _, _ = run(capsys, "census", "--type", "A", "--rank", "2", "--subset", "1", "--csv", str(csv_path))
    assert code == 0
    assert csv_path.read_text().splitlines()[1:] == ["{1},1,1,1,true,1"]


def test_general_torus(capsys):
    code, out, _ = run(capsys, "general", "--type", "A", "--rank", "1", "--subset", "", "--max-degree", "2")
    rep = json.loads(out)
    assert code == 0
    assert rep["config"]["subset"] == []
    assert [c["witness"]["flag_quotient_dim"] for c in rep["checks"] if c["id"].startswith("general.degree")] == [3, 5]


@pytest.mark.parametrize("args,msg", [
    (["verify", "--type", "A", "--rank", "3", "--lambda", "1,1,1"], "not regular (fails at alpha_2)"),
    (["verify", "--type", "E", "--rank", "2"], "does not exist"),
    (["verify", "--type", "A"], "required"),
    (["verify", "--type", "A", "--rank", "2", "--lambda", "1,x"], "integers"),
    (["general", "--type", "A", "--rank", "2", "--subset", "4"], "1..2"),
    (["general", "--type", "A", "--rank", "2", "--subset", "", "--s-params", "1,-1"], "root [1, 1]"),
])
def test_config_errors_exit_2(capsys, args, msg):
    code, _, err = run(capsys, *args)
    assert code == 2
    assert msg in err


def test_dimension_cap_exit_2(capsys, monkeypatch):
    monkeypatch.setenv("PWLAB_MAX_DIM", "5")
    code, _, err = run(capsys, "verify", "--type", "A", "--rank", "2", "--max-degree", "1")
    assert code == 2 and "PWLAB_MAX_DIM" in err


def test_config_file_overridden_by_flags(tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# desk run\ntype = A\nrank = 1\nmax-degree = 3\n")
    code, out, _ = run(capsys, "verify", "--config", str(cfg), "--max-degree", "1")
    rep = json.loads(out)
    assert code == 0 and rep["config"]["max_degree"] == 1


def test_failing_translate_search_exit_1(capsys, monkeypatch):
    import pwlab.cli as cli
    from pwlab.peterson import TranslateSearchFailed

    def nope(*a, **k):
        raise TranslateSearchFailed("no general h found within budget (0 words)")

    monkeypatch.setattr(cli, "search_general_translate", nope)
    code, out, _ = run(capsys, "general", "--type", "A", "--rank", "2", "--subset", "1")
    rep = json.loads(out)
    assert code == 1 and rep["verdict"] == "fail"
    assert "no general h found within budget" in rep["checks"][-1]["witness"]["error"]


def test_timings_flag(capsys):
    code, out, _ = run(capsys, "census", "--type", "A", "--rank", "1", "--timings")
    assert code == 0
    assert all(isinstance(c["ms"], int) for c in json.loads(out)["checks"])
