import json

import pytest

from qhoch.cli import ConfigError, main, parse_config, scalar_json


CFG_FORMAL = {
    "n": 2, "N": 1,
    "q": [{"i": 1, "j": 2, "kind": "formal", "name": "q"}],
    "group": {"kind": "trivial"},
    "max_degree": 4, "seeds": [1, 2, 3],
}

CFG_ACTION_D3 = {
    "n": 2, "N": 3,
    "q": [{"i": 1, "j": 2, "kind": "zeta", "power": 1}],
    "group": {"kind": "cyclic", "order": 3,
              "chi": [{"zeta": 1}, {"zeta": 2}]},
    "max_degree": 5, "seeds": [1, 2],
}


def write_cfg(tmp_path, cfg, name="cfg.json"):
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_dims_text_and_json_agree(tmp_path, capsys):
    path = write_cfg(tmp_path, CFG_FORMAL)
    code, out, err = run(capsys, ["dims", "--config", path])
    assert code == 0
    rows = [line.split("\t") for line in out.strip().splitlines()[1:]]
    text_dims = [(int(a), int(b)) for a, b in rows]
    code, out, err = run(capsys, ["dims", "--config", path, "--format", "json"])
    assert code == 0
    data = json.loads(out)
    json_dims = [(r["degree"], r["dim"]) for r in data["dims"]]
    assert text_dims == json_dims == [(0, 2), (1, 2), (2, 1), (3, 0), (4, 0)]


def test_dims_with_rank_verification(tmp_path, capsys):
    path = write_cfg(tmp_path, CFG_ACTION_D3)
    code, out, err = run(capsys, ["dims", "--config", path, "--verify",
                                  "--format", "json", "--max-degree", "4"])
    assert code == 0
    data = json.loads(out)
    for row in data["dims"]:
        assert row["dim"] == row["rank_oracle"]


def test_basis_round_trip(tmp_path, capsys):
    path = write_cfg(tmp_path, CFG_FORMAL)
    code, out, _ = run(capsys, ["basis", "--config", path, "--format", "json"])
    assert code == 0
    data = json.loads(out)
    ids = [rec["id"] for rec in data["classes"]]
    assert ids == ["d0#0", "d0#1", "d1#0", "d1#1", "d2#0"]
    code, text_out, _ = run(capsys, ["basis", "--config", path])
    lines = text_out.strip().splitlines()[1:]
    assert [ln.split("\t")[0] for ln in lines] == ids


def test_bracket_table_formal(tmp_path, capsys):
    path = write_cfg(tmp_path, CFG_FORMAL)
    code, out, _ = run(capsys, ["bracket", "--config", path,
                                "--max-degree", "2", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    pairs = {(rec["left"], rec["right"]) for rec in data["table"]}
    # the two listed brackets plus their antisymmetric partners
    assert pairs == {("d0#1", "d1#0"), ("d0#1", "d1#1"),
                     ("d1#0", "d0#1"), ("d1#1", "d0#1")}


def test_cup_table_contains_golden_sign(tmp_path, capsys):
    path = write_cfg(tmp_path, CFG_FORMAL)
    code, out, _ = run(capsys, ["cup", "--config", path,
                                "--max-degree", "2", "--format", "json"])
    data = json.loads(out)
    lookup = {(rec["left"], rec["right"]):
              rec["terms"][0]["coefficient_str"] for rec in data["table"]
              if rec["degree"] == 2}
    # degree-1 classes are ordered (x2)e01 then (x1)e10
    assert lookup[("d1#0", "d1#1")] == "-1"
    assert lookup[("d1#1", "d1#0")] == "1"


def test_empty_degree_exits_zero(tmp_path, capsys):
    path = write_cfg(tmp_path, CFG_FORMAL)
    code, out, _ = run(capsys, ["basis", "--config", path, "--degree", "4",
                                "--format", "json"])
    assert code == 0
    assert json.loads(out)["classes"] == []


def test_verify_pass_and_regression(tmp_path, capsys):
    path = write_cfg(tmp_path, CFG_FORMAL)
    code, out, _ = run(capsys, ["verify", "--config", path, "--max-degree", "3"])
    assert code == 0
    assert all(line.startswith("PASS") for line in out.strip().splitlines())
    code, out, err = run(capsys, ["verify", "--config", path,
                                  "--max-degree", "3",
                                  "--corrupt", "omega-sign"])
    assert code == 1
    assert "differential squares to zero" in err and "witness" in err


def test_verify_action_datum(tmp_path, capsys):
    path = write_cfg(tmp_path, CFG_ACTION_D3)
    code, out, _ = run(capsys, ["verify", "--config", path, "--max-degree", "3"])
    assert code == 0


def test_config_errors_exit_two(tmp_path, capsys):
    bad = dict(CFG_FORMAL)
    bad["q"] = [{"i": 2, "j": 1, "kind": "formal"}]
    path = write_cfg(tmp_path, bad)
    code, out, err = run(capsys, ["dims", "--config", path])
    assert code == 2 and "config.q[0]" in err

    bad = dict(CFG_FORMAL)
    del bad["max_degree"]
    path = write_cfg(tmp_path, bad, "bad2.json")
    code, out, err = run(capsys, ["dims", "--config", path])
    assert code == 2 and "max_degree" in err

    path = tmp_path / "nonexistent.json"
    code, out, err = run(capsys, ["dims", "--config", str(path)])
    assert code == 2


def test_config_rejects_bad_rational(tmp_path):
    bad = dict(CFG_FORMAL)
    bad["q"] = [{"i": 1, "j": 2, "kind": "rational", "value": 2}]
    with pytest.raises(ConfigError):
        parse_config(bad)


def test_config_rejects_mismatched_character_order(tmp_path):
    bad = dict(CFG_ACTION_D3)
    bad["group"] = {"kind": "cyclic", "order": 2,
                    "chi": [{"zeta": 1}, {"zeta": 2}]}
    with pytest.raises(ConfigError):
        parse_config(bad)


def test_runs_deterministic(tmp_path, capsys):
    path = write_cfg(tmp_path, CFG_ACTION_D3)
    outs = []
    for _ in range(2):
        code, out, _ = run(capsys, ["bracket", "--config", path,
                                    "--max-degree", "3", "--format", "json"])
        assert code == 0
        outs.append(out)
    assert outs[0] == outs[1]


def test_scalar_json_exact(A2):
    s = A2.one() - A2.scalar(A2.uni.param_unit(0) ** -2)
    rec = scalar_json(s)
    assert rec == [
        {"formal_exponents": [-2], "zeta_power_terms": [["-1", "1"]]},
        {"formal_exponents": [0], "zeta_power_terms": [["1", "1"]]},
    ]
