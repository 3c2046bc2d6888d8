from __future__ import annotations

import json

import pytest

from hamcayley import catalog as cat
from hamcayley.cli import main


def run_cli(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_build_emits_json(capsys):
    code, out, _ = run_cli(capsys, "build", "--catalog", "D4", "--gens", "r,s")
    assert code == 0
    data = json.loads(out)
    assert data["verified"] is True
    assert data["order"] == 8
    assert data["path"] == "ell2_path"
    assert len(data["word"]) == 8
    assert set(data["word"][0]) == {"gen", "sign"}


def test_build_is_deterministic(capsys):
    first = run_cli(capsys, "build", "--catalog", "Heis3xC2", "--gens", "x,y,g")[1]
    second = run_cli(capsys, "build", "--catalog", "Heis3xC2", "--gens", "x,y,g")[1]
    assert first == second


def test_build_then_verify_roundtrip(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "build", "--catalog", "Q8xC3", "--gens", "i,j,g")
    assert code == 0
    word_file = tmp_path / "w.json"
    word_file.write_text(out)
    code, out, _ = run_cli(capsys, "verify", "--catalog", "Q8xC3", "--gens", "i,j,g", str(word_file))
    assert code == 0
    assert json.loads(out)["hamiltonian"] is True


def test_verify_rejects_truncated_word(capsys, tmp_path):
    out = run_cli(capsys, "build", "--catalog", "D4", "--gens", "r,s")[1]
    word = json.loads(out)["word"][:-1]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(word))
    code, out, _ = run_cli(capsys, "verify", "--catalog", "D4", "--gens", "r,s", str(path))
    assert code == 1
    assert "length 7 != order 8" in json.loads(out)["reason"]


def test_non_nilpotent_exits_2(capsys):
    code, _, err = run_cli(capsys, "build", "--catalog", "S3")
    assert code == 2
    assert "not nilpotent" in err


def test_unknown_generator_exits_2(capsys):
    code, _, err = run_cli(capsys, "build", "--catalog", "D4", "--gens", "r,zz")
    assert code == 2
    assert "zz" in err


def test_unreadable_word_file_exits_2(capsys, tmp_path):
    path = tmp_path / "junk.json"
    path.write_text("{not json")
    assert run_cli(capsys, "verify", "--catalog", "D4", str(path))[0] == 2


def test_search_budget_exits_4(capsys):
    code, out, _ = run_cli(capsys, "search", "--catalog", "Heis3xC3", "--budget", "1")
    assert code == 4
    assert json.loads(out)["status"] == "budget"


def test_search_finds_small_cycle(capsys):
    code, out, _ = run_cli(capsys, "search", "--catalog", "Q8")
    assert code == 0
    assert json.loads(out)["path"] == "fallback_search"


def test_dot_and_json_outputs(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    rec = tmp_path / "run.json"
    code, out, _ = run_cli(capsys, "build", "--catalog", "D4", "--dot", str(dot), "--json", str(rec), "--trace")
    assert code == 0
    assert "trace" in json.loads(out)
    text = dot.read_text()
    assert text.count("color=black") == 8
    assert "color=gray" in text
    record = json.loads(rec.read_text())
    assert record["command"] == "build"
    assert record["result"]["verified"] is True
    assert "build_s" in record["timings"]
    assert record["verification"]["hamiltonian"] is True


def test_group_file_input(capsys):
    path = cat.ingested_files()[0]
    code, out, _ = run_cli(capsys, "build", "--group", str(path))
    assert code == 0
    assert json.loads(out)["verified"] is True


def test_catalog_list_show_selftest(capsys):
    code, out, _ = run_cli(capsys, "catalog", "list")
    assert code == 0
    assert "Heis3xC2" in out and "d4_square" in out
    code, out, _ = run_cli(capsys, "catalog", "show", "Q8")
    assert code == 0
    data = json.loads(out)
    assert data["order"] == 8 and data["center_order"] == 2
    code, out, _ = run_cli(capsys, "catalog", "selftest")
    assert code == 0
    assert "MISMATCH" not in out


def test_show_without_name_exits_2(capsys):
    assert run_cli(capsys, "catalog", "show")[0] == 2


def test_source_is_required():
    with pytest.raises(SystemExit):
        main(["build"])


def test_max_order_env_exits_4(capsys, monkeypatch):
    monkeypatch.setenv("HAMCAYLEY_MAX_ORDER", "16")
    code, _, err = run_cli(capsys, "build", "--catalog", "Heis3")
    assert code == 4
    assert "bound" in err
