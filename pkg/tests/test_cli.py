import json

import pytest

from expander_forge.cli import main, rational
from fractions import Fraction


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


@pytest.fixture
def graph_file(tmp_path, capsys):
    path = tmp_path / "g.el"
    assert main(["gen", "--n", "100", "--d", "8", "--seed", "42", "-o", str(path)]) == 0
    return path


def test_rational_snaps_decimals():
    assert rational("0.0357142857") == Fraction(1, 28)
    assert rational("0.05") == Fraction(1, 20)


def test_gen_then_extract(graph_file, capsys):
    code, out = run(capsys, "extract", "--lambda", "0.05", str(graph_file), "--no-meta")
    assert code == 0
    res = json.loads(out)["result"]
    assert res["bound_check"]["avg_ok"] and res["bound_check"]["min_ok"]


def test_schedule_paper(capsys):
    code, out = run(capsys, "schedule", "--paper", "--C", "6", "--alpha", "0.0357142857", "--logn", "1024")
    data = json.loads(out)["result"]
    assert code == 0 and data["gamma"] == 0.8 and data["c"] == 7.5


def test_schedule_rejects_overrides(capsys):
    assert main(["schedule", "--paper", "--n", "4096", "--t", "5"]) == 1


def test_usage_error_code(capsys):
    for argv in (["nonsense"], ["extract"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 1


def test_missing_file(capsys, tmp_path):
    assert main(["hamilton", str(tmp_path / "nope.el")]) == 1


@pytest.mark.parametrize("command", ["extract", "cover", "hamilton", "pack-subdiv", "cycle-partition", "chords", "check-expansion"])
def test_artifacts_verify(command, graph_file, tmp_path, capsys):
    art = tmp_path / f"{command}.json"
    main([command, str(graph_file), "-o", str(art), "--no-meta"])
    assert main(["verify", str(art), "--graph", str(graph_file)]) == 0


def test_tampered_packing(graph_file, tmp_path, capsys):
    art = tmp_path / "p.json"
    assert main(["pack-subdiv", str(graph_file), "--pattern", "K3", "-o", str(art)]) == 0
    assert main(["verify", "--packing", str(art), "--graph", str(graph_file)]) == 0
    data = json.loads(art.read_text())
    first = data["result"]["elements"][0]["paths"]
    key = sorted(first)[0]
    first[key][1] = first[key][2]
    art.write_text(json.dumps(data))
    assert main(["verify", "--packing", str(art), "--graph", str(graph_file)]) == 2


def test_refuted_check_exits_2(tmp_path, capsys):
    path = tmp_path / "two.el"
    path.write_text("0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n")
    assert main(["check-expansion", str(path), "--lambda", "0.1", "--check", "exact"]) == 2


def test_byte_identical_reports(graph_file, tmp_path, capsys):
    outs = []
    for k in range(2):
        path = tmp_path / f"h{k}.json"
        main(["hamilton", str(graph_file), "--seed", "3", "--no-meta", "-o", str(path)])
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_env_seed(graph_file, tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("EXPANDER_FORGE_SEED", "11")
    code, out = run(capsys, "hamilton", str(graph_file), "--no-meta")
    assert json.loads(out)["seed"] == 11
