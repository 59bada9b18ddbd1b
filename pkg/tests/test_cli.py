import json
import subprocess
import sys

import pytest

from ringclass.cli import main


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_decompose_barallene(capsys):
    code, out, _ = run(["decompose", "barallene"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1 and doc["nu"] == 2
    (comp,) = doc["components"]
    assert len(comp["sli_classes"]) == 3
    (pi,) = comp["pi_classes"]
    assert pi["rank"] == 2 and len(pi["polyhedra"]) == 1


def test_decompose_acyclic_file(tmp_path, capsys):
    p = tmp_path / "tree.txt"
    p.write_text("n 4\n0 1\n1 2\n1 3\n")
    code, out, _ = run(["decompose", str(p)], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["nu"] == 0 and doc["components"] == []


def test_parse_errors_exit_2(tmp_path, capsys):
    p = tmp_path / "bad.txt"
    p.write_text("0 1 2\n")
    assert run(["decompose", str(p)], capsys)[0] == 2
    assert run(["decompose", "no-such-input"], capsys)[0] == 2
    q = tmp_path / "g.json"
    q.write_text("{oops")
    assert run(["decompose", str(q), "--format", "json"], capsys)[0] == 2


def test_bond_frames(tmp_path, capsys):
    p = tmp_path / "bonds.txt"
    p.write_text("frame 0\n0 1\n1 2\n2 0\nframe 5\n0 1\n1 2\n2 3\n3 0\nframe 9\n0 1\n")
    code, out, _ = run(["decompose", str(p), "--format", "bonds"], capsys)
    doc = json.loads(out)
    assert [f["frame"] for f in doc["frames"]] == ["0", "5", "9"]
    assert [f["nu"] for f in doc["frames"]] == [1, 1, 0]


def test_sample_zero_steps_gives_computed_basis(capsys):
    from ringclass.fixtures import fixture
    from ringclass.pipeline import decompose

    code, out, _ = run(["sample", "twistane", "--seed", "1", "--steps", "0", "--replicates", "2"], capsys)
    doc = json.loads(out)
    comp = decompose(fixture("twistane")).components[0]
    expected = [[c.circulation() for c in comp.basis_cycles()]]
    assert doc["replicates"] == [expected, expected]


def test_sample_is_deterministic(tmp_path, capsys):
    outs = []
    for _ in range(2):
        target = tmp_path / f"s{len(outs)}.json"
        assert run(["sample", "glued-cubes", "--seed", "42", "--replicates", "3", "--output", str(target)], capsys)[0] == 0
        outs.append(target.read_bytes())
    assert outs[0] == outs[1]


def test_seed_range(capsys):
    with pytest.raises(SystemExit):
        main(["sample", "barallene", "--seed", str(1 << 64)])
    assert main(["sample", "barallene", "--seed", str((1 << 64) - 1)]) == 0


def test_dualgraph_outputs(tmp_path, capsys):
    code, out, _ = run(["dualgraph", "fcb-hexagons"], capsys)
    assert code == 0
    assert 'c0 -- c1 [label="1"]' in out
    base = tmp_path / "dual"
    assert run(["dualgraph", "fcb-hexagons", "--output", str(base)], capsys)[0] == 0
    doc = json.loads((tmp_path / "dual.json").read_text())
    (g,) = doc["components"]
    assert len(g["nodes"]) == 2 and g["edges"] == [{"source": 0, "target": 1, "length": 1}]
    assert (tmp_path / "dual.dot").read_text() == out


def test_dualgraph_not_converged_exit_3(tmp_path, capsys):
    p = tmp_path / "k24.txt"
    p.write_text("".join(f"{a} {b}\n" for a in (0, 1) for b in (2, 3, 4, 5)))
    codes = {run(["dualgraph", str(p), "--seed", str(s), "--max-iterations", "1"], capsys)[0] for s in range(20)}
    assert 3 in codes


def test_bench_csv(tmp_path, capsys):
    summary = tmp_path / "summary.csv"
    code, out, _ = run(["bench", "rgg", "--n", "60", "--seeds", "3", "--summary", str(summary)], capsys)
    lines = out.splitlines()
    assert code == 0 and lines[0] == "length,rate,source"
    assert {line.split(",")[2] for line in lines[1:]} == {"mcb:n=60", "relevant:n=60"}
    assert summary.read_text().splitlines()[1].startswith("60,3,")


def test_oracle_check(capsys):
    code, out, _ = run(["oracle-check", "adamantane"], capsys)
    assert code == 0 and "FAIL" not in out and out.count("PASS") == 7
    assert run(["oracle-check", "glued-cubes", "--max-edges", "10"], capsys)[0] == 2


def test_oracle_mismatch_exit_4(monkeypatch, capsys):
    import ringclass.oracle as oracle

    monkeypatch.setattr(oracle, "check_pipeline", lambda g, m: {"relevant": False})
    code, out, _ = run(["oracle-check", "triangle"], capsys)
    assert code == 4 and "FAIL" in out


def test_console_script_entry():
    res = subprocess.run(
        [sys.executable, "-m", "ringclass.cli", "decompose", "triangle"], capture_output=True, text=True
    )
    assert res.returncode == 0 and json.loads(res.stdout)["nu"] == 1
