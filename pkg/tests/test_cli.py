import json
import subprocess
import sys

import pytest

from diograph.cli import main
from diograph.witnesses import FIVE_CHROMATIC_WITNESS, K4_WITNESS


@pytest.fixture
def quadruple_file(tmp_path):
    path = tmp_path / "quad.txt"
    path.write_text("".join(f"{v}\n" for v in K4_WITNESS), encoding="utf-8")
    return str(path)


@pytest.fixture
def five_chromatic_file(tmp_path):
    path = tmp_path / "w80.txt"
    lines = ["# 80-vertex five-chromatic witness\n"]
    lines += [f"{v}\n" for v in FIVE_CHROMATIC_WITNESS]
    path.write_text("".join(lines), encoding="utf-8")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_build_then_stats(capsys, tmp_path):
    gf = str(tmp_path / "g.json")
    code, out, _ = run_cli(capsys, "build", "--N", "1", "--out", gf)
    assert code == 0
    code, out, _ = run_cli(capsys, "--format", "json", "stats", "--graph-file", gf)
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 1 and doc["e"] == 0
    assert doc["schema_version"] == 1


def test_structured_output_is_deterministic(capsys):
    outputs = set()
    for _ in range(2):
        code, out, _ = run_cli(capsys, "--format", "json", "build", "--N", "30")
        assert code == 0
        outputs.add(out)
    for threads in ("1", "4"):
        code, out, _ = run_cli(
            capsys, "--format", "json", "--threads", threads, "build", "--N", "30"
        )
        assert code == 0
        outputs.add(out)
    assert len(outputs) == 1


def test_chroma_on_five_chromatic_witness(capsys, five_chromatic_file):
    code, out, _ = run_cli(capsys, "chroma", "--witness-file", five_chromatic_file)
    assert code == 0
    assert out.strip() == "5"


def test_color_exit_codes(capsys, quadruple_file):
    code, out, _ = run_cli(capsys, "color", "--k", "4", "--witness-file", quadruple_file)
    assert code == 0 and "yes" in out
    code, out, _ = run_cli(capsys, "color", "--k", "3", "--witness-file", quadruple_file)
    assert code == 1 and "no" in out


def test_color_witness_export(capsys, quadruple_file, tmp_path):
    cf = str(tmp_path / "coloring.txt")
    code, _, _ = run_cli(
        capsys, "color", "--k", "4", "--witness-file", quadruple_file,
        "--coloring-out", cf,
    )
    assert code == 0
    lines = open(cf).read().strip().splitlines()
    parsed = {int(a): int(c) for a, c in (ln.split() for ln in lines)}
    assert set(parsed) == set(K4_WITNESS)
    assert len(set(parsed.values())) == 4


def test_minimal_command(capsys, tmp_path):
    # an edge is not 1-colorable, and both deletions fix that
    wf = tmp_path / "edge.txt"
    wf.write_text("1\n3\n", encoding="utf-8")
    code, out, _ = run_cli(capsys, "--format", "json", "minimal", "--k", "1",
                           "--witness-file", str(wf))
    assert code == 0
    doc = json.loads(out)
    assert doc["minimal"] is True and doc["removable"] == [1, 3]


def test_minimal_rejects_colorable(capsys, quadruple_file):
    code, _, err = run_cli(capsys, "minimal", "--k", "4",
                           "--witness-file", quadruple_file)
    assert code == 2
    assert "already" in err


def test_neighbors_bounded(capsys):
    code, out, _ = run_cli(capsys, "neighbors", "--set", "1,3,8",
                           "--bound", "1000000")
    assert code == 0
    assert out.strip() == "120"


def test_neighbors_exact(capsys):
    code, out, _ = run_cli(capsys, "neighbors", "--set", "1,16")
    assert code == 0
    assert out.strip() == "3"
    code, _, err = run_cli(capsys, "neighbors", "--set", "1,3")
    assert code == 2  # different square-free parts need --bound


def test_dplus(capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "dplus", "--triple", "1,3,8")
    assert code == 0
    doc = json.loads(out)
    assert (doc["d_minus"], doc["d_plus"]) == (0, 120)


def test_extend_command(capsys, tmp_path):
    wf = tmp_path / "pair.txt"
    wf.write_text("1\n3\n", encoding="utf-8")
    code, out, _ = run_cli(capsys, "extend", "--witness-file", str(wf),
                           "--mode", "double", "--i", "0", "--j", "1",
                           "--count", "3")
    assert code == 0
    assert out.split() == ["8", "120", "1680"]


def test_prune_command(capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "prune", "--N", "100")
    assert code == 0
    doc = json.loads(out)
    assert doc["final"]["n"] <= doc["initial"]["n"]
    for step in doc["steps"]:
        before = step["density_before"][0] / step["density_before"][1]
        after = step["density_after"][0] / step["density_after"][1]
        assert after > before


def test_hamilton_commands(capsys):
    code, out, _ = run_cli(capsys, "hamilton", "--path", "--N", "16")
    assert code == 0 and "yes" in out
    code, out, _ = run_cli(capsys, "hamilton", "--path", "--N", "14")
    assert code == 1 and "mod4-counting" in out
    code, out, _ = run_cli(capsys, "hamilton", "--cycle", "--N", "12")
    assert code == 1 and "no" in out


def test_represent_command(capsys, tmp_path):
    target = {
        "schema_version": 1,
        "n": 4,
        "vertices": [0, 1, 2, 3],
        "edges": [[0, 1], [1, 2], [2, 3]],
    }
    tf = tmp_path / "target.json"
    tf.write_text(json.dumps(target), encoding="utf-8")
    code, out, _ = run_cli(capsys, "--format", "json", "represent",
                           "--graph-file", str(tf))
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "found"
    assert len(doc["witness"]) == 4


def test_rank_command(capsys):
    code, out, _ = run_cli(capsys, "rank", "--top", "2", "--N", "1000")
    assert code == 0
    assert out.split() == ["24", "120"]


def test_omega_command(capsys):
    code, out, _ = run_cli(capsys, "--format", "json", "omega", "--x", "100")
    assert code == 0
    doc = json.loads(out)
    assert doc["counts"][0] == 1 and doc["counts"][1] == 35


def test_malformed_witness_file_gives_line_number(capsys, tmp_path):
    wf = tmp_path / "bad.txt"
    wf.write_text("1\n3\nnot-a-number\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "chroma", "--witness-file", str(wf))
    assert code == 2
    assert ":3" in err


def test_missing_source_is_usage_error(capsys):
    code, _, err = run_cli(capsys, "stats")
    assert code == 2
    assert "required" in err


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "diograph", "neighbors", "--set", "1,3,8",
         "--bound", "1000000"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == "120"
