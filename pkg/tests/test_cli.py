"""Command line interface: subcommands, formats and exit codes."""

import json

import pytest

from linesys.cli import main
from linesys.constructions import build_cnn
from linesys.files import load_instance, write_instance


@pytest.fixture
def cnn3_file(tmp_path):
    s, _ = build_cnn(3)
    path = tmp_path / "cnn3.json"
    write_instance(path, s)
    return str(path)


def test_gen_to_stdout(capsys):
    assert main(["gen", "cnn", "--n", "3"]) == 0
    s = load_instance(capsys.readouterr().out)
    assert s.num_points == 8
    assert s.num_lines == 8


def test_gen_to_file_with_labels(tmp_path, capsys):
    out = tmp_path / "p2.json"
    labels = tmp_path / "p2.labels.json"
    code = main(["gen", "plane", "--q", "2",
                 "--out", str(out), "--labels", str(labels)])
    assert code == 0
    assert load_instance(out.read_text()).num_points == 7
    doc = json.loads(labels.read_text())
    assert doc["name"] == "plane_2"


def test_labels_flag_only_where_labels_exist(tmp_path):
    # matchings carry no labeling, so the option itself is absent
    with pytest.raises(SystemExit) as info:
        main(["gen", "matching", "--m", "2", "--r", "3",
              "--labels", str(tmp_path / "x.json")])
    assert info.value.code == 2


def test_gen_c44_directory(tmp_path, capsys):
    outdir = tmp_path / "members"
    assert main(["gen", "c44", "--out-dir", str(outdir)]) == 0
    files = sorted(p.name for p in outdir.iterdir())
    assert files == [f"c44_{i:02d}.json" for i in range(8)] + ["provenance.json"]
    first = load_instance((outdir / "c44_00.json").read_text())
    assert (first.num_points, first.num_lines) == (10, 10)
    prov = json.loads((outdir / "provenance.json").read_text())
    assert len(prov["members"]) == 8
    assert prov["members"][0]["restored_points"] == []


def test_solve_text(cnn3_file, capsys):
    assert main(["solve", cnn3_file]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0].startswith("tau 4 proven witness=0,1,2,4 nodes=")
    assert out[1].startswith("nu2 4 proven")


def test_solve_json(cnn3_file, capsys):
    assert main(["solve", cnn3_file, "--what", "tau", "--format", "json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["tau"]["optimum"] == 4
    assert doc["tau"]["proven_optimal"] is True
    assert "nu2" not in doc


def test_solve_budget_exhaustion_exit(tmp_path, capsys):
    s, _ = build_cnn(5)
    path = tmp_path / "c5.json"
    write_instance(path, s)
    assert main(["solve", str(path), "--max-nodes", "2"]) == 3
    assert "unproven" in capsys.readouterr().out


def test_verify_files(cnn3_file, capsys):
    assert main(["verify", cnn3_file]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[-1].startswith("total:")


def test_verify_family_json(capsys):
    code = main(["verify", "--family", "cnn", "--ns", "3", "--format", "json"])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["instances"][0]["summary"]["name"] == "cnn_3"


def test_verify_nothing_is_usage_error(capsys):
    assert main(["verify"]) == 2


def test_iso_exit_codes(tmp_path, cnn3_file, capsys):
    assert main(["iso", cnn3_file, cnn3_file]) == 0
    assert capsys.readouterr().out.strip() == "isomorphic"
    other = tmp_path / "p2.json"
    main(["gen", "plane", "--q", "2", "--out", str(other)])
    assert main(["iso", cnn3_file, str(other)]) == 1
    assert capsys.readouterr().out.strip() == "not-isomorphic"


def test_iso_budget_undecided(tmp_path, capsys):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    main(["gen", "plane", "--q", "3", "--out", str(a)])
    main(["gen", "plane", "--q", "3", "--out", str(b)])
    assert main(["iso", str(a), str(b), "--max-nodes", "2"]) == 3
    assert "undecided" in capsys.readouterr().err


def test_canon_is_stable_and_loadable(cnn3_file, capsys):
    assert main(["canon", cnn3_file]) == 0
    first = capsys.readouterr().out
    assert main(["canon", cnn3_file]) == 0
    assert capsys.readouterr().out == first
    assert load_instance(first).num_points == 8


def test_missing_file_is_exit_2(capsys):
    assert main(["solve", "no-such-file.json"]) == 2
    assert "error:" in capsys.readouterr().err


def test_malformed_instance_is_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"points": 4, "lines": [[0, 1, 2], [0, 1, 3]]}')
    assert main(["solve", str(bad)]) == 2


def test_usage_error_is_exit_2():
    with pytest.raises(SystemExit) as info:
        main(["gen", "cnn"])  # --n is required
    assert info.value.code == 2
