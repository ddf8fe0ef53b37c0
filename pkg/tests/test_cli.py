"""Command-line behavior: outputs, option combinations, exit codes."""

import json
import subprocess
import sys

from tetsubdiv.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, run
from tetsubdiv.connectivity import generate
from tetsubdiv.io import FieldData, write_json, write_off_boundary, write_vtk_legacy


def test_gen_vtk_matches_library_output(tmp_path):
    out = tmp_path / "mesh.vtk"
    assert run(["gen", "--order", "3", "--out", str(out)]) == EXIT_OK
    assert out.read_bytes() == write_vtk_legacy(generate(3))


def test_gen_json_and_off(tmp_path):
    jout = tmp_path / "mesh.json"
    assert run(["gen", "--order", "2", "--format", "json", "--out", str(jout)]) == EXIT_OK
    assert jout.read_bytes() == write_json(generate(2))

    oout = tmp_path / "mesh.off"
    assert run(["gen", "--order", "2", "--format", "off", "--out", str(oout)]) == EXIT_OK
    assert oout.read_bytes() == write_off_boundary(generate(2))


def test_gen_to_stdout(capfdbinary):
    assert run(["gen", "--order", "1", "--out", "-"]) == EXIT_OK
    captured = capfdbinary.readouterr()
    assert captured.out == write_vtk_legacy(generate(1))


def test_gen_with_field_and_embedding(tmp_path):
    fpath = tmp_path / "f.txt"
    fpath.write_text("\n".join(str(v) for v in range(4)))
    out = tmp_path / "m.vtk"
    argv = [
        "gen", "--order", "1", "--out", str(out), "--field", str(fpath),
        "--embedding", "0", "0", "2", "0", "0", "0", "2", "0", "0", "0", "2", "0",
    ]
    assert run(argv) == EXIT_OK
    text = out.read_text()
    assert "0.0 0.0 2.0" in text
    assert "SCALARS f double 1" in text


def test_gen_with_permutation(tmp_path):
    mesh = generate(1)
    table = [3, 2, 1, 0]
    ppath = tmp_path / "perm.json"
    ppath.write_text(json.dumps(table))
    out = tmp_path / "m.json"
    argv = [
        "gen", "--order", "1", "--format", "json",
        "--out", str(out), "--permutation", str(ppath),
    ]
    assert run(argv) == EXIT_OK
    doc = json.loads(out.read_text())
    assert [n["i"] for n in doc["nodes"]] == [
        mesh.nodes[old].i for old in (3, 2, 1, 0)
    ]


def test_gen_option_conflicts(tmp_path):
    fpath = tmp_path / "f.txt"
    fpath.write_text("0 1 2 3")
    emb = ["--embedding"] + ["0", "0", "1", "0", "0", "0", "1", "0", "0", "0", "1", "0"]
    base = ["gen", "--order", "1", "--out", "-"]
    assert run(base + ["--format", "off", "--field", str(fpath)]) == EXIT_USAGE
    assert run(base + ["--format", "json"] + emb) == EXIT_USAGE


def test_gen_rejects_coplanar_embedding():
    flat = ["0", "0", "0", "1", "0", "0", "0", "1", "0", "1", "1", "0"]
    assert run(["gen", "--order", "1", "--out", "-", "--embedding"] + flat) == EXIT_USAGE


def test_gen_io_error(tmp_path):
    missing_dir = tmp_path / "no" / "such" / "dir" / "m.vtk"
    assert run(["gen", "--order", "2", "--out", str(missing_dir)]) == EXIT_IO


def test_validate_order_passes(capsys):
    assert run(["validate", "--order", "2", "--samples", "200"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("validation of order-2 subdivision: PASS")


def test_validate_json_output(capsys):
    assert run(["validate", "--order", "2", "--samples", "50", "--json"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] is True
    assert len(doc["checks"]) == 7


def test_validate_json_mesh_file(tmp_path, capsys):
    path = tmp_path / "mesh.json"
    write_json(generate(2), path)
    assert run(["validate", "--in", str(path), "--samples", "100"]) == EXIT_OK
    capsys.readouterr()


def test_validate_detects_corrupted_file(tmp_path, capsys):
    doc = json.loads(write_json(generate(2)).decode())
    del doc["tets"][0]
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    assert run(["validate", "--in", str(path), "--samples", "100"]) == EXIT_VALIDATION
    assert "FAIL" in capsys.readouterr().out


def test_validate_requires_exactly_one_source():
    assert run(["validate"]) == EXIT_USAGE
    assert run(["validate", "--order", "2", "--in", "x.json"]) == EXIT_USAGE


def test_validate_missing_file_is_io_error():
    assert run(["validate", "--in", "/no/such/mesh.json"]) == EXIT_IO


def test_info_output(capsys):
    assert run(["info", "--order", "3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "nodes:            20" in out
    assert "tets:             27  (= 3^3)" in out
    assert "per-level counts: 1 7 19" in out
    assert "upright=10 fill=16 chunk=1" in out


def test_resample_writes_vtk_with_point_data(tmp_path):
    fpath = tmp_path / "vals.txt"
    fpath.write_text("0.5 1.5 2.5 3.5")
    out = tmp_path / "m.vtk"
    assert run(["resample", "--order", "1", "--field", str(fpath), "--out", str(out)]) == EXIT_OK
    expected = write_vtk_legacy(
        generate(1), fields=[FieldData("vals", (0.5, 1.5, 2.5, 3.5))]
    )
    assert out.read_bytes() == expected
    text = out.read_text()
    assert "POINT_DATA 4" in text
    assert "SCALARS vals double 1" in text


def test_resample_with_permutation_moves_mesh_and_values(tmp_path):
    fpath = tmp_path / "vals.txt"
    fpath.write_text("0 1 2 3")
    ppath = tmp_path / "perm.txt"
    ppath.write_text("3 2 1 0")
    out = tmp_path / "m.vtk"
    argv = [
        "resample", "--order", "1", "--field", str(fpath),
        "--permutation", str(ppath), "--out", str(out),
    ]
    assert run(argv) == EXIT_OK
    lines = out.read_text().splitlines()
    at = lines.index("POINTS 4 double")
    # node 0 (the apex, originally first) now sits at position 3
    assert lines[at + 4] == "0.0 0.0 1.0"
    assert lines[lines.index("LOOKUP_TABLE default") + 1 :] == [
        "3.0", "2.0", "1.0", "0.0",
    ]


def test_resample_wrong_length(tmp_path):
    fpath = tmp_path / "vals.txt"
    fpath.write_text("1 2 3")
    assert run(["resample", "--order", "2", "--field", str(fpath), "--out", "-"]) == EXIT_USAGE


def test_bad_order_is_usage_error():
    assert run(["gen", "--order", "0", "--out", "-"]) == EXIT_USAGE


def test_unknown_arguments_are_usage_errors(capsys):
    assert run(["gen", "--order", "2"]) == EXIT_USAGE
    assert run(["frobnicate"]) == EXIT_USAGE
    assert run([]) == EXIT_USAGE
    capsys.readouterr()


def test_version_flag(capsys):
    assert run(["--version"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("tetsubdiv ")


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "tetsubdiv", "info", "--order", "2"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "tets:             8" in proc.stdout
