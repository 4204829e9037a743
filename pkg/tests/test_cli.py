"""Command-line interface: subcommands, exit codes, file formats."""

import json

import pytest

from redform.cli import main
from redform.diffsys import LinearDiffSystem


DIHEDRAL = {"var": "x", "matrix": [["0", "1"], ["x", "1/(2*x)"]]}
IDENTITY2 = {"var": "x", "matrix": [["1", "0"], ["0", "1"]]}


@pytest.fixture
def sys_file(tmp_path):
    p = tmp_path / "dihedral.json"
    p.write_text(json.dumps(DIHEDRAL))
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_ratsols_dihedral(sys_file, capsys):
    code, out, _ = run(capsys, "ratsols", "--construction", "sym(2,id)",
                       sys_file)
    assert code == 0
    report = json.loads(out)
    assert report["solutions"][0]["basis"] == [["1", "0", "-x"]]


def test_gauge_identity_is_noop(sys_file, tmp_path, capsys):
    p = tmp_path / "ident.json"
    p.write_text(json.dumps(IDENTITY2))
    code, out, _ = run(capsys, "gauge", "--p", str(p), sys_file)
    assert code == 0
    gauged = LinearDiffSystem.from_json(out)
    assert gauged == LinearDiffSystem.from_json_dict(DIHEDRAL)


def test_gauge_singular_reports_determinant(sys_file, tmp_path, capsys):
    p = tmp_path / "sing.json"
    p.write_text(json.dumps({"var": "x",
                             "matrix": [["x", "x"], ["x", "x"]]}))
    code, _, err = run(capsys, "gauge", "--p", str(p), sys_file)
    assert code == 2
    assert "singular" in err and "det" in err


def test_roundtrip_of_emitted_systems(sys_file, capsys):
    code, out, _ = run(capsys, "subst", "--subst", "2", sys_file)
    assert code == 0
    emitted = LinearDiffSystem.from_json(out)
    assert emitted.to_json_dict() == json.loads(out)


def test_wei_norman_report(sys_file, capsys):
    code, out, _ = run(capsys, "wei-norman", sys_file)
    assert code == 0
    report = json.loads(out)
    assert report["rank"] == 3
    assert len(report["mats"]) == 3


def test_construct_report(sys_file, capsys):
    code, out, _ = run(capsys, "construct", "--construction", "ext(2,id)",
                       sys_file)
    assert code == 0
    report = json.loads(out)
    entry = report["constructions"][0]
    assert entry["algebra"] == [["1/2/x"]]
    assert entry["group"] == [["-x"]]


def test_series_report(sys_file, capsys):
    code, out, _ = run(capsys, "series", "--z0", "1", "--order", "3", sys_file)
    assert code == 0
    report = json.loads(out)
    assert report["coeffs"][0] == [["1", "0"], ["0", "1"]]
    assert report["order"] == 3


def test_check_reduced_exit_codes(sys_file, capsys):
    code, out, _ = run(capsys, "check-reduced", "--construction", "sym(2,id)",
                       sys_file)
    assert code == 0
    assert json.loads(out)["verdict"] is False
    code, _, _ = run(capsys, "check-reduced", "--construction", "sym(2,id)",
                     "--expect-reduced", sys_file)
    assert code == 1


def test_check_reduced_on_reduced_system(tmp_path, capsys):
    p = tmp_path / "rot.json"
    p.write_text(json.dumps({"var": "x",
                             "matrix": [["0", "x"], ["-x", "0"]]}))
    code, out, _ = run(capsys, "check-reduced", "--construction", "sym(2,id)",
                       "--expect-reduced", str(p))
    assert code == 0
    assert json.loads(out)["verdict"] is True


def test_export_s(sys_file, tmp_path, capsys):
    out_path = tmp_path / "system.txt"
    code, _, _ = run(capsys, "export-s", sys_file,
                     "--construction", "sym(2,id)",
                     "--construction", "sym(2,ext(2,id))",
                     "--z0", "1", "--out", str(out_path))
    assert code == 0
    lines = out_path.read_text().splitlines()
    assert len(lines) == 5
    meta = json.loads((tmp_path / "system.txt.meta.json").read_text())
    assert meta["unknowns"] == ["p_1_1", "p_1_2", "p_2_1", "p_2_2", "w"]


def test_verify_reduction_cli(tmp_path, capsys):
    sub = tmp_path / "sub.json"
    sub.write_text(json.dumps({"var": "t",
                               "matrix": [["0", "2*t"], ["2*t^3", "1/t"]]}))
    pfile = tmp_path / "p.json"
    pfile.write_text(json.dumps({"var": "t",
                                 "matrix": [["0", "i"], ["i*t", "0"]]}))
    code, out, _ = run(capsys, "verify-reduction", "--p", str(pfile),
                       "--construction", "sym(2,id)", "--expect-reduced",
                       str(sub))
    assert code == 0
    report = json.loads(out)
    assert report["ok"] is True
    assert report["gauged"]["matrix"] == [["0", "2*t^2"], ["2*t^2", "0"]]


def test_missing_file_is_input_error(capsys):
    code, _, err = run(capsys, "ratsols", "no-such-file.json")
    assert code == 2
    assert "error" in err


def test_parse_error_reports_position(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text(json.dumps({"var": "x", "matrix": [["1+"]]}))
    code, _, err = run(capsys, "ratsols", str(p))
    assert code == 2
    assert "line" in err and "column" in err


def test_bad_construction_dsl(sys_file, capsys):
    code, _, err = run(capsys, "ratsols", "--construction", "sym(0,id)",
                       sys_file)
    assert code == 2


def test_bad_bounds(sys_file, capsys):
    code, _, _ = run(capsys, "ratsols", "--bounds", "1,2", sys_file)
    assert code == 2


def test_example_dihedral_matches_golden(capsys, tmp_path):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    assert main(["example", "dihedral", "--out", str(out1)]) == 0
    capsys.readouterr()
    assert main(["example", "dihedral", "--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_example_so3_matches_golden(capsys):
    code, out, _ = run(capsys, "example", "so3")
    assert code == 0
    report = json.loads(out)
    assert report["verified"] is True
    assert report["certificate"]["invariants"] == [["1", "0", "0", "1",
                                                    "0", "1"]]


def test_example_unknown_name(capsys):
    assert main(["example", "nope"]) == 2
