import io
import json

import pytest

from folcan.cli import run


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    status = run(argv, stdout=out, stderr=err)
    return status, out.getvalue(), err.getvalue()


@pytest.fixture
def model_file(tmp_path):
    doc = {
        "basis_labels": ["s", "e"],
        "pairing": [["0", "1"], ["1", "-2"]],
        "distinguished_classes": {"twice": ["2", "0"]},
        "resolution": {
            "exceptional_indices": [1],
            "strict_transforms": {"D": ["1", "0"]},
        },
    }
    path = tmp_path / "model.json"
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def numerics_file(tmp_path):
    doc = {
        "k1": "1",
        "k2": "0",
        "chi": 1,
        "basket": [{"kind": "TerminalCyclic", "n": 2}, {"kind": "TerminalCyclic", "n": 2}],
    }
    path = tmp_path / "numerics.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_intersect_named_weil_class(model_file):
    status, out, err = invoke(["intersect", "--model", model_file, "--left", "D", "--right", "D"])
    assert status == 0 and err == ""
    payload = json.loads(out)
    assert payload["value"] == "1/2"
    assert payload["pullback_left"] == ["1", "1/2"]


def test_intersect_vector_literals(model_file):
    status, out, _ = invoke(["intersect", "--model", model_file, "--left", "1,0", "--right", "0,1"])
    assert status == 0
    # pullbacks pair to zero with the exceptional curve
    assert json.loads(out)["value"] == "0"


def test_intersect_negative_vector_equals_form(model_file):
    # leading minus must not be read as a flag
    status, out, _ = invoke(["intersect", "--model", model_file, "--left=-1,0", "--right", "1,0"])
    assert status == 0
    assert json.loads(out)["left"] == ["-1", "0"]


def test_intersect_distinguished_name(model_file):
    status, out, _ = invoke(["intersect", "--model", model_file, "--left", "twice", "--right", "D"])
    assert status == 0
    assert json.loads(out)["value"] == "1"


def test_intersect_unknown_name(model_file):
    status, out, err = invoke(["intersect", "--model", model_file, "--left", "nope", "--right", "D"])
    assert status == 2 and out == ""
    error = json.loads(err)["error"]
    assert error["code"] == "invalid_input"
    assert "nope" in error["message"]


def test_intersect_missing_file(tmp_path):
    status, _, err = invoke(["intersect", "--model", str(tmp_path / "absent.json"), "--left", "D", "--right", "D"])
    assert status == 1
    assert json.loads(err)["error"]["code"] == "io_error"


def test_intersect_unparseable_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json")
    status, _, err = invoke(["intersect", "--model", str(path), "--left", "D", "--right", "D"])
    assert status == 1
    assert json.loads(err)["error"]["code"] == "json_parse_error"


def test_intersect_document_error(tmp_path):
    path = tmp_path / "shape.json"
    path.write_text(json.dumps({"basis_labels": ["a"]}))
    status, _, err = invoke(["intersect", "--model", str(path), "--left", "a", "--right", "a"])
    assert status == 1
    assert json.loads(err)["error"]["code"] == "document_error"


def test_intersect_validation_error(tmp_path):
    doc = {
        "basis_labels": ["e"],
        "pairing": [["1"]],
        "resolution": {"exceptional_indices": [0]},
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    status, _, err = invoke(["intersect", "--model", str(path), "--left", "e", "--right", "e"])
    assert status == 2
    assert json.loads(err)["error"]["code"] == "not_negative_definite"


def test_hilbert_table(numerics_file):
    status, out, _ = invoke(["hilbert", "--numerics", numerics_file, "--mmax", "4"])
    assert status == 0
    payload = json.loads(out)
    assert payload["integral"] is True
    assert payload["values"] == [[0, "1"], [1, "1"], [2, "3"], [3, "5"], [4, "9"]]
    assert payload["hilbert_function"]["correction"] == ["0", "-1/2"]


def test_hilbert_csv(numerics_file):
    status, out, _ = invoke(["--format", "csv", "hilbert", "--numerics", numerics_file, "--mmax", "2"])
    assert status == 0
    assert out == "m,P\n0,1\n1,1\n2,3\n"


def test_format_flag_after_subcommand(numerics_file, tmp_path):
    # both flag positions must produce identical output
    status, out, _ = invoke(["hilbert", "--numerics", numerics_file, "--mmax", "2", "--format", "csv"])
    assert status == 0
    assert out == "m,P\n0,1\n1,1\n2,3\n"

    out_path = tmp_path / "table.csv"
    status, out, _ = invoke(
        ["example", "ruled", "--k", "2", "--g", "2", "--q", "0", "--format", "csv", "--out", str(out_path)]
    )
    assert status == 0
    assert out == ""
    assert out_path.read_text().startswith("quantity,value\nkf2,")


def test_hilbert_zero_rows(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text(json.dumps({"k1": "2", "k2": "2", "chi": 7}))
    status, out, _ = invoke(["hilbert", "--numerics", str(path), "--mmax", "0"])
    assert status == 0
    assert json.loads(out)["values"] == [[0, "7"]]


def test_hilbert_non_integral_still_reports(tmp_path):
    path = tmp_path / "frac.json"
    path.write_text(json.dumps({"k1": "1", "k2": "0", "chi": 1, "basket": [{"kind": "TerminalCyclic", "n": 2}]}))
    status, out, _ = invoke(["hilbert", "--numerics", str(path), "--mmax", "1"])
    assert status == 0
    payload = json.loads(out)
    assert payload["integral"] is False
    assert payload["values"][1] == [1, "5/4"]
    assert "hilbert_function" not in payload


def test_enumerate_reference(tmp_path):
    argv = ["enumerate", "--k1", "1", "--k2", "0", "--s", "2", "--chi", "1", "--cap", "2", "--max-cusps", "1"]
    status, out, _ = invoke(argv)
    assert status == 0
    payload = json.loads(out)
    assert payload["count"] == 2
    corrections = [f["function"]["correction"] for f in payload["functions"]]
    assert corrections == [["-1", "-3/2"], ["0", "-1/2"]]
    assert all(len(f["witnesses"]) == 4 for f in payload["functions"])
    # value tables are part of the document
    assert payload["functions"][1]["values"]["0"] == "1"
    assert payload["functions"][1]["values"]["4"] == "9"


def test_enumerate_worker_count_bytes(tmp_path):
    base = ["enumerate", "--k1", "1", "--k2", "0", "--s", "2", "--chi", "0,1", "--cap", "3", "--max-cusps", "2"]
    reference = invoke(base + ["--workers", "1"])
    for workers in ("2", "4"):
        assert invoke(base + ["--workers", workers]) == reference


def test_enumerate_csv():
    argv = ["--format", "csv", "enumerate", "--k1", "2", "--k2", "2", "--s", "1", "--chi", "1", "--cap", "0"]
    status, out, _ = invoke(argv)
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "k1,k2,chi,period,correction,extrapolated,witness_count"
    assert lines[1] == "2,2,1,1,0,false,1"


def test_enumerate_rejects_bad_volume():
    status, _, err = invoke(["enumerate", "--k1", "0", "--k2", "0", "--s", "1", "--chi", "1", "--cap", "0"])
    assert status == 2
    assert json.loads(err)["error"]["code"] == "non_positive_volume"


def test_bounds_reference():
    status, out, _ = invoke(["bounds", "--k1", "8", "--k2", "8", "--s", "1"])
    assert status == 0
    payload = json.loads(out)
    assert payload == {
        "interval_empty": False,
        "kx2_lower_exclusive": "-192",
        "kx2_upper": "8",
    }


def test_bounds_with_kx2():
    status, out, _ = invoke(["bounds", "--k1", "8", "--k2", "8", "--s", "1", "--kx2", "8"])
    payload = json.loads(out)
    assert status == 0
    assert payload["D_squared"] == "200"
    assert payload["D_dot_KX"] == "40"
    assert payload["kx2_in_window"] is True


def test_bounds_variant_reported():
    status, out, _ = invoke(["bounds", "--k1", "1", "--k2", "0", "--s", "2"])
    payload = json.loads(out)
    assert payload["kx2_lower_exclusive"] == "-64"
    assert payload["kx2_lower_exclusive_variant"] == "-32"


def test_example_ruled():
    status, out, _ = invoke(["example", "ruled", "--k", "2", "--g", "2", "--q", "2"])
    assert status == 0
    payload = json.loads(out)
    assert payload["kf2"] == "8"
    assert payload["kf_dot_kx"] == "12"
    assert payload["fiber_genus"] == 2
    assert payload["aux_branch_dot_fiber"] == "6"
    assert "assumptions" in payload


def test_example_abelian():
    status, out, _ = invoke(["example", "abelian", "--d", "2", "--n", "1"])
    payload = json.loads(out)
    assert payload["kf2"] == "16"
    assert payload["fiber_genus"] == 5


def test_example_sweep_csv():
    status, out, _ = invoke(["--format", "csv", "example", "ruled", "--k", "2", "--g", "2", "--q", "0", "--sweep", "q=0..3"])
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == "q,kf2,kf_dot_kx,fiber_genus"
    assert len(lines) == 5
    # kf2 column constant, kf_dot_kx rising with q
    assert [line.split(",")[1] for line in lines[1:]] == ["8"] * 4
    assert [line.split(",")[2] for line in lines[1:]] == ["4", "8", "12", "16"]


def test_example_sweep_bad_param():
    status, _, err = invoke(["example", "abelian", "--d", "2", "--n", "0", "--sweep", "q=0..3"])
    assert status == 2
    assert json.loads(err)["error"]["code"] == "invalid_input"


def test_example_invalid_input():
    status, _, err = invoke(["example", "ruled", "--k", "3", "--g", "2", "--q", "0"])
    assert status == 2
    assert json.loads(err)["error"]["code"] == "invalid_input"


def test_argparse_errors_exit_two(capsys):
    status, _, _ = invoke(["enumerate", "--k1", "x", "--k2", "0", "--s", "1", "--chi", "1", "--cap", "0"])
    assert status == 2
    status, _, _ = invoke(["--format", "xml", "bounds", "--k1", "1", "--k2", "0", "--s", "1"])
    assert status == 2
    status, _, _ = invoke([])
    assert status == 2


def test_out_flag(tmp_path):
    target = tmp_path / "report.json"
    status, out, _ = invoke(["--out", str(target), "bounds", "--k1", "8", "--k2", "8", "--s", "1"])
    assert status == 0 and out == ""
    assert json.loads(target.read_text())["kx2_upper"] == "8"


def test_byte_determinism(model_file, numerics_file):
    for argv in (
        ["intersect", "--model", model_file, "--left", "D", "--right", "D"],
        ["hilbert", "--numerics", numerics_file, "--mmax", "6"],
        ["--format", "csv", "hilbert", "--numerics", numerics_file, "--mmax", "6"],
        ["bounds", "--k1", "8", "--k2", "8", "--s", "1"],
        ["example", "abelian", "--d", "3", "--n", "2"],
    ):
        assert invoke(argv) == invoke(argv)
