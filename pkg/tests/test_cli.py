import csv
import io
import json
import os

import numpy as np
import pytest

from jacobi_scatter import cli, models
from jacobi_scatter.lattice import CoefficientProfile, free_profile, save_profile


@pytest.fixture
def profiles(tmp_path):
    paths = {}
    items = {
        "free": free_profile(2),
        "single": models.schrodinger_profile({0: [[2.0]]}),
        "two": models.two_defect_profile(),
        "diag_1pi": models.a_defect_profile(np.diag([1 + 1j, 1]), metadata={"expect_unequal_det": True}),
        "non_herm": CoefficientProfile(2, models.FREE_TAIL, b={0: [[1.0, 2.0], [0.0, 1.0]]}),
    }
    for name, p in items.items():
        paths[name] = str(tmp_path / f"{name}.json")
        save_profile(p, paths[name])
    return paths


def run(capsys, *argv):
    code = cli.run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys, profiles):
    code, out, _ = run(capsys, "validate", "--profile", profiles["free"])
    assert code == 0 and "Jacobi-like" in out
    code, out, _ = run(capsys, "validate", "--profile", profiles["two"])
    assert code == 0 and "Schrödinger-like" in out
    code, out, _ = run(capsys, "validate", "--profile", profiles["non_herm"])
    assert code == 1 and "(a) FAIL" in out


def test_input_errors_exit_2(capsys, tmp_path, profiles):
    bad = tmp_path / "bad.json"
    bad.write_text("[1, 2")
    assert run(capsys, "validate", "--profile", str(bad))[0] == 2
    assert run(capsys, "scatter", "--profile", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "scatter")[0] == 2
    assert run(capsys, "factorize", "--profile", profiles["two"])[0] == 2
    assert run(capsys, "factorize", "--profile", profiles["two"], "--cuts", "2,1")[0] == 2
    assert run(capsys, "factorize", "--profile", profiles["two"], "--cuts", "a")[0] == 2
    assert run(capsys, "closed-form", "--profile", profiles["two"])[0] == 2
    assert run(capsys, "scatter", "--profile", profiles["two"], "--z-samples", "0")[0] == 2
    with pytest.raises(SystemExit) as exc:
        cli.run(["nonsense"])
    assert exc.value.code == 2


def read_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_scatter_free_rows_are_identity(capsys, profiles):
    code, out, _ = run(capsys, "scatter", "--profile", profiles["free"], "--z-samples", "8")
    assert code == 0
    rows = read_csv(out)
    assert len(rows) == 8
    for r in rows:
        assert float(r["T_l_00_re"]) == pytest.approx(1, abs=1e-15)
        assert float(r["T_l_01_re"]) == 0 and float(r["L_00_re"]) == pytest.approx(0, abs=1e-15)
        assert float(r["unitarity_residual"]) < 1e-15
        assert r["flag"] == "ok"


def test_scatter_header_layout(capsys, profiles):
    _, out, _ = run(capsys, "scatter", "--profile", profiles["two"], "--z-samples", "2")
    header = out.splitlines()[0].split(",")
    assert header[:4] == ["z_re", "z_im", "lambda_re", "lambda_im"]
    assert header[4:8] == ["T_l_00_re", "T_l_00_im", "T_l_01_re", "T_l_01_im"]
    assert header[-2:] == ["unitarity_residual", "flag"]
    assert len(header) == 4 + 4 * 8 + 2


def test_scatter_single_defect_values(capsys, profiles):
    _, out, _ = run(capsys, "scatter", "--profile", profiles["single"], "--z-samples", "12")
    for r in read_csv(out):
        z = complex(float(r["z_re"]), float(r["z_im"]))
        t = complex(float(r["T_l_00_re"]), float(r["T_l_00_im"]))
        assert 1 / t == pytest.approx(1 - 2 / (z - 1 / z), abs=1e-12)


def test_scatter_json_round_trips(capsys, profiles, tmp_path):
    out_path = tmp_path / "s.json"
    code, _, _ = run(capsys, "scatter", "--profile", profiles["two"], "--z-samples", "6",
                     "--format", "json", "--out", str(out_path))
    assert code == 0
    doc = json.loads(out_path.read_text())
    row = doc["rows"][0]
    z = complex(*row["z"])
    ref = models.two_defect_closed_form(z)
    tl = np.array([[complex(*x) for x in r] for r in row["T_l"]])
    assert np.abs(tl - ref.T_l).max() < 1e-15 + 1e-12


def test_scatter_flags_failed_rows(capsys, tmp_path):
    p = models.a_defect_profile(np.diag([1.0, 0.0]))
    path = str(tmp_path / "singular_a.json")
    save_profile(p, path)
    code, out, _ = run(capsys, "scatter", "--profile", path, "--z-samples", "4")
    rows = read_csv(out)
    assert len(rows) == 4
    assert code == 1 and all(r["flag"].startswith("error") for r in rows)


def test_factorize(capsys, profiles):
    code, out, err = run(capsys, "factorize", "--profile", profiles["two"], "--cuts", "0", "--z-samples", "8")
    assert code == 0
    rows = read_csv(out)
    assert len(rows) == 16 and {r["fragment"] for r in rows} == {"1", "2"}
    assert max(float(r["lambda_product_residual"]) for r in rows) < 1e-9
    assert "PASS" in err
    code, _, _ = run(capsys, "factorize", "--profile", profiles["free"], "--cuts=-1,3", "--z-samples", "4")
    assert code == 0


def test_closed_form(capsys, profiles):
    code, out, _ = run(capsys, "closed-form", "--profile", profiles["single"], "--z-samples", "8")
    assert code == 0
    assert all(float(r["pipeline_residual"]) < 1e-12 for r in read_csv(out))


def test_verify(capsys, profiles):
    code, out, _ = run(capsys, "verify", "--profile", profiles["free"], "--z-samples", "4")
    assert code == 0
    code, out, _ = run(capsys, "verify", "--profile", profiles["diag_1pi"], "--z-samples", "4")
    assert code == 0
    line = next(l for l in out.splitlines() if l.startswith("det T_l = det T_r"))
    assert "expected inequality" in line
    code, out, _ = run(capsys, "verify", "--seed", "5", "--z-samples", "8", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]


def test_unflagged_unequal_det_fails_verify(capsys, tmp_path):
    p = models.a_defect_profile(np.diag([1 + 1j, 1]))
    path = str(tmp_path / "plain.json")
    save_profile(p, path)
    code, out, _ = run(capsys, "verify", "--profile", path, "--z-samples", "4")
    assert code == 0
    assert "det Lambda = 1" not in out


def test_seeded_output_is_byte_identical(capsys, tmp_path):
    outs = []
    for k in range(2):
        path = tmp_path / f"f{k}.csv"
        run(capsys, "factorize", "--seed", "9", "--cuts", "1,2", "--z-samples", "8", "--out", str(path))
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    assert os.path.getsize(tmp_path / "f0.csv") > 0
