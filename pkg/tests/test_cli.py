import json
import subprocess
import sys

from orbchar.cli import main


def run(capsys, *args):
    code = main(list(args))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_chi_text(capsys, models_dir):
    code, out, _ = run(capsys, "chi", str(models_dir / "circle.json"))
    assert code == 0 and "chi: 0" in out


def test_chi_json_with_function(capsys, models_dir):
    code, out, _ = run(capsys, "chi", str(models_dir / "interval-pair.json"),
                       "--function", str(models_dir / "interval-pair-f.json"), "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["integral"] == -1


def test_malformed_reports_position(capsys, models_dir):
    code, _, err = run(capsys, "chi", str(models_dir / "malformed.json"))
    assert code == 1
    assert "malformed.json:3:" in err


def test_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "chi", str(tmp_path / "nope.json"))
    assert code == 1 and err


def test_invariants_teardrop(capsys, models_dir):
    code, out, _ = run(capsys, "invariants", str(models_dir / "teardrop-z5.json"), "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["chi_un"] == "T[Z/5] + 1"
    assert data["chi_gamma"] == 6
    assert data["chi_es"] == "6/5" and data["chi_gamma_es"] == "6/5"


def test_invariants_gamma_flag(capsys, models_dir):
    code, out, _ = run(capsys, "invariants", str(models_dir / "s3-point.json"), "--gamma", "Z^2", "--format", "json")
    assert code == 0 and json.loads(out)["chi_gamma"] == 8


def test_invariants_gamma_file(capsys, models_dir, tmp_path):
    pres = tmp_path / "z2.json"
    pres.write_text(json.dumps({"generators": 1, "relators": [[1, 1]]}))
    code, out, _ = run(capsys, "invariants", str(models_dir / "s3-point.json"), "--gamma", str(pres), "--format", "json")
    assert code == 0 and json.loads(out)["chi_gamma"] == 2


def test_invariants_su2(capsys, models_dir):
    code, out, _ = run(capsys, "invariants", str(models_dir / "su2-point.json"), "--format", "json")
    assert code == 0 and json.loads(out)["chi_gamma"] == 1


def test_unsupported_isotropy_exit(capsys, models_dir):
    code, _, err = run(capsys, "invariants", str(models_dir / "su2-point.json"), "--gamma", "Z^2")
    assert code == 1 and "not supported" in err


def test_gb_point(capsys):
    code, out, _ = run(capsys, "gb", "point-in-r2", "--grid", "32", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["ok"] and abs(data["value"] - 1) < 0.02


def test_gb_unknown(capsys):
    code, _, _ = run(capsys, "gb", "klein-bottle")
    assert code in (1, 2)


def test_usage_error(capsys):
    code, _, err = run(capsys, "chi")
    assert code == 2 and "required" in err


def test_selftest_and_fault(capsys):
    code, out, _ = run(capsys, "selftest", "--seed", "1", "--trials", "10", "--format", "json")
    assert code == 0 and json.loads(out)["ok"]
    code, out, err = run(capsys, "selftest", "--trials", "10", "--inject-fault", "chi-sign", "--format", "json")
    data = json.loads(out)
    assert code == 1 and not data["ok"]
    assert "chi-multiplicative" in err


def test_output_is_byte_identical(models_dir):
    cmd = [sys.executable, "-m", "orbchar", "invariants", str(models_dir / "teardrop-z5.json"), "--format", "json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_selftest_deterministic(capsys):
    _, a, _ = run(capsys, "selftest", "--seed", "3", "--trials", "5", "--format", "json")
    _, b, _ = run(capsys, "selftest", "--seed", "3", "--trials", "5", "--format", "json")
    assert a == b
