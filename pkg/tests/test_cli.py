import json
import subprocess
import sys

import pytest

from superverma.cli import main, parse_weight
from superverma.errors import SpecError


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


GL11 = ("--algebra", "gl", "--m", "1", "--n", "1")


def test_describe_gl11(capsys):
    code, out = run_json(capsys, "describe", *GL11)
    assert code == 0
    (root,) = out["positive_roots"]
    assert root["parity"] == "odd" and root["isotropic"]


def test_describe_osp12(capsys):
    code, out = run_json(capsys, "describe", "--algebra", "osp", "--m", "1", "--n", "1")
    assert code == 0
    roots = out["positive_roots"]
    assert len(roots) == 2
    assert [r["isotropic"] for r in roots if r["parity"] == "odd"] == [False]


def test_describe_table(capsys):
    code, out, _ = run(capsys, "describe", *GL11, "--format", "table")
    assert code == 0 and "gl(1|1)" in out and "rho" in out


def test_bad_family_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["describe", "--algebra", "sl", "--m", "1", "--n", "1"])
    assert exc.value.code == 2
    code, _, err = run(capsys, "describe", "--algebra", "gl", "--m", "0", "--n", "1")
    assert code == 2 and "error" in err


def test_det_gl11(capsys):
    code, out = run_json(capsys, "det", *GL11, "--lambda", "1,0", "--eta", "1,-1")
    assert code == 0
    assert out["formula"]["value"] == "1"
    assert len(out["formula"]["factors"]) == 1
    code, out = run_json(capsys, "det", *GL11, "--lambda", "1,0", "--eta", "0,0")
    assert out["formula"]["factors"] == [] and out["formula"]["value"] == "1"


def test_det_with_brute_check(capsys):
    code, out = run_json(capsys, "det", *GL11, "--lambda", "2,1", "--mu", "1,2", "--brute-check")
    assert code == 0 and out["brute"] == "3" and out["ratio"] == "1"


def test_det_non_dominant_exits_3(capsys):
    code, _, _ = run(capsys, "det", "--algebra", "gl", "--m", "2", "--n", "1", "--pi-l", "0",
                     "--lambda", "0,1,0", "--eta", "1,0,-1")
    assert code == 3


def test_gram(capsys):
    code, out = run_json(capsys, "gram", *GL11, "--lambda", "2,1", "--eta", "0,0")
    assert out["block"]["matrix"] == [["1"]] and out["det"] == "1"
    code, out = run_json(capsys, "gram", *GL11, "--lambda", "2,1", "--eta", "1,-1")
    assert code == 0 and out["det"] == "3"
    code, out = run_json(capsys, "gram", *GL11, "--lambda", "2,1", "--eta", "2,-2")
    assert out["det"] == "1" and out["note"] == "empty block"


def test_gram_depth_exceeded_exits_4(capsys):
    code, _, _ = run(capsys, "gram", *GL11, "--lambda", "2,1", "--eta", "5,-5", "--depth", "2")
    assert code == 4


def test_verify(capsys):
    code, out = run_json(capsys, "verify", *GL11, "--eta", "1,-1", "--samples", "3")
    assert code == 0 and out["pass"] and out["constant_c"] is not None
    code, out = run_json(capsys, "verify", *GL11, "--eta", "0,0")
    assert code == 0 and out["constant_c"] == "1"


def test_verify_negative_control_exits_5(capsys):
    code, out = run_json(capsys, "verify", *GL11, "--eta", "1,-1", "--corrupt-exponent")
    assert code == 5 and not out["pass"]


def test_irreducible(capsys):
    code, out = run_json(capsys, "irreducible", *GL11, "--lambda", "1,-1", "--brute-check")
    assert code == 0
    assert out["verdict"] == "reducible" and out["psi"]["iso"]
    assert out["brute_check"]["agrees"]
    code, out = run_json(capsys, "irreducible", *GL11, "--lambda", "1,0")
    assert out["verdict"] == "irreducible"
    code, out = run_json(capsys, "irreducible", *GL11, "--lambda", "1/3,1/5")
    assert out["M_plus_plus"] == "true"


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"algebra": {"family": "gl", "m": 1, "n": 1},
                               "lambda": [2, 1], "eta": "1,-1"}))
    code, out = run_json(capsys, "gram", "--config", str(cfg))
    assert code == 0 and out["det"] == "3"
    # a flag beats the file
    code, out = run_json(capsys, "gram", "--config", str(cfg), "--lambda", "5,1")
    assert out["det"] == "6"


def test_bad_config_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.json"
    cfg.write_text("{not json")
    code, _, _ = run(capsys, "describe", "--config", str(cfg))
    assert code == 2


def test_json_output_is_deterministic():
    cmd = [sys.executable, "-m", "superverma", "verify", *GL11, "--eta", "1,-1", "--seed", "4"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["seed"] == 4


def test_parse_weight():
    assert parse_weight("1,-1/2") == (1, -0.5)
    assert parse_weight("[1, \"2/3\"]")[1] * 3 == 2
    with pytest.raises(SpecError):
        parse_weight("1,x")
