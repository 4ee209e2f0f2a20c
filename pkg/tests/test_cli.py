import json
import subprocess
import sys

from virpoly.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip() else None)


def write(tmp_path, name, payload):
    p = tmp_path / name
    p.write_text(json.dumps(payload))
    return str(p)


def test_bracket_laurent(tmp_path, capsys):
    spec = write(tmp_path, "b.json", {"kind": "laurent", "a": {"2": "1"}, "b": {"3": "1"}})
    code, out = run_cli(capsys, "bracket", "--spec", spec)
    assert code == 0
    assert out["result"] == {"5": "1"}


def test_bracket_vir(tmp_path, capsys):
    spec = write(
        tmp_path,
        "b.json",
        {"kind": "vir", "a": {"e": {"-2": "1"}}, "b": {"e": {"2": "1"}}},
    )
    code, out = run_cli(capsys, "bracket", "--spec", spec)
    assert code == 0
    assert out["result"] == {"e": {"0": "4"}, "z": "-1/2"}


def test_act(tmp_path, capsys):
    spec = write(
        tmp_path,
        "a.json",
        {
            "character": {"factors": [{"lambda": "1", "n": 1, "p": ["2"]}]},
            "element": {"laurent": {"1": "1", "0": "-1"}},
            "vector": {"terms": [{"s": [1], "c": "1"}]},
        },
    )
    code, out = run_cli(capsys, "act", "--spec", spec)
    assert code == 0
    assert out["result"] == {"terms": [{"s": [0], "c": "-2"}, {"s": [1], "c": "1"}]}


def test_char_validate(tmp_path, capsys):
    spec = write(
        tmp_path,
        "c.json",
        {"character": {"factors": [{"lambda": "2", "n": 2, "p": ["0", "1"]}]}, "range": [-8, 8]},
    )
    code, out = run_cli(capsys, "char-validate", "--spec", spec)
    assert code == 0 and out["valid"] is True


def test_char_split(tmp_path, capsys):
    spec = write(
        tmp_path,
        "s.json",
        {
            "character": {
                "factors": [{"lambda": "1", "n": 1, "p": ["9"]}],
                "restriction": {"m": 0, "window": {"0": "4"}, "z": "7"},
            }
        },
    )
    code, out = run_cli(capsys, "char-split", "--spec", spec)
    assert code == 0
    assert out["mu_hat"]["window"] == {"0": "5"}
    assert out["closed_forms"]["hat_0"] == "5"


def test_char_decompose(tmp_path, capsys):
    spec = write(
        tmp_path,
        "d.json",
        {
            "character": {
                "factors": [
                    {"lambda": "1", "n": 1, "p": ["3"]},
                    {"lambda": "2", "n": 1, "p": ["5"]},
                ]
            }
        },
    )
    code, out = run_cli(capsys, "char-decompose", "--spec", spec)
    assert code == 0
    assert out["components"][0]["factors"][0]["p"] == ["-3"]
    assert out["components"][1]["factors"][0]["p"] == ["5"]


def test_reduce(tmp_path, capsys):
    spec = write(
        tmp_path,
        "r.json",
        {
            "character": {"factors": [{"lambda": "1", "n": 1, "p": ["2"]}]},
            "vector": {"terms": [{"s": [2], "c": "1"}]},
        },
    )
    code, out = run_cli(capsys, "reduce", "--spec", spec)
    assert code == 0
    assert out["generator_span"] is True
    assert len(out["steps"]) >= 1


def test_simplicity_linear_factor(tmp_path, capsys):
    spec = write(
        tmp_path,
        "s.json",
        {"factors": [{"lambda": "1", "n": 1, "p": ["1"]}], "tail": {"type": "trivial"}},
    )
    code, out = run_cli(capsys, "simplicity", "--spec", spec, "--kac-level", "20")
    assert code == 0 and out["simple"] is True


def test_simplicity_restricted(tmp_path, capsys):
    spec = write(
        tmp_path,
        "s.json",
        {
            "restricted": {
                "factors": [{"lambda": "1", "n": 1, "p": ["3"]}],
                "restriction": {"m": 0, "window": {"0": "2"}, "z": "5"},
            }
        },
    )
    code, out = run_cli(capsys, "simplicity", "--spec", spec)
    assert code == 0
    assert out["tail"]["kind"] == "verma"
    assert out["restricted"]["closed_forms"]["hat_0"] == "1"


def test_iso(tmp_path, capsys):
    a = {"factors": [{"lambda": "1", "n": 1, "p": ["1"]}, {"lambda": "2", "n": 2, "p": ["0", "1"]}]}
    b = {"factors": [{"lambda": "2", "n": 2, "p": ["0", "1"]}, {"lambda": "1", "n": 1, "p": ["1"]}]}
    spec = write(tmp_path, "i.json", {"a": a, "b": b})
    code, out = run_cli(capsys, "iso", "--spec", spec)
    assert code == 0 and out["isomorphic"] is True


def test_tensor_map_polynomial(tmp_path, capsys):
    spec = write(
        tmp_path,
        "t.json",
        {
            "kind": "polynomial",
            "factors": [
                {"lambda": "1", "n": 1, "p": ["1"]},
                {"lambda": "2", "n": 1, "p": ["1"]},
            ],
        },
    )
    code, out = run_cli(capsys, "tensor-map", "--spec", spec, "--depth", "2")
    assert code == 0 and out["passed"] is True


def test_verify_suite(capsys):
    code, out = run_cli(capsys, "verify", "--suite", "faulhaber")
    assert code == 0
    assert out["failed_total"] == 0
    assert out["suites"][0]["suite"] == "faulhaber"


def test_invalid_input_exit_code(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, _ = run_cli(capsys, "bracket", "--spec", str(p))
    assert code == 2
    code, _ = run_cli(capsys, "act", "--spec", str(tmp_path / "missing.json"))
    assert code == 2


def test_field_restriction(tmp_path, capsys):
    spec = write(
        tmp_path,
        "g.json",
        {"kind": "laurent", "a": {"0": {"re": "1", "im": "1"}}, "b": {"1": "1"}},
    )
    code, _ = run_cli(capsys, "bracket", "--spec", spec, "--field", "Q")
    assert code == 2
    code, out = run_cli(capsys, "bracket", "--spec", spec, "--field", "Qi")
    assert code == 0
    assert out["result"]["1"] == {"re": "1", "im": "1"}


def test_missing_spec_flag(capsys):
    code, _ = run_cli(capsys, "simplicity")
    assert code == 2


def test_determinism_subprocess():
    cmd = [
        sys.executable,
        "-m",
        "virpoly.cli",
        "verify",
        "--suite",
        "muhat-split",
        "--seed",
        "5",
    ]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
