import io
import json

import pytest

from centralizer_lab.cli import run


def call(*argv, env=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, _ = call(*argv, "--output", "json")
    return code, json.loads(out)


def test_linalg_json_envelope():
    code, doc = call_json("linalg", "--matrix", "cubic-A", "--snf")
    assert code == 0
    assert doc["schema_version"] == 1 and doc["command"] == "linalg" and doc["ok"]
    assert doc["result"]["charpoly"] == [-1, -4, 0, 1]
    assert doc["result"]["snf"]["diagonal"] == [1, 1, 1]


def test_big_integers_are_strings(tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps([[2, 1], [1, 1]]))
    code, doc = call_json("linalg", "--matrix", str(path), "--power", "60")
    assert code == 0
    entry = doc["result"]["power"]["matrix"]["entries"][0][0]
    assert isinstance(entry, str) and int(entry) > 2 ** 53


def test_text_output():
    code, out, _ = call("periodic", "--matrix", "cat", "--count", "3")
    assert code == 0 and "16" in out


def test_usage_errors_exit_one():
    assert call("periodic", "--matrix", "cat", "--count", "0")[0] == 1
    assert call("linalg")[0] == 1
    assert call("linalg", "--matrix", "/no/such/file.json")[0] == 1
    code, doc = call_json("sft", "--transition", "full2")
    assert code == 1 and doc["error"]["code"] == "usage"


def test_library_precondition_errors_exit_one():
    code, doc = call_json("sft", "--transition", "cycle2", "--gluing")
    assert code == 1 and not doc["ok"]
    code, _ = call_json("sft", "--transition", "full2", "--autos", "2")
    assert code == 1


def test_check_suite_exits_zero():
    code, doc = call_json("paper-check")
    assert code == 0 and doc["result"]["counts"]["fail"] == 0
    assert doc["result"]["counts"]["flag"] >= 1


def test_sft_actions():
    code, doc = call_json("sft", "--transition", "full2", "--criterion", "swap", "--max-period", "1")
    assert code == 0 and doc["result"]["verdict"]["kind"] == "NotOrbitPreserving"
    code, doc = call_json("sft", "--transition", "full2", "--push", "swap", "--measure", "bernoulli-half",
                          "--len", "3")
    assert code == 0 and doc["result"]["pushforward"]["preserved"]
    code, doc = call_json("sft", "--transition", "golden", "--periodic", "3")
    assert [o["word"] for o in doc["result"]["periodic"]] == ["0", "01", "001"]


def test_config_file_and_flag_precedence(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"output": "json", "tol": "1/1000", "limits": {"box": 1}}))
    code, out, _ = call("commutant", "--matrix", "cat", "--units", "--config", str(cfg))
    doc = json.loads(out)
    assert code == 0 and doc["result"]["units"]["box"] == 1
    code, out, _ = call("commutant", "--matrix", "cat", "--units", "--box", "2", "--config", str(cfg))
    assert json.loads(out)["result"]["units"]["box"] == 2
    code, out, _ = call("--output", "text", "fixtures", "--config", str(cfg))
    assert out.startswith("matrices:")


def test_bad_config(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text("{not json")
    assert call("fixtures", "--config", str(cfg))[0] == 1
    cfg.write_text(json.dumps({"workers": 0}))
    assert call("fixtures", "--config", str(cfg))[0] == 1


def test_workers_env(monkeypatch):
    monkeypatch.setenv("CENTRALIZER_LAB_WORKERS", "nope")
    assert call("fixtures")[0] == 1
    monkeypatch.setenv("CENTRALIZER_LAB_WORKERS", "2")
    assert call("fixtures")[0] == 0


@pytest.mark.parametrize("argv", [
    ("sft", "--transition", "full2", "--autos", "1"),
    ("commutant", "--matrix", "cubic-A", "--units", "--box", "2"),
])
def test_worker_count_does_not_change_output(argv):
    one = call(*argv, "--output", "json", "--workers", "1")[1]
    two = call(*argv, "--output", "json", "--workers", "2")[1]
    assert one == two
