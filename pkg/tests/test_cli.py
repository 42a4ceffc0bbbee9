import json
import subprocess
import sys

import pytest

from mukai_enriques import cli


@pytest.fixture
def run(capsys):
    def _run(*argv):
        code = cli.main(list(argv))
        return code, capsys.readouterr().out.strip()
    return _run


@pytest.fixture
def run_json(run):
    def _run(*argv):
        code, text = run(*argv)
        return code, json.loads(text)
    return _run


ZERO10 = "[0,0,0,0,0,0,0,0,0,0]"


def test_reduce_rank_two_empty(run_json):
    code, out = run_json("reduce", "--v", '{"r":2,"c1":[0,1,0,0,0,0,0,0,0,0],"s":0}')
    assert code == 0
    assert out["schema"] == 1 and out["status"] == "ok"
    assert out["certificate"]["steps"] == []
    assert out["verification"]["ok"] is True


def test_reduce_higher_rank(run_json):
    code, out = run_json("reduce", "--v", '{"r":8,"c1":[0,0,1,1,0,0,0,0,0,0],"s":2}')
    assert code == 0 and out["ranks"][-1] in (2, 4)


def test_reduce_errors(run_json):
    code, out = run_json("reduce", "--v", '{"r":3,"c1":[0,1,0,0,0,0,0,0,0,0],"s":1}')
    assert code == 1 and "odd rank" in out["error"]
    code, out = run_json("reduce", "--v", '{"r":4,"c1":[2,0,0,0,0,0,0,0,0,0],"s":0}')
    assert code == 1 and "primitive" in out["error"]
    code, out = run_json("reduce", "--v", '{"r":4}')
    assert code == 1


def test_kim(run_json):
    code, out = run_json("kim", "--v", '{"r":2,"c1":%s,"s":-8}' % ZERO10)
    assert code == 0
    assert out["D"] == [1, -2, 0, 0, 0, 0, 0, 0, 0, 0] and out["t"] == 0


def test_kim_exhaustion_exit_code(run_json):
    code, out = run_json("kim", "--budget-ab", "1", "--v", '{"r":2,"c1":[200,0,0,0,0,0,0,0,0,0],"s":-14}')
    assert code == 2 and out["status"] == "exhausted" and "budget" in out["report"]


def test_walls_count(run_json):
    code, out = run_json("walls", "--H", "[1,1,0,0,0,0,0,0,0,0]", "--type", "2,4")
    assert code == 0 and out["count"] == 1441 and len(out["witnesses"]) == 1441


def test_walls_bad_input(run_json):
    assert run_json("walls", "--H", "[1,0,0,0,0,0,0,0,0,0]", "--type", "2,4")[0] == 1
    assert run_json("walls", "--H", "[1,1]", "--type", "2,4")[0] == 1
    assert run_json("walls", "--H", "[1,1,0,0,0,0,0,0,0,0]", "--type", "2,-4")[0] == 1


def test_polarize(run_json):
    code, out = run_json("polarize", "--L1", "[1,2,0,0,0,0,0,0,0,0]", "--FA", "[0,1,0,0,0,0,0,0,0,0]",
                         "--type", "2,4")
    assert code == 0
    assert {"L0", "n", "H", "report"} <= set(out)
    code, out = run_json("polarize", "--L1", "[1,2,0,0,0,0,0,0,0,0]", "--FA", "[1,1,0,0,0,0,0,0,0,0]",
                         "--type", "2,4")
    assert code == 1 and "isotropic" in out["error"]


def test_pair_and_gram(run_json):
    code, out = run_json("pair", "--v", '{"r":2,"c1":[1,1,0,0,0,0,0,0,0,0],"s":2}')
    assert code == 0 and out["pairing"] == 6
    code, out = run_json("gram")
    assert code == 0 and out["det"] == -1 and len(out["gram"]) == 10


def test_vector_from_file(tmp_path, run_json):
    path = tmp_path / "v.json"
    path.write_text('{"r":2,"c1":%s,"s":-10}' % ZERO10, encoding="utf-8")
    code, out = run_json("kim", "--v", str(path))
    assert code == 0 and out["t"] == 1
    code, out = run_json("kim", "--v", str(tmp_path / "missing.json"))
    assert code == 1


def test_env_budget_override(monkeypatch, run_json):
    monkeypatch.setenv("MUKAI_BUDGET_AB", "1")
    code, out = run_json("kim", "--v", '{"r":2,"c1":[200,0,0,0,0,0,0,0,0,0],"s":-14}')
    assert code == 2
    monkeypatch.setenv("MUKAI_BUDGET_AB", "0")
    code, out = run_json("kim", "--v", '{"r":2,"c1":%s,"s":0}' % ZERO10)
    assert code == 1 and "positive" in out["error"]


def test_text_format(run):
    code, text = run("kim", "--format", "text", "--v", '{"r":2,"c1":%s,"s":-8}' % ZERO10)
    assert code == 0 and "t: 0" in text.splitlines()


def test_verify_subset(run_json):
    code, out = run_json("verify", "--scale", "0.01", "--seed", "3", "twist_isometry", "gcd_sweep")
    assert code == 0 and out["ok"] is True
    assert [p["name"] for p in out["properties"]] == ["twist_isometry", "gcd_sweep"]
    assert all(p["failed"] == 0 for p in out["properties"])


def test_verify_unknown_property(run_json):
    assert run_json("verify", "nonsense")[0] == 1


def test_deterministic_output(run):
    argv = ("verify", "--scale", "0.02", "--seed", "11", "reductions", "twist_isometry")
    assert run(*argv) == run(*argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "mukai_enriques", "gram"], capture_output=True,
                          text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["det"] == -1
