import io
import json
from pathlib import Path

import jsonschema
import pytest

from cyclobrauer import cli, groups
from cyclobrauer.cli import ResultCache, run

SCHEMA = json.loads((Path(__file__).parent.parent / "docs" / "report.schema.json").read_text())


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def invoke_json(*argv):
    code, out, err = invoke(*argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    return code, doc


def test_count_example():
    code, doc = invoke_json("diagrams", "count", "--k", "2", "--m", "2")
    assert code == 0
    assert doc["status"] == "computed" and doc["payload"] == {"count": 12}


def test_compose_worked_example():
    code, doc = invoke_json("diagrams", "compose", "t2-b3,t3-t4,b1-b6,b4-b5:1,t5-t6:1,t1-b2:2",
                            "t2-b1,b3-b6,b4-b5:1,t3-t6:1,t4-t5:1,t1-b2:2", "--m", "3")
    assert code == 0
    assert doc["payload"]["diagram"] == "t1-b1:2,t2-b2,t3-t4,t5-t6:1,b3-b6,b4-b5:1"


def test_algebra_verify_passes():
    code, out, _ = invoke("algebra", "verify", "--k", "3", "--m", "2")
    assert code == 0 and "status: pass" in out
    assert "FAIL" not in out


def test_rep_commutant_example():
    code, doc = invoke_json("rep", "commutant", "--group", "sp", "--n", "2", "--k", "2")
    assert code == 0
    p = doc["payload"]
    assert (p["commutant_dim"], p["image_dim"], p["equal"]) == (12, 12, True)


def test_failing_check_exits_1_and_names_failure():
    code, doc = invoke_json("rep", "deltas", "--group", "sp", "--n", "2", "--k", "2")
    assert code == 1 and doc["status"] == "fail"
    assert doc["payload"]["first_failure"]


@pytest.mark.parametrize("argv", [
    ["rep", "commutant", "--group", "sp", "--k", "2"],
    ["rep", "commutant", "--group", "so", "--p", "2", "--q", "2", "--k", "1"],
    ["diagrams", "count", "--k", "x"],
    ["diagrams", "count", "--k", "-1"],
    ["diagrams", "compose", "t1-b9", "t1-b1"],
    ["nonsense"],
    [],
])
def test_usage_errors_exit_2(argv):
    code, out, err = invoke(*argv)
    assert code == 2 and err and not out


def test_timing_goes_to_stderr_under_json():
    _, out, err = invoke("diagrams", "count", "--k", "1", "--json")
    assert "timing_ms" in err and "timing_ms" not in out


def test_json_stable_cold_and_warm(tmp_path):
    argv = ["rep", "phi-rank", "--group", "so", "--p", "3", "--q", "2", "--k", "2",
            "--json", "--cache-dir", str(tmp_path)]
    _, cold, _ = invoke(*argv)
    assert list(tmp_path.iterdir())
    _, warm, _ = invoke(*argv)
    _, nocache, _ = invoke(*argv[:-2])
    assert cold == warm == nocache


def test_cache_env_variable(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path))
    invoke("rep", "deltas", "--group", "so", "--p", "3", "--q", "2", "--json")
    assert len(list(tmp_path.glob("*.json"))) == 1


def test_corrupt_cache_is_a_miss(tmp_path):
    argv = ["rep", "phi-rank", "--group", "sp", "--n", "1", "--k", "2",
            "--json", "--cache-dir", str(tmp_path)]
    _, first, _ = invoke(*argv)
    (path,) = tmp_path.glob("*.json")
    doc = json.loads(path.read_text())
    doc["payload"][1]["rank"] = 999
    path.write_text(json.dumps(doc))
    _, again, _ = invoke(*argv)
    assert again == first
    path.write_text("{not json")
    _, third, _ = invoke(*argv)
    assert third == first


def test_result_cache_round_trip(tmp_path):
    cache = ResultCache(tmp_path)
    key = {"verb": "x", "k": 1}
    assert cache.get(key) is None
    val, hit = cache.fetch(key, lambda: {"a": 1})
    assert (val, hit) == ({"a": 1}, False)
    assert cache.fetch(key, lambda: {"a": 2}) == ({"a": 1}, True)
    assert ResultCache(None).get(key) is None


def test_accept_small_validates_against_schema():
    code, doc = invoke_json("accept", "small")
    rows = doc["payload"]["rows"]
    assert [r["id"] for r in rows] == list(range(1, 11))
    assert [r["id"] for r in rows if r["status"] != "pass"] == [3]
    # only the symplectic entries of row 3 fail, on the theta-theta-e sign
    bad = [c for c in rows[2]["checks"] if c["status"] == "fail"]
    assert [c["name"] for c in bad] == ["deltas Sp(%d)" % n for n in range(1, 5)]
    for c in bad:
        assert c["verify_phi_failing_relations"] == ["theta_pair_e", "rel4", "homomorphism_pairs"]
    assert code == 1


def test_accept_small_with_broken_xi_fails(monkeypatch):
    real = groups._sp_data

    def broken(n):
        form, xi, lie, v1, change, weight, comps = real(n)
        return form, xi.scale(-1), lie, v1, change, weight, comps

    monkeypatch.setattr(groups, "_sp_data", broken)
    code, doc = invoke_json("accept", "--profile", "small")
    assert code == 1
    assert "InvariantViolation" in doc["payload"]["first_failure"]


def test_human_output_lists_rows():
    code, out, _ = invoke("rep", "decompose", "--group", "sp", "--n", "2", "--k", "2")
    assert code == 0 and "status: pass" in out
