import csv
import json

import jsonschema
import pytest

from cubicdiv.cli import (
    EXIT_BOUND,
    EXIT_OK,
    EXIT_PARAMS,
    REPORT_COLUMNS,
    RunConfig,
    load_schema,
    main,
)


def run(tmp_path, name, *argv):
    out = tmp_path / name
    code = main([*argv, "--out", str(out)])
    return code, out


def load(path):
    return json.loads(path.read_text())


def validate(doc, schema):
    jsonschema.validate(doc, load_schema(schema))


@pytest.fixture(scope="module")
def pipeline(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("cli")
    code, search = run(tmp, "search.json", "search", "--a-tilde", "1", "-n", "5", "-s", "1", "-d", "-7", "--q-bound", "10000")
    assert code == EXIT_OK
    code, sol = run(tmp, "solve.json", "solve", str(search))
    assert code == EXIT_OK
    a = load(sol)["a"]
    code, inst = run(tmp, "construct.json", "construct", "-d", "-7", "-n", "5", "-s", "1", "-a", a)
    assert code == EXIT_OK
    code, cert = run(tmp, "verify.json", "verify", "-d", "-7", "-n", "3", "-s", "1", "-a", "1")
    assert code == EXIT_OK
    return {"dir": tmp, "search": search, "solve": sol, "construct": inst, "verify": cert}


def test_missing_and_bad_parameters(tmp_path, capsys):
    assert main(["construct", "-d", "-7", "-n", "3", "-s", "1"]) == EXIT_PARAMS
    assert main(["construct", "-d", "-5", "-n", "3", "-s", "1", "-a", "1"]) == EXIT_PARAMS
    assert main(["verify", "-d", "-7", "-n", "3", "-s", "1", "-a", "2"]) == EXIT_PARAMS
    assert main(["frobnicate"]) == EXIT_PARAMS
    assert main(["solve", str(tmp_path / "nope.json")]) == EXIT_PARAMS
    assert main(["verify", "--config", str(tmp_path / "nope.json")]) == EXIT_PARAMS


def test_search_bound_exhausted(tmp_path):
    code, out = run(tmp_path, "s.json", "search", "--a-tilde", "1", "-n", "5", "-s", "1", "-d", "-7", "--q-bound", "500")
    assert code == EXIT_BOUND
    doc = load(out)
    validate(doc, "prime-pairs")
    assert doc["missing"]


def test_outputs_match_schemas(pipeline):
    validate(load(pipeline["search"]), "prime-pairs")
    validate(load(pipeline["solve"]), "congruence-solution")
    validate(load(pipeline["construct"]), "instance")
    validate(load(pipeline["verify"]), "divisibility-certificate")
    for key in ("search", "solve", "construct", "verify"):
        validate(load(pipeline[key])["config"], "run-config")


def test_pipeline_contents(pipeline):
    search = load(pipeline["search"])
    assert search["reverification"]["ok"]
    assert len(search["certificates"]) == 29
    sol = load(pipeline["solve"])
    assert sol["a"] == "6116051685"
    assert sol["certificate_file_hash"] == search["config_hash"]
    inst = load(pipeline["construct"])
    assert inst["branch"] == "3∤d"
    assert inst["nth_power_witness"]["n"] == 5
    assert inst["nth_power_witness"]["checks"]
    assert inst["beta"].get("status") == "unavailable"
    cert = load(pipeline["verify"])
    assert cert["verdict"] == "certified" and cert["claim"] == "3 | h(K)"


def test_construct_branch_3_divides_d(tmp_path):
    code, out = run(tmp_path, "c.json", "construct", "-d", "-3", "-n", "3", "-s", "1", "-a", "1")
    assert code == EXIT_OK
    doc = load(out)
    validate(doc, "instance")
    assert doc["branch"] == "3|d"


def test_verify_trivial_n(tmp_path):
    code, out = run(tmp_path, "v.json", "verify", "-d", "-7", "-n", "1", "-s", "1", "-a", "1")
    assert code == EXIT_OK
    doc = load(out)
    validate(doc, "divisibility-certificate")
    assert doc["method"] == "vacuous"


def test_report_tsv(pipeline, tmp_path):
    names = [str(pipeline[k]) for k in ("search", "solve", "construct", "verify")]
    out = tmp_path / "report.tsv"
    assert main(["report", *names, "--out", str(out)]) == EXIT_OK
    rows = list(csv.reader(out.read_text().splitlines(), delimiter="\t"))
    assert rows[0] == REPORT_COLUMNS
    assert len(rows) == 1 + 29 + 3
    assert all(len(r) == len(REPORT_COLUMNS) for r in rows)
    kinds = [r[1] for r in rows[1:]]
    assert kinds.count("prime-pairs") == 29


def test_config_replay_is_byte_identical(pipeline, tmp_path):
    for key in ("search", "construct", "verify"):
        first = pipeline[key].read_bytes()
        cfg = tmp_path / f"{key}.cfg.json"
        cfg.write_text(json.dumps(json.loads(first)["config"]))
        command = json.loads(first)["config"]["command"]
        code, again = run(tmp_path, f"{key}.again.json", command, "--config", str(cfg))
        assert code == EXIT_OK
        assert again.read_bytes() == first


def test_config_command_mismatch(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps(RunConfig("verify", d=-7, n=3, s=1, a=1).to_json()))
    assert main(["construct", "--config", str(cfg)]) == EXIT_PARAMS


def test_run_config_round_trip():
    cfg = RunConfig("search", d=-7, n=5, s=1, a_tilde=1, q_bound=10**6, workers=4)
    again = RunConfig.from_json(json.loads(json.dumps(cfg.to_json())))
    assert again == cfg
    assert again.digest() == cfg.digest()
    # the worker count is excluded from the hash
    assert RunConfig("search", d=-7, n=5, s=1, a_tilde=1, q_bound=10**6, workers=1).digest() == cfg.digest()
    assert RunConfig("search", d=-7, n=5, s=1, a_tilde=1, q_bound=10**5).digest() != cfg.digest()


def test_selftest(capsys):
    assert main(["selftest"]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc["ok"]
