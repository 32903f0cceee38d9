import json

import pytest

from echkit.cli import main

from .test_auditor import CHAIN_CAT, ledger, two_step


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


@pytest.fixture
def files(tmp_path):
    s1, s2 = two_step()
    paths = {
        "catalog": tmp_path / "cat.json",
        "record": tmp_path / "rec.json",
        "chain": tmp_path / "chain.jsonl",
        "ledger": tmp_path / "ledger.json",
        "bad": tmp_path / "bad.json",
    }
    paths["catalog"].write_text(json.dumps(CHAIN_CAT.to_json()))
    paths["record"].write_text(json.dumps(s2.to_json()))
    paths["chain"].write_text(json.dumps(s1.to_json()) + "\n" + json.dumps(s2.to_json()) + "\n")
    paths["ledger"].write_text(json.dumps(ledger().to_json()))
    paths["bad"].write_text('{"orbits": [\n  {"id": "a",,}]}')
    return {k: str(v) for k, v in paths.items()}


def test_partition(capsys):
    assert run(capsys, "partition", "--theta", "1/3+e", "--m", "6") == (0, ("[3,3]\n", ""))
    code, out = run(capsys, "partition", "--theta", "1/3+e", "--m", "6", "--sign", "-")
    assert json.loads(out.out) == [5, 1]


def test_cz_and_tsv(capsys):
    assert run(capsys, "cz", "--theta", "5/12+e", "--m", "1")[1].out == "1\n"
    code, out = run(capsys, "partition", "--theta", "2/5-e", "--m", "4", "--format", "tsv")
    assert code == 0 and out.out.splitlines()[0] == "index\tvalue"


def test_score_and_j0(capsys, files):
    code, out = run(capsys, "score", "--catalog", files["catalog"], "--record", files["record"], "--M", "3")
    rep = json.loads(out.out)
    assert code == 0 and "warnings" in rep
    code, out = run(capsys, "j0", "--catalog", files["catalog"], "--record", files["record"])
    d = json.loads(out.out)
    assert code == 0 and d["J0"] == d["J0_topological"]


def test_audit_passes_and_writes_output(capsys, files, tmp_path):
    dest = tmp_path / "report.json"
    code, out = run(capsys, "audit", "--catalog", files["catalog"], "--chain", files["chain"], "--ledger", files["ledger"], "-o", str(dest))
    assert code == 0 and out.out == ""
    assert json.loads(dest.read_text())["checks"]["telescoping"]


def test_audit_bad_order_is_input_error(capsys, files, tmp_path):
    lines = open(files["chain"]).read().splitlines()
    rev = tmp_path / "rev.jsonl"
    rev.write_text("\n".join(reversed(lines)))
    code, out = run(capsys, "audit", "--catalog", files["catalog"], "--chain", str(rev), "--ledger", files["ledger"])
    assert code == 2 and out.err


def test_malformed_json_reports_position(capsys, files):
    code, out = run(capsys, "score", "--catalog", files["bad"], "--record", files["record"])
    assert code == 2 and "line 2" in out.err


def test_bad_arguments(capsys, files):
    assert run(capsys, "partition", "--theta", "x/y", "--m", "3")[0] == 2
    assert run(capsys, "constants", "eps-m", "--catalog", files["catalog"])[0] == 2
    assert run(capsys, "score", "--catalog", files["catalog"], "--record", "/nonexistent")[0] == 2


def test_constants(capsys, files):
    code, out = run(capsys, "constants", "solve-q")
    d = json.loads(out.out)
    assert d["q"] == "1247030736459523296205424793"
    assert all(d["inequalities_at_q"]) and not all(d["inequalities_at_q_minus_1"])
    assert run(capsys, "constants", "choose-m", "--catalog", files["catalog"])[1].out == "21\n"
    code, out = run(capsys, "constants", "eps-m", "--catalog", files["catalog"], "--M", "1", "--cap", "3")
    assert json.loads(out.out) == "1/10"


def test_fredholm(capsys, tmp_path):
    p = tmp_path / "p.json"
    p.write_text(json.dumps({"genus": 0, "punctures": [{"sign": "+", "winding": 0, "rotation": "1/3+e"}, {"sign": "-", "winding": 1, "rotation": "1/3+e"}]}))
    code, out = run(capsys, "fredholm", "--punctures", str(p))
    d = json.loads(out.out)
    assert code == 0 and set(d) >= {"ind_delta", "wind_pi", "inequality_holds"}


def test_verify_deterministic(capsys):
    a = run(capsys, "verify", "--suite", "partition-facts", "--max-m", "12", "--max-den", "12")
    b = run(capsys, "verify", "--suite", "lemma-2.10", "--max-m", "12", "--max-den", "12")
    assert a[0] == b[0] == 0 and a[1].out == b[1].out
