import csv
import io
import json
import re

import pytest

from bakerabc.cli import run
from bakerabc.report import VerificationReport


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_epsilon_three_quarters():
    code, out, _ = call("epsilon", "--eps", "3/4")
    assert code == 0
    assert "omega_eps = 14" in out and "log N_eps = 37.1101" in out


def test_search_goor_json():
    code, out, _ = call("search", "goor", "--ymax", "2", "--nmax", "13", "--format", "json")
    assert code == 0
    (rep,) = json.loads(out)
    assert sorted(w["value"] for w in rep["data"]["witnesses"]) == [31, 8191]


def test_abc_check_not_coprime():
    code, _, err = call("abc", "check", "2", "4", "6")
    assert code == 2 and "not pairwise coprime" in err


def test_abc_check_violation_exit_1():
    assert call("abc", "check", "1", "1", "2")[0] == 1
    assert call("abc", "check", "1", "8", "9")[0] == 0


@pytest.mark.parametrize("argv", [("bogus",), ("epsilon", "--eps", "0.5"), ("verify",),
                                  ("search", "nl", "--xmax", "-3"), ("epsilon",),
                                  ("abc", "scan", "--cmax", "10", "--bad-flag")])
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == 2 and err


def test_global_flags_before_subcommand():
    code, out, _ = call("--format", "json", "search", "nl", "--xmax", "20", "--nmax", "6", "--qmax", "4")
    assert code == 0 and json.loads(out)[0]["check_name"] == "search nl"


def test_out_file(tmp_path):
    p = tmp_path / "r.json"
    code, out, _ = call("search", "fc", "--powmax", "1000", "--format", "json", "--out", str(p))
    assert code == 0 and out == ""
    assert json.loads(p.read_text())[0]["status"] == "PASS"


def test_json_schema_and_round_trip():
    code, out, _ = call("verify", "goormaghtigh-arith", "--eps", "3/4", "--format", "json")
    assert code == 0
    for d in json.loads(out):
        assert {"check_name", "status", "assertions", "provenance"} <= set(d)
        rep = VerificationReport.from_dict(d)
        again = json.loads(json.dumps(rep.to_dict()))
        assert again["assertions"] == d["assertions"] and again["status"] == d["status"]


def _from_text(out):
    statuses, witnesses = [], set()
    for line in out.splitlines():
        m = re.match(r"\[(\w+)\] (.*?)  \(", line)
        if m:
            statuses.append((m.group(2), m.group(1)))
        m = re.search(r"witness=([-\d ]+)$", line)
        if m:
            witnesses.add(tuple(int(x) for x in m.group(1).split()))
    return statuses, witnesses


def _from_csv(out):
    rows = list(csv.DictReader(io.StringIO(out)))
    statuses = [(r["check_name"], r["status"]) for r in rows if r["label"] == ""]
    witnesses = {tuple(int(x) for x in r["witness"].split()) for r in rows if r["witness"]}
    return statuses, witnesses


def _from_json(out):
    reps = json.loads(out)
    statuses = [(r["check_name"], r["status"]) for r in reps]
    witnesses = {tuple(a["witness"]) for r in reps for a in r["assertions"] if a["witness"] is not None}
    return statuses, witnesses


@pytest.mark.parametrize("argv", [("verify", "goormaghtigh-arith", "--verbose"), ("residual", "fc", "--verbose"),
                                  ("search", "goor", "--ymax", "10", "--nmax", "14", "--verbose")])
def test_renderings_agree(argv):
    text = call(*argv)[1]
    c = call(*argv, "--format", "csv")[1]
    j = call(*argv, "--format", "json")[1]
    assert _from_text(text) == _from_csv(c) == _from_json(j)


def test_residual_exit_code_reflects_fail():
    code, out, _ = call("residual", "fc")
    assert code == 1
    assert "(4,5,7)" in out


def test_abc_ingest_records(tmp_path):
    src = tmp_path / "in.txt"
    src.write_text("1 8 9\n1 80 81\n")
    dst = tmp_path / "out.csv"
    code, _, _ = call("abc", "ingest", str(src), "--triples-out", str(dst))
    assert code == 0
    assert dst.read_text().splitlines()[0] == "a,b,c,N,omega,quality,baker_margin"
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2 4\n")
    code, _, err = call("abc", "ingest", str(bad))
    assert code == 2 and "line 1" in err


def test_seed_flag_is_accepted():
    assert call("verify", "goormaghtigh-arith", "--seed", "7")[0] == 0
