import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from mixedmult.cli import FIELDS, input_hash, jsonable, run_command
from mixedmult.session import COUNTEREXAMPLE, format_session, parse_session

SESSIONS = Path(__file__).resolve().parent.parent / "sessions"


def run(*argv):
    out = io.StringIO()
    code = run_command(list(argv), out)
    records = [json.loads(line) for line in out.getvalue().splitlines() if line.strip()]
    return code, records, out.getvalue()


def integers_are_strings(v):
    if isinstance(v, dict):
        return all(integers_are_strings(x) for x in v.values())
    if isinstance(v, list):
        return all(integers_are_strings(x) for x in v)
    return not isinstance(v, (int, float)) or isinstance(v, bool)


def check_record(rec):
    assert list(rec)[:len(FIELDS)] == list(FIELDS)
    assert rec["elapsed_ms"] is None
    assert integers_are_strings(rec)


def test_counterexample_command():
    code, [rec], _ = run("theorem", "r35")
    check_record(rec)
    assert code == 0
    assert rec["mixed"] == "0" and rec["symbol"] == "1" and rec["equal"] is False
    assert rec["verdict"] == "counterexample reproduced"
    assert rec["input_hash"] == input_hash(COUNTEREXAMPLE)


def test_session_file_matches_builtin():
    text = (SESSIONS / "r35.session").read_text()
    assert format_session(parse_session(text)) == format_session(parse_session(COUNTEREXAMPLE))


def test_mixed_on_maximal_ideal():
    code, [rec], _ = run("mixed", "--session", str(SESSIONS / "mm.session"), "--k0", "0", "--k", "1")
    check_record(rec)
    assert code == 0 and rec["value"] == "1" and rec["stabilized"] is True
    assert rec["input_hash"] == input_hash(format_session(parse_session((SESSIONS / "mm.session").read_text())))


def test_mixed_uses_session_types():
    code, recs, _ = run("mixed", "--session", str(SESSIONS / "mm.session"))
    assert code == 0 and [r["value"] for r in recs] == ["1", "1"]


def test_joint_reduction_failure_has_witness():
    code, [rec], _ = run("jr-verify", "--session", str(SESSIONS / "double_x.session"))
    check_record(rec)
    assert code == 1 and rec["verdict"] == "fails"
    assert rec["witness"] == {"index": ["1", "1"], "generator": "y^2"}


def test_joint_reduction_holds_on_counterexample():
    code, [rec], _ = run("jr-verify", "--session", str(SESSIONS / "r35.session"))
    assert code == 0 and rec["verdict"] == "holds" and rec["witness"] is None


def test_fc_check_reports_residual():
    code, [rec], _ = run("fc-check", "--session", str(SESSIONS / "r35.session"))
    check_record(rec)
    assert code == 0 and rec["table"]["weak_fc"] is True and "residual" in rec["table"]


def test_table_and_hilbert():
    code, [rec], _ = run("table", "--session", str(SESSIONS / "r35.session"))
    assert code == 0 and rec["value"] == "2"
    assert rec["table"] == {"(1,(1))": "0", "(2,(0))": "1"}
    code, [rec], _ = run("hilbert", "--session", str(SESSIONS / "mm.session"), "--window", "1")
    check_record(rec)
    assert code == 0 and len(rec["table"]) == 4 and rec["base"] == ["0", "0"]


def test_multiplicity():
    code, [rec], _ = run("multiplicity", "--session", str(SESSIONS / "r35.session"))
    assert code == 0 and rec["value"] == "1" and rec["table"] == {"c": "1"}


def test_joint_reduction_search():
    code, [rec], _ = run("jr-find", "--session", str(SESSIONS / "mm.session"), "--k0", "0", "--k", "1",
                         "--seed", "3")
    check_record(rec)
    assert code == 0 and rec["verdict"] == "found" and rec["seed"] == "3"


def test_byte_identical_reruns():
    argv = ("mixed", "--session", str(SESSIONS / "mm.session"))
    assert run(*argv)[2] == run(*argv)[2]


def test_timing_fills_elapsed():
    _, [rec], _ = run("theorem", "r35", "--timing")
    assert isinstance(rec["elapsed_ms"], str)


def test_pretty_output():
    out = io.StringIO()
    assert run_command(["theorem", "r35", "--pretty"], out) == 0
    assert out.getvalue().startswith("{\n  ")
    assert json.loads(out.getvalue())["mixed"] == "0"


@pytest.mark.parametrize("argv", [
    ("mixed", "--bogus"),
    ("nonsense",),
    ("theorem", "other"),
])
def test_usage_errors_exit_2(argv):
    assert run(*argv)[0] == 2


def test_runtime_errors_exit_2(tmp_path):
    bad = tmp_path / "bad.session"
    bad.write_text("ring Q[x,y];\nideal J = x, y\n")
    code, [rec], _ = run("mixed", "--session", str(bad))
    assert code == 2 and rec["verdict"] == "error" and "line 2" in rec["witness"]["error"]
    assert run("mixed")[0] == 2
    assert run("mixed", "--session", str(SESSIONS / "mm.session"), "--k", "1")[0] == 2


def test_suite_order_is_independent_of_jobs():
    argv = ("theorem", "suite", "--profile", "monomial-mprimary-2var", "--count", "3")
    code1, recs1, text1 = run(*argv)
    code2, recs2, text2 = run(*argv, "--jobs", "2")
    assert code1 == code2 == 0 and text1 == text2 and len(recs1) == 3
    assert all(r["verdict"] in ("verified", "hypotheses not met") for r in recs1)


def test_jsonable():
    assert jsonable({1: [2, True, None]}) == {"1": ["2", True, None]}


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "mixedmult", "theorem", "r35"], capture_output=True, text=True)
    assert out.returncode == 0 and json.loads(out.stdout)["verdict"] == "counterexample reproduced"
