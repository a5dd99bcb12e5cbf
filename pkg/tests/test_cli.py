import json
import subprocess
import sys

import pytest

from hallnum.certificates import check_document, dumps
from hallnum.cli import main

# (argv, exit status)
GOLDEN = [
    ("classify 60", 0),
    ("classify 1", 0),
    ("classify 20", 0),
    ("classify 0", 2),
    ("classify abc", 2),
    ("witness 12", 2),
    ("witness 28", 0),
    ("witness 20 --max-pairs 1000", 0),
    ("witness 20 --cap 1000 --json", 0),
    ("verify 12 5", 0),
    ("verify 12 7", 1),
    ("verify 24 5 --kind pgl", 0),
    ("verify 20 5", 2),
    ("verify 12 9", 2),
    ("verify 60 211 --cap 1000", 3),
    ("primes 4 5 --count 2", 0),
    ("primes 4 6", 2),
    ("primes 4 5 --count 5 --bound 200", 3),
    ("family 60 --count 1", 0),
    ("inspect 4", 0),
]


def run(cmd, capsys):
    status = main(cmd.split())
    out, err = capsys.readouterr()
    return status, out, err


@pytest.mark.parametrize("cmd, status", GOLDEN)
def test_golden_exit_codes(cmd, status, capsys):
    assert run(cmd, capsys)[0] == status


def test_classify_output(capsys):
    assert run("classify 60", capsys)[1] == "60: Exceptional(60)\n"
    assert run("classify 1", capsys)[1] == "1: PrimePower\n"


def test_classify_with_witness(capsys):
    status, out, _ = run("classify 20 --witness --json", capsys)
    doc = json.loads(out)
    assert status == 0 and doc["classification"] == "NotHall(split=4x5)"
    assert doc["witness"]["witness_prime"] == 29
    check_document(doc["witness"])


def test_witness_json_is_checkable(capsys):
    status, out, err = run("witness 28 --json", capsys)
    doc = json.loads(out)
    assert status == 0 and err == ""
    assert dumps(doc) == out
    check_document(doc)


def test_witness_downgrade_note_on_stderr(capsys):
    status, out, err = run("witness 20 --max-pairs 1000 --json", capsys)
    doc = json.loads(out)
    assert doc["verification"]["mode"] == "CaseAnalysis"
    assert "budget" in err
    check_document(doc)


@pytest.mark.parametrize("cmd", ["verify 12 5 --json", "verify 24 5 --kind pgl --json", "verify 12 7 --json"])
def test_verify_json_is_checkable(cmd, capsys):
    _, out, _ = run(cmd, capsys)
    check_document(json.loads(out))


def test_verify_text(capsys):
    out = run("verify 12 5", capsys)[1]
    assert "A4" in out and "congruence holds" in out
    out = run("verify 12 7", capsys)[1]
    assert "congruence fails" in out


def test_primes_and_family_output(capsys):
    assert run("primes 4 5 --count 2", capsys)[1] == "29\n109\n"
    assert run("primes 9 5 --count 1", capsys)[1] == "19\n"
    assert run("family 60 --count 1", capsys)[1] == "11\n"
    status, out, err = run("primes 4 5 --count 5 --bound 200 --json", capsys)
    assert status == 3 and json.loads(out)["primes"] == [29, 109] and "error" in err


def test_inspect_output(capsys):
    status, out, err = run("inspect 5", capsys)
    assert "order 60" in out and "{1:1, 2:15, 3:20, 5:24}" in out
    status, out, err = run("inspect 4 --json", capsys)
    doc = json.loads(out)
    assert doc["group"]["p"] == 5 and doc["alias"] and "note" in err
    assert doc["spectrum"] == {"1": 1, "2": 15, "3": 20, "5": 24}


def test_env_cap_override(monkeypatch, capsys):
    monkeypatch.setenv("HALLNUM_CAP", "100")
    assert run("inspect 7", capsys)[0] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "hallnum", "classify", "45"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "45: NotHall(split=9x5)\n" and proc.stderr == ""
