import json
import subprocess
import sys

import pytest

from filiform.catalog import build_q
from filiform.cli import run
from filiform.core import StructureTable
from filiform.identities import check_jacobi
from filiform.parallel import chunks, worker_count


def test_repr_verify_w9(capsys):
    assert run(["repr", "--family", "W", "--dim", "9", "--verify"]) == 0
    out = capsys.readouterr().out
    assert "homomorphism: 81/81 pairs ok; faithful: yes; size 9 = dim 9 (minimal by μ̄ ≥ n)" in out
    assert "coefficient system: 16/16 instances ok (7 interior, 9 last column)" in out


def test_catalog_rejects_odd_q(capsys):
    assert run(["catalog", "--family", "Q", "--dim", "7"]) == 2
    assert "Q requires even dimension" in capsys.readouterr().err


def test_repr_rejects_l(capsys):
    assert run(["repr", "--family", "L", "--dim", "6"]) == 2
    assert "earlier published work" in capsys.readouterr().err


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["frobnicate"]) == 2
    assert run(["catalog", "--family", "L"]) == 2
    assert run(["leibniz", "--family", "mu", "--params", "1,2"]) == 2
    assert run(["leibniz", "--family", "mu", "--params", "1,x,0,0,0,0,0"]) == 2
    assert run(["verify", "--input", "/nonexistent.json", "--law", "jacobi"]) == 2
    assert run(["fingerprint", "--family", "W"]) == 2
    capsys.readouterr()


def test_appendix_check_b(tmp_path, capsys):
    report = tmp_path / "b.jsonl"
    assert run(["appendix", "--which", "B", "--check-all", "--seed", "42", "--report", str(report)]) == 0
    lines = report.read_text().splitlines()
    assert len(lines) == 34
    first = json.loads(lines[0])
    assert first["row"] == 1 and {"params", "leibniz_violations", "quotient_ok", "action_ok", "fingerprint"} <= set(first)
    assert "registry B: 34 rows checked (seed 42)" in capsys.readouterr().out


def test_appendix_listing(capsys):
    assert run(["appendix", "--which", "T2"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert len(out) == 10
    assert out[9].split() == ["10", "eta(1,1,b3,0)", "nonzero:", "beta3"]


def test_catalog_verify_round_trip(tmp_path, capsys):
    path = tmp_path / "q8.json"
    assert run(["catalog", "--family", "Q", "--dim", "8", "--json", str(path)]) == 0
    table = StructureTable.loads(path.read_text())
    assert table == build_q(8)
    assert run(["verify", "--input", str(path), "--law", "jacobi", "--json", str(tmp_path / "r.json")]) == 0
    saved = json.loads((tmp_path / "r.json").read_text())
    assert saved == check_jacobi(build_q(8)).to_json()
    capsys.readouterr()


def test_verify_reports_failures(tmp_path, capsys):
    path = tmp_path / "bad.json"
    bad = StructureTable(3, {(1, 2): {1: 1}, (2, 1): {1: -1}, (1, 3): {2: 1}, (3, 1): {2: -1}})
    path.write_text(bad.dumps())
    assert run(["verify", "--input", str(path), "--law", "all"]) == 1
    out = capsys.readouterr().out
    assert "antisymmetry: 0 violations" in out and "jacobi: 6 violations in 27 checked" in out  # every ordering of (1,2,3)


def test_verify_rejects_malformed(tmp_path, capsys):
    path = tmp_path / "junk.json"
    path.write_text('{"dim": 2, "brackets": [{"i": 5, "j": 1, "value": []}]}')
    assert run(["verify", "--input", str(path), "--law", "leibniz"]) == 2
    capsys.readouterr()


def test_leibniz_verify(capsys):
    assert run(["leibniz", "--family", "lambda", "--params", "1,1,1,1,1,1,1,1,1", "--verify"]) == 0
    out = capsys.readouterr().out
    assert "leibniz: 1728/1728 triples ok" in out and "normal form: yes" in out


def test_leibniz_json_to_stdout(capsys):
    assert run(["leibniz", "--family", "eta", "--params", "0,1/2,0,0"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["dim"] == 14
    entry = next(b for b in data["brackets"] if (b["i"], b["j"]) == (7, 1))
    assert entry["value"] == [[14, "-1/2"]]


def test_fingerprint_verb(capsys):
    assert run(["fingerprint", "--family", "mu"]) == 0
    out = capsys.readouterr().out
    assert "lower_central: [10, 7, 4, 2, 1, 0]" in out
    assert run(["fingerprint", "--family", "L", "--dim", "5"]) == 0
    assert "lower_central: [5, 3, 2, 1, 0]" in capsys.readouterr().out


def cli(*args):
    return subprocess.run([sys.executable, "-m", "filiform.cli", *args], capture_output=True, check=False)


def test_output_is_byte_identical(tmp_path):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    for path in (a, b):
        proc = cli("appendix", "--which", "T2", "--check-all", "--seed", "7", "--report", str(path))
        assert proc.returncode == 0
    assert a.read_bytes() == b.read_bytes()
    one = cli("catalog", "--family", "W", "--dim", "11").stdout
    assert one == cli("catalog", "--family", "W", "--dim", "11").stdout


def test_bad_thread_setting_is_usage_error(tmp_path, monkeypatch, capsys):
    path = tmp_path / "q6.json"
    path.write_text(build_q(6).dumps())
    monkeypatch.setenv("FILIFORM_THREADS", "many")
    assert run(["verify", "--input", str(path), "--law", "jacobi"]) == 2
    assert "FILIFORM_THREADS" in capsys.readouterr().err
    monkeypatch.setenv("FILIFORM_THREADS", "2")
    assert run(["verify", "--input", str(path), "--law", "jacobi"]) == 0


@pytest.mark.parametrize("raw,expected", [("1", 1), ("3", 3), (" 2 ", 2)])
def test_worker_count(raw, expected):
    assert worker_count({"FILIFORM_THREADS": raw}) == expected


def test_worker_count_auto():
    assert worker_count({}) >= 1
    assert worker_count({"FILIFORM_THREADS": "0"}) == worker_count({})


@pytest.mark.parametrize("raw", ["-1", "lots"])
def test_worker_count_invalid(raw):
    with pytest.raises(ValueError):
        worker_count({"FILIFORM_THREADS": raw})


def test_chunks_cover_range():
    for n in range(1, 15):
        for parts in range(1, 6):
            cs = chunks(n, parts)
            assert [i for c in cs for i in c] == list(range(1, n + 1))
