import csv
import io
import json
import subprocess
import sys

import pytest

from redcollatz.cli import run
from redcollatz.dynamics import OrbitRecord, reduced_dynamics
from redcollatz.enumeration import ClassEntry
from redcollatz.sieve import RangeReport


def cli(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_dr_text(capsys):
    code, out, _ = cli(capsys, "dr", "27")
    rec = reduced_dynamics(27)
    assert code == 0
    assert out.splitlines() == [f"word: {rec.word}", "length: 59", "final: 23"]


def test_dr_json_roundtrip(capsys):
    code, out, _ = cli(capsys, "dr", "2^70+3", "--format", "json")
    rec = OrbitRecord.from_dict(json.loads(out))
    assert code == 0 and rec.start == 2**70 + 3
    assert rec.word == reduced_dynamics(2**70 + 3).word


def test_dr_csv(capsys):
    code, out, _ = cli(capsys, "dr", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert rows == [{"start": "3", "word": "IIOO", "final": "2", "stopping_time": "4",
                     "cnt_3x1": "2", "cnt_half_total": "4"}]


def test_dr_one(capsys):
    code, out, _ = cli(capsys, "dr", "1")
    assert code == 0 and "trivially at 1" in out


def test_pure_repeatable(capsys):
    for argv in (["dr", "97"], ["orbit", "97"], ["residue", "IIOIO"], ["period", "11"]):
        first = cli(capsys, *argv)
        assert cli(capsys, *argv) == first


def test_orbit(capsys):
    code, out, _ = cli(capsys, "orbit", "3", "--format", "json")
    data = json.loads(out)
    assert data["word"] == "IIOOO" and data["stopping_time"] == 5 and data["final"] == "1"
    code, out, _ = cli(capsys, "orbit", "27", "--counts-only")
    assert code == 0 and "cnt_3x1 41" in out and "cnt_half_total 70" in out  # 41 + 70 = 111 classic steps


def test_apply(capsys):
    code, out, _ = cli(capsys, "apply", "IIOO", "3", "--trace")
    assert code == 0 and "final: 2" in out and "trace: 3 5 8 4 2" in out
    code, out, _ = cli(capsys, "apply", "O", "3")
    assert code == 1 and "mismatch at step 1" in out


def test_enum(capsys):
    code, out, _ = cli(capsys, "enum", "--max-len", "4")
    assert code == 0 and out.splitlines() == ["O", "IO", "IIOO"]
    code, out, _ = cli(capsys, "enum", "--max-len", "5", "--format", "csv")
    assert out.splitlines()[0] == "word,length,cnt_i" and len(out.splitlines()) == 6


def test_residue(capsys):
    code, out, _ = cli(capsys, "residue", "IIOIO", "--format", "json")
    assert json.loads(out) == {"word": "IIOIO", "residue": "11", "modulus_exp": 5}
    code, out, _ = cli(capsys, "residue", "IIOO")
    assert out.startswith("[3]_16")


def test_classes(capsys):
    code, out, _ = cli(capsys, "classes", "--max-len", "5", "--format", "json")
    entries = [ClassEntry.from_dict(json.loads(l)) for l in out.splitlines()]
    assert [e.word.seq for e in entries] == ["O", "IO", "IIOO", "IIIOO", "IIOIO"]
    assert json.loads(out.splitlines()[2]) == {"word": "IIOO", "residue": "3", "modulus_exp": 4,
                                               "representative": "3"}
    code, out, _ = cli(capsys, "classes", "--max-len", "4", "--format", "csv")
    assert out.splitlines() == ["word,residue,modulus_exp,representative", "O,0,1,2", "IO,1,2,5",
                                "IIOO,3,4,3"]


def test_period(capsys):
    code, out, _ = cli(capsys, "period", "3", "--k", "2", "--min-brute", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data == {"x": "3", "word": "IIOO", "period": "16", "checked_ks": 2, "all_equal": True,
                    "minimal_period": "16"}


def test_verify_range(capsys, tmp_path):
    ck = tmp_path / "ck.jsonl"
    code, out, err = cli(capsys, "verify-range", "2", "100", "--jobs", "1", "--format", "json",
                         "--checkpoint", str(ck), "--progress")
    rep = RangeReport.from_dict(json.loads(out))
    assert code == 0 and rep.verified_count == 99 and "verified through 100" in err
    assert ck.exists()
    code, out, _ = cli(capsys, "verify-range", "2", "100", "--format", "csv")
    assert out.splitlines()[0] == "length,count"
    code, out, _ = cli(capsys, "verify-range", "2", "100", "--cap", "5")
    assert code == 1


def test_verify_range_env_jobs(capsys, monkeypatch):
    monkeypatch.setenv("REDCOLLATZ_JOBS", "2")
    code, out, _ = cli(capsys, "verify-range", "2", "3000", "--format", "json", "--chunk-size", "1000")
    assert code == 0 and json.loads(out)["verified_count"] == 2999


def test_coverage(capsys):
    code, out, _ = cli(capsys, "coverage", "--level", "4", "--cross-check", "1000", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["covered_residues"] == "13" and data["uncovered_sample"] == ["7", "11", "15"]
    assert data["cross_check"] == {"n": "1000", "ok": True}


@pytest.mark.parametrize("argv,code", [
    (["dr", "2+"], 2), (["dr", "0"], 2), (["residue", "IOX"], 2), (["enum"], 2),
    (["bogus"], 2), (["dr", "2^(2^21)"], 2), (["dr", "1-5"], 2),
    (["verify-range", "2", "10", "--checkpoint", "/nonexistent/dir/x"], 3),
])
def test_exit_codes(capsys, argv, code):
    assert cli(capsys, *argv)[0] == code


def test_corrupt_checkpoint_exit(capsys, tmp_path):
    ck = tmp_path / "ck.jsonl"
    ck.write_text("garbage\n")
    assert cli(capsys, "verify-range", "2", "10", "--checkpoint", str(ck))[0] == 3


def test_backend_flag(capsys):
    a = cli(capsys, "--backend", "python", "verify-range", "2", "5000", "--format", "json")
    b = cli(capsys, "verify-range", "2", "5000", "--format", "json")
    assert a == b


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "redcollatz", "dr", "7"], capture_output=True, text=True)
    assert proc.returncode == 0 and "IIIOIOO" in proc.stdout
