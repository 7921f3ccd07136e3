import json
import re
from fractions import Fraction

import pytest

from nrcodes.cli import main
from nrcodes.report import (
    VerificationReport,
    Workbench,
    build_manifest,
    fmt,
    run_verification,
)


def test_fmt_serialization():
    assert fmt(5) == "5"
    assert fmt(2**60) == str(2**60)
    assert fmt(Fraction(7, 2)) == "7/2"
    assert fmt(Fraction(8, 2)) == "4"
    assert fmt([1, Fraction(1, 3)]) == ["1", "1/3"]
    assert fmt({"a": 2}) == {"a": "2"}
    assert fmt(True) is True


def test_manifest_ids_unique_and_tagged():
    manifest = build_manifest()
    ids = [c.claim_id for c in manifest]
    assert len(ids) == len(set(ids))
    for claim in manifest:
        assert claim.targets <= {"nr", "pn"}
        if claim.compute is None:
            assert claim.citation  # external facts carry their citation


def test_run_verification_nr_excludes_pn_claims():
    report = run_verification("nr")
    ids = {e.claim_id for e in report.entries}
    assert not any(i.startswith("pn.") or i.startswith("feas.pn") for i in ids)
    assert "nr.ct" in ids and "golay.delta" in ids
    # the one documented failure: the [16,5,8] subcode is not completely regular
    assert report.failing_ids() == ["rm.cr"]


def test_run_verification_pn_passes():
    report = run_verification("pn")
    assert report.passed
    statuses = {e.claim_id: e.status for e in report.entries}
    assert statuses["external.snover.pn"] == "external-fact"
    assert statuses["pn.ct"] == "pass"
    assert not any(i.startswith("nr.") for i in statuses)


def test_corrupted_code_fails_claims(nr):
    from nrcodes.codes import Code

    words = list(nr.words)
    words[10] ^= 1
    wb = Workbench()
    wb.__dict__["nr"] = Code(16, words)
    report = run_verification("nr", workbench=wb)
    failing = set(report.failing_ids())
    assert "nr.params" in failing  # minimum distance drops
    assert "nr.even" in failing
    assert "nr.cr" in failing


def test_report_json_round_trip():
    report = run_verification("nr")
    text = report.to_json()
    again = VerificationReport.from_json(text)
    assert again == report


def test_reports_identical_apart_from_wall_time():
    a = run_verification("nr")
    b = run_verification("nr")
    for report in (a, b):
        for entry in report.entries:
            entry.wall_time = "0"
    assert a.to_json() == b.to_json()


def test_cli_construct_and_analyze(tmp_path, capsys):
    out = tmp_path / "nr.code"
    assert main(["construct", "nr", "-o", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "m=16" and len(lines) == 257

    assert main(["analyze", str(out)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["m"] == "16"
    assert doc["min_distance"] == "6"
    assert doc["covering_radius"] == "4"
    assert doc["completely_regular"] is True
    assert doc["weight_histogram"][6] == "112"
    assert doc["predicates"]["is_antipodal"] is True


def test_cli_construct_pn_variants(tmp_path):
    for name, m in (("pn", 15), ("pn@3", 15), ("golay24", 24), ("reed_muller", 16)):
        out = tmp_path / f"{name.replace('@', '_')}.code"
        assert main(["construct", name, "-o", str(out)]) == 0
        assert out.read_text().splitlines()[0] == f"m={m}"


def test_cli_construct_unknown_name(tmp_path, capsys):
    assert main(["construct", "nope", "-o", str(tmp_path / "x")]) == 2
    assert "unknown code name" in capsys.readouterr().err


def test_cli_analyze_malformed(tmp_path, capsys):
    bad = tmp_path / "bad.code"
    bad.write_text("m=4\n0101\n011\n")
    assert main(["analyze", str(bad)]) == 2
    assert "error" in capsys.readouterr().err


def test_cli_analyze_small_witness(tmp_path, capsys):
    path = tmp_path / "c.code"
    path.write_text("m=3\n000\n110\n")
    assert main(["analyze", str(path)]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["completely_regular"] is False
    assert "witness" in doc


def test_cli_verify_pn(tmp_path, capsys):
    report_path = tmp_path / "report.json"
    code = main(["verify", "pn", "--json", str(report_path)])
    out = capsys.readouterr().out
    assert code == 0
    assert re.search(r"PASS\s+pn\.ct", out)
    doc = json.loads(report_path.read_text())
    assert doc["target"] == "pn"
    assert "pn_transitivity_certificate" in doc
    cert = doc["pn_transitivity_certificate"]
    assert len(cert["matched_cells"]) == 4
    assert all(line.startswith("beta=") for line in cert["generators"])


def test_cli_verify_nr_reports_known_failure(capsys):
    code = main(["verify", "nr"])
    out = capsys.readouterr()
    assert code == 1
    assert "rm.cr" in out.err
    assert re.search(r"FAIL\s+rm\.cr", out.out)


def test_cli_feasible(capsys):
    args = [
        "feasible", "-m", "16",
        "-t", "0=1,6=112,7=?,8=?,10=112,16=1",
        "--antipodal",
    ]
    assert main(args) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["solutions"] == [{"a7": "0", "a8": "30"}]
    rows = {r["k"]: r["row"] for r in doc["constraint_rows"]}
    assert rows["2"] == "240 - 12*a7 - 8*a8 >= 0"


def test_cli_feasible_pn(capsys):
    args = ["feasible", "-m", "15", "-t", "5=42,6=?,7=?,10=42,15=1", "--antipodal"]
    assert main(args) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["solutions"] == [{"a6": "70", "a7": "15"}]


def test_cli_feasible_bad_template(capsys):
    assert main(["feasible", "-m", "4", "-t", "9=1"]) == 2
    assert "error" in capsys.readouterr().err
