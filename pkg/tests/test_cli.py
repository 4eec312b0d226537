import json
import os

import pytest

from promc.cli import run_command

FIX = os.path.join(os.path.dirname(__file__), "fixtures")


def fx(name):
    return os.path.join(FIX, name)


def run(capsys, *argv):
    code = run_command(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_hom_singleton(capsys):
    code, out = run(capsys, "hom", fx("collapse.json"), "Y", "Y")
    assert code == 0
    assert "1 class" in out


def test_hom_collapse_two_classes(capsys):
    code, out = run(capsys, "hom", fx("collapse.json"), "Y", "X")
    assert code == 0
    assert "2 classes" in out


def test_hom_omega(capsys):
    code, out = run(capsys, "hom", fx("omega.json"), "P", "T")
    assert code == 0
    assert "2 classes" in out and "stabilized at depth 1" in out


def test_levelize_and_verify(tmp_path, capsys):
    out_file = tmp_path / "lv.json"
    code, out = run(capsys, "levelize", fx("collapse.json"), "f",
                    "--out", str(out_file))
    assert code == 0
    code, out = run(capsys, "verify", str(out_file))
    assert code == 0


def test_matching_cert_roundtrip(tmp_path, capsys):
    out_file = tmp_path / "m.json"
    code, out = run(capsys, "matching", fx("special.json"), "p",
                    "--level", "1", "--out", str(out_file))
    assert code == 0 and "we=True" in out
    code, out = run(capsys, "verify", str(out_file))
    assert code == 0


def test_detect_special_and_verify(tmp_path, capsys):
    out_file = tmp_path / "ds.json"
    code, out = run(capsys, "detect-special", fx("special.json"), "p",
                    "--mode", "acyclic-fib", "--out", str(out_file))
    assert code == 0 and "yes" in out
    code, out = run(capsys, "verify", str(out_file))
    assert code == 0


def test_detect_special_failing_exit1(capsys):
    code, out = run(capsys, "detect-special", fx("chainf2.json"), "p",
                    "--mode", "acyclic-fib")
    assert code == 1
    assert "failing level" in out


def test_factor_and_verify(tmp_path, capsys):
    out_file = tmp_path / "fac.json"
    code, out = run(capsys, "factor", fx("collapse.json"), "f",
                    "--mode", "L1", "--out", str(out_file))
    assert code == 0
    code, out = run(capsys, "verify", str(out_file))
    assert code == 0


def test_factor_chainf2_L2(tmp_path, capsys):
    out_file = tmp_path / "fac2.json"
    code, out = run(capsys, "factor", fx("chainf2.json"), "z",
                    "--mode", "L2", "--out", str(out_file))
    assert code == 0
    code, out = run(capsys, "verify", str(out_file))
    assert code == 0


def test_lift_and_verify(tmp_path, capsys):
    out_file = tmp_path / "lift.json"
    code, out = run(capsys, "lift", fx("special.json"), "--i", "i", "--p", "p",
                    "--top", "top", "--bottom", "bottom",
                    "--out", str(out_file))
    assert code == 0 and "lift found" in out
    code, out = run(capsys, "verify", str(out_file))
    assert code == 0


def test_lift_noncommuting_square_exit2(capsys):
    code, out = run(capsys, "lift", fx("special.json"), "--i", "i", "--p", "p",
                    "--top", "top", "--bottom", "bad_bottom")
    assert code == 2
    assert "commute" in out


def test_pro_factor_iso_and_verify(tmp_path, capsys):
    out_file = tmp_path / "pfi.json"
    code, out = run(capsys, "pro-factor-iso", fx("collapse.json"), "f",
                    "--witnesses", "h", "--out", str(out_file))
    assert code == 0
    code, out = run(capsys, "verify", str(out_file))
    assert code == 0


def test_zigzag_and_verify(tmp_path, capsys):
    out_file = tmp_path / "zz.json"
    # f, g identities around the worked pro-iso h: encode identities inline
    code, out = run(capsys, "zigzag-we", fx("zigzag.json"), "--f", "idY",
                    "--h", "f", "--g", "idX", "--witnesses", "h",
                    "--out", str(out_file))
    assert code == 0
    code, out = run(capsys, "verify", str(out_file))
    assert code == 0


def test_two_of_three_and_verify(tmp_path, capsys):
    out_file = tmp_path / "tt.json"
    code, out = run(capsys, "two-of-three", fx("zigzag.json"), "--side", "left",
                    "--top", "f", "--left", "idX", "--right", "idY",
                    "--bottom", "f", "--witnesses", "h", "--out", str(out_file))
    assert code == 0
    code, out = run(capsys, "verify", str(out_file))
    assert code == 0


def test_proper_pullback_and_verify(tmp_path, capsys):
    out_file = tmp_path / "pp.json"
    code, out = run(capsys, "proper-pullback", fx("zigzag.json"), "--p", "idY",
                    "--f", "idX2", "--g", "f", "--witnesses", "h",
                    "--out", str(out_file))
    assert code == 0
    code, out = run(capsys, "verify", str(out_file))
    assert code == 0


def test_cocell_and_tower_limit(tmp_path, capsys):
    out_file = tmp_path / "cc.json"
    code, out = run(capsys, "cocell", fx("special.json"), "p",
                    "--class", "acyclic-fib", "--out", str(out_file))
    assert code == 0 and "2 stages" in out
    code, out = run(capsys, "verify", str(out_file))
    assert code == 0
    out_file2 = tmp_path / "tl.json"
    code, out = run(capsys, "tower-limit", fx("special.json"), "p",
                    "--class", "acyclic-fib", "--out", str(out_file2))
    assert code == 0
    code, out = run(capsys, "verify", str(out_file2))
    assert code == 0


def test_adjunction_finite_and_omega(tmp_path, capsys):
    code, out = run(capsys, "adjunction", fx("collapse.json"),
                    "--base", "pt", "--object", "X")
    assert code == 0 and "2 classes" in out
    code, out = run(capsys, "adjunction", fx("omega.json"),
                    "--base", "pt", "--object", "T")
    assert code == 0 and "stabilized at depth 1" in out


def test_check_axioms_small(capsys):
    code, out = run(capsys, "check-axioms", "--trials", "2", "--seed", "0")
    assert code == 0
    assert "all passed" in out


def test_check_axioms_env_seed(capsys, monkeypatch):
    monkeypatch.setenv("PROMC_SEED", "7")
    code, out = run(capsys, "check-axioms", "--trials", "1")
    assert code == 0


# ------------------------------------------------------- negative controls

def test_broken_functoriality_exit2(capsys):
    code, out = run(capsys, "hom", fx("broken_functor.json"), "X", "X")
    assert code == 2
    assert "functoriality" in out


def test_falsified_matching_certificate_exit1(tmp_path, capsys):
    out_file = tmp_path / "ds.json"
    code, _ = run(capsys, "detect-special", fx("special.json"), "p",
                  "--mode", "acyclic-fib", "--out", str(out_file))
    assert code == 0
    doc = json.loads(out_file.read_text())
    doc["verdicts"]["1"]["we"] = False  # falsify a recorded verdict
    out_file.write_text(json.dumps(doc, sort_keys=True, indent=2))
    code, out = run(capsys, "verify", str(out_file))
    assert code == 1
    assert "witness" in out or "FAIL" in out


def test_corrupted_lift_certificate_exit1(tmp_path, capsys):
    out_file = tmp_path / "lift.json"
    code, _ = run(capsys, "lift", fx("special.json"), "--i", "i", "--p", "p",
                  "--top", "top", "--bottom", "bottom", "--out", str(out_file))
    assert code == 0
    doc = json.loads(out_file.read_text())
    # corrupt the lift's component at level 1
    doc["lift"]["general"]["1"][1] = {"a": "b", "b": "b"}
    out_file.write_text(json.dumps(doc, sort_keys=True, indent=2))
    code, out = run(capsys, "verify", str(out_file))
    assert code in (1, 2)


def test_unreadable_file_exit2(capsys):
    code, out = run(capsys, "hom", "/nonexistent/xx.json", "X", "Y")
    assert code == 2


def test_bad_schema_exit2(tmp_path, capsys):
    f = tmp_path / "bad.json"
    f.write_text('{"schema": "nope"}')
    code, out = run(capsys, "hom", str(f), "X", "Y")
    assert code == 2


def test_unknown_subcommand_exit2(capsys):
    assert run_command(["frobnicate"]) == 2


# ------------------------------------------------------------- determinism

def test_certificates_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    run(capsys, "factor", fx("special.json"), "p", "--mode", "L1",
        "--out", str(a))
    run(capsys, "factor", fx("special.json"), "p", "--mode", "L1",
        "--out", str(b))
    assert a.read_bytes() == b.read_bytes()
