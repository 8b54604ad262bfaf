"""Equivalence harness, certificates, JSON round trips and the CLI."""

import copy
import json
import subprocess
import sys
from pathlib import Path

import pytest

from albertkit import (
    QQ,
    FiniteField,
    Instance,
    MalformedCertificate,
    RationalFunctionField,
    check_equivalence,
    generate_instance,
    verify_certificate,
)
from albertkit.harness import FAMILIES, report_json_bytes
from albertkit.jsonio import (
    extension_to_spec,
    field_to_spec,
    parse_element,
    parse_extension,
    parse_field,
    parse_form,
)

SRC = str(Path(__file__).resolve().parents[1] / "src")


def _run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "albertkit.cli", *args],
        capture_output=True,
        text=True,
        env={"PYTHONPATH": SRC, "PATH": "/usr/bin:/bin"},
    )


def test_field_spec_roundtrip():
    for spec in ("Q", "F(5)", "F(4):w^2+w+1", "Q(t)", "F(2)(t)", "F(9):w^2+1"):
        field = parse_field(spec)
        again = parse_field(field_to_spec(field))
        assert again == field


def test_extension_spec_roundtrip():
    base = QQ
    for spec in ("split", "x^2-2", "x^2-x-1", "x^2-(-1)"):
        ext = parse_extension(base, spec)
        again = parse_extension(base, extension_to_spec(ext))
        assert again == ext


def test_element_parse_formats():
    Qt = RationalFunctionField(QQ, "t")
    x = parse_element(Qt, "(t^2-1)/(t+1)")
    assert x == Qt.gen() - Qt.one()
    F4 = FiniteField(2, 2)
    assert parse_element(F4, "1+u") == F4.one() + F4.gen()


def test_form_literal_diag_shorthand():
    form = parse_form({"field": "Q", "diag": [1, -1]})
    assert form.n == 2 and form.upper[0][0] == 1


def test_named_instance_hamilton():
    inst = Instance("quad-K-over-Q", 0, "Q", "x^2-2", "0", "-1", "-1")
    rep = check_equivalence(inst, path="both")
    assert rep.cond_i.status == rep.cond_ii.status == "yes"
    assert rep.cond_iii_not_division.status == "yes"
    assert rep.consistent
    # (iii) witness is the vector presented by y = i
    F = QQ
    wit = rep.cond_iii_not_division.witness
    assert list(wit) == [F.one()] + [F.zero()] * 5
    # (ii) witness is 2 + sqrt(2) i
    doc = rep.to_json()
    assert doc["cond_ii"]["witness"] == ["2", "w", "0", "0"]
    assert any("transfer path" in d for d in rep.derivations)


def test_named_instance_split_hamilton_pair():
    inst = Instance("split-K-over-Q", 0, "Q", "split", [0, 0], ["-1", "-1"], ["-1", "-1"])
    rep = check_equivalence(inst)
    assert rep.cond_i.status == rep.cond_ii.status == rep.cond_iii_not_division.status == "yes"
    assert rep.consistent


def test_named_instance_division_over_Qt():
    inst = Instance("split-K-over-Qt", 0, "Q(t)", "split", [0, 0], ["-1", "t"], ["-1", "2"])
    rep = check_equivalence(inst)
    assert rep.cond_iii_not_division.status == "no"
    assert rep.cond_iii_not_division.method == "springer"
    assert rep.cond_i.status == "no" and rep.cond_ii.status == "no"
    assert rep.consistent


def test_reports_deterministic():
    for fam in ("quad-K-over-Q", "char2-finite"):
        inst = generate_instance(fam, 3)
        b1 = report_json_bytes(check_equivalence(inst))
        b2 = report_json_bytes(check_equivalence(generate_instance(fam, 3)))
        assert b1 == b2


def test_certificate_roundtrip_and_tamper():
    inst = Instance("quad-K-over-Q", 0, "Q", "x^2-2", "0", "-1", "-1")
    rep = check_equivalence(inst)
    doc = rep.to_json()
    assert verify_certificate(doc)
    bad = copy.deepcopy(doc)
    bad["cond_iii_not_division"]["witness"][1] = "7"  # breaks isotropy
    assert not verify_certificate(bad)
    bad = copy.deepcopy(doc)
    bad["cond_ii"]["witness"][1] = "0"
    assert not verify_certificate(bad)
    with pytest.raises(MalformedCertificate):
        verify_certificate({"schema": "albertkit/1"})
    with pytest.raises(MalformedCertificate):
        verify_certificate({"not": "a report"})


def test_unknown_fields_verify_when_witnesses_hold():
    inst = Instance("split-K-over-Qt", 0, "Q(t)", "split", [0, 0], ["-1", "t"], ["-1", "2"])
    doc = check_equivalence(inst).to_json()
    doc["cond_i"]["status"] = "unknown"
    doc["cond_ii"]["status"] = "unknown"
    assert verify_certificate(doc)


def test_generate_instance_families_deterministic():
    for fam in FAMILIES:
        a = generate_instance(fam, 11).to_json()
        b = generate_instance(fam, 11).to_json()
        assert a == b
    with pytest.raises(Exception):
        generate_instance("no-such-family", 0)


def test_cli_gen_check_verify(tmp_path):
    out = _run_cli("gen", "--family", "char2-finite", "--seed", "2")
    assert out.returncode == 0
    inst_path = tmp_path / "inst.json"
    inst_path.write_text(out.stdout)
    chk = _run_cli("check", "--instance", str(inst_path), "--json")
    assert chk.returncode == 0
    reports = json.loads(chk.stdout)
    rep_path = tmp_path / "rep.json"
    rep_path.write_text(json.dumps(reports[0]))
    ver = _run_cli("verify", "--report", str(rep_path))
    assert ver.returncode == 0 and "OK" in ver.stdout
    # tampered report is rejected through the CLI as well: a scalar witness
    # can never generate a disjoint quadratic algebra
    tampered = json.loads(rep_path.read_text())
    tampered["cond_ii"]["witness"][1:] = ["0", "0", "0"]
    rep_path.write_text(json.dumps(tampered))
    ver = _run_cli("verify", "--report", str(rep_path))
    assert ver.returncode == 1 and "REJECTED" in ver.stdout


def test_cli_isotropy_and_exit_codes(tmp_path):
    form_path = tmp_path / "f.json"
    form_path.write_text(json.dumps({"field": "Q", "diag": [1, 1]}))
    out = _run_cli("isotropy", "--form", str(form_path), "--json")
    assert out.returncode == 0
    assert json.loads(out.stdout)["status"] == "anisotropic"
    form_path.write_text(json.dumps({"field": "Q(t)", "dim": 2, "upper": [["1", "1"], ["0", "t"]]}))
    out = _run_cli("isotropy", "--form", str(form_path), "--height", "2")
    assert out.returncode in (0, 3)


def test_cli_quat_and_clifford(tmp_path):
    spec = tmp_path / "q.json"
    spec.write_text(json.dumps({"base": "Q", "ext": "x^2-2", "E": {"alpha": "0", "beta": "-1"}, "a": "-1"}))
    out = _run_cli("quat", "--spec", str(spec), "--cmd", "split", "--json")
    assert out.returncode == 0 and json.loads(out.stdout)["status"] == "division"
    out = _run_cli("quat", "--spec", str(spec), "--cmd", "nrd", "--x", '["1","1","0","0"]', "--json")
    assert out.returncode == 0
    form_path = tmp_path / "c.json"
    form_path.write_text(json.dumps({"field": "Q", "diag": [1, -1]}))
    out = _run_cli("clifford", "--form", str(form_path), "--cmd", "arf", "--json")
    assert out.returncode == 0 and json.loads(out.stdout)["trivial"] is True
