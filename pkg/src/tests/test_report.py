"""Tests for report rows and their JSON and text renderings."""

import json
from fractions import Fraction

import mpmath
from mpmath import mp

from galrel.exact.certified import Certified
from galrel.models.report_model import Report, ReportRow, to_plain


def _report():
    report = Report("verify", inputs={"ext": "q_zeta8", "tol": Fraction(1, 10**15)})
    report.add(ReportRow("lambda", "e[1]", {"lambda": 0}, passed=True))
    report.add(
        ReportRow(
            "genus",
            "+1*e[1] = 0",
            {"residual": Certified.exact(0)},
            {"g": "formula"},
            passed=True,
            note="coprimality fails",
        )
    )
    report.residuals["genus"] = Certified.exact(0)
    report.flags["complex_place_normalization"] = "doubled"
    return report


def test_to_plain_converts_exact_and_certified_values():
    with mp.workprec(128):
        third = Certified.exact(Fraction(1, 3))
    plain = to_plain({"q": Fraction(2, 3), "x": third, "n": [1, None, True]})
    assert plain["q"] == "2/3"
    assert set(plain["x"]) == {"value", "radius"}
    assert plain["n"] == [1, None, True]
    assert isinstance(to_plain(mpmath.mpf(1) / 4), str)


def test_report_passes_unless_a_row_fails():
    report = _report()
    report.add(ReportRow("eta", "relation", passed=None))
    assert report.passed
    report.add(ReportRow("torsion", "p=3", passed=False))
    assert not report.passed


def test_json_is_deterministic_and_sorted():
    first, second = _report().to_json(), _report().to_json()
    assert first == second
    data = json.loads(first)
    assert list(data) == sorted(data)
    assert data["inputs"]["tol"] == "1/1000000000000000"
    assert data["rows"][1]["provenance"] == {"g": "formula"}
    assert data["passed"] is True


def test_text_has_a_table_per_check_and_a_verdict():
    text = _report().to_text()
    assert text.startswith("galrel verify")
    assert "[lambda]" in text and "[genus]" in text and "[residuals]" in text
    assert "coprimality fails" in text
    assert "complex_place_normalization: doubled" in text
    assert text.rstrip().endswith("result: PASS (exit 0)")


def test_text_verdict_for_errors():
    report = Report("verify", exit_code=2)
    assert report.to_text().rstrip().endswith("result: ERROR (exit 2)")
    failing = Report("verify", exit_code=1)
    failing.add(ReportRow("zeta", "K", passed=False))
    assert "result: FAIL (exit 1)" in failing.to_text()
