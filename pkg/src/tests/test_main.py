"""End-to-end tests of the ``galrel`` command line."""

import json

import pytest

from galrel.config.settings import app_settings
from galrel.core.main import build_parser, main


@pytest.fixture(autouse=True)
def keep_precision(mocker):
    mocker.patch.object(
        app_settings.precision, "DEFAULT_BITS", app_settings.precision.DEFAULT_BITS
    )


def run_json(capsys, *argv):
    code = main([*argv, "--format", "json"])
    return code, json.loads(capsys.readouterr().out)


def test_relations_of_klein_group(capsys):
    code, report = run_json(capsys, "relations", "--group", "V4")
    assert code == 0
    assert report["flags"]["relations"] == 1
    (relation,) = [row for row in report["rows"] if row["check"] == "relations"]
    assert relation["passed"] is True
    assert sorted(relation["values"]["coefficients"].values()) == [-1, -1, -1, 1, 2]


def test_relations_output_is_deterministic(capsys):
    main(["relations", "--group", "S3", "--format", "json"])
    first = capsys.readouterr().out
    main(["relations", "--group", "S3", "--format", "json"])
    assert capsys.readouterr().out == first


def test_verify_unit_ranks(capsys):
    code, report = run_json(
        capsys, "verify", "--ext", "q_sqrt2_sqrt3", "--check", "lambda"
    )
    assert code == 0
    assert report["passed"] is True
    assert report["flags"]["complex_place_normalization"] == "doubled"


def test_verify_genus_on_zeta8(capsys):
    code, report = run_json(capsys, "verify", "--ext", "q_zeta8", "--check", "genus")
    assert code == 0
    assert len(report["residuals"]) == 1


def test_invariants_of_gaussian_field(capsys):
    code, report = run_json(capsys, "invariants", "--field", "q_i")
    assert code == 0
    values = report["rows"][0]["values"]
    assert (values["r"], values["s"], values["w"], values["d"]) == (0, 1, 4, -4)
    assert values["Cl"] == "trivial"
    assert report["rows"][0]["provenance"]["Reg"] == "formula"


def test_invariants_mark_unsupported_regulators(capsys):
    code, report = run_json(capsys, "invariants", "--field", "q_sqrt2_sqrt3")
    assert code == 0
    row = report["rows"][0]
    assert row["values"]["Reg"] == "unsupported"
    assert row["note"]


def test_eta_of_rationals(capsys):
    code, report = run_json(capsys, "eta", "--field", "q")
    assert code == 0
    assert report["rows"][0]["values"]["value"]["value"].startswith("1.0864348112133")


def test_eta_divisor_needs_one_coefficient_per_place(capsys):
    code, report = run_json(capsys, "eta", "--field", "q_i", "--divisor", "[1, 2]")
    assert code == 2
    assert report["flags"]["error_type"] == "InputError"


def test_unknown_fixture_is_an_input_error(capsys):
    code, _ = run_json(capsys, "verify", "--ext", "nope", "--check", "lambda")
    assert code == 2


def test_wild_prime_is_unsupported(capsys):
    code, report = run_json(
        capsys, "verify", "--ext", "q_zeta12", "--check", "torsion", "--prime", "2"
    )
    assert code == 3
    assert "wild" in report["flags"]["error"]


def test_precision_out_of_range(capsys):
    code, _ = run_json(capsys, "fixtures", "--precision", "20")
    assert code == 2


def test_fixture_listing(capsys):
    code, report = run_json(capsys, "fixtures")
    assert code == 0
    names = [row["subject"] for row in report["rows"]]
    assert "q_zeta8" in names and names == sorted(names)


def test_text_and_both_formats(capsys):
    main(["relations", "--group", "C2", "--format", "text"])
    text = capsys.readouterr().out
    assert "result: PASS (exit 0)" in text
    main(["relations", "--group", "C2"])
    both = capsys.readouterr().out
    assert both.lstrip().startswith("{")
    assert "galrel relations" in both


def test_check_names_are_validated_by_the_parser():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["verify", "--ext", "q", "--check", "all"])


@pytest.mark.parametrize("variant", ["paper", "pi", "trace"])
def test_verify_accepts_every_variant_name(capsys, variant):
    code, report = run_json(
        capsys, "verify", "--ext", "q_i", "--check", "lambda", "--variant", variant
    )
    assert code == 0
    assert report["passed"] is True


@pytest.mark.parametrize("name", ["q_zeta8", "q_i_sqrt_m23"])
def test_invariants_of_cm_quartic_fields(capsys, name):
    code, report = run_json(capsys, "invariants", "--field", name)
    assert code == 0
    values = report["rows"][0]["values"]
    assert values["Cl"] != "unsupported"
    assert values["Reg"] != "unsupported"


def test_verify_brauer_on_imaginary_biquadratic(capsys):
    code, report = run_json(
        capsys, "verify", "--ext", "q_i_sqrt_m23", "--check", "brauer"
    )
    assert code == 0
    assert report["passed"] is True
