"""Tests for spec validation and parsing."""

from fractions import Fraction

import pytest

from galrel.core.specs import build_field, list_fixtures, load_spec
from galrel.errors import InputError
from galrel.utils.validation import (
    parse_group_spec,
    parse_rational,
    spec_from_dict,
    validate_field_spec,
)


def _raw(**overrides):
    raw = {
        "name": "Q(sqrt(-5))",
        "min_poly": [5, 0, 1],
        "integral_basis": [["1", "0"], ["0", "1"]],
    }
    raw.update(overrides)
    return raw


@pytest.mark.parametrize(
    "text,expected",
    [("3/4", Fraction(3, 4)), ("-2", Fraction(-2)), (7, Fraction(7))],
)
def test_parse_rational(text, expected):
    assert parse_rational(text) == expected


@pytest.mark.parametrize("bad", [0.5, True, "x", "1/0"])
def test_parse_rational_rejects(bad):
    with pytest.raises(InputError):
        parse_rational(bad)


def test_parse_group_spec():
    assert parse_group_spec("  V4 ") == "V4"
    assert parse_group_spec('{"generators": "(1 2)", "degree": 2}') == {
        "generators": "(1 2)",
        "degree": 2,
    }


@pytest.mark.parametrize("bad", ["", "   ", "{not json"])
def test_parse_group_spec_rejects(bad):
    with pytest.raises(InputError):
        parse_group_spec(bad)


def test_valid_spec():
    result = validate_field_spec(_raw())
    assert result.is_valid
    assert result.errors == [] and result.warnings == []


def test_missing_basis_is_only_a_warning():
    raw = _raw()
    del raw["integral_basis"]
    result = validate_field_spec(raw)
    assert result.is_valid
    assert len(result.warnings) == 1


@pytest.mark.parametrize(
    "overrides,fragment",
    [
        ({"name": ""}, "name"),
        ({"min_poly": [5, 0, 2]}, "monic"),
        ({"min_poly": [1]}, "degree"),
        ({"min_poly": [5, 0.0, 1]}, "integers"),
        ({"integral_basis": [["1", "0"], ["0"]]}, "entries"),
        ({"integral_basis": [["1", "0"], ["0", "x"]]}, "non-rational"),
        ({"base": {"subgroup_generators": [-1]}}, "subgroup_generators"),
        ({"supplied_regulators": {"K": 1.2}}, "supplied_regulators"),
    ],
)
def test_invalid_specs(overrides, fragment):
    result = validate_field_spec(_raw(**overrides))
    assert not result.is_valid
    assert any(fragment in message for message in result.errors)


def test_spec_from_dict_carries_base_and_regulators():
    spec = spec_from_dict(
        _raw(
            base={"subgroup_generators": [1]},
            supplied_regulators={"Q(sqrt(-5))": "1"},
        ),
        source="inline",
    )
    assert spec.base_generators == [1]
    assert spec.supplied_regulators == {"Q(sqrt(-5))": "1"}
    assert spec.source == "inline"


def test_spec_from_dict_raises_with_all_errors():
    with pytest.raises(InputError) as info:
        spec_from_dict({"name": "", "min_poly": [2, 3]})
    assert "name is required" in str(info.value)
    assert "monic" in str(info.value)


def test_spec_from_file(tmp_path):
    path = tmp_path / "k.json"
    path.write_text('{"name": "Q(i)", "min_poly": [1, 0, 1]}', encoding="utf-8")
    assert build_field(load_spec(str(path))).discriminant == -4


def test_malformed_spec_file(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{", encoding="utf-8")
    with pytest.raises(InputError):
        load_spec(str(path))


def test_unknown_fixture():
    with pytest.raises(InputError):
        load_spec("no_such_field")


def test_every_fixture_validates():
    specs = list_fixtures()
    assert len(specs) >= 10
    assert all(spec.name for spec in specs)
