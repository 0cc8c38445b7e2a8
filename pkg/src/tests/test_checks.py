"""Tests for the verification handler behind ``galrel verify``."""

import pytest

from galrel.core.checks import VerificationHandler, _sample_vectors
from galrel.errors import InputError, UnsupportedError


def test_sample_vectors_are_nonzero_and_distinct():
    vectors = list(_sample_vectors(2, 8))
    assert len(vectors) == 8 == len(set(vectors))
    assert (0, 0) not in vectors
    assert all(max(abs(x) for x in v) == 1 for v in vectors)


def test_unit_rank_relation(extension):
    rows = VerificationHandler(extension("q_sqrt2_sqrt3")).run("lambda")
    assert len(rows) == 1
    assert rows[0].passed is True
    assert rows[0].values["sum"] == 0


def test_torsion_relation_at_three(extension):
    rows = VerificationHandler(extension("q_zeta12"), prime=3).run("torsion")
    assert [row.passed for row in rows] == [True]


def test_torsion_relation_skips_wild_primes(extension):
    rows = VerificationHandler(extension("q_zeta12")).run("torsion")
    assert all("p=2" not in row.subject for row in rows)


def test_classgroup_relation_with_traces_and_transfers(extension):
    rows = VerificationHandler(extension("q_i_sqrt_m23")).run("classgroup")
    kinds = {row.check for row in rows}
    assert {"classgroup", "classgroup.trace", "transfer"} <= kinds
    assert all(row.passed is True for row in rows)


def test_classgroup_relation_with_trivial_class_groups(extension):
    rows = VerificationHandler(extension("q_zeta8")).run("classgroup")
    assert len(rows) == 1
    assert rows[0].passed is None


def test_wild_prime_is_unsupported(extension):
    handler = VerificationHandler(extension("q_zeta12"), prime=2)
    with pytest.raises(UnsupportedError):
        handler.run("torsion")


@pytest.mark.parametrize(
    "kwargs", [{"prime": 4}, {"level": 0}, {"variant": "other"}]
)
def test_handler_rejects_bad_arguments(extension, kwargs):
    with pytest.raises(InputError):
        VerificationHandler(extension("q_zeta8"), **kwargs)


def test_unknown_check(extension):
    with pytest.raises(InputError):
        VerificationHandler(extension("q_zeta8")).run("everything")


def test_cyclic_group_has_nothing_to_check(extension):
    (row,) = VerificationHandler(extension("q_sqrt2")).run("genus")
    assert row.passed is None
    assert row.values == {"relations": 0}


def test_genus_relation_notes_failed_coprimality(extension):
    handler = VerificationHandler(extension("q_zeta8"))
    (row,) = handler.run("genus")
    assert row.passed is True
    assert row.values["coprime_hypothesis"] is False
    assert row.note
    assert len(handler.residuals) == 1


def test_brauer_rows_carry_provenance(extension):
    rows = VerificationHandler(extension("q_zeta8")).run("brauer")
    assert [row.check for row in rows] == ["brauer", "residue"]
    assert all(row.passed is True for row in rows)
    assert any(key.endswith(".Reg") for key in rows[0].provenance)


def test_zeta_relation_within_tail_allowance(extension):
    handler = VerificationHandler(extension("q_sqrt2_sqrt3"), bound=200)
    (row,) = handler.run("zeta")
    assert row.passed is True


def test_eta_rows(extension):
    handler = VerificationHandler(extension("q_sqrt2_sqrt3"), tol=1e-10)
    rows = handler.run("eta")
    by_check = {}
    for row in rows:
        by_check.setdefault(row.check, []).append(row)
    assert [row.passed for row in by_check["eta"]] == [None]
    assert by_check["eta.routes"][0].passed is True
    assert len(by_check["eta.change_metric"]) == 5
    assert all(row.passed is True for row in by_check["eta.change_metric"])
    assert all(row.passed is True for row in by_check["eta.trace"])
