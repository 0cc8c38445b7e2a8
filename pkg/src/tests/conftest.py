"""Shared fixtures: fields and extensions built from the shipped specs."""

from typing import Callable, Dict

import pytest

from galrel.core.extension import GaloisExtension
from galrel.core.specs import build_extension, build_field, load_spec
from galrel.fields.number_field import NumberField


@pytest.fixture(scope="session")
def extension() -> Callable[[str], GaloisExtension]:
    """Extension factory keyed by fixture name, cached for the session."""
    cache: Dict[str, GaloisExtension] = {}

    def get(name: str) -> GaloisExtension:
        if name not in cache:
            cache[name] = build_extension(load_spec(name))
        return cache[name]

    return get


@pytest.fixture(scope="session")
def field() -> Callable[[str], NumberField]:
    cache: Dict[str, NumberField] = {}

    def get(name: str) -> NumberField:
        if name not in cache:
            cache[name] = build_field(load_spec(name))
        return cache[name]

    return get


@pytest.fixture
def subgroup_fixing() -> Callable[[GaloisExtension, int], object]:
    """The order-2 subgroup whose fixed field has the given discriminant."""

    def find(ext: GaloisExtension, discriminant: int):
        for h in ext.subgroups:
            if h.order == 2 and ext.subfield(h).field.discriminant == discriminant:
                return h
        raise LookupError(f"no subfield of discriminant {discriminant}")

    return find
