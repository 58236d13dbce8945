"""Shared fixtures: small reference systems built once per session."""

import pytest

from language.oracle import LanguageOracle
from systems.registry import build_system


@pytest.fixture(scope="session")
def golden():
    return build_system("beta:golden")


@pytest.fixture(scope="session")
def golden_sft():
    return build_system("golden-sft")


@pytest.fixture(scope="session")
def full2():
    return build_system("full:2")


@pytest.fixture(scope="session")
def sgap12():
    return build_system("sgap:1,2;bounded")


@pytest.fixture
def contains_only():
    """Strip an oracle down to its membership test (no automaton, no cache key)."""

    def strip(language: LanguageOracle) -> LanguageOracle:
        return LanguageOracle(alphabet=language.alphabet, contains_fn=language.contains_fn, name=language.name)

    return strip


@pytest.fixture(scope="session")
def sgap12_literal():
    return build_system("sgap:1,2")
