"""Run every library module's doctests (and the oracle module's) as tests."""

from __future__ import annotations

import doctest
import importlib

import pytest

MODULES = (
    "cellkit.laurent",
    "cellkit.coxeter",
    "cellkit.hecke",
    "cellkit.cells",
    "cellkit.murphy",
    "cellkit.lusztig",
    "cellkit.cache",
    "cellkit.cli",
    "oracles",
)


@pytest.mark.parametrize("name", MODULES)
def test_module_doctests(name):
    module = importlib.import_module(name)
    result = doctest.testmod(module, verbose=False)
    assert result.failed == 0, f"{name}: {result.failed} doctest failures"
