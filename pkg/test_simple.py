#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
TSFRAC v1.0 - Teste Simples
Teste básico das funcionalidades principais
"""

import importlib

import pytest

MODULES = [
    "config",
    "services.errors",
    "services.timescale",
    "services.specfun",
    "services.expr",
    "services.calculus",
    "services.fractional",
    "services.oracle",
    "services.solver",
    "services.run_archive",
    "utils.output_utils",
    "routes.operators",
    "routes.solve",
    "routes.verify",
    "run",
]


@pytest.mark.parametrize("name", MODULES)
def test_imports(name):
    """Testa se todas as importações funcionam"""
    assert importlib.import_module(name) is not None


def test_main_returns_exit_codes(monkeypatch):
    monkeypatch.delenv("TSFRAC_ARCHIVE_DIR", raising=False)
    from run import main

    assert main(["--log-level", "ERROR", "gamma", "1"]) == 0
    assert main(["--log-level", "ERROR", "gamma", "--", "0"]) == 3
    assert main(["--log-level", "ERROR", "fracint"]) == 2
