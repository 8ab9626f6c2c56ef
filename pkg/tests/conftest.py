from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

REFERENCE_INTEGRANDS = {
    "intro": "x^(2*n)/(x^2+1)^(n+1)",
    "factorial": "exp(-x)*x^n",
    "beta": "x^n/(x+1)^(n+r+1)",
    "central": "(x*(1-x))^n",
    "e": "(x*(1-x))^n*exp(-x)",
}

# filled by tests/test_acceptance.py, printed after the run
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def reference_integrands() -> dict[str, str]:
    return dict(REFERENCE_INTEGRANDS)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
