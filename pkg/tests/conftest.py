import sys
from pathlib import Path

import pytest

from cohitkit.monomials import parse_polynomial

DATA = Path(__file__).parent / "data"


def load_poly(name: str, k: int):
    return parse_polynomial((DATA / f"{name}.txt").read_text(), k)


@pytest.fixture(scope="session")
def basis_cache():
    """Session-wide memo of built cohit bases."""
    from cohitkit.reducer import build_cohit_basis

    built = {}

    def get(k, n):
        if (k, n) not in built:
            built[(k, n)] = build_cohit_basis(k, n)
        return built[(k, n)]

    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(mod.RESULTS):
        ok, detail = mod.RESULTS[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {detail}")
