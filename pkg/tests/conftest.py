import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from toricsig import catalog  # noqa: E402

# criterion number -> list of (label, passed, detail); filled by test_acceptance
ACCEPTANCE: dict[int, list] = {}


@pytest.fixture(scope="session")
def cat():
    return {e.name: e for e in catalog.catalog()}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[num]
        ok = all(p for _, p, _ in parts)
        failed = [f"{label}: {detail}" for label, p, detail in parts if not p]
        line = f"criterion {num}: {'PASS' if ok else 'FAIL'}"
        if failed:
            line += "  (" + "; ".join(failed) + ")"
        terminalreporter.write_line(line)
