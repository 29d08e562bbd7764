from __future__ import annotations

import pytest

# criterion -> {sub-check: (ok, detail)}, filled by tests/test_acceptance.py
ACCEPTANCE: dict[str, dict[str, tuple[bool, str]]] = {}


@pytest.fixture
def acceptance():
    def record(criterion: str, check: str, ok: bool, detail: str = "") -> bool:
        ACCEPTANCE.setdefault(criterion, {})[check] = (bool(ok), detail)
        return bool(ok)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for criterion, checks in ACCEPTANCE.items():
        failed = [name for name, (ok, _) in checks.items() if not ok]
        status = "FAIL" if failed else "PASS"
        extra = f" (failing: {', '.join(failed)})" if failed else ""
        tr.write_line(f"{status} {criterion}: {len(checks) - len(failed)}/{len(checks)} checks{extra}")
