import pytest

# criterion number -> list of (passed, detail); filled by the acceptance module
ACCEPTANCE = {}


@pytest.fixture
def criterion():
    def record(n: int, passed: bool, detail: str) -> None:
        ACCEPTANCE.setdefault(n, []).append((bool(passed), detail))
        print(f"criterion {n}: {'PASS' if passed else 'FAIL'} {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance")
    for n in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[n]
        ok = all(p for p, _ in parts)
        detail = "; ".join(d for _, d in parts)
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
