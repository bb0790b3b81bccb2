import pytest


def v2(n: int) -> int:
    return (n & -n).bit_length() - 1


def oracle_pd(n: int) -> str:
    """D[1..n] letter by letter: the n-th letter is a iff the 2-adic valuation of n is even."""
    return "".join("a" if v2(i) % 2 == 0 else "b" for i in range(1, n + 1))


def naive_positions(pattern: str, text: str) -> list[int]:
    """Letterwise comparison at every position."""
    out = []
    for i in range(len(text) - len(pattern) + 1):
        if all(text[i + j] == pattern[j] for j in range(len(pattern))):
            out.append(i + 1)
    return out


def sigma_by_hand(w: str) -> str:
    out = []
    for x in w:
        out.append("ab" if x == "a" else "aa")
    return "".join(out)


@pytest.fixture(scope="session")
def oracle_d():
    return oracle_pd(1 << 16)


_ACCEPTANCE: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if "test_acceptance.py" in report.nodeid and report.when == "call":
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
