import pytest

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report(request):
    """Record one ``[PASS]/[FAIL] criterion N`` line, printed in the terminal summary."""
    entry = {}

    def _set(number: int, description: str):
        entry["number"], entry["description"] = number, description

    yield _set
    if entry:
        rep = getattr(request.node, "rep_call", None)
        status = "PASS" if rep is not None and rep.passed else "FAIL"
        line = f"[{status}] criterion {entry['number']}: {entry['description']}"
        ACCEPTANCE_LINES.append(line)
        print(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
