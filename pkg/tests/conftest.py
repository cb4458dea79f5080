import pytest

_VERDICTS = {}


class Verdict:
    """Collects the sub-checks of one acceptance criterion."""

    def __init__(self, number, title):
        self.number, self.title = number, title
        self.checks = []

    def check(self, label, ok):
        self.checks.append((label, bool(ok)))

    def finish(self):
        ok = all(flag for _, flag in self.checks)
        line = f"criterion {self.number} ({self.title}): {'PASS' if ok else 'FAIL'}"
        _VERDICTS[self.number] = line
        print(line)
        failed = [label for label, flag in self.checks if not flag]
        assert ok, f"{line}; failing checks: {failed}"


@pytest.fixture
def criterion():
    return Verdict


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(_VERDICTS):
            terminalreporter.write_line(_VERDICTS[number])
