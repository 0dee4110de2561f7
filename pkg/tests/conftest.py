import re

import pytest


def _order(line):
    m = re.match(r"AC(\d+)(\w*)", line[0])
    return (int(m.group(1)), m.group(2)) if m else (10**6, line[0])


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if getattr(rep, "when", None) != "call":
                continue
            for key, value in getattr(rep, "user_properties", []):
                if key == "criterion":
                    lines.append((value, outcome.upper()))
    if lines:
        terminalreporter.section("acceptance criteria")
        for value, verdict in sorted(lines, key=_order):
            terminalreporter.write_line(f"{verdict:6s} {value}")


@pytest.fixture
def criterion(record_property):
    def mark(text):
        record_property("criterion", text)

    return mark
