from __future__ import annotations

import pytest

CRITERIA = {
    1: "lemma suite exact to order 200",
    2: "Ramanujan p(5n+4) dissection to order 100, p(4)=5, p(9)=30",
    3: "k=2 five-dissection theorems to order 60",
    4: "k=3,4,5 theorems to order 60",
    5: "NB_2 difference components to order 60",
    6: "Andrews-Beck congruences for n <= 100",
    7: "group-ring series equals enumeration",
    8: "property suites, 100+ instances each",
    9: "negative controls localize the first failing exponent",
}

_results: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    n = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _results.setdefault(n, []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        runs = _results.get(n)
        if not runs:
            state = "NOT RUN"
        else:
            state = "PASS" if all(runs) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {state} - {CRITERIA[n]}")
