from importlib.resources import files

import pytest

from twistk3.divisor import derive, parse_divisor

DATA = files("twistk3").joinpath("data")

BAD_PRIMES = [
    2, 5, 7, 307, 4591, 27077, 371857, 6902849, 104388233,
    541264119547919951,
    6097863609641310921149279,
    2616678388926286398002864469014842817095009312844790479,
]
LARGE_PRIMES = BAD_PRIMES[-3:]

QP_TABLE = [
    (2, (-1, 0, -1)), (3, (-1, -1, 1)), (5, (-1, -1, 0)), (7, (-1, -1, 1)),
    (11, (-1, -1, 0)), (13, (-1, -1, 1)), (17, (-1, -1, -1)), (19, (-1, -1, -1)),
    (307, (-1, -1, -1)), (4591, (-1, -1, 0)), (27077, (-1, -1, -1)),
    (371857, (-1, -1, -1)), (6902849, (-1, 0, 0)), (104388233, (-1, -1, -1)),
    (541264119547919951, (-1, -1, 1)), (6097863609641310921149279, (-1, 1, -1)),
    (2616678388926286398002864469014842817095009312844790479, (-1, -1, 0)),
]


@pytest.fixture(scope="session")
def divisor():
    return parse_divisor(DATA.joinpath("counterexample_divisor.txt").read_text())


@pytest.fixture(scope="session")
def derivation(divisor):
    return derive(divisor)


# one PASS/FAIL line per acceptance criterion in the terminal summary

CRITERIA: dict[int, dict] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or report.when == "teardown" and report.passed:
        return
    number, title = mark.args
    entry = CRITERIA.setdefault(number, {"title": title, "ok": True, "failed": []})
    if report.failed:
        entry["ok"] = False
        entry["failed"].append(item.name)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(CRITERIA):
        entry = CRITERIA[number]
        verdict = "PASS" if entry["ok"] else "FAIL"
        line = f"criterion {number}: {verdict}  {entry['title']}"
        if entry["failed"]:
            line += f"  (failed: {', '.join(entry['failed'])})"
        terminalreporter.write_line(line)
