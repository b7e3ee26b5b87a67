import os

import pytest

from normcrit import elemsym

_RESULTS = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion reported in the summary")


@pytest.fixture(scope="session", autouse=True)
def session_cache(tmp_path_factory):
    """Point the theta cache at a fresh directory shared by the whole run."""
    root = tmp_path_factory.mktemp("theta-cache")
    old = os.environ.get(elemsym.CACHE_ENV)
    os.environ[elemsym.CACHE_ENV] = str(root)
    elemsym.clear_memo()
    yield root
    if old is None:
        os.environ.pop(elemsym.CACHE_ENV, None)
    else:
        os.environ[elemsym.CACHE_ENV] = old


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    label = mark.args[0]
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        if hasattr(rep, "wasxfail"):
            status = "FAIL (known, " + rep.wasxfail + ")"
        else:
            status = "PASS" if rep.passed else "FAIL"
        if _RESULTS.get(label, "PASS") == "PASS":
            _RESULTS[label] = status


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_RESULTS, key=lambda s: (len(s.split()[0]), s)):
        terminalreporter.write_line(f"{label}: {_RESULTS[label]}")
