import numpy as np
import pytest

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(number, title): acceptance criterion checked by this test"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    prev = _ACCEPTANCE.get((number, title), True)
    _ACCEPTANCE[(number, title)] = prev and rep.passed


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), ok in sorted(_ACCEPTANCE.items()):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {number:>2}  {title}")


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def rel_err(value, ref):
    ref = float(ref)
    return abs(float(value) - ref) / max(abs(ref), 1e-300)
