import pytest
from hypothesis import HealthCheck, settings

from rlsuper.harness import build_example

settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def ex41():
    return build_example("ex41", p=3)


@pytest.fixture(scope="session")
def ex41_alpha1():
    return build_example("ex41", p=3, alpha=1)


@pytest.fixture(scope="session")
def ex42():
    return build_example("ex42", p=3)


@pytest.fixture(scope="session")
def heis_toral():
    return build_example("even_heisenberg_toral", p=3)


@pytest.fixture(scope="session")
def heis_super():
    return build_example("heisenberg_super", p=3)


_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion checked by this test")


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call":
        return
    number, title = mark.args
    ok = call.excinfo is None
    details = [v for k, v in item.user_properties if k == "detail"]
    prev = _CRITERIA.get(number)
    if prev is not None:
        ok = ok and prev[1]
        details = prev[2] + details
    _CRITERIA[number] = (title, ok, details)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, ok, details = _CRITERIA[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {title}")
        for d in details:
            terminalreporter.write_line(f"               {d}")
