import pytest

from nbl import parse_group_spec


@pytest.fixture(scope="session")
def S3():
    return parse_group_spec("S3")


@pytest.fixture(scope="session")
def A4():
    return parse_group_spec("A4")


@pytest.fixture(scope="session")
def D5():
    return parse_group_spec("D5")


@pytest.fixture(scope="session")
def C4():
    return parse_group_spec("C4")


ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion for the closing summary."""
    marker = request.node.get_closest_marker("criterion")
    number, title = marker.args
    ACCEPTANCE[number] = (title, None, "")
    yield lambda note: ACCEPTANCE.__setitem__(number, (title, None, note))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or rep.when != "call":
        return
    number, title = marker.args
    note = ACCEPTANCE.get(number, (title, None, ""))[2]
    ACCEPTANCE[number] = (title, rep.passed, note)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, note = ACCEPTANCE[number]
        status = "PASS" if passed else "FAIL"
        line = f"criterion {number:>2} {status}  {title}"
        terminalreporter.write_line(line + (f"  [{note}]" if note else ""))
