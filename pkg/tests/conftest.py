import hypothesis
import pytest

from cyclegame.catalog import main_example

hypothesis.settings.register_profile("ci", max_examples=200, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=20, deadline=None)
hypothesis.settings.load_profile("ci")


@pytest.fixture(scope="session")
def main():
    return main_example()


@pytest.fixture(scope="session")
def main_nf(main):
    from cyclegame import build_normal_form

    return build_normal_form(main.game)


_ACCEPTANCE = []


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion of the build")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is not None and (rep.when == "call" or (rep.when == "setup" and rep.failed)):
        _ACCEPTANCE.append((mark.args[0], mark.args[1], rep.passed))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, passed in sorted(_ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  AC{number}  {title}")
