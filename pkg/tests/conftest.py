import pytest

from quadhier.gf import ctx_new
from quadhier.qform import form_from_spec

EXAMPLE_SPECS = {
    "ex1": "tr: x^12",
    "ex2": "tr: x^2 + x^4",
    "ex3": "tr: x^2 - x^4",
}


@pytest.fixture(scope="session")
def ctx34():
    return ctx_new(3, 4)


@pytest.fixture(scope="session")
def example_forms(ctx34):
    return {name: form_from_spec(spec, ctx34) for name, spec in EXAMPLE_SPECS.items()}


def brute_count(f, h, a):
    """|{x in H : f(x) = a}| by scanning members with the field evaluator."""
    from quadhier.subspaces import members

    return sum(1 for v in members(h) if f(v) == a % f.p)


# -- acceptance reporting: one PASS/FAIL line per criterion

_ACCEPTANCE: dict[str, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion this test belongs to")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is not None and (rep.when == "call" or rep.failed):
        _ACCEPTANCE.setdefault(marker.args[0], []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s.split(".")[0])):
        ok = all(_ACCEPTANCE[label])
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {label}")
