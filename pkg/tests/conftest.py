from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from impnd.formula import Atom, Imp
from impnd.rules import Mode
from impnd.tree import generate_random_proof

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

settings.register_profile("default", max_examples=100, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

atoms = st.sampled_from([Atom(n) for n in "pqrs"])
formulas = st.recursive(atoms, lambda sub: st.builds(Imp, sub, sub), max_leaves=12)


@st.composite
def proofs(draw, max_depth=8):
    seed = draw(st.integers(0, 10**6))
    depth = draw(st.integers(1, max_depth))
    mode = draw(st.sampled_from([Mode.NM, Mode.NM_PLUS]))
    n_atoms = draw(st.integers(1, 4))
    return generate_random_proof(seed, depth, "abcd"[:n_atoms], mode)


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


# -- acceptance summary ---------------------------------------------------------

_acceptance: dict[int, tuple[str, str]] = {}
_notes: dict[str, str] = {}


@pytest.fixture
def note(request):
    """Attach a one-line measurement to the acceptance summary."""

    def put(text: str) -> None:
        _notes[request.node.nodeid] = text

    return put


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): exit criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        detail = _notes.get(item.nodeid, "")
        _acceptance[number] = (title + (f" [{detail}]" if detail else ""), "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, status = _acceptance[number]
        terminalreporter.write_line(f"[{status}] criterion {number}: {title}")
