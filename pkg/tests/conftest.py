import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from quest.model import Breaker, Instance, Segment, Surfer  # noqa: E402

ACCEPTANCE_FILE = "test_acceptance.py"
_acceptance_lines: list[str] = []


def make_surfer(i=0, vclass=3, speed=100.0, dv=10.0, t=0.0, dt=30.0, dist=(0.0,), length=(1.0,)):
    return Surfer(i, vclass, speed, dv, t, dt, tuple(dist), tuple(length))


def make_breaker(i=0, vclass=3, speed=100.0, t=0.0, dist=(0.0,)):
    return Breaker(i, vclass, speed, t, tuple(dist))


@st.composite
def surfers(draw, i=0):
    return Surfer(
        id=i,
        vclass=draw(st.integers(1, 5)),
        pref_speed=draw(st.floats(50, 150)),
        speed_flex=draw(st.floats(0, 30)),
        depart_time=draw(st.floats(0, 240)),
        time_flex=draw(st.floats(0, 60)),
    )


@st.composite
def breakers(draw, i=0):
    return Breaker(
        id=i,
        vclass=draw(st.integers(1, 5)),
        speed=draw(st.floats(50, 150)),
        depart_time=draw(st.floats(0, 240)),
    )


@st.composite
def square_instances(draw, min_n=1, max_n=3):
    n = draw(st.integers(min_n, max_n))
    return Instance(
        surfers=tuple(draw(surfers(i)) for i in range(n)),
        breakers=tuple(draw(breakers(i)) for i in range(n)),
        segments=(Segment(0, 1.0),),
        lambda1=draw(st.floats(0, 2000)),
        lambda2=draw(st.floats(0, 2000)),
    )


@pytest.fixture
def two_pair_instance():
    """Identity matching is clearly optimal: matched pairs share speed and departure."""
    surfers_ = (make_surfer(0, vclass=2, speed=90.0, t=0.0), make_surfer(1, vclass=2, speed=120.0, t=60.0))
    breakers_ = (make_breaker(0, vclass=4, speed=90.0, t=0.0), make_breaker(1, vclass=4, speed=120.0, t=60.0))
    return Instance(surfers_, breakers_)


def pytest_runtest_logreport(report):
    if report.when == "call" and ACCEPTANCE_FILE in report.nodeid:
        name = report.nodeid.split("::")[-1]
        status = "PASS" if report.passed else "FAIL"
        _acceptance_lines.append(f"[{status}] {name}")
    elif report.when == "setup" and report.failed and ACCEPTANCE_FILE in report.nodeid:
        _acceptance_lines.append(f"[FAIL] {report.nodeid.split('::')[-1]} (setup)")


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
