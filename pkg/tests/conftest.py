import os
import sys

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sopq import Signature

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

sys.path.insert(0, os.path.dirname(__file__))


def signatures(dmin: int = 2, dmax: int = 6):
    """Strategy over normalized signatures p >= q with dmin <= p + q <= dmax."""
    pairs = [(p, d - p) for d in range(dmin, dmax + 1) for p in range(d, -1, -1) if p >= d - p]
    return st.sampled_from(pairs).map(lambda pq: Signature(*pq))


def all_signatures(dmin: int = 2, dmax: int = 10) -> list:
    return [Signature(p, d - p) for d in range(dmin, dmax + 1) for p in range(d, -1, -1) if p >= d - p]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
