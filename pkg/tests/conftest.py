from __future__ import annotations

import cmath
import math

import pytest
from hypothesis import HealthCheck, settings

from elliptic_ainfty import Lattice

settings.register_profile(
    "repo", max_examples=40, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

HEX = cmath.exp(1j * math.pi / 3)
TAUS = {"i": 1j, "2i": 2j, "hex": HEX, "skew": 0.25 + 1.5j}


@pytest.fixture(params=list(TAUS), ids=list(TAUS))
def lattice(request) -> Lattice:
    return Lattice(1.0, TAUS[request.param])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
