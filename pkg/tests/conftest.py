import numpy as np
import pytest
from hypothesis import settings

from tetradcalc import geometry

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[k])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_full_tetrad(rng, coupling=0.15):
    """A smooth, well-conditioned full tetrad in Cartesian-like coordinates."""
    rows = []
    for a in range(4):
        row = []
        for b in range(4):
            base = rng.uniform(0.8, 1.3) if a == b else 0.0
            amp = rng.uniform(-coupling, coupling)
            k = rng.uniform(0.3, 1.5)
            j = int(rng.integers(4))
            row.append(f"{base:.6f}+{amp:.6f}*sin({k:.6f}*x{j}+{rng.uniform(0, 3):.6f})")
        rows.append(row)
    return geometry.TetradField(geometry.Chart(), "full", rows)


def random_diagonal_tetrad(rng):
    hs = []
    for _ in range(4):
        j, k = rng.integers(4, size=2)
        hs.append(
            f"{rng.uniform(1.0, 2.0):.6f}+{rng.uniform(-0.4, 0.4):.6f}*sin({rng.uniform(0.2, 1.5):.6f}*x{j})"
            f"*cos({rng.uniform(0.2, 1.5):.6f}*x{k})+{rng.uniform(0, 0.2):.6f}*exp(-(x{k})^2)"
        )
    return geometry.TetradField(geometry.Chart(), "diagonal", hs)


def spherical_points(rng, n, r=(1.5, 6.0)):
    pts = np.zeros((n, 4))
    pts[:, 0] = rng.uniform(-1, 1, n)
    pts[:, 1] = rng.uniform(*r, n)
    pts[:, 2] = rng.uniform(0.3, np.pi - 0.3, n)
    pts[:, 3] = rng.uniform(0, 2 * np.pi, n)
    return pts


def cube_points(rng, n):
    return rng.uniform(-2, 2, size=(n, 4))
