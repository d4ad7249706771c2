import sys
from pathlib import Path

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from nofbounds.tensors import random_sign

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

MATRIX_SHAPES = [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)]


def sign_corpus(n_matrices=50, n_cubes=20, seed=2024):
    """Random sign matrices up to 3x3 and random 2x2x2 sign tensors."""
    rng = np.random.default_rng(seed)
    out = []
    for i in range(n_matrices):
        shape = MATRIX_SHAPES[i % len(MATRIX_SHAPES)] if i < 16 else (3, 3) if i % 2 else (2, 3)
        out.append(random_sign(shape, rng))
    for _ in range(n_cubes):
        out.append(random_sign((2, 2, 2), rng))
    return out


@pytest.fixture(scope="session")
def corpus():
    return sign_corpus()


def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark:
        item.user_properties += [("criterion", mark.args[0]), ("title", mark.args[1])]


def pytest_terminal_summary(terminalreporter):
    rows = []
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            if rep.when != "call" and key != "error":
                continue
            props = dict(getattr(rep, "user_properties", []))
            if "criterion" in props:
                rows.append((props["criterion"], "PASS" if rep.passed else "FAIL", props.get("title", "")))
    if rows:
        terminalreporter.section("acceptance criteria")
        for n, verdict, title in sorted(rows):
            terminalreporter.write_line(f"criterion {n:>2}: {verdict}  {title}")
