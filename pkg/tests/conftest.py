import random

import pytest
from hypothesis import HealthCheck, settings

from alcovewalk.affine import affine_group
from alcovewalk.rootdata import datum_from_type

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

# criterion number -> (passed, detail), filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def A1():
    return datum_from_type("A1")


@pytest.fixture(scope="session")
def A2():
    return datum_from_type("A2")


def random_reduced_word(G, w, rng: random.Random):
    """A reduced word of w built from randomly chosen right descents."""
    from alcovewalk.affine import WalkType

    letters = []
    cur = w
    while True:
        desc = [i for i in range(G.n + 1) if G.is_descent(cur, i)]
        if not desc:
            break
        i = rng.choice(desc)
        letters.append(i)
        cur = G.step(cur, i)
    return WalkType(G.pi_index(cur), tuple(reversed(letters)))


@pytest.fixture
def groups():
    return lambda D: affine_group(D)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
