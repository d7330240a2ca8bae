import os

import pytest
from hypothesis import HealthCheck, settings

from hecke.groups import (all_subgroups, cyclic, dihedral, generate_subgroup, quaternion,
                          symmetric, affine_mod)
from hecke.pair import HeckePair

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=25, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def el(G, label):
    return G.labels.index(label)


def small_groups():
    return [cyclic(1), cyclic(4), cyclic(6), dihedral(3), dihedral(4), dihedral(5),
            symmetric(3), quaternion(8), affine_mod(4), affine_mod(5), dihedral(6)]


_PAIRS = None


def small_pairs():
    """Every subgroup of a handful of groups of order <= 20, as HeckePairs."""
    global _PAIRS
    if _PAIRS is None:
        _PAIRS = [HeckePair(G, H) for G in small_groups() for H in all_subgroups(G)]
    return _PAIRS


@pytest.fixture(scope="session")
def D4():
    return dihedral(4)


@pytest.fixture(scope="session")
def d4s(D4):
    return HeckePair(D4, generate_subgroup(D4, [el(D4, "s")]))


@pytest.fixture(scope="session")
def S3():
    return symmetric(3)


@pytest.fixture(scope="session")
def s3t(S3):
    return HeckePair(S3, generate_subgroup(S3, [el(S3, "(1 2)")]))


# --- acceptance summary ---------------------------------------------------------

_ACCEPTANCE: dict[int, str] = {}


def record(num: int, ok: bool, detail: str) -> None:
    _ACCEPTANCE[num] = f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail}"


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_ACCEPTANCE):
        terminalreporter.write_line(_ACCEPTANCE[num])
