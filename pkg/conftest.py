"""Shared fixtures: Cartan data and the small crystals most tests use."""

import pytest

from demkit import settings
from lie.cartan import build_cartan
from crystals.tableaux import highest_weight_crystal


@pytest.fixture(autouse=True)
def restore_budget(monkeypatch):
    # the CLI's --budget flag writes to settings
    monkeypatch.setattr(settings, 'ELEMENT_BUDGET', settings.ELEMENT_BUDGET)


@pytest.fixture
def a1():
    return build_cartan('A', 1)


@pytest.fixture
def a2():
    return build_cartan('A', 2)


@pytest.fixture
def a3():
    return build_cartan('A', 3)


@pytest.fixture
def b_rho(a2):
    """B(omega_1 + omega_2) in A_2."""
    return highest_weight_crystal(a2, (1, 1))


@pytest.fixture
def rho_elements(b_rho):
    """
    Named elements of B(rho): b, p = f1 b, q = f2 b, r = f1 f2 b,
    s = f1^2 f2 b, t = f2 f1 b, u = f2^2 f1 b, z the lowest.
    """
    g = b_rho
    b = 0
    p, q = g.f(b, 1), g.f(b, 2)
    r, t = g.f(q, 1), g.f(p, 2)
    s, u = g.f(r, 1), g.f(t, 2)
    z = g.f(u, 1)
    return dict(b=b, p=p, q=q, r=r, s=s, t=t, u=u, z=z)
