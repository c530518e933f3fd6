import pytest

from kuramoto_eq import fixtures
from kuramoto_eq.counting import special_case_model
from kuramoto_eq.errors import SizeLimitError
from kuramoto_eq.model import ModelInput, normalize
from kuramoto_eq.oracle import CLUSTER, SIMPLE, brute_force_equilibria, brute_force_roots

EX = normalize(fixtures.ex31())


def test_roots_worked_example():
    r = brute_force_roots((1, 1), EX)
    assert len(r) == 1 and r[0].kind == SIMPLE
    assert abs(r[0].R - 10.25) < 1e-9
    assert brute_force_roots((-1, 1), EX) == []
    assert brute_force_roots((-1, 1), EX, domain="global") == []


def test_tangential_root_is_cluster():
    m = normalize(special_case_model(2, 1))
    r = [x for c in range(4) for x in brute_force_roots(c, m)]
    # f = -R + sqrt(4R - 4) touches zero at R = 2 on the all-plus pattern
    assert [(x.code, x.kind) for x in r] == [(3, CLUSTER)]
    assert abs(r[0].R - 2.0) < 1e-6


def test_grid_size_guard():
    with pytest.raises(ValueError):
        brute_force_roots((1, 1), EX, grid_points=10)


@pytest.mark.parametrize(
    "model,count",
    [(fixtures.ex31(), 2), (fixtures.fourbus(), 8), (fixtures.table1(5), 4), (fixtures.fourbus_literal(), 2)],
)
def test_equilibria_examples(model, count):
    eqs = brute_force_equilibria(model)
    assert len(eqs) == count
    assert not any(e.certified for e in eqs)
    assert all(e.residual < 1e-8 for e in eqs)


def test_size_limit():
    with pytest.raises(SizeLimitError):
        brute_force_equilibria(fixtures.table1(11))
