import math
import time

import numpy as np
import pytest

from kuramoto_eq import fixtures
from kuramoto_eq.errors import SineOverflowError, ValidationError
from kuramoto_eq.model import Equilibrium, ModelInput, normalize, oc1_shift, random_model, residual
from kuramoto_eq.solver import (
    BRACKET_EMPTY,
    SKIPPED,
    deduplicate,
    reconstruct_theta,
    solve,
    solve_basic,
    solve_optimized,
)

from conftest import angle_gap, match_sets

EX = fixtures.ex31()


@pytest.mark.parametrize("alg", ["basic", "optimized"])
def test_worked_example(alg):
    res = solve(EX, alg)
    assert res.count == 2
    got = sorted((round(e.R, 9), tuple(round(t, 4) for t in e.theta)) for e in res.equilibria)
    assert got == [(4.25, (0.3985, -1.8158)), (10.25, (0.2526, -0.6747))]
    assert all(e.certified for e in res.equilibria)


def test_optimized_skips_code_zero():
    res = solve(EX, "optimized")
    assert sorted(res.outcomes) == [1, 2, 3]
    assert res.patterns_visited == 3
    assert res.outcome(0) == SKIPPED


def test_reconstruct_examples():
    m = normalize(EX)
    th = reconstruct_theta(10.25, (1, 1), m)
    assert [round(t, 4) for t in th] == [0.2526, -0.6747]
    th = reconstruct_theta(4.25, (1, -1), m)
    assert [round(t, 4) for t in th] == [0.3985, -1.8158]


def test_reconstruct_zero_frequency_branches():
    m = normalize(ModelInput([0.0, 1.0, -1.0], [2.0, 2.0, 2.0]))
    th = reconstruct_theta(1.0, (1, 1, 1), m)
    assert th[0] == 0.0
    th = reconstruct_theta(1.0, (-1, 1, 1), m)
    assert th[0] == math.pi


def test_reconstruct_sine_overflow():
    m = normalize(EX)
    with pytest.raises(SineOverflowError):
        reconstruct_theta(3.0, (1, 1), m)
    # within the slack the sine is clamped
    th = reconstruct_theta(4.0 * (1 - 1e-12), (1, 1), m)
    assert abs(abs(th[1]) - math.pi / 2) < 1e-5


def test_deduplicate():
    a = Equilibrium((0.1, math.pi / 2), 1.0, (1, 1), 0.0, True, 3)
    b = Equilibrium((0.1, math.pi / 2 + 1e-9), 1.0, (1, -1), 0.0, False, 2)
    c = Equilibrium((0.5, -1.0), 2.0, (1, 1), 0.0, True, 3)
    out = deduplicate([b, a, c])
    assert len(out) == 2
    assert any(e is a for e in out) and any(e is c for e in out)
    assert deduplicate([a, c]) == [a, c]
    # wrap-around on the circle
    d = Equilibrium((math.pi, 0.0), 1.0, (-1, 1), 0.0, True, 1)
    e = Equilibrium((-math.pi + 1e-10, 0.0), 1.0, (-1, 1), 0.0, True, 1)
    assert len(deduplicate([d, e])) == 1


def test_fourbus_no_collisions():
    res = solve(fixtures.fourbus(), "basic")
    assert res.count == 8
    assert len({e.code for e in res.equilibria}) == 7


def test_literal_fourbus_couplings():
    assert solve(fixtures.fourbus_literal()).count == 2


def test_all_brackets_empty():
    # |omega| too large for the couplings: every bracket is empty
    res = solve(ModelInput([5.0, -5.0], [1.0, 1.0]), "basic")
    assert res.count == 0
    assert set(res.outcomes.values()) == {BRACKET_EMPTY}


def test_validation_error():
    with pytest.raises(ValidationError):
        solve(ModelInput([1.0, 1.0], [1.0, 1.0]))
    assert solve(ModelInput([4.0, -3.9999], [5.0, 2.0]), fix_sum=True).count == 2


def test_unknown_algorithm():
    with pytest.raises(ValueError):
        solve(EX, "magic")


def _check_invariants(x, res):
    w = np.asarray(x.omega)
    k = np.asarray(x.k)
    assert res.count <= 2**x.n - 2
    for e in res.equilibria:
        th = np.asarray(e.theta)
        assert e.residual <= 1e-8 * (1 + np.max(np.abs(w)))
        assert abs(residual(th, x) - e.residual) <= 1e-15 + 1e-12 * e.residual
        assert abs(np.sum(k * np.sin(th))) <= 1e-9 * max(1.0, np.sum(k))
        assert abs(np.sum(k * np.cos(th)) / x.n - math.sqrt(e.R)) <= 1e-9 * max(1.0, math.sqrt(e.R))
        assert np.all(th > -math.pi) and np.all(th <= math.pi)
        for t, s in zip(th, e.sigma):
            c = math.cos(t)
            if abs(c) > 1e-7:
                assert math.copysign(1, c) == s


def test_basic_optimized_equivalence_and_invariants(rng):
    for i in range(1000):
        n = 2 + i % 9
        x = random_model(rng, n, ic4=bool(i % 2))
        b = solve(x, "basic")
        o = solve(x, "optimized")
        assert match_sets(b.equilibria, o.equilibria, 1e-9), i
        _check_invariants(x, b)
        if x.n <= 8:
            # optimized never visits more patterns than basic
            assert o.patterns_visited <= b.patterns_visited


def test_omega_negation_bijection(rng):
    for i in range(200):
        x = random_model(rng, 2 + i % 6)
        neg = ModelInput([-w for w in x.omega], x.k)
        a = solve(x).equilibria
        b = solve(neg).equilibria
        assert len(a) == len(b)
        mirrored = [oc1_shift([-t for t in e.theta], x.k) for e in a]
        for th in mirrored:
            assert min(angle_gap(th, f.theta) for f in b) <= 1e-9


def test_oracle_equivalence_counts(rng):
    for i in range(60):
        x = random_model(rng, 2 + i % 5)
        assert solve(x).count == solve(x, "oracle").count


def test_backends_agree():
    from kuramoto_eq._backend import BACKENDS

    if "compiled" not in BACKENDS:
        pytest.skip("compiled kernel not built")
    x = fixtures.table1(8)
    a = solve(x, "basic", backend="python")
    b = solve(x, "basic", backend="compiled")
    assert [e.theta for e in a.equilibria] == [e.theta for e in b.equilibria]


def test_n60_fast():
    t0 = time.perf_counter()
    res = solve(fixtures.n60())
    assert res.count == 2
    assert time.perf_counter() - t0 < 10
