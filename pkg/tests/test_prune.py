import pytest

from kuramoto_eq.conjugate import SignPattern
from kuramoto_eq.errors import InvalidSkipError
from kuramoto_eq.model import ModelInput, normalize, random_model
from kuramoto_eq.oracle import all_roots
from kuramoto_eq.prune import TERMINATE, partial_sum_prune, root_bracket, skip_decrement, swap_prune
from kuramoto_eq import fixtures

EX = normalize(ModelInput([4.0, -4.0], [5.0, 2.0]))


def test_root_bracket_examples():
    b = root_bracket((1, 1), EX)
    assert b.lo <= 4.0 < b.lo * (1 + 1e-15) + 1e-300 or b.lo == pytest.approx(4.0, rel=1e-15)
    assert b.hi == pytest.approx(12.25, rel=1e-15) and b.hi >= 12.25
    b = root_bracket((1, -1), EX)
    assert b.lo <= 4.0 and b.hi >= 6.25 and b.hi == pytest.approx(6.25, rel=1e-15)
    assert root_bracket((-1, -1), EX) is None


def test_partial_sum_examples():
    assert partial_sum_prune((-1, -1), EX)
    assert partial_sum_prune((-1, 1), EX)
    assert not partial_sum_prune((1, -1), EX)
    assert not partial_sum_prune((1, 1), EX)


def test_partial_sum_boundary_exact():
    m = normalize(ModelInput([0.1, -0.1], [1.0, 1.0]))
    # s_1 = -1, s_2 = 0: all partial sums <= 0
    assert partial_sum_prune((-1, 1), m)


def test_skip_decrement_examples():
    assert skip_decrement(0b110101, 6) == 0b101111  # 53 -> 47; codes 52..48 skipped
    assert skip_decrement(15, 4) == TERMINATE
    assert skip_decrement(0b0111, 4) == TERMINATE
    assert skip_decrement(0b1011, 4) == TERMINATE
    with pytest.raises(InvalidSkipError):
        skip_decrement(5, 3, ic4=False)


def test_skip_decrement_msb_convention():
    # sigma = (+1,+1,-1,+1,-1,+1): second-to-last -1 is at position 3
    sigma = SignPattern((1, 1, -1, 1, -1, 1))
    assert sigma.code == 53
    nxt = SignPattern.from_code(skip_decrement(53, 6) + 1, 6)
    assert nxt.signs == (1, 1, -1, -1, -1, -1)


def test_skip_decrement_strictly_decreases():
    for n in range(2, 9):
        for c in range(1 << n):
            nxt = skip_decrement(c, n)
            assert nxt == TERMINATE or 0 <= nxt < c


def test_swap_prune_fourbus():
    m = normalize(fixtures.fourbus())
    # 9 = (+1,-1,-1,+1) rootless; swapping the first two entries gives 5
    assert swap_prune(9, m, 0, 1) == 5
    # k_3^2 - k_2^2 > 0 but too small near the lower end of the domain
    assert swap_prune(3, m, 2, 1) is None
    with pytest.raises(ValueError):
        swap_prune(9, m, 1, 0)


def _oracle_rootless(roots, code):
    return not roots[code]


def test_pruning_soundness_against_oracle(rng):
    """Bracket containment, partial-sum and (IC4) skip soundness, flip monotonicity."""
    for i in range(1000):
        n = 2 + i % 7
        ic4 = i % 2 == 0
        m = normalize(random_model(rng, n, ic4=ic4))
        roots = all_roots(m, grid_points=10_000)
        for code in range(1 << n):
            br = root_bracket(code, m)
            if br is None:
                assert not roots[code], (i, code)
            else:
                for r in roots[code]:
                    assert br.lo <= r.R <= br.hi, (i, code, r)
            if partial_sum_prune(code, m):
                assert not roots[code], (i, code)
        if not m.ic4:
            continue
        for code in range(1 << n):
            if roots[code]:
                continue
            nxt = skip_decrement(code, n)
            lo = 0 if nxt == TERMINATE else nxt + 1
            for skipped in range(lo, code):
                assert not roots[skipped], (i, code, skipped)
            for bit in range(n):
                if code >> bit & 1:
                    assert not roots[code & ~(1 << bit)], (i, code, bit)
