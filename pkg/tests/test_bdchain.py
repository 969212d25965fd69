import numpy as np
import pytest

from qwpath.bdchain import (
    make_chain,
    make_ehrenfest,
    make_random,
    stationary_distribution,
    transition_matrix,
)

from oracles import stationary_by_solve


def test_make_chain_boundary_only():
    c = make_chain(1, [])
    assert np.array_equal(c.pR, [1.0, 0.0])
    assert np.array_equal(c.pL, [0.0, 1.0])


def test_make_chain_symmetric_interior():
    c = make_chain(2, [0.5])
    assert np.array_equal(c.pR, [1.0, 0.5, 0.0])
    assert np.array_equal(c.pL, [0.0, 0.5, 1.0])


def test_make_chain_biased_interior():
    c = make_chain(2, [0.7])
    assert np.array_equal(c.pR, [1.0, 0.7, 0.0])
    assert np.allclose(c.pL, [0.0, 0.3, 1.0], rtol=0, atol=1e-15)


def test_make_chain_rejects_bad_input():
    with pytest.raises(ValueError):
        make_chain(0, [])
    for bad in (0.0, 1.0, -0.2, 1.7):
        with pytest.raises(ValueError):
            make_chain(2, [bad])
    with pytest.raises(ValueError):
        make_chain(3, [0.5])  # wrong interior length


def test_ehrenfest_rates():
    c = make_ehrenfest(2)
    assert np.array_equal(c.pR, [1.0, 0.5, 0.0])
    c = make_ehrenfest(4)
    assert np.array_equal(c.pL, [0.0, 0.25, 0.5, 0.75, 1.0])
    c = make_ehrenfest(1)
    assert np.array_equal(c.pR, [1.0, 0.0])
    with pytest.raises(ValueError):
        make_ehrenfest(0)


@pytest.mark.parametrize("n", [1, 2, 5, 50, 500])
def test_boundaries_and_row_sums(n):
    chain = make_random(n, np.random.default_rng(n)) if n > 1 else make_chain(1, [])
    assert chain.pR[0] == 1.0 and chain.pL[0] == 0.0
    assert chain.pL[n] == 1.0 and chain.pR[n] == 0.0
    P = transition_matrix(chain)
    # entries are constructed, so stochasticity is exact, not approximate
    assert np.all(P.sum(axis=1) == 1.0)
    assert np.all(P >= 0.0)


def test_transition_matrix_small_cases():
    assert np.array_equal(transition_matrix(make_chain(1, [])), [[0, 1], [1, 0]])
    P = transition_matrix(make_chain(2, [0.5]))
    assert np.array_equal(P, [[0, 1, 0], [0.5, 0, 0.5], [0, 1, 0]])


def test_stationary_two_vertex():
    sd = stationary_distribution(make_chain(1, []))
    assert np.allclose(sd.pi, [0.5, 0.5], rtol=0, atol=1e-15)
    assert sd.cPi == pytest.approx(2.0, abs=1e-15)


def test_stationary_symmetric_three_vertex():
    sd = stationary_distribution(make_chain(2, [0.5]))
    assert np.allclose(sd.pi, [0.25, 0.5, 0.25], rtol=0, atol=1e-14)
    assert sd.cPi == pytest.approx(4.0, abs=1e-14)


def test_stationary_biased_three_vertex():
    chain = make_chain(2, [0.7])
    sd = stationary_distribution(chain)
    assert np.allclose(sd.pi, [0.15, 0.5, 0.35], rtol=0, atol=1e-14)
    assert sd.cPi == pytest.approx(20.0 / 3.0, abs=1e-13)
    # detailed balance at the first edge: 0.15 * 1 == 0.5 * 0.3
    assert sd.pi[0] * chain.pR[0] == pytest.approx(sd.pi[1] * chain.pL[1], abs=1e-15)


@pytest.mark.parametrize("n", [2, 3, 7, 20])
def test_stationary_matches_perron_vector(n):
    rng = np.random.default_rng(100 + n)
    for _ in range(5):
        chain = make_random(n, rng)
        pi = stationary_distribution(chain).pi
        pi_solve = stationary_by_solve(transition_matrix(chain))
        assert np.max(np.abs(pi - pi_solve)) < 1e-10


@pytest.mark.parametrize("n", [1, 2, 10, 100, 500])
def test_detailed_balance(n):
    chain = make_random(n, np.random.default_rng(7 * n + 1)) if n > 1 else make_chain(1, [])
    sd = stationary_distribution(chain)
    assert sd.pi.sum() == pytest.approx(1.0, abs=1e-12)
    assert np.all(sd.pi > 0)
    lhs = sd.pi[:-1] * chain.pR[:-1]
    rhs = sd.pi[1:] * chain.pL[1:]
    assert np.max(np.abs(lhs - rhs)) < 1e-12


def test_stationary_overflow_signalled():
    # strongly right-biased chain: weights grow like 9^j and overflow
    with pytest.raises(OverflowError):
        stationary_distribution(make_chain(2000, np.full(1999, 0.9)))


def test_chain_arrays_read_only():
    chain = make_chain(3, [0.4, 0.6])
    with pytest.raises(ValueError):
        chain.pR[1] = 0.5
