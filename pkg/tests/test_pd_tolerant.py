"""Willingness gaps, the cooperation fixed point, and comparative statics."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import toleq as tq
from toleq.pd_tolerant import as_game

EXAMPLE = tq.PdPayoffs(cc=3, cd=-1, dc=5, dd=0)  # delta_c = 2, delta_d = 1

# piecewise-linear CDF engineered so the response curve crosses the
# diagonal three times when delta_c < delta_d (hand-derived roots)
MULTI_PAYOFFS = tq.PdPayoffs(cc=2, cd=-1.5, dc=3, dd=0.5)  # delta_c = 1, delta_d = 2
MULTI_CDF = tq.PiecewiseLinearCdf((0, 1, 1.2, 1.5, 1.8, 2.5), (0, 0.05, 0.4, 0.45, 0.9, 1.0))
MULTI_ROOTS = (1 / 12, 0.4, 0.56)


def test_payoff_ordering_enforced():
    with pytest.raises(ValueError):
        tq.PdPayoffs(cc=3, cd=1, dc=5, dd=0)  # dd < cd violated
    with pytest.raises(ValueError):
        tq.PdPayoffs(cc=5, cd=-1, dc=3, dd=0)


def test_willingness_gap_endpoints_and_example():
    assert tq.willingness_gap(EXAMPLE, 0.0) == pytest.approx(1.0)  # delta_d
    assert tq.willingness_gap(EXAMPLE, 1.0) == pytest.approx(2.0)  # delta_c
    for alpha in (0.0, 0.25, 0.5, 1.0):
        assert tq.willingness_gap(EXAMPLE, alpha) == pytest.approx(alpha + 1.0)
    with pytest.raises(ValueError):
        tq.willingness_gap(EXAMPLE, 1.2)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10**9))
def test_gap_equals_utility_difference(seed):
    rng = np.random.default_rng(seed)
    cd = float(rng.uniform(-5, 0))
    dd = cd + float(rng.uniform(0.1, 3))
    cc = dd + float(rng.uniform(0.1, 3))
    dc = cc + float(rng.uniform(0.1, 3))
    p = tq.PdPayoffs(cc=cc, cd=cd, dc=dc, dd=dd)
    alpha = float(rng.uniform(0, 1))
    game = as_game(p)
    opponent = tq.MixedStrategy((alpha, 1 - alpha))
    prof = tq.MixedProfile((opponent, opponent))
    u_defect = tq.strategy_utilities(game, prof, 0)[1]
    u_cooperate = tq.strategy_utilities(game, prof, 0)[0]
    assert tq.willingness_gap(p, alpha) == pytest.approx(u_defect - u_cooperate, abs=1e-12)


def test_cooperation_probability():
    assert tq.cooperation_probability(EXAMPLE, tq.UniformCdf(0, 4), 0.6) == pytest.approx(0.6)
    assert tq.cooperation_probability(EXAMPLE, tq.UniformCdf(0, 1), 0.5) == 0.0
    assert tq.cooperation_probability(EXAMPLE, tq.UniformCdf(5, 10), 0.5) == 1.0


def test_symmetric_unique_root_closed_form():
    report = tq.solve_symmetric(EXAMPLE, tq.UniformCdf(0, 4))
    assert report.classification == "unique"
    assert report.uniqueness_certified
    assert not report.has_zero_root
    assert len(report.roots) == 1
    root = report.roots[0]
    assert root.alpha_star == pytest.approx(0.6, abs=1e-9)  # solves 1 - a = (1 + a)/4
    assert root.residual <= 1e-12
    assert not root.marginal


def test_zero_root_when_cdf_saturates_at_delta_d():
    report = tq.solve_symmetric(EXAMPLE, tq.UniformCdf(0, 1))  # F(delta_d) = 1
    assert report.has_zero_root
    assert any(r.alpha_star == pytest.approx(0.0, abs=1e-9) for r in report.roots)


def test_full_cooperation_root_when_cdf_above_delta_c():
    report = tq.solve_symmetric(EXAMPLE, tq.UniformCdf(5, 10))
    assert [r.alpha_star for r in report.roots] == [pytest.approx(1.0, abs=1e-12)]


def test_multi_root_instance():
    report = tq.solve_symmetric(MULTI_PAYOFFS, MULTI_CDF)
    assert report.classification == "possibly-multiple"
    assert not report.uniqueness_certified
    found = sorted(r.alpha_star for r in report.roots)
    assert len(found) == 3
    for got, want in zip(found, MULTI_ROOTS):
        assert got == pytest.approx(want, abs=1e-9)


def test_residuals_recompute_through_game_utilities():
    for payoffs, cdf in ((EXAMPLE, tq.UniformCdf(0, 4)), (MULTI_PAYOFFS, MULTI_CDF)):
        game = as_game(payoffs)
        for root in tq.solve_symmetric(payoffs, cdf).roots:
            alpha = root.alpha_star
            opponent = tq.MixedStrategy((alpha, 1 - alpha))
            prof = tq.MixedProfile((opponent, opponent))
            utilities = tq.strategy_utilities(game, prof, 0)
            gap = utilities[1] - utilities[0]
            assert 1 - alpha - cdf(gap) == pytest.approx(0.0, abs=1e-9)


def test_solver_requires_continuous_cdf():
    with pytest.raises(TypeError):
        tq.solve_symmetric(EXAMPLE, tq.point_mass(1.5))
    with pytest.raises(ValueError):
        tq.solve_symmetric(EXAMPLE, tq.UniformCdf(0, 4), grid=10)


def test_discrete_point_masses():
    assert tq.solve_discrete(EXAMPLE, tq.point_mass(2.0)) == [1.0]  # t >= delta_c
    assert tq.solve_discrete(EXAMPLE, tq.point_mass(0.5)) == [0.0]  # t < delta_d
    assert tq.solve_discrete(EXAMPLE, tq.point_mass(1.5)) == []  # the non-existence case


def test_discrete_tie_breaks_toward_cooperation():
    # gap(1) = delta_c exactly: a point mass right at delta_c still cooperates
    result = tq.solve_discrete(EXAMPLE, tq.point_mass(EXAMPLE.delta_c))
    assert result == [1.0]


def test_discrete_interior_solution():
    # mass 0.6 tolerant enough only while gap <= 1.7 (alpha <= 0.7): alpha = 0.6 solves
    pi = tq.DiscreteToleranceDist((0.2, 1.7), (0.4, 0.6))
    assert tq.solve_discrete(EXAMPLE, pi) == [pytest.approx(0.6)]


def test_discrete_matches_continuous_limit():
    # quantile discretization of uniform(0, 4) converges to the continuous root
    n = 10_000
    atoms = tuple(4.0 * (k + 0.5) / n for k in range(n))
    probs = tuple(1.0 / n for _ in range(n))
    pi = tq.DiscreteToleranceDist(atoms, probs)
    solutions = tq.solve_discrete(EXAMPLE, pi)
    assert len(solutions) == 1
    assert solutions[0] == pytest.approx(0.6, abs=1e-3)


def test_asymmetric_contains_symmetric_solution():
    pairs = tq.solve_asymmetric(EXAMPLE, EXAMPLE, tq.UniformCdf(0, 4), tq.UniformCdf(0, 4))
    assert any(
        a1 == pytest.approx(0.6, abs=1e-9) and a2 == pytest.approx(0.6, abs=1e-9)
        for a1, a2 in pairs
    )


def test_asymmetric_with_intolerant_opponent():
    # player 2's tolerances all sit below their gap, so alpha_2 = 0 and
    # player 1 solves 1 - a = F1(delta_d)
    f1 = tq.UniformCdf(0, 4)
    f2 = tq.UniformCdf(0, 0.5)
    pairs = tq.solve_asymmetric(EXAMPLE, EXAMPLE, f1, f2)
    assert len(pairs) == 1
    a1, a2 = pairs[0]
    assert a2 == pytest.approx(0.0, abs=1e-9)
    assert a1 == pytest.approx(1 - f1(EXAMPLE.delta_d), abs=1e-9)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**9))
def test_asymmetric_pairs_satisfy_both_equations(seed):
    rng = np.random.default_rng(seed)

    def random_payoffs():
        cd = float(rng.uniform(-4, 0))
        dd = cd + float(rng.uniform(0.2, 2))
        cc = dd + float(rng.uniform(0.2, 2))
        dc = cc + float(rng.uniform(0.2, 2))
        return tq.PdPayoffs(cc=cc, cd=cd, dc=dc, dd=dd)

    def random_cdf():
        lo = float(rng.uniform(0, 1.5))
        return tq.UniformCdf(lo, lo + float(rng.uniform(0.5, 4)))

    p1, p2 = random_payoffs(), random_payoffs()
    f1, f2 = random_cdf(), random_cdf()
    pairs = tq.solve_asymmetric(p1, p2, f1, f2)
    assert pairs
    for a1, a2 in pairs:
        assert a1 == pytest.approx(1 - f1(tq.willingness_gap(p1, a2)), abs=1e-8)
        assert a2 == pytest.approx(1 - f2(tq.willingness_gap(p2, a1)), abs=1e-8)


def sweep_alphas(points, branch=0):
    return [p.alpha_star for p in points if p.branch_id == branch]


def test_sweep_delta_c_decreases_cooperation():
    values = list(np.linspace(1.5, 3.5, 11))
    points = tq.comparative_statics_sweep(EXAMPLE, tq.UniformCdf(0, 4), "delta_c", values)
    alphas = sweep_alphas(points)
    assert all(b <= a + 1e-9 for a, b in zip(alphas, alphas[1:]))
    assert alphas[-1] < alphas[0]


def test_sweep_a_increases_cooperation():
    values = list(np.linspace(2.0, 4.5, 11))
    points = tq.comparative_statics_sweep(EXAMPLE, tq.UniformCdf(0, 4), "a", values)
    alphas = sweep_alphas(points)
    assert all(b >= a - 1e-9 for a, b in zip(alphas, alphas[1:]))
    assert alphas[-1] > alphas[0]


def test_sweep_shift_increases_cooperation():
    values = list(np.linspace(0.0, 2.0, 9))
    points = tq.comparative_statics_sweep(EXAMPLE, tq.UniformCdf(0, 4), "shift", values)
    alphas = sweep_alphas(points)
    assert all(b >= a - 1e-9 for a, b in zip(alphas, alphas[1:]))
    assert alphas[-1] > alphas[0]


def test_sweep_rejects_ordering_violation():
    with pytest.raises(ValueError):
        tq.comparative_statics_sweep(EXAMPLE, tq.UniformCdf(0, 4), "a", [10.0])


def count_crossings(values):
    signs = np.sign(values)
    signs = signs[signs != 0]  # an exact zero sits inside one crossing
    return int(np.count_nonzero(np.diff(signs) != 0))


def test_fixed_point_curve_crossings():
    alphas, lhs, rhs = tq.fixed_point_curve(EXAMPLE, tq.UniformCdf(0, 4), grid=2000)
    assert count_crossings(lhs - rhs) == 1
    alphas, lhs, rhs = tq.fixed_point_curve(MULTI_PAYOFFS, MULTI_CDF, grid=2000)
    assert count_crossings(lhs - rhs) >= 2


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**9))
def test_root_always_exists(seed):
    # both gain regimes: the residual is >= 0 at alpha 0 and <= 0 at alpha 1,
    # so a continuous CDF always crosses
    rng = np.random.default_rng(seed)
    cd = float(rng.uniform(-4, 0))
    dd = cd + float(rng.uniform(0.2, 2.5))
    cc = dd + float(rng.uniform(0.2, 2.5))
    dc = cc + float(rng.uniform(0.05, 4))
    p = tq.PdPayoffs(cc=cc, cd=cd, dc=dc, dd=dd)
    lo = float(rng.uniform(0, 2))
    cdf = tq.UniformCdf(lo, lo + float(rng.uniform(0.3, 5)))
    report = tq.solve_symmetric(p, cdf, grid=2000)
    assert len(report.roots) >= 1
    assert all(r.residual <= 1e-9 for r in report.roots)


def test_sweep_c_and_d_decrease_cooperation():
    points = tq.comparative_statics_sweep(
        EXAMPLE, tq.UniformCdf(0, 4), "c", list(np.linspace(4.5, 6.5, 9))
    )
    alphas = sweep_alphas(points)
    assert all(b <= a + 1e-9 for a, b in zip(alphas, alphas[1:])) and alphas[-1] < alphas[0]
    points = tq.comparative_statics_sweep(
        EXAMPLE, tq.UniformCdf(0, 4), "d", list(np.linspace(0.0, 2.0, 9))
    )
    alphas = sweep_alphas(points)
    assert all(b <= a + 1e-9 for a, b in zip(alphas, alphas[1:])) and alphas[-1] < alphas[0]


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**9))
def test_unique_root_when_delta_c_dominates(seed):
    rng = np.random.default_rng(seed)
    cd = float(rng.uniform(-4, 0))
    dd = cd + float(rng.uniform(0.2, 1.5))
    cc = dd + float(rng.uniform(0.2, 2))
    dc = cc + dd - cd + float(rng.uniform(0.05, 2))  # forces delta_c > delta_d
    p = tq.PdPayoffs(cc=cc, cd=cd, dc=dc, dd=dd)
    lo = float(rng.uniform(0, 1))
    cdf = tq.UniformCdf(lo, lo + float(rng.uniform(0.5, 5)))
    report = tq.solve_symmetric(p, cdf, grid=2000)
    assert report.uniqueness_certified
    assert len(report.roots) == 1
    assert report.roots[0].residual <= 1e-9
