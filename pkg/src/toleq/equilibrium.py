"""Verification of tolerant equilibria with constructive witnesses.

A profile passes for player i when the player's strategy mass can be split
across tolerance types so that each type only plays strategies whose regret
is within its tolerance (type consistency) and the mass-weighted mixture
reconstructs the player's strategy exactly.  Because the set of strategies a
type may play only grows with the tolerance, feasibility reduces to
threshold inequalities:
for every atom t, the cumulative type mass up to t must fit inside the
strategy mass with regret <= t.  A greedy lowest-regret-first assignment
then always produces a witness.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .games import Game, MixedProfile, MixedStrategy, regrets
from .numeric import epsnum
from .tolerance import (
    DiscreteToleranceDist,
    DiscreteToleranceProfile,
    TypeStrategyMap,
    point_mass,
)


@dataclass(frozen=True)
class Violation:
    """First failed threshold: cumulative type mass F(threshold) exceeds the
    strategy mass available at that tolerance by excess_mass."""

    player: int
    threshold: float
    excess_mass: float
    detail: str


@dataclass(frozen=True)
class EquilibriumVerdict:
    is_equilibrium: bool
    witness: tuple[TypeStrategyMap, ...] | None
    violation: Violation | None

    def __post_init__(self) -> None:
        if self.is_equilibrium != (self.witness is not None):
            raise ValueError("a positive verdict carries a witness for every player")
        if self.is_equilibrium == (self.violation is not None):
            raise ValueError("a negative verdict carries a violation")


def _check_pi(game: Game, pi: DiscreteToleranceProfile) -> None:
    if len(pi) != game.num_players:
        raise ValueError(
            f"tolerance profile has {len(pi)} players, game has {game.num_players}"
        )


def _player_witness(
    sigma: np.ndarray,
    regret_vec: np.ndarray,
    dist: DiscreteToleranceDist,
    eps: float,
) -> TypeStrategyMap | None:
    """Greedy assignment of type mass to strategy mass, lowest regret first."""
    remaining = sigma.copy()
    order = np.argsort(regret_vec, kind="stable")
    assigned = []
    for t, mass in zip(dist.support, dist.probs):
        need = mass
        alloc = np.zeros_like(sigma)
        for s in order:
            if regret_vec[s] > t + eps:
                break
            take = min(need, remaining[s])
            if take > 0:
                alloc[s] += take
                remaining[s] -= take
                need -= take
            if need <= eps:
                break
        if need > eps:
            return None
        total = alloc.sum()
        alloc = np.clip(alloc / total, 0.0, 1.0)
        assigned.append(MixedStrategy(tuple(alloc / alloc.sum())))
    return TypeStrategyMap(dist.support, tuple(assigned))


def verify_tolerant_equilibrium(
    game: Game,
    profile: MixedProfile,
    pi: DiscreteToleranceProfile,
    eps: float | None = None,
) -> EquilibriumVerdict:
    """Check decomposition feasibility for every player, building a witness if it holds."""
    e = epsnum(eps)
    _check_pi(game, pi)
    witnesses = []
    for player in range(game.num_players):
        sigma = np.asarray(profile[player].probs)
        regret_vec = regrets(game, profile, player)
        dist = pi[player]

        in_support = sigma > e
        stranded = in_support & (regret_vec > dist.max_tolerance + e)
        if np.any(stranded):
            worst = int(np.nonzero(stranded)[0][0])
            return EquilibriumVerdict(
                False,
                None,
                Violation(
                    player=player,
                    threshold=dist.max_tolerance,
                    excess_mass=float(sigma[stranded].sum()),
                    detail=(
                        f"strategy {worst} carries probability {sigma[worst]:.6g} "
                        f"but its regret {regret_vec[worst]:.6g} exceeds every "
                        "tolerance type"
                    ),
                ),
            )

        cumulative = 0.0
        for t, mass in zip(dist.support, dist.probs):
            cumulative += mass
            available = float(sigma[in_support & (regret_vec <= t + e)].sum())
            if cumulative > available + e:
                return EquilibriumVerdict(
                    False,
                    None,
                    Violation(
                        player=player,
                        threshold=t,
                        excess_mass=cumulative - available,
                        detail=(
                            f"types with tolerance <= {t:.6g} have mass "
                            f"{cumulative:.6g} but only {available:.6g} of the "
                            "strategy mass is consistent with them"
                        ),
                    ),
                )

        witness = _player_witness(sigma, regret_vec, dist, e)
        if witness is None:
            # Thresholds passed but greedy failed: only reachable through
            # float drift right at eps; report the max-tolerance threshold.
            return EquilibriumVerdict(
                False,
                None,
                Violation(player, dist.max_tolerance, 0.0, "greedy assignment failed"),
            )
        witnesses.append(witness)
    return EquilibriumVerdict(True, tuple(witnesses), None)


def verify_nash(game: Game, profile: MixedProfile, eps: float | None = None) -> bool:
    """Nash test: every player's supported strategies are exact best responses."""
    pi = DiscreteToleranceProfile.iid(point_mass(0.0), game.num_players)
    return verify_tolerant_equilibrium(game, profile, pi, eps).is_equilibrium


def verify_gp_epsilon_nash(
    game: Game, profile: MixedProfile, epsilon: float, eps: float | None = None
) -> bool:
    """Support-restricted epsilon-Nash test: every supported strategy must be
    an epsilon-best response (equivalent to a point mass at epsilon)."""
    if epsilon < 0:
        raise ValueError(f"epsilon must be non-negative, got {epsilon}")
    e = epsnum(eps)
    for player in range(game.num_players):
        sigma = np.asarray(profile[player].probs)
        regret_vec = regrets(game, profile, player)
        if np.any((sigma > e) & (regret_vec > epsilon + e)):
            return False
    return True


def _symmetric_profile(alpha: float) -> MixedProfile:
    strategy = MixedStrategy((alpha, 1.0 - alpha))
    return MixedProfile((strategy, strategy))


def _check_symmetric_2x2(game: Game) -> None:
    if game.num_players != 2 or game.num_strategies != (2, 2):
        raise ValueError("grid search requires a 2-player, 2-strategy game")
    if not np.allclose(game.payoffs[..., 0], game.payoffs[..., 1].T):
        raise ValueError("grid search requires a symmetric game")


def find_symmetric_2x2_equilibria(
    game: Game,
    pi: DiscreteToleranceProfile,
    grid: int,
    eps: float | None = None,
) -> list[MixedProfile]:
    """All symmetric profiles (alpha on strategy 0) on the grid that verify."""
    _check_symmetric_2x2(game)
    out = []
    for alpha in np.linspace(0.0, 1.0, grid):
        profile = _symmetric_profile(float(alpha))
        if verify_tolerant_equilibrium(game, profile, pi, eps).is_equilibrium:
            out.append(profile)
    return out


def symmetric_alpha_intervals(
    game: Game,
    pi: DiscreteToleranceProfile,
    grid: int,
    eps: float | None = None,
) -> list[tuple[float, float]]:
    """Passing grid alphas merged into maximal runs, reported by endpoints."""
    _check_symmetric_2x2(game)
    alphas = np.linspace(0.0, 1.0, grid)
    passing = [
        verify_tolerant_equilibrium(game, _symmetric_profile(float(a)), pi, eps).is_equilibrium
        for a in alphas
    ]
    intervals: list[tuple[float, float]] = []
    start = None
    for i, ok in enumerate(passing):
        if ok and start is None:
            start = i
        if not ok and start is not None:
            intervals.append((float(alphas[start]), float(alphas[i - 1])))
            start = None
    if start is not None:
        intervals.append((float(alphas[start]), float(alphas[-1])))
    return intervals


def witness_is_valid(
    game: Game,
    profile: MixedProfile,
    pi: DiscreteToleranceProfile,
    witness: tuple[TypeStrategyMap, ...],
    eps: float | None = None,
    mix_tol: float = 1e-9,
) -> bool:
    """Check an explicit witness: type consistency plus exact mixture reconstruction."""
    e = epsnum(eps)
    for player in range(game.num_players):
        g = witness[player]
        dist = pi[player]
        if not g.matches(dist):
            return False
        regret_vec = regrets(game, profile, player)
        for t, strategy in zip(g.support, g.strategies):
            for s in strategy.support(e):
                if regret_vec[s] > t + e:
                    return False
        mixture = g.mixture(dist)
        if np.max(np.abs(mixture - np.asarray(profile[player].probs))) > mix_tol:
            return False
    return True
