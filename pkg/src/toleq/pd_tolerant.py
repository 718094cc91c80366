"""Prisoner's Dilemma under tolerance: willingness, fixed points, statics.

With payoff gains from defecting of ``delta_c`` (against a cooperator) and
``delta_d`` (against a defector), a player facing cooperation probability
``alpha`` is willing to cooperate iff their tolerance covers
``alpha * delta_c + (1 - alpha) * delta_d``.  When everyone who can
cooperate does, the symmetric cooperation level solves

    1 - alpha = F(alpha * delta_c + (1 - alpha) * delta_d)

which this module solves by grid scan plus bisection (continuous F), by
exact piece enumeration (discrete tolerance distributions, where a solution
may not exist), and for asymmetric two-player systems by composing the two
response maps.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .games import Game
from .numeric import epsnum
from .tolerance import ContinuousCdf, DiscreteToleranceDist

DEFAULT_GRID = 10_000
DEFAULT_TOL_ROOT = 1e-12


@dataclass(frozen=True)
class PdPayoffs:
    """Row-player payoffs cc, cd, dc, dd for (C,C), (C,D), (D,C), (D,D).

    The defining ordering is dc > cc > dd > cd, so both defection gains
    delta_c = dc - cc and delta_d = dd - cd are positive.
    """

    cc: float
    cd: float
    dc: float
    dd: float

    def __post_init__(self) -> None:
        if not (self.dc > self.cc > self.dd > self.cd):
            raise ValueError(
                "payoffs must satisfy dc > cc > dd > cd, got "
                f"dc={self.dc}, cc={self.cc}, dd={self.dd}, cd={self.cd}"
            )

    @property
    def delta_c(self) -> float:
        return self.dc - self.cc

    @property
    def delta_d(self) -> float:
        return self.dd - self.cd


def as_game(p: PdPayoffs) -> Game:
    """The symmetric 2x2 game with these row payoffs (strategy 0 = C)."""
    payoffs = np.array(
        [
            [[p.cc, p.cc], [p.cd, p.dc]],
            [[p.dc, p.cd], [p.dd, p.dd]],
        ]
    )
    return Game((("C", "D"), ("C", "D")), payoffs)


def willingness_gap(p: PdPayoffs, alpha_other: float) -> float:
    """Defection gain against an opponent cooperating with probability alpha;
    the minimal tolerance at which cooperation is consistent."""
    if not 0.0 <= alpha_other <= 1.0:
        raise ValueError(f"cooperation probability must lie in [0, 1], got {alpha_other}")
    return alpha_other * p.delta_c + (1.0 - alpha_other) * p.delta_d


def cooperation_probability(p: PdPayoffs, cdf: ContinuousCdf, alpha_other: float) -> float:
    """Probability that a player's tolerance covers the willingness gap."""
    return 1.0 - cdf(willingness_gap(p, alpha_other))


@dataclass(frozen=True)
class FixedPointRoot:
    alpha_star: float
    bracket: tuple[float, float]
    residual: float
    marginal: bool = False


@dataclass(frozen=True)
class FixedPointReport:
    roots: tuple[FixedPointRoot, ...]
    has_zero_root: bool
    uniqueness_certified: bool
    classification: str


def _require_continuous(cdf) -> None:
    if isinstance(cdf, DiscreteToleranceDist):
        raise TypeError("tolerance distribution has atoms; use solve_discrete")
    if not isinstance(cdf, ContinuousCdf):
        raise TypeError(f"expected a continuous tolerance CDF, got {type(cdf).__name__}")


def _bisect(fn, lo: float, hi: float, f_lo: float) -> float:
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid > 0.0) == (f_lo > 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _scan_roots(fn, alphas: np.ndarray, values: np.ndarray, tol_root: float) -> list[FixedPointRoot]:
    """Roots of fn on the grid: exact grid hits plus bisected sign changes.

    A grid hit whose neighbors share a sign is flagged marginal (the curve
    touches zero without crossing).
    """
    candidates: list[FixedPointRoot] = []
    n = len(alphas)
    for k in range(n):
        if abs(values[k]) <= tol_root:
            left = next((values[j] for j in range(k - 1, -1, -1) if abs(values[j]) > tol_root), None)
            right = next((values[j] for j in range(k + 1, n) if abs(values[j]) > tol_root), None)
            marginal = bool(left is not None and right is not None and (left > 0) == (right > 0))
            candidates.append(
                FixedPointRoot(float(alphas[k]), (float(alphas[k]), float(alphas[k])), abs(float(values[k])), marginal)
            )
    for k in range(n - 1):
        a, b = values[k], values[k + 1]
        if abs(a) > tol_root and abs(b) > tol_root and (a > 0) != (b > 0):
            root = _bisect(fn, float(alphas[k]), float(alphas[k + 1]), float(a))
            candidates.append(
                FixedPointRoot(root, (float(alphas[k]), float(alphas[k + 1])), abs(fn(root)), False)
            )
    candidates.sort(key=lambda r: r.alpha_star)
    spacing = float(alphas[1] - alphas[0]) if n > 1 else 1.0
    merged: list[FixedPointRoot] = []
    for root in candidates:
        if merged and root.alpha_star - merged[-1].alpha_star < 0.75 * spacing:
            best = min((merged[-1], root), key=lambda r: (r.marginal, r.residual))
            merged[-1] = best
        else:
            merged.append(root)
    return merged


def solve_symmetric(
    p: PdPayoffs,
    cdf: ContinuousCdf,
    grid: int = DEFAULT_GRID,
    tol_root: float = DEFAULT_TOL_ROOT,
    eps: float | None = None,
) -> FixedPointReport:
    """All symmetric cooperation levels: roots of 1 - a - F(gap(a)) on [0, 1].

    At least one root always exists: the residual is >= 0 at alpha = 0 and
    <= 0 at alpha = 1, and F is continuous.
    """
    _require_continuous(cdf)
    if grid < 1000:
        raise ValueError("grid must have at least 1000 points")
    if tol_root <= 0:
        raise ValueError("root tolerance must be positive")
    e = epsnum(eps)

    def h(alpha: float) -> float:
        return 1.0 - alpha - cdf(willingness_gap(p, alpha))

    alphas = np.linspace(0.0, 1.0, grid + 1)
    gaps = alphas * p.delta_c + (1.0 - alphas) * p.delta_d
    values = 1.0 - alphas - cdf(gaps)
    roots = _scan_roots(h, alphas, values, tol_root)
    return FixedPointReport(
        roots=tuple(roots),
        has_zero_root=cdf(p.delta_d) >= 1.0 - e,
        uniqueness_certified=p.delta_c > p.delta_d,
        classification="unique" if p.delta_c > p.delta_d else "possibly-multiple",
    )


def fixed_point_curve(p: PdPayoffs, cdf: ContinuousCdf, grid: int = 1000):
    """Grid samples of both sides of the fixed-point equation, for plotting."""
    _require_continuous(cdf)
    alphas = np.linspace(0.0, 1.0, grid + 1)
    lhs = 1.0 - alphas
    rhs = cdf(alphas * p.delta_c + (1.0 - alphas) * p.delta_d)
    return alphas, lhs, np.asarray(rhs)


def solve_discrete(
    p: PdPayoffs, pi: DiscreteToleranceDist, eps: float | None = None
) -> list[float]:
    """Self-consistent cooperation levels under a finite tolerance distribution.

    Ties cooperate: a type whose tolerance equals the gap plays C.  The
    response map is piecewise constant in alpha, so each piece is checked
    exactly; an empty result means no such equilibrium exists.
    """
    e = epsnum(eps)
    atoms = np.asarray(pi.support)
    suffix = np.concatenate((np.cumsum(np.asarray(pi.probs)[::-1])[::-1], [0.0]))

    def mass_at_least(x: float) -> float:
        return float(suffix[np.searchsorted(atoms, x - e, side="left")])

    d_c, d_d = p.delta_c, p.delta_d

    def gap(alpha: float) -> float:
        return alpha * d_c + (1.0 - alpha) * d_d

    solutions: list[float] = []
    if abs(d_c - d_d) <= e:
        solutions.append(mass_at_least(d_d))
    elif d_c > d_d:
        breaks = sorted(
            {float((t - d_d) / (d_c - d_d)) for t in atoms if 0.0 < (t - d_d) / (d_c - d_d) < 1.0}
        )
        value = mass_at_least(gap(0.0))
        if abs(value) <= e:
            solutions.append(0.0)
        boundaries = [0.0] + breaks + [1.0]
        for lo, hi in zip(boundaries, boundaries[1:]):
            value = mass_at_least(gap(hi))
            if lo + e < value <= hi + e:
                solutions.append(value)
    else:
        breaks = sorted(
            {float((t - d_d) / (d_c - d_d)) for t in atoms if 0.0 < (t - d_d) / (d_c - d_d) < 1.0}
        )
        boundaries = [0.0] + breaks + [1.0]
        for lo, hi in zip(boundaries, boundaries[1:]):
            value = mass_at_least(gap(lo))
            if lo - e <= value < hi - e:
                solutions.append(value)
        value = mass_at_least(gap(1.0))
        if abs(value - 1.0) <= e:
            solutions.append(1.0)

    deduped: list[float] = []
    for s in sorted(solutions):
        if not deduped or s - deduped[-1] > e:
            deduped.append(min(max(s, 0.0), 1.0))
    return deduped


def solve_asymmetric(
    p1: PdPayoffs,
    p2: PdPayoffs,
    cdf1: ContinuousCdf,
    cdf2: ContinuousCdf,
    grid: int = DEFAULT_GRID,
    tol_root: float = DEFAULT_TOL_ROOT,
) -> list[tuple[float, float]]:
    """Mutually consistent cooperation probabilities (alpha1, alpha2).

    Player i cooperates with the probability that their own tolerance covers
    their own gap at the opponent's cooperation level; substituting player
    2's response into player 1's equation leaves one unknown.
    """
    _require_continuous(cdf1)
    _require_continuous(cdf2)
    if grid < 1000:
        raise ValueError("grid must have at least 1000 points")

    def respond1(alpha2: float) -> float:
        return 1.0 - cdf1(willingness_gap(p1, alpha2))

    def respond2(alpha1: float) -> float:
        return 1.0 - cdf2(willingness_gap(p2, alpha1))

    def phi(alpha1: float) -> float:
        return respond1(respond2(alpha1)) - alpha1

    alphas = np.linspace(0.0, 1.0, grid + 1)
    gaps2 = alphas * p2.delta_c + (1.0 - alphas) * p2.delta_d
    a2 = 1.0 - np.asarray(cdf2(gaps2))
    gaps1 = a2 * p1.delta_c + (1.0 - a2) * p1.delta_d
    values = (1.0 - np.asarray(cdf1(gaps1))) - alphas
    roots = _scan_roots(phi, alphas, values, tol_root)
    return [(r.alpha_star, respond2(r.alpha_star)) for r in roots]


SWEEPABLE = ("a", "b", "c", "d", "delta_c", "delta_d", "shift")


@dataclass(frozen=True)
class SweepPoint:
    param_value: float
    alpha_star: float
    branch_id: int
    marginal: bool


def _instance_for(base: PdPayoffs, cdf: ContinuousCdf, parameter: str, value: float):
    if parameter == "a":
        return replace(base, cc=value), cdf
    if parameter == "b":
        return replace(base, cd=value), cdf
    if parameter == "c":
        return replace(base, dc=value), cdf
    if parameter == "d":
        return replace(base, dd=value), cdf
    if parameter == "delta_c":
        return replace(base, dc=base.cc + value), cdf
    if parameter == "delta_d":
        return replace(base, dd=base.cd + value), cdf
    if parameter == "shift":
        return base, cdf.shifted(value)
    raise ValueError(f"unknown sweep parameter {parameter!r}; choose from {SWEEPABLE}")


def comparative_statics_sweep(
    base: PdPayoffs,
    cdf: ContinuousCdf,
    parameter: str,
    values: list[float],
    grid: int = DEFAULT_GRID,
    tol_root: float = DEFAULT_TOL_ROOT,
    eps: float | None = None,
) -> list[SweepPoint]:
    """Re-solve the symmetric fixed point along a parameter sweep.

    Every root of the first instance starts a branch; at each later value a
    branch continues to the nearest root, matching the informal notion of
    equilibria shifting continuously with the parameters.
    """
    _require_continuous(cdf)
    if not values:
        raise ValueError("sweep needs at least one value")
    rows: list[SweepPoint] = []
    first_p, first_cdf = _instance_for(base, cdf, parameter, values[0])
    report = solve_symmetric(first_p, first_cdf, grid, tol_root, eps)
    tracked = [root.alpha_star for root in report.roots]
    for branch_id, root in enumerate(report.roots):
        rows.append(SweepPoint(float(values[0]), root.alpha_star, branch_id, root.marginal))
    for value in values[1:]:
        swept_p, swept_cdf = _instance_for(base, cdf, parameter, value)
        report = solve_symmetric(swept_p, swept_cdf, grid, tol_root, eps)
        for branch_id, previous in enumerate(tracked):
            nearest = min(report.roots, key=lambda r: abs(r.alpha_star - previous))
            tracked[branch_id] = nearest.alpha_star
            rows.append(SweepPoint(float(value), nearest.alpha_star, branch_id, nearest.marginal))
    return rows
