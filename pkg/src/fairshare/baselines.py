"""Shapley-value baselines and their comparison against the balanced solver.

The scaled Shapley allocation pays member i of coalition C the share
``(phi_i / phi_max) ** rho * v(C)``, where phi is the Shapley value of the
subgame on C. It keeps the best member at the full coalition value and
everyone else below it, but it does not balance pairwise gains: there are
tiny games where no exponent in (0, 1] restores that balance. The
comparison report quantifies exactly that failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import NamedTuple

from .errors import (
    EmptyCoalitionError,
    OutOfRangeError,
    RhoOutOfRangeError,
    ZeroMaxShapleyError,
)
from .games import Game, Scalar, members, submasks
from .solver import RewardMatrix, solve


def shapley(game: Game, coalition: int) -> dict[int, Scalar]:
    """Shapley values of the subgame restricted to one coalition.

    Uses the subset-weight formula: member i's value sums
    ``|S|! (c-1-|S|)! / c!`` times i's marginal contribution over all
    subsets S of the coalition that exclude i. Exact in rational mode.
    The members' values always sum to the coalition's value.
    """
    if not 0 <= coalition < game.num_coalitions:
        raise OutOfRangeError(f"coalition mask {coalition} out of range")
    if coalition == 0:
        raise EmptyCoalitionError("Shapley values need a non-empty coalition")
    v = game.values
    mem = members(coalition)
    c = len(mem)
    weights = [Fraction(factorial(s) * factorial(c - 1 - s), factorial(c)) for s in range(c)]
    out: dict[int, Scalar] = {}
    for i in mem:
        bit = 1 << i
        total: Scalar = 0
        for sub in submasks(coalition ^ bit):
            total += weights[sub.bit_count()] * (v[sub | bit] - v[sub])
        out[i] = total
    return out


@dataclass(frozen=True)
class RhoShapleyMatrix:
    """Scaled Shapley reward table plus the exponent that produced it."""

    matrix: RewardMatrix
    rho: Scalar

    def reward(self, player: int, coalition: int) -> Scalar:
        return self.matrix.reward(player, coalition)


def scaled_rho_shapley(game: Game, rho: Scalar | int) -> RhoShapleyMatrix:
    """Full scaled-Shapley reward table for an exponent in (0, 1].

    Non-members keep their solo value. Members get
    ``(phi_i / phi_max) ** rho * v(C)``. Exact rationals survive only for
    rho == 1; any other exponent forces float mode (the powers are
    irrational in general).
    """
    if not 0 < rho <= 1:
        raise RhoOutOfRangeError(f"rho must be in (0, 1], got {rho}")
    exact = game.exact and rho == 1
    n = game.n_players
    if exact:
        base = [game.values[1 << i] for i in range(n)]
    else:
        base = [float(game.values[1 << i]) for i in range(n)]
    rows: list[list[Scalar]] = [[base[i]] * (1 << n) for i in range(n)]

    for mask in range(1, 1 << n):
        phi = shapley(game, mask)
        phi_max = max(phi.values())
        v_c = game.values[mask]
        if phi_max == 0:
            if v_c > 0:
                raise ZeroMaxShapleyError(
                    f"coalition mask {mask} has value {v_c} but all-zero Shapley values"
                )
            # worthless coalition: every member's share is zero
            for i in phi:
                rows[i][mask] = v_c if exact else 0.0
            continue
        for i, phi_i in phi.items():
            if exact:
                rows[i][mask] = (phi_i / phi_max) * v_c
            elif rho == 1:
                rows[i][mask] = float(phi_i) / float(phi_max) * float(v_c)
            else:
                rows[i][mask] = (float(phi_i) / float(phi_max)) ** float(rho) * float(v_c)

    matrix = RewardMatrix(n, tuple(tuple(row) for row in rows))
    return RhoShapleyMatrix(matrix, rho)


class PairResidual(NamedTuple):
    """How far one (coalition, i, j) triple is from balanced reciprocity."""

    coalition: int
    player_i: int
    player_j: int
    residual: Scalar


def pair_residuals(matrix: RewardMatrix) -> list[PairResidual]:
    """Reciprocity imbalance |(M[i][C]-M[i][C\\j]) - (M[j][C]-M[j][C\\i])|
    for every coalition and unordered member pair.

    All residuals are zero exactly when the matrix balances pairwise gains.
    """
    out: list[PairResidual] = []
    rows = matrix.rewards
    for mask in range(matrix.num_coalitions):
        mem = members(mask)
        for a in range(len(mem)):
            for b in range(a + 1, len(mem)):
                i, j = mem[a], mem[b]
                gain_i = rows[i][mask] - rows[i][mask ^ (1 << j)]
                gain_j = rows[j][mask] - rows[j][mask ^ (1 << i)]
                out.append(PairResidual(mask, i, j, abs(gain_i - gain_j)))
    return out


@dataclass(frozen=True)
class ComparisonReport:
    """Divergence of the scaled Shapley table from the balanced solver."""

    rho: Scalar
    residuals: tuple[PairResidual, ...]
    max_residual: Scalar
    max_residual_witness: tuple[int, int, int] | None
    max_abs_diff: Scalar
    entry_diffs: tuple[tuple[Scalar, ...], ...]  # scaled minus balanced, per entry


def compare_mechanisms(game: Game, rho: Scalar | int) -> ComparisonReport:
    """Measure how the scaled Shapley table diverges from the balanced one.

    Reports every pairwise reciprocity residual of the scaled table, the
    largest one with its witnessing (coalition, i, j), and the entrywise
    difference against ``solve``. When rho forces float mode the balanced
    matrix is converted to float before differencing.
    """
    scaled = scaled_rho_shapley(game, rho).matrix
    balanced = solve(game).matrix
    if not scaled.exact and balanced.exact:
        balanced = balanced.as_float()

    residuals = tuple(pair_residuals(scaled))
    max_residual: Scalar = 0 if scaled.exact else 0.0
    witness: tuple[int, int, int] | None = None
    for r in residuals:
        if witness is None or r.residual > max_residual:
            max_residual = r.residual
            witness = (r.coalition, r.player_i, r.player_j)

    diffs = tuple(
        tuple(s - b for s, b in zip(srow, brow))
        for srow, brow in zip(scaled.rewards, balanced.rewards)
    )
    max_abs_diff = max((abs(d) for row in diffs for d in row), default=max_residual * 0)
    return ComparisonReport(
        rho=rho,
        residuals=residuals,
        max_residual=max_residual,
        max_residual_witness=witness,
        max_abs_diff=max_abs_diff,
        entry_diffs=diffs,
    )
