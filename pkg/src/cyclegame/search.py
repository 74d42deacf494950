"""Exhaustive subgame perfect NE search over all preference profiles of a game form.

A situation is subgame perfect for a profile iff each player is stable at
every start vertex under their own order, so each player's stability mask is
computed once per order and profiles are scored by intersecting masks.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .catalog import build_gk, odd_even
from .core import GameForm, PreferenceOrder
from .equilibrium import improvement_mask
from .strategies import outcome_table, strategy_axes


def all_orders(player: int, num_outcomes: int, cycle_last: bool) -> list[PreferenceOrder]:
    if cycle_last:
        c = num_outcomes - 1
        return [PreferenceOrder(player, p + (c,)) for p in itertools.permutations(range(c))]
    return [PreferenceOrder(player, p) for p in itertools.permutations(range(num_outcomes))]


def stability_masks(game: GameForm, orders_per_player: list[list[PreferenceOrder]]) -> list[np.ndarray]:
    """``masks[i][e, s]``: player i+1 is stable at flat situation s from every start under order e."""
    starts = [v for v, _ in game.positions]
    table = outcome_table(game, strategy_axes(game), starts)
    shape = table.shape[:-1]
    masks = []
    for i, orders in enumerate(orders_per_player):
        rows = []
        for o in orders:
            b = o.better_matrix()
            ok = np.ones(shape, dtype=bool)
            for k in range(len(starts)):
                ok &= ~improvement_mask(table[..., k], i, b)
            rows.append(ok.ravel())
        masks.append(np.array(rows))
    return masks


@dataclass
class SearchResult:
    game: GameForm
    profiles: int = 0
    without_spne: int = 0
    examples: list[tuple[PreferenceOrder, ...]] = field(default_factory=list)

    def format(self) -> str:
        lines = [f"profiles examined: {self.profiles}", f"profiles without SPNE: {self.without_spne}"]
        for prof in self.examples:
            lines.append("  " + "; ".join(
                f"o_{o.player}: " + " > ".join(self.game.outcome_name(x) for x in o.ranking) for o in prof))
        lines.append(f"RESULT spne_always={'true' if self.without_spne == 0 else 'false'} "
                     f"profiles={self.profiles} counterexamples={self.without_spne}")
        return "\n".join(lines)


def two_player_search(game: GameForm, cycle_last: bool = True, keep: int = 5) -> SearchResult:
    """Every pair of total orders for a two-player game; counts pairs with no SPNE."""
    if game.num_players != 2:
        raise ValueError("two_player_search needs a two-person game")
    options = [all_orders(i, game.num_outcomes, cycle_last) for i in (1, 2)]
    m1, m2 = stability_masks(game, options)
    # joint[e1, e2] > 0 iff some situation is stable for both players
    joint = m1.astype(np.int32) @ m2.T.astype(np.int32)
    bad = np.argwhere(joint == 0)
    res = SearchResult(game, int(joint.size), int(len(bad)))
    res.examples = [(options[0][a], options[1][b]) for a, b in bad[:keep]]
    return res


def g4_search(cycle_last: bool = True) -> SearchResult:
    """G_4 with players 1 and 2 on the odd and even positions."""
    return two_player_search(build_gk(4, odd_even(4)), cycle_last)
