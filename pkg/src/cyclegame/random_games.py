"""Seeded random instances for property sweeps."""
from __future__ import annotations

import numpy as np

from .core import GameForm, PartialPreference, PreferenceOrder, PreferenceProfile


def random_game(rng: np.random.Generator, num_positions: int, num_terminals: int, num_players: int,
                max_outdegree: int = 3, acyclic: bool = False) -> GameForm:
    """Random game form with positions ``p0..`` and terminals ``t0..``.

    With ``acyclic`` a position only moves to later positions or terminals.
    Self-loops on positions are allowed otherwise (they are dicycles too).
    """
    positions = tuple((f"p{k}", int(rng.integers(1, num_players + 1))) for k in range(num_positions))
    terminals = tuple(f"t{k}" for k in range(num_terminals))
    names = [v for v, _ in positions] + list(terminals)
    edges = []
    for k in range(num_positions):
        pool = list(range(k + 1, len(names))) if acyclic else list(range(len(names)))
        d = int(rng.integers(1, min(max_outdegree, len(pool)) + 1))
        for j in rng.choice(pool, size=d, replace=False):
            edges.append((names[k], names[int(j)]))
    return GameForm(num_players, positions, terminals, tuple(edges), "p0")


def random_order(rng: np.random.Generator, player: int, num_outcomes: int) -> PreferenceOrder:
    return PreferenceOrder(player, tuple(int(x) for x in rng.permutation(num_outcomes)))


def random_profile(rng: np.random.Generator, game: GameForm) -> PreferenceProfile:
    return PreferenceProfile(tuple(random_order(rng, i, game.num_outcomes) for i in range(1, game.num_players + 1)))


def random_partial(rng: np.random.Generator, player: int, num_outcomes: int, density: float = 0.5) -> PartialPreference:
    """Random strict partial order: pairs consistent with a hidden random permutation."""
    perm = rng.permutation(num_outcomes)
    pairs = set()
    for a in range(num_outcomes):
        for b in range(a + 1, num_outcomes):
            if rng.random() < density:
                pairs.add((int(perm[a]), int(perm[b])))
    return PartialPreference(player, num_outcomes, frozenset(pairs))


def random_win(rng: np.random.Generator, game: GameForm) -> dict[int, int]:
    return {o: int(rng.integers(1, 3)) for o in range(game.num_outcomes)}
