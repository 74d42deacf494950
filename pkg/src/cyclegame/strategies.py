"""Pure stationary strategies, plays and the normal form g : S -> A."""
from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .core import GameForm

DEFAULT_MAX_CELLS = 10**7
_CHUNK = 1 << 15


class NormalFormTooLarge(RuntimeError):
    def __init__(self, count: int, bound: int):
        self.count, self.bound = count, bound
        super().__init__(f"normal form too large: {count} situations exceed bound {bound}")


def max_cells_default() -> int:
    env = os.environ.get("CYCLEGAME_MAX_CELLS")
    return int(env) if env else DEFAULT_MAX_CELLS


@dataclass(frozen=True)
class Strategy:
    player: int
    moves: tuple[tuple[str, str], ...]

    def move(self, v: str) -> str:
        return dict(self.moves)[v]

    def __str__(self):
        return ", ".join(f"({u},{v})" for u, v in self.moves)


@dataclass(frozen=True)
class Situation:
    strategies: tuple[Strategy, ...]

    def __post_init__(self):
        if [s.player for s in self.strategies] != list(range(1, len(self.strategies) + 1)):
            raise ValueError("situation needs one strategy per player, in player order")

    @cached_property
    def moves(self) -> dict[str, str]:
        return {u: v for s in self.strategies for u, v in s.moves}

    def replace(self, strategy: Strategy) -> Situation:
        s = list(self.strategies)
        s[strategy.player - 1] = strategy
        return Situation(tuple(s))


@dataclass(frozen=True)
class Play:
    path: tuple[str, ...]
    outcome: int
    cycle_start: int | None = None

    @property
    def cycle(self) -> tuple[str, ...]:
        """Vertices of the dicycle the play ends in (empty for terminal plays)."""
        if self.cycle_start is None:
            return ()
        return self.path[self.cycle_start:-1]


def _check_player(game: GameForm, player: int):
    if not 1 <= player <= game.num_players:
        raise ValueError(f"player {player} out of range 1..{game.num_players}")


def strategy_count(game: GameForm, player: int) -> int:
    _check_player(game, player)
    return int(np.prod([len(game.successors[v]) for v in game.positions_of(player)], dtype=object))


def enumerate_strategies(game: GameForm, player: int) -> list[Strategy]:
    """All strategies of ``player`` in mixed-radix order.

    The player's positions are taken in declaration order and the first one is
    the fastest-varying digit; successors follow edge declaration order.
    """
    _check_player(game, player)
    own = game.positions_of(player)
    choices = [game.successors[v] for v in own]
    out = []
    for combo in itertools.product(*reversed(choices)):
        combo = combo[::-1]
        out.append(Strategy(player, tuple(zip(own, combo))))
    return out


def resolve_play(game: GameForm, situation: Situation, start: str | None = None) -> Play:
    """Follow the situation's moves from ``start`` until a terminal or a repeat."""
    v = game.initial if start is None else start
    moves = situation.moves
    path = [v]
    seen = {v: 0}
    while not game.is_terminal(v):
        v = moves[v]
        path.append(v)
        if v in seen:
            return Play(tuple(path), game.cycle, seen[v])
        seen[v] = len(path) - 1
    return Play(tuple(path), game.terminal_outcome(v))


def _choice_arrays(game: GameForm, strategies: Sequence[Sequence[Strategy]]):
    idx = game.index
    cols, arrays = [], []
    for i, strats in enumerate(strategies, start=1):
        own = game.positions_of(i)
        cols.append([idx[v] for v in own])
        arrays.append(np.array([[idx[s.move(v)] for v in own] for s in strats], dtype=np.int32).reshape(len(strats), len(own)))
    return cols, arrays


def outcome_table(game: GameForm, axes: Sequence[Sequence[Strategy]], starts=None, max_cells: int | None = None) -> np.ndarray:
    """Outcomes of every situation from every vertex in ``starts``.

    Returns an int array of shape ``(k_1, ..., k_n, len(starts))``. Each
    situation is a functional graph on the vertices (terminals map to
    themselves); after ``|V|`` steps every walk sits on its terminal or inside
    its dicycle.
    """
    shape = tuple(len(a) for a in axes)
    total = int(np.prod(shape, dtype=object))
    bound = max_cells_default() if max_cells is None else max_cells
    if total > bound:
        raise NormalFormTooLarge(total, bound)
    nv = len(game.vertices)
    starts = list(range(nv)) if starts is None else [game.index[v] if isinstance(v, str) else v for v in starts]
    cols, choice = _choice_arrays(game, axes)
    out = np.empty((total, len(starts)), dtype=np.int16)
    vout = game.vertex_outcome
    steps = max(1, nv).bit_length() + 1
    for lo in range(0, total, _CHUNK):
        flat = np.arange(lo, min(total, lo + _CHUNK))
        digits = np.unravel_index(flat, shape) if shape else ()
        nxt = np.tile(np.arange(nv, dtype=np.int32), (len(flat), 1))
        for c, arr, d in zip(cols, choice, digits):
            if c:
                nxt[:, c] = arr[d]
        # pointer doubling: after the loop nxt = f^(2^steps) >= f^|V|
        for _ in range(steps):
            nxt = np.take_along_axis(nxt, nxt, axis=1)
        final = nxt[:, starts]
        res = vout[final]
        res[res < 0] = game.cycle
        out[lo:lo + len(flat)] = res
    return out.reshape(shape + (len(starts),))


@dataclass(frozen=True)
class NormalForm:
    """Dense table ``cells[k_1, ..., k_n]`` of outcomes (0-based strategy indices)."""

    game: GameForm
    start: str
    axes: tuple[tuple[Strategy, ...], ...]
    cells: np.ndarray

    @property
    def shape(self) -> tuple[int, ...]:
        return self.cells.shape

    @property
    def size(self) -> int:
        return int(self.cells.size)

    def situation(self, idx: Sequence[int]) -> Situation:
        return Situation(tuple(ax[k] for ax, k in zip(self.axes, idx)))

    def outcome(self, idx: Sequence[int]) -> int:
        return int(self.cells[tuple(idx)])

    def index_of(self, situation: Situation) -> tuple[int, ...]:
        return tuple(ax.index(s) for ax, s in zip(self.axes, situation.strategies))


def strategy_axes(game: GameForm) -> tuple[tuple[Strategy, ...], ...]:
    return tuple(tuple(enumerate_strategies(game, i)) for i in range(1, game.num_players + 1))


def situation_count(game: GameForm) -> int:
    return int(np.prod([strategy_count(game, i) for i in range(1, game.num_players + 1)], dtype=object))


def build_normal_form(game: GameForm, start: str | None = None, max_cells: int | None = None) -> NormalForm:
    start = game.initial if start is None else start
    bound = max_cells_default() if max_cells is None else max_cells
    count = situation_count(game)
    if count > bound:
        raise NormalFormTooLarge(count, bound)
    axes = strategy_axes(game)
    cells = outcome_table(game, axes, [start], max_cells=bound)[..., 0]
    return NormalForm(game, start, axes, cells)
