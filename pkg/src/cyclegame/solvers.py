"""Backward induction on acyclic games and the attractor solver for two-person win/lose games."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import GameForm, PreferenceOrder, PreferenceProfile
from .strategies import Situation, Strategy


class CyclicGameError(ValueError):
    def __init__(self, cycle: list[str]):
        self.cycle = cycle
        super().__init__("game has a dicycle: " + " -> ".join(cycle + cycle[:1]))


def find_cycle(game: GameForm) -> list[str] | None:
    """First dicycle met by an iterative DFS in declaration order, or None."""
    succ = game.successors
    state: dict[str, int] = {}
    for root in game.vertices:
        if root in state:
            continue
        state[root] = 1
        stack = [(root, iter(succ[root]))]
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                state[v] = 2
                stack.pop()
            elif w not in state:
                state[w] = 1
                stack.append((w, iter(succ[w])))
            elif state[w] == 1:
                path = [u for u, _ in stack]
                return path[path.index(w):]
    return None


def topological_order(game: GameForm) -> list[str]:
    """Kahn's algorithm; raises :class:`CyclicGameError` with a witness on a dicycle."""
    indeg = {v: 0 for v in game.vertices}
    for _, v in game.edges:
        indeg[v] += 1
    queue = deque(v for v in game.vertices if indeg[v] == 0)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in game.successors[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if len(order) != len(game.vertices):
        raise CyclicGameError(find_cycle(game))
    return order


def backward_induction(game: GameForm, profile) -> Situation:
    """Subgame perfect situation of an acyclic game.

    Vertices are processed in reverse topological order; each controller takes
    the successor whose propagated outcome ranks highest in their order,
    breaking ties by edge declaration order.
    """
    orders = profile.orders if isinstance(profile, PreferenceProfile) else tuple(profile)
    if not all(isinstance(o, PreferenceOrder) for o in orders):
        raise ValueError("profile not total")
    rank = {o.player: o.rank for o in orders}
    order = topological_order(game)
    value: dict[str, int] = {}
    choice: dict[str, str] = {}
    for v in reversed(order):
        if game.is_terminal(v):
            value[v] = game.terminal_outcome(v)
            continue
        r = rank[game.controller[v]]
        best = min(game.successors[v], key=lambda w: r[value[w]])
        choice[v] = best
        value[v] = value[best]
    return Situation(tuple(
        Strategy(i, tuple((v, choice[v]) for v in game.positions_of(i)))
        for i in range(1, game.num_players + 1)
    ))


@dataclass(frozen=True)
class AttractorSolution:
    v1_set: frozenset[str]
    v2_set: frozenset[str]
    strategy1: Strategy
    strategy2: Strategy
    winner_from: dict[str, int]
    work: int = 0

    def format(self) -> str:
        lines = ["V1: " + " ".join(sorted(self.v1_set)), "V2: " + " ".join(sorted(self.v2_set))]
        for s in (self.strategy1, self.strategy2):
            lines.append(f"strategy {s.player}")
            lines += [f"move {u} {v}" for u, v in s.moves]
        lines += [f"winner {v} {w}" for v, w in self.winner_from.items()]
        return "\n".join(lines)


def attractor(game: GameForm, target, player: int):
    """Attractor of ``target`` for ``player`` with BFS layers.

    Returns ``(layer, via, work)``: ``layer[v]`` is the round in which v
    joined, ``via[v]`` the move the attracting player uses at v, and ``work``
    counts vertex and edge visits (linear in |V| + |E|).
    """
    pred: dict[str, list[str]] = {v: [] for v in game.vertices}
    for u, v in game.edges:
        pred[v].append(u)
    remaining = {v: len(game.successors[v]) for v, _ in game.positions}
    layer = {t: 0 for t in target}
    via: dict[str, str] = {}
    queue = deque(target)
    work = len(game.vertices)
    while queue:
        w = queue.popleft()
        work += 1
        for u in pred[w]:
            work += 1
            if u in layer:
                continue
            if game.controller[u] == player:
                via[u] = w
                layer[u] = layer[w] + 1
                queue.append(u)
            else:
                remaining[u] -= 1
                if remaining[u] == 0:
                    layer[u] = layer[w] + 1
                    queue.append(u)
    return layer, via, work


def zero_sum_attractor(game: GameForm, win: dict[int, int]) -> AttractorSolution:
    """Solve a two-person game in which every outcome is won by player 1 or 2.

    Let ``f`` be the winner of the cycle outcome and ``g`` the other player.
    ``g`` wins exactly from the attractor of the terminals it wins, pushing
    strictly down the attractor layers; ``f`` wins everywhere else by never
    entering that set, since staying out leads to an ``f``-terminal or cycles.
    """
    if game.num_players != 2:
        raise ValueError("not a two-person game")
    missing = [game.outcome_name(o) for o in range(game.num_outcomes) if win.get(o) not in (1, 2)]
    if missing:
        raise ValueError("incomplete win assignment: " + ", ".join(missing))
    f = win[game.cycle]
    g = 3 - f
    target = [t for t in game.terminals if win[game.terminal_outcome(t)] == g]
    layer, via, work = attractor(game, target, g)
    g_set = frozenset(layer)
    f_set = frozenset(game.vertices) - g_set

    moves = {1: [], 2: []}
    for v, i in game.positions:
        succ = game.successors[v]
        if i == g and v in g_set:
            w = via[v]
        elif i == f and v in f_set:
            w = next(x for x in succ if x in f_set)
            work += succ.index(w) + 1
        else:
            w = succ[0]
        moves[i].append((v, w))

    winner = {v: (g if v in g_set else f) for v in game.vertices}
    v1, v2 = (f_set, g_set) if f == 1 else (g_set, f_set)
    return AttractorSolution(
        v1_set=v1, v2_set=v2,
        strategy1=Strategy(1, tuple(moves[1])), strategy2=Strategy(2, tuple(moves[2])),
        winner_from=winner, work=work,
    )
