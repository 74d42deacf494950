"""Positional game forms, outcomes and preference orders.

Outcomes are plain integers: ``0 .. p-1`` index the terminals in declaration
order and ``p`` (``game.cycle``) is the single outcome shared by every
infinite (cycling) play.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

CYCLE_TOKEN = "c"


@dataclass(frozen=True)
class GameForm:
    """Digraph with a partition of its positions among players and terminals.

    ``positions`` lists ``(name, player)`` pairs in declaration order; that
    order, together with the order of ``edges``, fixes strategy numbering.
    """

    num_players: int
    positions: tuple[tuple[str, int], ...]
    terminals: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    initial: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "positions", tuple((str(v), int(i)) for v, i in self.positions))
        object.__setattr__(self, "terminals", tuple(self.terminals))
        object.__setattr__(self, "edges", tuple((str(u), str(v)) for u, v in self.edges))

    # -- vertex bookkeeping -------------------------------------------------
    @cached_property
    def vertices(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.positions) + self.terminals

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: k for k, v in enumerate(self.vertices)}

    @cached_property
    def controller(self) -> dict[str, int]:
        return dict(self.positions)

    @cached_property
    def successors(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v in self.edges:
            out.setdefault(u, []).append(v)
        return {u: tuple(vs) for u, vs in out.items()}

    @property
    def num_positions(self) -> int:
        return len(self.positions)

    @property
    def num_outcomes(self) -> int:
        return len(self.terminals) + 1

    @property
    def cycle(self) -> int:
        return len(self.terminals)

    def is_terminal(self, v: str) -> bool:
        return v in self._terminal_set

    @cached_property
    def _terminal_set(self) -> frozenset[str]:
        return frozenset(self.terminals)

    def positions_of(self, player: int) -> tuple[str, ...]:
        return tuple(v for v, i in self.positions if i == player)

    def with_initial(self, initial: str) -> GameForm:
        return GameForm(self.num_players, self.positions, self.terminals, self.edges, initial)

    # -- outcomes -----------------------------------------------------------
    def outcome_name(self, o: int) -> str:
        return CYCLE_TOKEN if o == self.cycle else self.terminals[o]

    def outcome_index(self, token: str) -> int:
        if token == CYCLE_TOKEN:
            return self.cycle
        try:
            return self.terminals.index(token)
        except ValueError:
            raise KeyError(f"unknown outcome {token!r}") from None

    def terminal_outcome(self, v: str) -> int:
        return self.terminals.index(v)

    # -- integer view used by the solvers -----------------------------------
    @cached_property
    def succ_index(self) -> tuple[tuple[int, ...], ...]:
        """Successor vertex indices per vertex, in edge declaration order."""
        idx = self.index
        return tuple(tuple(idx[w] for w in self.successors.get(v, ())) for v in self.vertices)

    @cached_property
    def vertex_outcome(self) -> np.ndarray:
        """Outcome of each vertex if it is a terminal, ``-1`` otherwise."""
        out = np.full(len(self.vertices), -1, dtype=np.int64)
        out[self.num_positions:] = np.arange(len(self.terminals))
        return out


def validate(game: GameForm) -> list[str]:
    """Return every structural defect of ``game``; an empty list means valid."""
    problems = []
    if game.num_players < 1:
        problems.append(f"players must be >= 1, got {game.num_players}")
    seen: set[str] = set()
    for v in game.vertices:
        if not v or any(ch.isspace() for ch in v) or ">" in v:
            problems.append(f"bad vertex name {v!r}")
        if v == CYCLE_TOKEN:
            problems.append(f"vertex name {CYCLE_TOKEN!r} is reserved for the cycle outcome")
        if v in seen:
            problems.append(f"duplicate vertex {v}")
        seen.add(v)
    for v, i in game.positions:
        if not 1 <= i <= game.num_players:
            problems.append(f"position {v} controlled by player {i} outside 1..{game.num_players}")
    edge_seen: set[tuple[str, str]] = set()
    for u, v in game.edges:
        for end in (u, v):
            if end not in seen:
                problems.append(f"edge {u}->{v} uses undeclared vertex {end}")
        if (u, v) in edge_seen:
            problems.append(f"duplicate edge {u}->{v}")
        edge_seen.add((u, v))
        if u in game._terminal_set:
            problems.append(f"terminal has out-edge: {u}->{v}")
    for v, _ in game.positions:
        if not game.successors.get(v):
            problems.append(f"position {v} has no out-edge")
    if game.initial is None:
        problems.append("initial position missing")
    elif game.initial not in seen:
        problems.append(f"initial {game.initial} is not a vertex")
    elif game.is_terminal(game.initial):
        problems.append(f"initial is terminal: {game.initial}")
    return problems


class InvalidGameError(ValueError):
    def __init__(self, problems: Sequence[str]):
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


def check(game: GameForm) -> GameForm:
    problems = validate(game)
    if problems:
        raise InvalidGameError(problems)
    return game


# ---------------------------------------------------------------------------
# preferences


class CyclicRelationError(ValueError):
    pass


@dataclass(frozen=True)
class PreferenceOrder:
    """Strict total order of a player over all outcomes, best first."""

    player: int
    ranking: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ranking", tuple(int(o) for o in self.ranking))
        if sorted(self.ranking) != list(range(len(self.ranking))):
            raise ValueError(f"ranking {self.ranking} is not a permutation of the outcomes")

    @property
    def num_outcomes(self) -> int:
        return len(self.ranking)

    @cached_property
    def rank(self) -> np.ndarray:
        """``rank[o]`` is the position of ``o`` in the ranking (0 = best)."""
        r = np.empty(len(self.ranking), dtype=np.int64)
        r[list(self.ranking)] = np.arange(len(self.ranking))
        return r

    def better_matrix(self) -> np.ndarray:
        r = self.rank
        return r[:, None] < r[None, :]

    def prefers(self, x: int, y: int) -> bool:
        return bool(self.rank[x] < self.rank[y])


@dataclass(frozen=True)
class PartialPreference:
    """Strict partial order given by generating pairs ``(better, worse)``."""

    player: int
    num_outcomes: int
    relations: frozenset[tuple[int, int]] = field(default_factory=frozenset)

    def __post_init__(self):
        rel = frozenset((int(x), int(y)) for x, y in self.relations)
        object.__setattr__(self, "relations", rel)
        for x, y in rel:
            if not (0 <= x < self.num_outcomes and 0 <= y < self.num_outcomes):
                raise ValueError(f"relation {x}>{y} outside 0..{self.num_outcomes - 1}")
        if np.any(np.diag(self.closure)):
            raise CyclicRelationError("cyclic relation set")

    @cached_property
    def closure(self) -> np.ndarray:
        """Transitive closure as a boolean matrix ``B[x, y]`` = x above y."""
        m = self.num_outcomes
        b = np.zeros((m, m), dtype=bool)
        for x, y in self.relations:
            b[x, y] = True
        for k in range(m):
            b |= b[:, [k]] & b[[k], :]
        return b

    def better_matrix(self) -> np.ndarray:
        return self.closure

    def prefers(self, x: int, y: int) -> bool:
        return bool(self.closure[x, y])

    def agrees(self, order: PreferenceOrder) -> bool:
        return bool(np.all(order.better_matrix()[self.closure]))


Preference = PreferenceOrder | PartialPreference


@dataclass(frozen=True)
class PreferenceProfile:
    orders: tuple[PreferenceOrder, ...]

    def __post_init__(self):
        orders = tuple(sorted(self.orders, key=lambda o: o.player))
        object.__setattr__(self, "orders", orders)
        if [o.player for o in orders] != list(range(1, len(orders) + 1)):
            raise ValueError("profile needs exactly one order per player 1..n")

    def __len__(self):
        return len(self.orders)

    def __getitem__(self, player: int) -> PreferenceOrder:
        return self.orders[player - 1]


def as_partial(pref: Preference) -> PartialPreference:
    if isinstance(pref, PartialPreference):
        return pref
    r = pref.ranking
    return PartialPreference(pref.player, len(r), frozenset(zip(r, r[1:])))


def linear_extensions(p: PartialPreference | PreferenceOrder) -> Iterator[PreferenceOrder]:
    """Yield every total order agreeing with ``p``, lexicographically by outcome index.

    Each step places the smallest-index outcome that has no unplaced outcome
    above it, so the rankings come out in lexicographic order.
    """
    p = as_partial(p)
    m = p.num_outcomes
    above = [frozenset(np.flatnonzero(p.closure[:, y]).tolist()) for y in range(m)]
    ranking: list[int] = []
    placed = [False] * m

    def rec():
        if len(ranking) == m:
            yield PreferenceOrder(p.player, tuple(ranking))
            return
        for o in range(m):
            if not placed[o] and all(placed[x] for x in above[o]):
                placed[o] = True
                ranking.append(o)
                yield from rec()
                ranking.pop()
                placed[o] = False

    yield from rec()


def count_linear_extensions(p: PartialPreference | PreferenceOrder) -> int:
    """Number of linear extensions, by dynamic programming over placed subsets."""
    p = as_partial(p)
    m = p.num_outcomes
    above = [sum(1 << x for x in np.flatnonzero(p.closure[:, y]).tolist()) for y in range(m)]
    ways = {0: 1}
    for _ in range(m):
        nxt: dict[int, int] = {}
        for mask, w in ways.items():
            for o in range(m):
                if not mask >> o & 1 and above[o] & mask == above[o]:
                    key = mask | 1 << o
                    nxt[key] = nxt.get(key, 0) + w
        ways = nxt
    return sum(ways.values())
