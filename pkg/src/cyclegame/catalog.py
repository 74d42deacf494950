"""Built-in games: the four-player NE-free example and the G_k cycle family."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .core import GameForm, PartialPreference, Preference, PreferenceOrder


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    game: GameForm
    preferences: tuple[Preference, ...]
    description: str = ""


MAIN_POSITIONS = (
    ("u1", 1), ("v1", 1),
    ("u2", 2), ("v2", 2), ("w2", 2),
    ("u3", 3), ("v3", 3),
    ("u4", 4),
)
MAIN_TERMINALS = ("a1", "a2", "a3", "a4", "a5")
# successor order within each position fixes the strategy numbering s^i_k
MAIN_EDGES = (
    ("u1", "u2"), ("u1", "u3"),
    ("u2", "v1"), ("u2", "v3"),
    ("v1", "v2"), ("v1", "u4"), ("v1", "w2"),
    ("u3", "v3"), ("u3", "a1"),
    ("v3", "v2"), ("v3", "a2"),
    ("v2", "u4"), ("v2", "a3"),
    ("u4", "w2"), ("u4", "a4"),
    ("w2", "u3"), ("w2", "a5"),
)
MAIN_CYCLE = ("u3", "v3", "v2", "u4", "w2")


def _pairs(game: GameForm, text: str) -> frozenset[tuple[int, int]]:
    out = set()
    for item in text.split():
        x, y = item.split(">")
        out.add((game.outcome_index(x), game.outcome_index(y)))
    return frozenset(out)


def _total(game: GameForm, player: int, chain: str) -> PreferenceOrder:
    return PreferenceOrder(player, tuple(game.outcome_index(t.strip()) for t in chain.split(">")))


def main_game() -> GameForm:
    return GameForm(4, MAIN_POSITIONS, MAIN_TERMINALS, MAIN_EDGES, "u1")


def main_partial_orders(game: GameForm | None = None) -> tuple[PartialPreference, ...]:
    """O_1..O_4 as generating pairs.

    ``min(x, y) > z`` expands to ``x > z, y > z``; ``max(a4, a5) > min(a4, a5)``
    holds in every strict order and adds nothing. O_1 leaves c free.
    """
    game = game or main_game()
    relations = {
        1: "a2>a4 a4>a3 a3>a1 a1>a5",
        2: "a1>a3 c>a3 a3>a4 a3>a5 a4>a2 a5>a2",
        3: "a5>a1 c>a1 a1>a2 a2>a3 a2>a4",
        4: "a1>a4 a2>a4 a3>a4 a5>a4 a4>c",
    }
    return tuple(PartialPreference(i, game.num_outcomes, _pairs(game, s)) for i, s in relations.items())


def main_example() -> CatalogEntry:
    game = main_game()
    return CatalogEntry("main", game, main_partial_orders(game),
                        "four-person game with one dicycle and five terminals, NE-free")


def build_gk(k: int, controllers: dict[int, int] | None = None, initial: str = "v1",
             num_players: int | None = None) -> GameForm:
    """Directed k-cycle v1 -> v2 -> ... -> vk -> v1 with a private exit vj -> aj.

    ``controllers`` maps j (1-based) to a player; by default vj is player j.
    """
    if k < 2:
        raise ValueError("G_k needs k >= 2")
    controllers = controllers or {j: j for j in range(1, k + 1)}
    if sorted(controllers) != list(range(1, k + 1)):
        raise ValueError(f"controllers must cover v1..v{k}")
    n = num_players or max(controllers.values())
    positions = tuple((f"v{j}", controllers[j]) for j in range(1, k + 1))
    terminals = tuple(f"a{j}" for j in range(1, k + 1))
    edges = []
    for j in range(1, k + 1):
        edges.append((f"v{j}", f"v{j % k + 1}"))
        edges.append((f"v{j}", f"a{j}"))
    return GameForm(n, positions, terminals, tuple(edges), initial)


def odd_even(k: int) -> dict[int, int]:
    return {j: 1 if j % 2 else 2 for j in range(1, k + 1)}


def g2_example(initial: str = "v1") -> CatalogEntry:
    game = build_gk(2, initial=initial)
    prefs = (_total(game, 1, "c > a1 > a2"), _total(game, 2, "a1 > a2 > c"))
    return CatalogEntry("g2", game, prefs, "NE from every start, no subgame perfect NE")


def g3_example(initial: str = "v1") -> CatalogEntry:
    game = build_gk(3, initial=initial)
    prefs = (
        _total(game, 1, "a2 > a1 > a3 > c"),
        _total(game, 2, "a3 > a2 > a1 > c"),
        _total(game, 3, "a1 > a3 > a2 > c"),
    )
    return CatalogEntry("g3", game, prefs, "three players, c worst for all, no subgame perfect NE")


def g6_example(initial: str = "v1") -> CatalogEntry:
    """Two players on G_6 (odd/even positions).

    Player 2's order is the partial order generated by the union of the
    chains ``a3 > a2 > a6 > a4 > a5 > c`` and ``a6 > a1 > c``.
    """
    game = build_gk(6, odd_even(6), initial=initial)
    o1 = _total(game, 1, "a6 > a5 > a2 > a1 > a3 > a4 > c")
    o2 = PartialPreference(2, game.num_outcomes, _pairs(game, "a3>a2 a2>a6 a6>a4 a4>a5 a5>c a6>a1 a1>c"))
    return CatalogEntry("g6", game, (o1, o2), "two players, c worst for all, no subgame perfect NE")


CATALOG: dict[str, Callable[[], CatalogEntry]] = {
    "main": main_example,
    "g2": g2_example,
    "g3": g3_example,
    "g6": g6_example,
}


def get(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]()
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; choose from {', '.join(CATALOG)}") from None
