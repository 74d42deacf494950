import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclegame.catalog import MAIN_CYCLE, build_gk, main_game, odd_even
from cyclegame.random_games import random_game
from cyclegame.strategies import (
    NormalFormTooLarge,
    Situation,
    build_normal_form,
    enumerate_strategies,
    outcome_table,
    resolve_play,
    strategy_axes,
)

# strategy listing of the main example, copied from the normal-form caption
CAPTION = {
    1: [
        {"u1": "u2", "v1": "v2"}, {"u1": "u3", "v1": "v2"},
        {"u1": "u2", "v1": "u4"}, {"u1": "u3", "v1": "u4"},
        {"u1": "u2", "v1": "w2"}, {"u1": "u3", "v1": "w2"},
    ],
    2: [
        {"u2": "v1", "v2": "u4", "w2": "u3"}, {"u2": "v3", "v2": "u4", "w2": "u3"},
        {"u2": "v1", "v2": "a3", "w2": "u3"}, {"u2": "v3", "v2": "a3", "w2": "u3"},
        {"u2": "v1", "v2": "u4", "w2": "a5"}, {"u2": "v3", "v2": "u4", "w2": "a5"},
        {"u2": "v1", "v2": "a3", "w2": "a5"}, {"u2": "v3", "v2": "a3", "w2": "a5"},
    ],
    3: [
        {"u3": "v3", "v3": "v2"}, {"u3": "a1", "v3": "v2"},
        {"u3": "v3", "v3": "a2"}, {"u3": "a1", "v3": "a2"},
    ],
    4: [{"u4": "w2"}, {"u4": "a4"}],
}


def situation(game, *ks):
    return Situation(tuple(enumerate_strategies(game, i + 1)[k - 1] for i, k in enumerate(ks)))


def test_strategy_counts_main():
    g = main_game()
    assert [len(enumerate_strategies(g, i)) for i in range(1, 5)] == [6, 8, 4, 2]


@pytest.mark.parametrize("player", [1, 2, 3, 4])
def test_strategy_numbering_matches_caption(player):
    strats = enumerate_strategies(main_game(), player)
    assert [dict(s.moves) for s in strats] == CAPTION[player]


def test_player_out_of_range():
    with pytest.raises(ValueError):
        enumerate_strategies(main_game(), 5)


def test_gk_two_strategies_per_vertex():
    g = build_gk(5, {j: j for j in range(1, 6)})
    assert all(len(enumerate_strategies(g, i)) == 2 for i in range(1, 6))


def test_play_all_first_strategies_cycles():
    g = main_game()
    play = resolve_play(g, situation(g, 1, 1, 1, 1))
    assert play.path == ("u1", "u2", "v1", "v2", "u4", "w2", "u3", "v3", "v2")
    assert play.outcome == g.cycle
    assert play.cycle_start == 3
    assert set(play.cycle) == set(MAIN_CYCLE)


def test_play_ends_in_a1():
    g = main_game()
    for s2 in range(1, 9):
        for s4 in (1, 2):
            play = resolve_play(g, situation(g, 2, s2, 2, s4))
            assert play.path == ("u1", "u3", "a1")
            assert g.outcome_name(play.outcome) == "a1"
            assert play.cycle_start is None


def test_two_vertex_play():
    g = build_gk(3)
    s = Situation(tuple(enumerate_strategies(g, i)[1] for i in (1, 2, 3)))
    assert resolve_play(g, s, "v2").path == ("v2", "a2")


def test_normal_form_shapes():
    assert build_normal_form(main_game()).shape == (6, 8, 4, 2)
    assert build_normal_form(build_gk(2)).size == 4
    g6 = build_gk(6, odd_even(6))
    assert [len(enumerate_strategies(g6, i)) for i in (1, 2)] == [8, 8]
    assert build_normal_form(g6).size == 64


def test_size_guard(monkeypatch):
    with pytest.raises(NormalFormTooLarge):
        build_normal_form(main_game(), max_cells=100)
    monkeypatch.setenv("CYCLEGAME_MAX_CELLS", "383")
    with pytest.raises(NormalFormTooLarge):
        build_normal_form(main_game())
    monkeypatch.setenv("CYCLEGAME_MAX_CELLS", "384")
    assert build_normal_form(main_game()).size == 384


def test_main_example_single_dicycle(main_nf):
    g = main_nf.game
    for idx in np.ndindex(main_nf.shape):
        play = resolve_play(g, main_nf.situation(idx))
        if play.outcome == g.cycle:
            assert set(play.cycle) == set(MAIN_CYCLE)


def small_games():
    return st.builds(
        lambda seed, n, p, k, acyclic: random_game(np.random.default_rng(seed), n, p, k, acyclic=acyclic),
        st.integers(0, 2**32 - 1), st.integers(1, 6), st.integers(1, 3), st.integers(1, 3), st.booleans(),
    )


@settings(max_examples=60)
@given(small_games())
def test_table_agrees_with_walks(game):
    """The vectorized table and the direct walk are independent routes to g(s)."""
    axes = strategy_axes(game)
    table = outcome_table(game, axes)
    count = int(np.prod([len(a) for a in axes]))
    nonterminal = 1
    for v, _ in game.positions:
        nonterminal *= len(game.successors[v])
    assert count == nonterminal
    for idx in np.ndindex(table.shape[:-1]):
        s = Situation(tuple(ax[k] for ax, k in zip(axes, idx)))
        for vi, v in enumerate(game.vertices):
            play = resolve_play(game, s, v)
            assert play.outcome == table[idx + (vi,)]
            assert len(play.path) <= len(game.vertices) + 1


@settings(max_examples=60)
@given(small_games(), st.data())
def test_play_locality(game, data):
    axes = strategy_axes(game)
    idx = tuple(data.draw(st.integers(0, len(a) - 1)) for a in axes)
    s = Situation(tuple(ax[k] for ax, k in zip(axes, idx)))
    play = resolve_play(game, s)
    off_path = [v for v, _ in game.positions if v not in play.path]
    if not off_path:
        return
    v = data.draw(st.sampled_from(off_path))
    w = data.draw(st.sampled_from(game.successors[v]))
    moves = dict(s.moves)
    moves[v] = w
    changed = Situation(tuple(
        type(st_)(st_.player, tuple((u, moves[u]) for u, _ in st_.moves)) for st_ in s.strategies
    ))
    assert resolve_play(game, changed).outcome == play.outcome
