"""Nash and subgame perfect equilibria, improvement labels, NE-free certificates.

Every check works on a "better" matrix ``B[x, y]`` (x strictly preferred to
y). For a total order that is the order itself; for a partial order it is the
transitive closure, so an improvement found under a partial order holds in
every linear extension of it.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import (
    GameForm,
    PartialPreference,
    Preference,
    PreferenceOrder,
    PreferenceProfile,
    count_linear_extensions,
    linear_extensions,
)
from .strategies import NormalForm, Situation, enumerate_strategies, outcome_table, resolve_play, strategy_axes

DEFAULT_MAX_PROFILES = 10**6


class ExtensionBoundExceeded(RuntimeError):
    def __init__(self, count: int, bound: int):
        self.count, self.bound = count, bound
        super().__init__(f"{count} linear-extension profiles exceed bound {bound}")


@dataclass(frozen=True)
class ImprovementLabel:
    situation: tuple[int, ...]
    outcome: int
    improvers: frozenset[int]


@dataclass
class NEReport:
    """Result of an equilibrium search.

    ``equilibria`` holds 0-based strategy-index tuples. In certificate mode
    they are the uncertified situations (potential NE for some extension); in
    the multi-profile modes, every situation that is an equilibrium under at
    least one examined profile.
    """

    mode: str
    equilibria: list[tuple[int, ...]]
    profile_count: int
    profiles_with_equilibria: int = 0
    notes: list[str] = field(default_factory=list)
    witness: tuple | None = None

    @property
    def ne_free(self) -> bool:
        return not self.equilibria

    def trailer(self) -> str:
        key = "spne_free" if self.mode.startswith("subgame-perfect") else "ne_free"
        return (f"RESULT {key}={'true' if self.ne_free else 'false'} "
                f"profiles={self.profile_count} equilibria={len(self.equilibria)}")

    def format(self, game: GameForm | None = None) -> str:
        lines = [f"mode: {self.mode}"]
        lines += [f"note: {n}" for n in self.notes]
        lines.append(f"profiles examined: {self.profile_count}")
        if self.profile_count > 1:
            lines.append(f"profiles with an equilibrium: {self.profiles_with_equilibria}")
        for s in self.equilibria:
            lines.append("equilibrium: " + situation_label(s))
        if self.witness is not None and game is not None:
            profile, s = self.witness
            lines.append("witness situation: " + situation_label(s))
            for o in profile:
                lines.append(f"  o_{o.player}: " + " > ".join(game.outcome_name(x) for x in o.ranking))
        lines.append(self.trailer())
        return "\n".join(lines)


def situation_label(idx: Sequence[int]) -> str:
    return "(" + ", ".join(f"s{i}_{k + 1}" for i, k in enumerate(idx, start=1)) + ")"


def _better(pref) -> np.ndarray:
    return pref.better_matrix()


def improvement_mask(cells: np.ndarray, axis: int, better: np.ndarray) -> np.ndarray:
    """True where the player owning ``axis`` has a strictly better unilateral deviation."""
    mask = np.zeros(cells.shape, dtype=bool)
    for k in range(cells.shape[axis]):
        dev = np.take(cells, [k], axis=axis)
        mask |= better[dev, cells]
    return mask


def improvers_table(nf: NormalForm, prefs: Sequence[Preference]) -> np.ndarray:
    """Boolean array ``T[s..., i-1]``: player i can improve situation s."""
    prefs = _by_player(prefs, nf.game)
    return np.stack([improvement_mask(nf.cells, i, _better(p)) for i, p in enumerate(prefs)], axis=-1)


def _by_player(prefs, game: GameForm) -> list:
    if isinstance(prefs, PreferenceProfile):
        prefs = prefs.orders
    prefs = sorted(prefs, key=lambda p: p.player)
    if [p.player for p in prefs] != list(range(1, game.num_players + 1)):
        raise ValueError(f"need one preference per player 1..{game.num_players}")
    return prefs


def improving_players(game: GameForm, nf: NormalForm, s: Sequence[int], prefs) -> set[int]:
    """Players with a strictly improving unilateral strategy change at ``s``."""
    prefs = _by_player(prefs, game)
    current = nf.outcome(s)
    result = set()
    for i, pref in enumerate(prefs):
        for k in range(nf.shape[i]):
            dev = list(s)
            dev[i] = k
            if pref.prefers(nf.outcome(dev), current):
                result.add(i + 1)
                break
    return result


def _ne_list(stable: np.ndarray) -> list[tuple[int, ...]]:
    return [tuple(int(x) for x in idx) for idx in np.argwhere(stable)]


def find_nash_equilibria(game: GameForm, nf: NormalForm, profile) -> NEReport:
    prefs = _by_player(profile, game)
    if not all(isinstance(p, PreferenceOrder) for p in prefs):
        raise ValueError("find_nash_equilibria needs total orders")
    stable = ~improvers_table(nf, prefs).any(axis=-1)
    return NEReport("total-order", _ne_list(stable), 1)


def verify_ne_free_certificate(game: GameForm, nf: NormalForm, partials) -> tuple[NEReport, list[ImprovementLabel]]:
    """Certify NE-freeness for every linear extension of ``partials`` at once.

    Succeeds iff every situation has an improving player under the partial
    orders. The returned labels cover the whole table in ``np.ndindex`` order.
    """
    prefs = _by_player(partials, game)
    table = improvers_table(nf, prefs)
    labels = [
        ImprovementLabel(idx, nf.outcome(idx), frozenset(int(i) + 1 for i in np.flatnonzero(table[idx])))
        for idx in np.ndindex(nf.shape)
    ]
    uncertified = _ne_list(~table.any(axis=-1))
    report = NEReport("partial-certificate", uncertified, 1)
    if uncertified:
        report.notes.append("first uncertified situation: " + situation_label(uncertified[0]))
    return report, labels


def extension_options(prefs, max_profiles: int) -> tuple[list[list[PreferenceOrder]], int]:
    counts = [1 if isinstance(p, PreferenceOrder) else count_linear_extensions(p) for p in prefs]
    total = int(np.prod(counts, dtype=object))
    if total > max_profiles:
        raise ExtensionBoundExceeded(total, max_profiles)
    options = [[p] if isinstance(p, PreferenceOrder) else list(linear_extensions(p)) for p in prefs]
    return options, total


def _combine(masks: list[np.ndarray], options: list[list[PreferenceOrder]]):
    """Intersect per-player stability masks over every profile of extensions.

    ``masks[i][e]`` is the flat stability mask of player i under option e.
    Yields ``(profile, joint_mask)`` for every combination.
    """
    n = len(masks)

    def rec(i, acc, chosen):
        if i == n:
            yield tuple(chosen), acc
            return
        for e, m in enumerate(masks[i]):
            chosen.append(options[i][e])
            yield from rec(i + 1, m if acc is None else acc & m, chosen)
            chosen.pop()

    yield from rec(0, None, [])


def _multi_profile_report(mode, shape, masks, options, total) -> NEReport:
    union = np.zeros(int(np.prod(shape)), dtype=bool)
    with_eq = 0
    witness = None
    for profile, joint in _combine(masks, options):
        if joint.any():
            with_eq += 1
            union |= joint
            if witness is None:
                witness = (profile, tuple(int(x) for x in np.unravel_index(int(np.flatnonzero(joint)[0]), shape)))
    eq = _ne_list(union.reshape(shape))
    return NEReport(mode, eq, total, with_eq, witness=witness)


def verify_ne_free_all_extensions(game: GameForm, nf: NormalForm, partials, max_profiles: int = DEFAULT_MAX_PROFILES) -> NEReport:
    """Check NE-freeness under every profile of linear extensions.

    Player i's "no improvement" mask depends on o_i alone, so it is computed
    once per extension and profiles are scored by intersecting masks.
    """
    prefs = _by_player(partials, game)
    options, total = extension_options(prefs, max_profiles)
    masks = [
        [~improvement_mask(nf.cells, i, o.better_matrix()).ravel() for o in opts]
        for i, opts in enumerate(options)
    ]
    return _multi_profile_report("all-extensions", nf.shape, masks, options, total)


def subgame_perfect(game: GameForm, prefs, max_cells: int | None = None, max_profiles: int = DEFAULT_MAX_PROFILES) -> NEReport:
    """Situations that are NE from every non-terminal start vertex.

    With total orders this examines one profile; partial orders are expanded
    into every profile of linear extensions, and ``equilibria`` collects the
    situations that are subgame perfect under at least one of them.
    """
    prefs = _by_player(prefs, game)
    options, total = extension_options(prefs, max_profiles)
    axes = strategy_axes(game)
    starts = [v for v, _ in game.positions]
    table = outcome_table(game, axes, starts, max_cells=max_cells)
    shape = table.shape[:-1]
    masks = []
    for i, opts in enumerate(options):
        per = []
        for o in opts:
            b = o.better_matrix()
            ok = np.ones(shape, dtype=bool)
            for k in range(len(starts)):
                ok &= ~improvement_mask(table[..., k], i, b)
            per.append(ok.ravel())
        masks.append(per)
    mode = "subgame-perfect" if total == 1 else "subgame-perfect/all-extensions"
    report = _multi_profile_report(mode, shape, masks, options, total)
    if any(isinstance(p, PartialPreference) for p in prefs):
        report.notes.append("partial orders expanded to all linear extensions of the closure of the given pairs")
    return report



def subgame_perfect_violation(game: GameForm, prefs, situation: Situation):
    """First ``(start, player, deviation)`` that breaks subgame perfection, or None.

    Walks every play directly, so it shares no code with the table-based
    :func:`subgame_perfect`.
    """
    prefs = _by_player(prefs, game)
    for start, _ in game.positions:
        current = resolve_play(game, situation, start).outcome
        for pref in prefs:
            for strat in enumerate_strategies(game, pref.player):
                if pref.prefers(resolve_play(game, situation.replace(strat), start).outcome, current):
                    return start, pref.player, strat
    return None


def is_subgame_perfect(game: GameForm, prefs, situation: Situation) -> bool:
    return subgame_perfect_violation(game, prefs, situation) is None
