"""Chess-like positional games on digraphs: Nash equilibria in pure stationary strategies."""
from .core import (
    GameForm,
    PartialPreference,
    PreferenceOrder,
    PreferenceProfile,
    count_linear_extensions,
    linear_extensions,
    validate,
)
from .strategies import (
    NormalForm,
    Play,
    Situation,
    Strategy,
    build_normal_form,
    enumerate_strategies,
    resolve_play,
)
from .equilibrium import (
    NEReport,
    find_nash_equilibria,
    improving_players,
    subgame_perfect,
    verify_ne_free_all_extensions,
    verify_ne_free_certificate,
)
from .solvers import backward_induction, zero_sum_attractor

__version__ = "0.1.0"
