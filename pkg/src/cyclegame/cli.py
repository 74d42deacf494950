"""Command-line front end.

Exit codes: 0 property holds / success, 1 well-formed negative answer,
2 input error, 3 resource bound exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog
from .core import InvalidGameError, PreferenceOrder, validate
from .equilibrium import (
    DEFAULT_MAX_PROFILES,
    ExtensionBoundExceeded,
    improvers_table,
    subgame_perfect,
    verify_ne_free_all_extensions,
    verify_ne_free_certificate,
)
from .formats import (
    ParseError,
    load_game,
    load_preferences,
    parse_win,
    serialize_game,
    serialize_preferences,
)
from .search import two_player_search
from .solvers import CyclicGameError, backward_induction, zero_sum_attractor
from .strategies import NormalFormTooLarge, build_normal_form, resolve_play
from .tables import to_csv, to_markdown

OK, NEGATIVE, INPUT_ERROR, TOO_LARGE = 0, 1, 2, 3


class InputError(Exception):
    pass


def _game(path, check=True):
    try:
        return load_game(path, check=check)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except InvalidGameError as exc:
        raise InputError(f"{path}: invalid game: {exc}") from None
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _prefs(path, game):
    try:
        return load_preferences(path, game)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_validate(args) -> int:
    game = _game(args.game, check=False)
    problems = validate(game)
    if problems:
        print("\n".join(problems))
        return NEGATIVE
    print(f"valid: {game.num_players} players, {len(game.vertices)} vertices, {len(game.edges)} edges")
    return OK


def cmd_normal_form(args) -> int:
    game = _game(args.game)
    if args.start:
        game = game.with_initial(args.start)
    nf = build_normal_form(game)
    improvers = None
    if args.labels:
        improvers = improvers_table(nf, _prefs(args.labels, game))
    text = to_markdown(nf, improvers) if args.format == "md" else to_csv(nf, improvers)
    _emit(text, args.out)
    return OK


def cmd_verify(args) -> int:
    game = _game(args.game)
    prefs = _prefs(args.prefs, game)
    nf = build_normal_form(game)
    ok = True
    out = []
    if args.mode in ("certificate", "both"):
        rep, _ = verify_ne_free_certificate(game, nf, prefs)
        out.append(rep.format(game))
        ok &= rep.ne_free
    if args.mode in ("extensions", "both"):
        rep = verify_ne_free_all_extensions(game, nf, prefs, max_profiles=args.max_profiles)
        out.append(rep.format(game))
        ok &= rep.ne_free
    print("\n\n".join(out))
    return OK if ok else NEGATIVE


def cmd_spne(args) -> int:
    game = _game(args.game)
    rep = subgame_perfect(game, _prefs(args.prefs, game), max_profiles=args.max_profiles)
    print(rep.format(game))
    return OK if rep.equilibria else NEGATIVE


def cmd_zero_sum(args) -> int:
    game = _game(args.game)
    try:
        win = parse_win(Path(args.win).read_bytes(), game)
    except OSError as exc:
        raise InputError(f"cannot read {args.win}: {exc.strerror or exc}") from None
    except ParseError as exc:
        raise InputError(f"{args.win}: {exc}") from None
    try:
        sol = zero_sum_attractor(game, win)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(sol.format())
    print(f"RESULT winner={sol.winner_from[game.initial]}")
    return OK


def cmd_backward_induction(args) -> int:
    game = _game(args.game)
    prefs = _prefs(args.prefs, game)
    if not all(isinstance(p, PreferenceOrder) for p in prefs):
        raise InputError("backward induction needs total preference orders")
    try:
        s = backward_induction(game, prefs)
    except CyclicGameError as exc:
        raise InputError(str(exc)) from None
    for strat in s.strategies:
        for u, v in strat.moves:
            print(f"move {u} {v}")
    play = resolve_play(game, s)
    print("play: " + " ".join(play.path))
    print(f"RESULT outcome={game.outcome_name(play.outcome)}")
    return OK


def cmd_catalog(args) -> int:
    names = list(catalog.CATALOG) if args.name == "all" else [args.name]
    for name in names:
        try:
            entry = catalog.get(name)
        except KeyError as exc:
            raise InputError(exc.args[0]) from None
        game_text = serialize_game(entry.game)
        pref_text = serialize_preferences(entry.preferences, entry.game)
        if args.emit:
            d = Path(args.emit)
            d.mkdir(parents=True, exist_ok=True)
            (d / f"{name}.game").write_text(f"# {entry.description}\n" + game_text)
            (d / f"{name}.pref").write_text(pref_text)
            print(f"wrote {d / (name + '.game')} and {d / (name + '.pref')}")
        else:
            print(f"# {name}: {entry.description}\n{game_text}{pref_text}")
    return OK


def cmd_g4_search(args) -> int:
    controllers = catalog.odd_even(args.k)
    res = two_player_search(catalog.build_gk(args.k, controllers), cycle_last=not args.all_orders)
    print(res.format())
    return OK if res.without_spne == 0 else NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclegame", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a game file")
    s.add_argument("game")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("normal-form", help="export the normal form")
    s.add_argument("game")
    s.add_argument("--labels", metavar="PREF_FILE", help="add improving-player labels")
    s.add_argument("--format", choices=("csv", "md"), default="csv")
    s.add_argument("--out")
    s.add_argument("--start", help="override the initial position")
    s.set_defaults(func=cmd_normal_form)

    s = sub.add_parser("verify-ne-free", help="certify that no NE exists")
    s.add_argument("game")
    s.add_argument("prefs")
    s.add_argument("--mode", choices=("certificate", "extensions", "both"), default="both")
    s.add_argument("--max-profiles", type=int, default=DEFAULT_MAX_PROFILES)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("spne", help="list subgame perfect NE")
    s.add_argument("game")
    s.add_argument("prefs")
    s.add_argument("--max-profiles", type=int, default=DEFAULT_MAX_PROFILES)
    s.set_defaults(func=cmd_spne)

    s = sub.add_parser("solve-zero-sum", help="solve a two-person win/lose game")
    s.add_argument("game")
    s.add_argument("win")
    s.set_defaults(func=cmd_zero_sum)

    s = sub.add_parser("backward-induction", help="subgame perfect NE of an acyclic game")
    s.add_argument("game")
    s.add_argument("prefs")
    s.set_defaults(func=cmd_backward_induction)

    s = sub.add_parser("catalog", help="print or write built-in games")
    s.add_argument("name", help="main, g2, g3, g6 or all")
    s.add_argument("--emit", metavar="DIR")
    s.set_defaults(func=cmd_catalog)

    s = sub.add_parser("g4-search", help="enumerate all order pairs on G_k (odd/even players) for SPNE")
    s.add_argument("--k", type=int, default=4)
    s.add_argument("--all-orders", action="store_true", help="also let c rank above terminals")
    s.set_defaults(func=cmd_g4_search)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR
    except (NormalFormTooLarge, ExtensionBoundExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return TOO_LARGE


if __name__ == "__main__":
    sys.exit(main())
