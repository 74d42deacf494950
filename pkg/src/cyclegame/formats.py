"""Line-oriented text formats for games, preferences and win assignments.

Game file::

    players 4
    position u1 player 1
    terminal a1
    edge u1 a1
    init u1

Preference file::

    pref 1 total a2 > a4 > a3 > a1 > a5 > c
    pref 4 partial a1>a4 a2>a4 a4>c

Win file::

    win a1 2
    win c 1

``#`` starts a comment; blank lines are ignored.
"""
from __future__ import annotations

from pathlib import Path

from .core import (
    CYCLE_TOKEN,
    CyclicRelationError,
    GameForm,
    InvalidGameError,
    PartialPreference,
    Preference,
    PreferenceOrder,
    validate,
)


class ParseError(ValueError):
    """Malformed input. ``lineno`` is 1-based, or None for whole-file problems."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        self.message = message
        where = f"line {lineno}: " if lineno is not None else ""
        super().__init__(where + message)


class GameSyntaxError(ParseError):
    pass


class GameSemanticError(ParseError):
    pass


def _lines(text: str | bytes):
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def parse_game(text: str | bytes, *, check: bool = True) -> GameForm:
    """Parse a game file.

    With ``check`` the result must also pass :func:`validate`, otherwise
    :class:`InvalidGameError` is raised; the CLI ``validate`` command turns
    this off to report structural defects itself.
    """
    players = None
    positions: list[tuple[str, int]] = []
    terminals: list[str] = []
    edges: list[tuple[str, str]] = []
    edge_lines: list[int] = []
    initial = None
    declared: dict[str, int] = {}

    def declare(name, lineno):
        if name in declared:
            raise GameSemanticError(f"duplicate declaration of {name} (first on line {declared[name]})", lineno)
        if name == CYCLE_TOKEN:
            raise GameSemanticError(f"{CYCLE_TOKEN!r} is reserved for the cycle outcome", lineno)
        if ">" in name:
            raise GameSyntaxError(f"vertex name {name!r} contains '>'", lineno)
        declared[name] = lineno

    for lineno, tok in _lines(text):
        kw = tok[0]
        if players is None and kw != "players":
            raise GameSyntaxError("missing players declaration", lineno)
        try:
            if kw == "players" and len(tok) == 2:
                if players is not None:
                    raise GameSemanticError("duplicate players declaration", lineno)
                players = int(tok[1])
            elif kw == "position" and len(tok) == 4 and tok[2] == "player":
                declare(tok[1], lineno)
                positions.append((tok[1], int(tok[3])))
            elif kw == "terminal" and len(tok) == 2:
                declare(tok[1], lineno)
                terminals.append(tok[1])
            elif kw == "edge" and len(tok) == 3:
                edges.append((tok[1], tok[2]))
                edge_lines.append(lineno)
            elif kw == "init" and len(tok) == 2:
                if initial is not None:
                    raise GameSemanticError("duplicate init", lineno)
                initial = (tok[1], lineno)
            else:
                raise GameSyntaxError(f"cannot parse {' '.join(tok)!r}", lineno)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise GameSyntaxError(f"bad integer in {' '.join(tok)!r}", lineno) from None

    if players is None:
        raise GameSyntaxError("missing players declaration")
    for (u, v), lineno in zip(edges, edge_lines):
        for end in (u, v):
            if end not in declared:
                raise GameSemanticError(f"edge names undeclared vertex {end}", lineno)
    if initial is None:
        raise GameSemanticError("missing init")
    if initial[0] not in declared:
        raise GameSemanticError(f"init names undeclared vertex {initial[0]}", initial[1])

    game = GameForm(players, tuple(positions), tuple(terminals), tuple(edges), initial[0])
    if check:
        problems = validate(game)
        if problems:
            raise InvalidGameError(problems)
    return game


def serialize_game(game: GameForm) -> str:
    out = [f"players {game.num_players}"]
    out += [f"position {v} player {i}" for v, i in game.positions]
    out += [f"terminal {t}" for t in game.terminals]
    out += [f"edge {u} {v}" for u, v in game.edges]
    if game.initial is not None:
        out.append(f"init {game.initial}")
    return "\n".join(out) + "\n"


def parse_preferences(text: str | bytes, game: GameForm) -> list[Preference]:
    """Parse ``pref`` lines; returns one entry per player, sorted by player."""
    prefs: dict[int, Preference] = {}
    for lineno, tok in _lines(text):
        if tok[0] != "pref" or len(tok) < 3 or tok[2] not in ("total", "partial"):
            raise ParseError(f"cannot parse {' '.join(tok)!r}", lineno)
        try:
            player = int(tok[1])
        except ValueError:
            raise ParseError(f"bad player index {tok[1]!r}", lineno) from None
        if not 1 <= player <= game.num_players:
            raise ParseError(f"player index {player} out of range 1..{game.num_players}", lineno)
        if player in prefs:
            raise ParseError(f"duplicate preference for player {player}", lineno)

        def outcome(token):
            try:
                return game.outcome_index(token)
            except KeyError:
                raise ParseError(f"unknown outcome token {token!r}", lineno) from None

        if tok[2] == "total":
            body = tok[3:]
            names = body[0::2]
            if any(sep != ">" for sep in body[1::2]) or len(body) % 2 == 0:
                raise ParseError("total order must read 'o1 > o2 > ...'", lineno)
            ranking = [outcome(t) for t in names]
            if sorted(ranking) != list(range(game.num_outcomes)):
                raise ParseError("total order must list every outcome exactly once", lineno)
            prefs[player] = PreferenceOrder(player, tuple(ranking))
        else:
            pairs = set()
            for item in tok[3:]:
                parts = item.split(">")
                if len(parts) != 2 or not all(parts):
                    raise ParseError(f"bad pair {item!r}, expected x>y", lineno)
                pairs.add((outcome(parts[0]), outcome(parts[1])))
            try:
                prefs[player] = PartialPreference(player, game.num_outcomes, frozenset(pairs))
            except CyclicRelationError:
                raise ParseError("cyclic relation set", lineno) from None
    return [prefs[i] for i in sorted(prefs)]


def serialize_preferences(prefs, game: GameForm) -> str:
    out = []
    for p in prefs:
        if isinstance(p, PreferenceOrder):
            out.append(f"pref {p.player} total " + " > ".join(game.outcome_name(o) for o in p.ranking))
        else:
            pairs = sorted(p.relations)
            body = " ".join(f"{game.outcome_name(x)}>{game.outcome_name(y)}" for x, y in pairs)
            out.append(f"pref {p.player} partial {body}".rstrip())
    return "\n".join(out) + "\n"


def parse_win(text: str | bytes, game: GameForm) -> dict[int, int]:
    """Parse a win assignment ``{outcome: winning player}``; must cover every outcome."""
    win: dict[int, int] = {}
    for lineno, tok in _lines(text):
        if tok[0] != "win" or len(tok) != 3 or tok[2] not in ("1", "2"):
            raise ParseError(f"cannot parse {' '.join(tok)!r}", lineno)
        try:
            o = game.outcome_index(tok[1])
        except KeyError:
            raise ParseError(f"unknown outcome token {tok[1]!r}", lineno) from None
        if o in win:
            raise ParseError(f"duplicate outcome {tok[1]}", lineno)
        win[o] = int(tok[2])
    missing = [game.outcome_name(o) for o in range(game.num_outcomes) if o not in win]
    if missing:
        raise ParseError("incomplete win assignment, missing " + ", ".join(missing))
    return win


def serialize_win(win: dict[int, int], game: GameForm) -> str:
    return "".join(f"win {game.outcome_name(o)} {win[o]}\n" for o in sorted(win))


def load_game(path, *, check: bool = True) -> GameForm:
    return parse_game(Path(path).read_bytes(), check=check)


def load_preferences(path, game: GameForm) -> list[Preference]:
    return parse_preferences(Path(path).read_bytes(), game)
