"""CSV and Markdown export of normal forms and improvement labels."""
from __future__ import annotations

import csv
import io
import itertools

import numpy as np

from .strategies import NormalForm


def improvers_text(row: np.ndarray | None) -> str:
    if row is None:
        return ""
    return "".join(str(i + 1) for i in np.flatnonzero(row))


def to_csv(nf: NormalForm, improvers: np.ndarray | None = None) -> str:
    """One row per situation: 1-based strategy numbers, outcome, improver digits."""
    game = nf.game
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"s{i}" for i in range(1, game.num_players + 1)] + ["outcome", "improvers"])
    for idx in np.ndindex(nf.shape):
        w.writerow([k + 1 for k in idx] + [game.outcome_name(nf.outcome(idx)),
                                           improvers_text(None if improvers is None else improvers[idx])])
    return buf.getvalue()


def grid_players(n: int) -> tuple[list[int], list[int]]:
    """Row and column players, outermost first.

    Odd players index rows and even players columns, the highest index
    outermost; for four players that is rows s3/s1 and columns s4/s2.
    """
    rows = [i for i in range(n, 0, -1) if i % 2 == 1]
    cols = [i for i in range(n, 0, -1) if i % 2 == 0]
    return rows, cols


def cell_text(nf: NormalForm, idx, improvers: np.ndarray | None) -> str:
    name = nf.game.outcome_name(nf.outcome(idx))
    sup = improvers_text(None if improvers is None else improvers[tuple(idx)])
    return f"{name}^{sup}" if sup else name


def to_markdown(nf: NormalForm, improvers: np.ndarray | None = None) -> str:
    n = nf.game.num_players
    rows, cols = grid_players(n)
    row_keys = list(itertools.product(*[range(nf.shape[i - 1]) for i in rows]))
    col_keys = list(itertools.product(*[range(nf.shape[i - 1]) for i in cols]))

    def label(players, key):
        return " ".join(f"s{i}_{k + 1}" for i, k in zip(players, key)) or "-"

    corner = " ".join(f"s{i}" for i in rows) + " \\ " + " ".join(f"s{i}" for i in cols)
    out = [f"| {corner.strip()} | " + " | ".join(label(cols, c) for c in col_keys) + " |"]
    out.append("|---" * (len(col_keys) + 1) + "|")
    for r in row_keys:
        cells = []
        for c in col_keys:
            idx = [0] * n
            for i, k in zip(rows, r):
                idx[i - 1] = k
            for i, k in zip(cols, c):
                idx[i - 1] = k
            cells.append(cell_text(nf, idx, improvers))
        out.append(f"| {label(rows, r)} | " + " | ".join(cells) + " |")
    return "\n".join(out) + "\n"
