"""Search random small games for NE-free instances under random total profiles."""
import argparse
import time

import numpy as np

from cyclegame.equilibrium import find_nash_equilibria
from cyclegame.formats import serialize_game, serialize_preferences
from cyclegame.random_games import random_game, random_profile
from cyclegame.strategies import build_normal_form


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--games", type=int, default=1000)
    ap.add_argument("--max-positions", type=int, default=7)
    ap.add_argument("--max-terminals", type=int, default=3)
    ap.add_argument("--max-players", type=int, default=4)
    ap.add_argument("--profiles", type=int, default=5, help="random profiles per game")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    t0 = time.perf_counter()
    found = 0
    for _ in range(args.games):
        g = random_game(rng, int(rng.integers(1, args.max_positions + 1)),
                        int(rng.integers(1, args.max_terminals + 1)),
                        int(rng.integers(1, args.max_players + 1)))
        nf = build_normal_form(g)
        for _ in range(args.profiles):
            prof = random_profile(rng, g)
            if not find_nash_equilibria(g, nf, prof).equilibria:
                found += 1
                print(serialize_game(g))
                print(serialize_preferences(prof, g))
    dt = time.perf_counter() - t0
    print(f"RESULT seed={args.seed} games={args.games} ne_free_found={found} seconds={dt:.2f}")


if __name__ == "__main__":
    main()
