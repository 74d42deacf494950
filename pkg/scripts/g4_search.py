"""Exhaustive SPNE search over two-person profiles on G_k with odd/even controllers."""
import argparse

from cyclegame.catalog import build_gk, odd_even
from cyclegame.search import two_player_search


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--all-orders", action="store_true", help="do not force c to be last for both players")
    ap.add_argument("--keep", type=int, default=5, help="counterexamples to print")
    args = ap.parse_args()
    res = two_player_search(build_gk(args.k, odd_even(args.k)), cycle_last=not args.all_orders, keep=args.keep)
    print(res.format())


if __name__ == "__main__":
    main()
