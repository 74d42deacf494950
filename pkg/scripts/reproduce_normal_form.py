"""Print the labeled normal form of the main example and diff it against the transcription in tests/data."""
import argparse
from pathlib import Path

from cyclegame.catalog import main_example
from cyclegame.equilibrium import improvers_table
from cyclegame.strategies import build_normal_form
from cyclegame.tables import to_csv, to_markdown

TRANSCRIPT = Path(__file__).resolve().parents[1] / "tests" / "data" / "main_normal_form.txt"


def label(game, nf, imp, idx):
    digits = "".join(str(i + 1) for i in range(game.num_players) if imp[idx + (i,)])
    return game.outcome_name(nf.outcome(idx)), digits


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--format", choices=["md", "csv"], default="md")
    args = ap.parse_args()

    e = main_example()
    nf = build_normal_form(e.game)
    imp = improvers_table(nf, e.preferences)
    print(to_markdown(nf, imp) if args.format == "md" else to_csv(nf, imp), end="")

    if not TRANSCRIPT.exists():
        return
    diffs = []
    for line in TRANSCRIPT.read_text().splitlines():
        if line.startswith("#") or not line.strip():
            continue
        s3, s1, s4, s2, outcome, sup = line.split()
        idx = (int(s1) - 1, int(s2) - 1, int(s3) - 1, int(s4) - 1)
        got = label(e.game, nf, imp, idx)
        if got[0] != outcome or set(got[1]) != set(sup):
            diffs.append((idx, (outcome, sup), got))
    print(f"\n{len(diffs)} printed cells disagree with the computed table")
    for idx, printed, got in diffs:
        s = " ".join(f"s{i + 1}_{k + 1}" for i, k in enumerate(idx))
        print(f"  {s}: printed {printed[0]}^{printed[1]}, computed {got[0]}^{got[1]}")


if __name__ == "__main__":
    main()
