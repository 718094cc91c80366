"""Sweep dilemma parameters and emit cooperation-rate CSVs.

Covers the six observed regularities (benefit, cost, bonus, marginal return,
group size, price floor) plus the small-market firm-count sweep at a pinned
belief of 0.8.

    python scripts/regularity_sweeps.py --out-dir out/ --seed 7
"""

import argparse
import pathlib

from toleq.cli import main as toleq_main

SWEEPS = [
    ("pd_benefit", ["--kind", "pd", "--param", "benefit", "--values", "3:8:11", "--cost", "2"]),
    ("pd_cost", ["--kind", "pd", "--param", "cost", "--values", "0.5:2.5:9", "--benefit", "5"]),
    ("td_bonus", ["--kind", "td", "--param", "bonus", "--values", "2,3,4,5,6,8",
                  "--low", "2", "--high", "100"]),
    ("pg_return", ["--kind", "pg", "--param", "rho", "--values", "0.3:0.9:13", "--n", "4"]),
    ("pg_players", ["--kind", "pg", "--param", "n", "--values", "3,4,5,6,8,10", "--rho", "0.5"]),
    ("bertrand_floor", ["--kind", "bertrand", "--param", "low", "--values", "2,5,10,15,20",
                        "--n", "2", "--high", "100"]),
    ("bertrand_firms", ["--kind", "bertrand", "--param", "n", "--values", "2,3,4",
                        "--low", "2", "--high", "100", "--beta-point", "0.8"]),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out", type=pathlib.Path)
    parser.add_argument("--seed", default=7, type=int)
    parser.add_argument("--samples", default=50_000, type=int)
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    for name, flags in SWEEPS:
        path = args.out_dir / f"{name}.csv"
        code = toleq_main(
            ["sweep"] + flags
            + ["--seed", str(args.seed), "--samples", str(args.samples), "--out", str(path)]
        )
        print(f"{path}: {'ok' if code == 0 else f'exit {code}'}")


if __name__ == "__main__":
    main()
