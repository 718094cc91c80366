"""Re-solve the cooperation fixed point along payoff and CDF sweeps.

Tracks how the equilibrium cooperation probability moves as the defection
gains grow, as the cooperation payoffs grow, and as the whole tolerance
distribution shifts right.

    python scripts/comparative_statics.py --out-dir out/
"""

import argparse
import pathlib

import numpy as np

import toleq as tq

BASE = tq.PdPayoffs(3, -1, 5, 0)
CDF = tq.UniformCdf(0, 4)

SWEEPS = [
    ("alpha_vs_delta_c", "delta_c", np.linspace(1.5, 3.5, 21)),
    ("alpha_vs_delta_d", "delta_d", np.linspace(0.5, 2.8, 21)),
    ("alpha_vs_a", "a", np.linspace(2.0, 4.5, 21)),
    ("alpha_vs_b", "b", np.linspace(-2.0, -0.1, 21)),
    ("alpha_vs_shift", "shift", np.linspace(0.0, 2.0, 21)),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out", type=pathlib.Path)
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    for name, parameter, values in SWEEPS:
        points = tq.comparative_statics_sweep(BASE, CDF, parameter, [float(v) for v in values])
        path = args.out_dir / f"{name}.csv"
        with open(path, "w", newline="\n") as handle:
            handle.write("param_value,alpha_star,branch_id,marginal_flag\n")
            for p in points:
                handle.write(f"{p.param_value!r},{p.alpha_star!r},{p.branch_id},{int(p.marginal)}\n")
        first = next(p.alpha_star for p in points if p.branch_id == 0)
        last = [p.alpha_star for p in points if p.branch_id == 0][-1]
        print(f"{path}: alpha* {first:.4f} -> {last:.4f} over {parameter}")


if __name__ == "__main__":
    main()
