"""Emit fixed-point curve CSVs (alpha, lhs, rhs) for plotting.

Two instances: one where the defection gain against cooperators dominates
(single crossing, unique equilibrium) and one steep piecewise-linear CDF in
the opposite regime with three crossings.

    python scripts/fixed_point_curves.py --out-dir out/
"""

import argparse
import pathlib

import toleq as tq

INSTANCES = {
    "curve_unique": (tq.PdPayoffs(3, -1, 5, 0), tq.UniformCdf(0, 4)),
    "curve_multiple": (
        tq.PdPayoffs(cc=2, cd=-1.5, dc=3, dd=0.5),
        tq.PiecewiseLinearCdf((0, 1, 1.2, 1.5, 1.8, 2.5), (0, 0.05, 0.4, 0.45, 0.9, 1.0)),
    ),
}


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out-dir", default="out", type=pathlib.Path)
    parser.add_argument("--grid", default=2000, type=int)
    args = parser.parse_args()
    args.out_dir.mkdir(parents=True, exist_ok=True)

    for name, (payoffs, cdf) in INSTANCES.items():
        alphas, lhs, rhs = tq.fixed_point_curve(payoffs, cdf, grid=args.grid)
        path = args.out_dir / f"{name}.csv"
        with open(path, "w", newline="\n") as handle:
            handle.write("alpha,lhs,rhs\n")
            for a, l, r in zip(alphas, lhs, rhs):
                handle.write(f"{float(a)!r},{float(l)!r},{float(r)!r}\n")
        report = tq.solve_symmetric(payoffs, cdf)
        roots = ", ".join(f"{r.alpha_star:.6f}" for r in report.roots)
        print(f"{path}: {report.classification}, roots at {roots}")


if __name__ == "__main__":
    main()
