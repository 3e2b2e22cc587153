#!/usr/bin/env python3
"""Plot exact vs simulated correlation from `fpa correlation --simulate ... --format csv`."""

import argparse
import csv
import math
import pathlib

import matplotlib.pyplot as plt


def rho(gamma):
    return math.sqrt((3 * gamma**2 + 12 * gamma + 12) / (4 * gamma**2 + 12 * gamma + 15))


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv", type=pathlib.Path)
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path("correlation.png"))
    args = parser.parse_args()

    with open(args.csv, newline="") as f:
        rows = list(csv.DictReader(f))
    gammas = [float(r["gamma"]) for r in rows]
    lo, hi = min(gammas), max(gammas)
    grid = [lo + (hi - lo) * i / 400 for i in range(401)]
    plt.plot(grid, [rho(g) for g in grid], label="exact")
    if rows and "rho_mc" in rows[0]:
        plt.errorbar(gammas, [float(r["rho_mc"]) for r in rows],
                     yerr=[3 * float(r["rho_mc_stderr"]) for r in rows], fmt="o", label="Monte Carlo (3 SE)")
    plt.xlabel("gamma = mu x")
    plt.ylabel("corr(tau, A)")
    plt.legend()
    plt.savefig(args.out, dpi=150)


if __name__ == "__main__":
    main()
