#!/usr/bin/env python3
"""Plot the area-density histograms written by `fpa density --figure1 --out DIR`."""

import argparse
import csv
import pathlib

import matplotlib.pyplot as plt


def read_histogram(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    mids = [(float(r["bin_left"]) + float(r["bin_right"])) / 2 for r in rows]
    return mids, [float(r["density"]) for r in rows]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("dir", type=pathlib.Path, help="directory holding density_x1_mu*.csv")
    parser.add_argument("--out", type=pathlib.Path, default=pathlib.Path("densities.png"))
    parser.add_argument("--xmax", type=float, default=4.0)
    args = parser.parse_args()

    files = sorted(args.dir.glob("density_x1_mu*.csv"), key=lambda p: float(p.stem.split("mu")[1]))
    for path in files:
        mids, density = read_histogram(path)
        plt.plot(mids, density, label="mu = " + path.stem.split("mu")[1])
    plt.xlim(0, args.xmax)
    plt.xlabel("area A")
    plt.ylabel("density")
    plt.title("Estimated density of the first-passage area, x = 1")
    plt.legend()
    plt.savefig(args.out, dpi=150)


if __name__ == "__main__":
    main()
