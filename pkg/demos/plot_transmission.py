"""Plot |T_l| entries and the unitarity residual from a ``jacobi-scatter scatter`` CSV.

Usage:
    jacobi-scatter scatter --profile demos/profiles/two_defect.json --z-samples 200 --out t.csv
    python3 demos/plot_transmission.py t.csv --out t.png
"""
import argparse

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np
import pandas as pd


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("csv")
    parser.add_argument("--out", default="transmission.png")
    args = parser.parse_args()
    df = pd.read_csv(args.csv)
    df = df[df["flag"] == "ok"].copy()
    df["theta"] = np.angle(df["z_re"] + 1j * df["z_im"])
    df = df.sort_values("theta")
    q = int(round(np.sqrt(sum(c.startswith("T_l_") for c in df.columns) / 2)))
    fig, (ax, ax_res) = plt.subplots(2, 1, sharex=True, figsize=(7, 6))
    for i in range(q):
        for j in range(q):
            mag = np.hypot(df[f"T_l_{i}{j}_re"], df[f"T_l_{i}{j}_im"])
            ax.plot(df["theta"], mag, label=f"|T_l[{i},{j}]|")
    ax.set_ylabel("magnitude")
    ax.legend()
    ax_res.semilogy(df["theta"], df["unitarity_residual"].clip(lower=1e-18))
    ax_res.set_xlabel("arg z")
    ax_res.set_ylabel("unitarity residual")
    fig.tight_layout()
    fig.savefig(args.out, dpi=120)
    print("wrote", args.out)


if __name__ == "__main__":
    main()
