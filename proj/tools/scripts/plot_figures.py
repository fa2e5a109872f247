# Copyright 2026 The fbd Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Plots the CSV/JSON outputs of the fbd tool as four PNG figures.

Usage: plot_figures.py DATA_DIR
DATA_DIR must hold the files written by the recipe in README.md.
"""

import csv
import json
import pathlib
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def read_columns(path):
    with open(path, newline="") as f:
        rows = list(csv.reader(f))
    header, body = rows[0], rows[1:]
    return {name: [float(r[i]) for r in body] for i, name in enumerate(header)}


def main(data_dir):
    d = pathlib.Path(data_dir)

    fbd = read_columns(d / "fig1_fbd_profile.csv")
    frw = read_columns(d / "fig1_frw.csv")
    fig, ax = plt.subplots(figsize=(7, 4))
    ax.plot(frw["site"], frw["fraction"], lw=0.6, label="FRW-(10000, 1/2), 15 trials")
    ax.plot(fbd["site"], fbd["mass"], lw=1.2, label="FBD-1/2")
    ax.set_xlabel("site")
    ax.set_ylabel("mass")
    ax.set_ylim(0, 2.5 * max(fbd["mass"][len(fbd["mass"]) // 2], 1e-12))
    ax.set_title("t = 25000")
    ax.legend()
    fig.savefig(d / "fig1_mass.png", dpi=150, bbox_inches="tight")

    roots = {entry["alpha"]: entry["q"] for entry in json.loads((d / "fig2_q.json").read_text())}
    fig, ax = plt.subplots(figsize=(7, 4))
    for path in sorted(d.glob("fig2_alpha_*.csv")):
        alpha = float(path.stem.removeprefix("fig2_alpha_"))
        cols = read_columns(path)
        line = ax.plot(cols["t"], cols["beta_scaled"], lw=0.8, label=f"alpha = {alpha:g}")[0]
        if alpha in roots:
            ax.axhline(roots[alpha], color=line.get_color(), ls="--", lw=0.6)
    ax.set_xlabel("t")
    ax.set_ylabel("beta_t / sqrt(t)")
    ax.legend()
    fig.savefig(d / "fig2_convergence.png", dpi=150, bbox_inches="tight")

    with open(d / "fig3_heatmap.csv", newline="") as f:
        grid = [[float(v) for v in row] for row in csv.reader(f)]
    r = (len(grid) - 1) // 2
    fig, ax = plt.subplots(figsize=(5, 5))
    # The partially frozen shell keeps a few bright cells; clip at the bulk.
    vmax = 1.5 * grid[r][r]
    ax.imshow(grid, origin="lower", vmin=0.0, vmax=vmax,
              extent=(-r - 0.5, r + 0.5, -r - 0.5, r + 0.5))
    ax.set_title("free mass, 2D, t = 1000")
    fig.savefig(d / "fig3_heatmap.png", dpi=150, bbox_inches="tight")

    cols = read_columns(d / "fig4_slice.csv")
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(cols["y"], cols["free_mass"], marker=".", lw=0.8)
    ax.set_xlabel("y")
    ax.set_ylabel("free mass at x = 0")
    fig.savefig(d / "fig4_slice.png", dpi=150, bbox_inches="tight")


if __name__ == "__main__":
    if len(sys.argv) != 2:
        sys.exit(__doc__)
    main(sys.argv[1])
