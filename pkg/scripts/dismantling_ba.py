#!/usr/bin/env python3
"""q_c of CI, HD and HDA on Barabasi-Albert graphs, plus G(q) curves.

    python3 scripts/dismantling_ba.py --n 2000 --m 3 --seeds 10 --out curves/
"""
import argparse
from pathlib import Path

import numpy as np

from trafficnet.influence import STRATEGIES, dismantle
from trafficnet.readwrite import write_columns
from trafficnet.synthgen import barabasi_albert


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--seeds", type=int, default=10)
    ap.add_argument("--radii", type=int, nargs="+", default=[1, 2, 3])
    ap.add_argument("--out", type=Path, default=None, help="directory for q G(q) files of seed 0")
    args = ap.parse_args()

    runs = [(s, None) for s in STRATEGIES if s != "CI"] + [("CI", l) for l in args.radii]
    qc = {r: [] for r in runs}
    for seed in range(args.seeds):
        g = barabasi_albert(args.n, args.m, seed)
        for strategy, l in runs:
            c = dismantle(g, strategy, l or 2, seed=seed)
            qc[(strategy, l)].append(c.q_c)
            if args.out is not None and seed == 0:
                args.out.mkdir(parents=True, exist_ok=True)
                tag = strategy if l is None else f"CI{l}"
                write_columns(args.out / f"gq_{tag}.dat", "q G(q)", c.q_values, c.g_values)
    for (strategy, l), vals in qc.items():
        label = strategy if l is None else f"CI(l={l})"
        print(f"{label:<9} mean q_c {np.mean(vals):.4f}  sd {np.std(vals):.4f}")


if __name__ == "__main__":
    main()
