#!/usr/bin/env python3
"""Convert FCPS coordinate files into labeled CSVs under data/fcps/.

The FCPS coordinates are taken from the pyclustering source distribution
(pyclustering/samples/samples/fcps/*.data, whitespace separated, no labels).
Ground-truth labels are reconstructed per dataset:

  Atom, Chainlink, Hepta, Lsun, Target   single-linkage components (k classes)
  Tetra, TwoDiamonds                     contiguous file-order blocks
  WingNut                                sign of the first coordinate

Every rule is checked against the published class sizes before writing.

Usage: fcps_convert.py <pyclustering fcps dir> <output dir>
"""
import os
import sys

import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage

DATASETS = {
    # name: (file stem, classes, rule, expected sorted class sizes)
    "atom": ("Atom", 2, "single", [400, 400]),
    "chainlink": ("Chainlink", 2, "single", [500, 500]),
    "hepta": ("Hepta", 7, "single", [30, 30, 30, 30, 30, 30, 32]),
    "lsun": ("Lsun", 3, "single", [100, 101, 202]),
    "target": ("Target", 6, "single", [3, 3, 3, 3, 363, 395]),
    "tetra": ("Tetra", 4, "blocks", [100, 100, 100, 100]),
    "twodiamonds": ("TwoDiamonds", 2, "blocks", [400, 400]),
    "wingnut": ("WingNut", 2, "sign", [508, 508]),
}


def dense(labels):
    remap = {}
    return np.array([remap.setdefault(l, len(remap)) for l in labels])


def main(src, dst):
    os.makedirs(dst, exist_ok=True)
    for name, (stem, k, rule, sizes) in DATASETS.items():
        x = np.loadtxt(os.path.join(src, stem + ".data"))
        if rule == "single":
            labels = fcluster(linkage(x, "single"), k, "maxclust")
        elif rule == "blocks":
            labels = np.arange(len(x)) // (len(x) // k)
        else:
            labels = (x[:, 0] > 0).astype(int)
        labels = dense(labels)
        got = sorted(np.bincount(labels).tolist())
        if got != sizes:
            sys.exit(f"{name}: class sizes {got} != {sizes}")
        header = ",".join(f"x{i + 1}" for i in range(x.shape[1])) + ",label"
        with open(os.path.join(dst, name + ".csv"), "w") as f:
            f.write(header + "\n")
            for row, label in zip(x, labels):
                f.write(",".join(repr(float(v)) for v in row) + f",{label}\n")
        print(f"{name}: n={len(x)} d={x.shape[1]} classes={k}")


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit("usage: fcps_convert.py <pyclustering fcps dir> <output dir>")
    main(sys.argv[1], sys.argv[2])
