#!/usr/bin/env python3
"""Eigenvalue-count profile along a ray of test-disk centers.

Exploratory companion to the `spectrum` subcommand: shows how the count
transition tracks the obstacle boundary as a function of probe radius and
noise, which is how the default test_radius was chosen.

Usage: scan_counts.py [shape] [radius] [noise]
"""

import os
import sys

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from elastoscat import boundary as bd
from elastoscat import elastic as el
from elastoscat import forward as fw
from elastoscat import probe as pr
from elastoscat import reconstruct as rc


def main(shape="circle", radius=0.3, noise=0.0, seed=7):
    med = el.make_medium(2.0, 1.0, 1.0)
    disc = bd.discretize(bd.make_shape(shape), 128)
    dirs = fw.direction_set(64)
    space = pr.weighted_space(dirs, med)
    fop = fw.add_noise(fw.assemble_farfield_operator(disc, med, dirs),
                       noise, seed)
    delta, r_max = rc.calibrate(fop, space, pr.test_disk((0, 0), radius, 32))
    gram = bd.sobolev_gram(pr.test_disk((0, 0), radius, 32).disc, 0.5)
    print(f"shape={shape} radius={radius} noise={noise}: "
          f"delta={delta:.3e}, r_max={r_max}")
    for x in np.arange(0.0, 2.01, 0.1):
        disk = pr.test_disk((x, 0.0), radius, 32)
        eigs = pr.hermitian_eigenvalues(
            pr.probe_operator(fop, disk, space, gram).matrix)
        count = pr.count_above(eigs, delta).count_above
        mark = "inside" if count <= r_max else "OUTSIDE"
        print(f"  center=({x:4.1f}, 0): count {count:2d}  {mark}")


if __name__ == "__main__":
    args = sys.argv[1:]
    main(args[0] if args else "circle",
         float(args[1]) if len(args) > 1 else 0.3,
         float(args[2]) if len(args) > 2 else 0.0)
