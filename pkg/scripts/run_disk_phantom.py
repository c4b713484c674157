#!/usr/bin/env python3
"""Disk phantom end to end: synthesize data, reconstruct, report overlap.

Writes out/disk.ffd, out/disk.csv, out/disk.pgm and prints the Jaccard
overlap between the classified-inside set and the true interior.
"""

import os
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from elastoscat import cli
from elastoscat.acceptance import _jaccard_from_csv
from elastoscat.reconstruct import load_config


def run(tag="disk"):
    root = os.path.join(os.path.dirname(__file__), "..")
    cfg = os.path.join(root, "configs", f"{tag}.cfg")
    outdir = os.path.join(root, "out")
    os.makedirs(outdir, exist_ok=True)
    ffd = os.path.join(outdir, f"{tag}.ffd")
    csv = os.path.join(outdir, f"{tag}.csv")
    pgm = os.path.join(outdir, f"{tag}.pgm")

    t0 = time.time()
    rcode = cli.main(["forward", "--config", cfg, "--out", ffd])
    assert rcode == 0, f"forward exited {rcode}"
    t1 = time.time()
    rcode = cli.main(["reconstruct", "--config", cfg, "--data", ffd,
                      "--out", csv, "--pgm", pgm])
    assert rcode == 0, f"reconstruct exited {rcode}"
    t2 = time.time()

    jac, guard = _jaccard_from_csv(csv, load_config(cfg))
    print(f"{tag}: forward {t1 - t0:.1f}s, sweep {t2 - t1:.1f}s, "
          f"Jaccard {jac:.3f}, hull guard {'ok' if guard else 'VIOLATED'}")
    print(f"artifacts: {ffd}, {csv}, {pgm}")
    return jac


if __name__ == "__main__":
    run("disk")
