#!/usr/bin/env python3
"""Kite phantom end to end (non-convex benchmark); see run_disk_phantom."""

import sys

from run_disk_phantom import run

if __name__ == "__main__":
    sys.exit(0 if run("kite") >= 0.6 else 1)
