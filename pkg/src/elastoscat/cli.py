"""Command line interface.

Subcommands:
  forward      synthesize far-field data for a configured scatterer (.ffd)
  reconstruct  sweep test disks over a grid and write the indicator (CSV/PGM)
  spectrum     print the top eigenvalues of the probe operator for one disk
  validate     run the acceptance suite

Exit codes: 0 success, 1 usage error, 2 data or numerical error.
"""

import argparse
import sys

import numpy as np

from . import boundary as bd
from . import forward as fw
from . import probe as pr
from . import reconstruct as rc
from .errors import (DataFormatError, DomainError, InteriorEigenvalueError,
                     NumericalError, ParameterError)

_USAGE_ERROR = 1
_DATA_ERROR = 2


def _build_parser():
    p = argparse.ArgumentParser(prog="elastoscat",
                                description="2D elastic rigid-obstacle scattering: "
                                            "far-field synthesis and monotonicity "
                                            "shape reconstruction")
    sub = p.add_subparsers(dest="command", required=True)

    pf = sub.add_parser("forward", help="synthesize far-field data")
    pf.add_argument("--config", required=True)
    pf.add_argument("--out", required=True, help="output .ffd path")

    pr_ = sub.add_parser("reconstruct", help="reconstruct the obstacle indicator")
    pr_.add_argument("--config", required=True)
    pr_.add_argument("--data", required=True, help="input .ffd path")
    pr_.add_argument("--out", required=True, help="output CSV path")
    pr_.add_argument("--pgm", help="optional PGM image path")
    pr_.add_argument("--delta", type=float, help="eigenvalue threshold override")
    pr_.add_argument("--rmax", type=int, help="count bound override")

    ps = sub.add_parser("spectrum", help="top probe-operator eigenvalues for one disk")
    ps.add_argument("--data", required=True)
    ps.add_argument("--center", required=True, help="disk center as x,y")
    ps.add_argument("--radius", required=True, type=float)
    ps.add_argument("--top", type=int, default=10)

    pv = sub.add_parser("validate", help="run the acceptance suite")
    pv.add_argument("--quick", action="store_true", help="reduced-scale run")
    return p


def _cmd_forward(args):
    cfg = rc.load_config(args.config)
    medium = cfg.medium()
    disc = bd.discretize(cfg.shape(), cfg.n_boundary)
    dirs = fw.direction_set(cfg.m_directions)
    fop = fw.assemble_farfield_operator(disc, medium, dirs)
    fop = fw.add_noise(fop, cfg.noise_level, cfg.seed)
    fw.write_ffd(fop, args.out)
    return 0


def _cmd_reconstruct(args):
    cfg = rc.load_config(args.config)
    fop = fw.read_ffd(args.data)
    med = fop.medium
    if not (np.isclose(med.lam, cfg.lam) and np.isclose(med.mu, cfg.mu)
            and np.isclose(med.omega, cfg.omega)):
        raise DataFormatError("medium in data file disagrees with config")
    if args.delta is not None:
        cfg = rc.RunConfig(**{**cfg.__dict__, "delta": args.delta})
    if args.rmax is not None:
        cfg = rc.RunConfig(**{**cfg.__dict__, "r_max": args.rmax})
    ind = rc.sweep(cfg, fop)
    rc.write_indicator_csv(ind, args.out)
    if args.pgm:
        rc.write_indicator_pgm(ind, args.pgm)
    return 0


def _cmd_spectrum(args):
    fop = fw.read_ffd(args.data)
    center = rc._parse_pair(args.center)
    disk = pr.test_disk(center, args.radius)
    dirs = fw.direction_set(fop.m)
    space = pr.weighted_space(dirs, fop.medium)
    gram = bd.sobolev_gram(disk.disc, 0.5)
    op = pr.probe_operator(fop, disk, space, gram)
    eigs = pr.hermitian_eigenvalues(op.matrix)[::-1]
    for val in eigs[:max(args.top, 0)]:
        print(f"{val:.17g}")
    return 0


def _cmd_validate(args):
    from .acceptance import run_all
    ok = run_all(quick=args.quick)
    return 0 if ok else _DATA_ERROR


def main(argv=None):
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else _USAGE_ERROR
    handlers = {"forward": _cmd_forward, "reconstruct": _cmd_reconstruct,
                "spectrum": _cmd_spectrum, "validate": _cmd_validate}
    try:
        return handlers[args.command](args)
    except (DataFormatError, ParameterError, DomainError, NumericalError,
            InteriorEigenvalueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _DATA_ERROR


if __name__ == "__main__":
    sys.exit(main())
