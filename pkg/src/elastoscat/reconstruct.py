"""End-user pipeline: run configuration, calibration, grid sweep, output files.

A sweep probes every grid cell with a test disk of fixed radius, counts the
eigenvalues of the probe operator above a threshold delta, and classifies
the cell inside iff the count stays at or below r_max.  delta and r_max are
calibration outputs obtained from a reference disk assumed to lie inside
the scatterer (the grid centroid); both can be overridden explicitly.
Per-cell numerical failures are recorded (count -1, "failed"), never fatal.
"""

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import boundary as bd
from . import forward as fw
from . import probe as pr
from .errors import DataFormatError, NumericalError, ParameterError

_SHAPE_PARAM_KEYS = {
    "circle": {"center", "radius"},
    "ellipse": {"center", "a", "b"},
    "kite": {"center", "scale"},
    "peanut": {"center", "scale"},
}


@dataclass(frozen=True)
class GridSpec:
    xmin: float = -2.0
    xmax: float = 2.0
    ymin: float = -2.0
    ymax: float = 2.0
    nx: int = 41
    ny: int = 41

    def __post_init__(self):
        if not (np.isfinite([self.xmin, self.xmax, self.ymin, self.ymax]).all()
                and self.xmax > self.xmin and self.ymax > self.ymin):
            raise ParameterError("grid bounds must be finite with max > min")
        if self.nx < 2 or self.ny < 2:
            raise ParameterError("nx and ny must be >= 2")

    @property
    def xs(self):
        return np.linspace(self.xmin, self.xmax, self.nx)

    @property
    def ys(self):
        return np.linspace(self.ymin, self.ymax, self.ny)


@dataclass(frozen=True)
class RunConfig:
    lam: float = 2.0
    mu: float = 1.0
    omega: float = 1.0
    scatterer: str = "circle"
    scatterer_params: dict = field(default_factory=lambda: {"center": (0.0, 0.0),
                                                            "radius": 1.0})
    n_boundary: int = 128
    m_directions: int = 64
    noise_level: float = 0.0
    seed: int = 0
    grid: GridSpec = field(default_factory=GridSpec)
    test_radius: float = 0.3
    nB: int = 32
    delta: Optional[float] = None   # None = auto-calibrate
    r_max: Optional[int] = None

    def medium(self):
        from .elastic import make_medium
        return make_medium(self.lam, self.mu, self.omega)

    def shape(self):
        return bd.make_shape(self.scatterer, **self.scatterer_params)


def parse_config(text):
    """Parse the flat "key = value" config grammar ('#' comments)."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DataFormatError(f"config line {lineno}: expected 'key = value'")
        key, val = (s.strip() for s in line.split("=", 1))
        if not key or not val:
            raise DataFormatError(f"config line {lineno}: empty key or value")
        if key in values:
            raise DataFormatError(f"config line {lineno}: duplicate key {key!r}")
        values[key] = val
    return _config_from_dict(values)


def load_config(path):
    with open(path) as fh:
        return parse_config(fh.read())


def _parse_pair(s):
    parts = s.split(",")
    if len(parts) != 2:
        raise DataFormatError(f"expected 'x,y', got {s!r}")
    return (float(parts[0]), float(parts[1]))


def _config_from_dict(values):
    cfg = {}
    grid = {}
    shape_params = {}
    scatterer = None
    simple = {"lambda": ("lam", float), "mu": ("mu", float), "omega": ("omega", float),
              "n_boundary": ("n_boundary", int), "m_directions": ("m_directions", int),
              "noise_level": ("noise_level", float), "seed": ("seed", int),
              "test_radius": ("test_radius", float), "nB": ("nB", int)}
    try:
        for key, val in values.items():
            if key in simple:
                name, conv = simple[key]
                cfg[name] = conv(val)
            elif key == "scatterer":
                scatterer = val
            elif key.startswith("scatterer."):
                pkey = key.split(".", 1)[1]
                shape_params[pkey] = _parse_pair(val) if pkey == "center" else float(val)
            elif key.startswith("grid."):
                gkey = key.split(".", 1)[1]
                if gkey not in ("xmin", "xmax", "ymin", "ymax", "nx", "ny"):
                    raise DataFormatError(f"unknown grid key {key!r}")
                grid[gkey] = int(val) if gkey in ("nx", "ny") else float(val)
            elif key == "delta":
                cfg["delta"] = None if val == "auto" else float(val)
            elif key == "r_max":
                cfg["r_max"] = None if val == "auto" else int(val)
            else:
                raise DataFormatError(f"unknown config key {key!r}")
    except ValueError as exc:
        raise DataFormatError(f"bad config value: {exc}") from exc
    if scatterer is not None:
        if scatterer not in _SHAPE_PARAM_KEYS:
            raise DataFormatError(f"unknown scatterer {scatterer!r}")
        unknown = set(shape_params) - _SHAPE_PARAM_KEYS[scatterer]
        if unknown:
            raise DataFormatError(f"invalid parameters {sorted(unknown)} "
                                  f"for scatterer {scatterer!r}")
        cfg["scatterer"] = scatterer
        cfg["scatterer_params"] = shape_params
    elif shape_params:
        raise DataFormatError("scatterer.* given without 'scatterer ='")
    if grid:
        cfg["grid"] = GridSpec(**{**GridSpec().__dict__, **grid})
    return RunConfig(**cfg)


@dataclass(frozen=True)
class IndicatorGrid:
    grid: GridSpec
    counts: np.ndarray        # (ny, nx) int, -1 for failed cells
    inside: np.ndarray        # (ny, nx) bool (failed cells are False)
    delta: float
    r_max: int
    calibration: str

    @property
    def failed(self):
        return self.counts < 0


def calibrate(fop, space, reference_disk):
    """Threshold and count bound from a reference disk assumed inside.

    delta = max(noise_level * ||F||_2, 1e-8 * ||F||_2); r_max is the
    reference count plus a slack of 2.
    """
    norm2 = np.linalg.norm(fop.entries, 2)
    if norm2 == 0.0:
        raise NumericalError("degenerate far-field matrix (zero norm)")
    level = fop.noise_level or 0.0
    delta = max(level * norm2, 1e-8 * norm2)
    gram = bd.sobolev_gram(reference_disk.disc, 0.5)
    op = pr.probe_operator(fop, reference_disk, space, gram)
    eigs = pr.hermitian_eigenvalues(op.matrix)
    r_max = pr.count_above(eigs, delta).count_above + 2
    return delta, r_max


def sweep(config, fop, max_workers=None):
    """Probe every grid cell; returns the indicator grid.

    Cells are evaluated by a parallel map with placement by index, so the
    output is independent of scheduling.
    """
    medium = fop.medium
    dirs = fw.direction_set(fop.m)
    space = pr.weighted_space(dirs, medium)
    grid = config.grid

    if config.delta is not None and config.r_max is not None:
        delta, r_max = float(config.delta), int(config.r_max)
        note = "explicit"
    else:
        centroid = (0.5 * (grid.xmin + grid.xmax), 0.5 * (grid.ymin + grid.ymax))
        ref = pr.test_disk(centroid, config.test_radius, config.nB)
        delta, r_max = calibrate(fop, space, ref)
        if config.delta is not None:
            delta, note = float(config.delta), "delta explicit, r_max calibrated"
        elif config.r_max is not None:
            r_max, note = int(config.r_max), "delta calibrated, r_max explicit"
        else:
            note = f"calibrated at grid centroid {centroid}"
    if delta <= 0:
        raise ParameterError("delta must be > 0")

    # one disk geometry serves every cell: the Gram depends only on (radius, nB)
    gram = bd.sobolev_gram(
        pr.test_disk((0.0, 0.0), config.test_radius, config.nB).disc, 0.5)
    xs, ys = grid.xs, grid.ys
    centers = [(x, y) for y in ys for x in xs]

    def cell(center):
        try:
            disk = pr.test_disk(center, config.test_radius, config.nB)
            op = pr.probe_operator(fop, disk, space, gram)
            eigs = pr.hermitian_eigenvalues(op.matrix)
            return pr.count_above(eigs, delta).count_above
        except (ParameterError, NumericalError, np.linalg.LinAlgError):
            return -1

    workers = max_workers or min(8, os.cpu_count() or 1)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        counts = list(pool.map(cell, centers))
    counts = np.array(counts, dtype=int).reshape(grid.ny, grid.nx)
    inside = (counts >= 0) & (counts <= r_max)
    return IndicatorGrid(grid, counts, inside, float(delta), int(r_max),
                         calibration=note)


def _fmt(x):
    return f"{x:.17g}"


def write_indicator_csv(ind, path):
    """CSV rows row-major from (xmin, ymin); failed cells carry count -1."""
    lines = ["x,y,count,inside"]
    xs, ys = ind.grid.xs, ind.grid.ys
    for iy, y in enumerate(ys):
        for ix, x in enumerate(xs):
            lines.append(f"{_fmt(x)},{_fmt(y)},{ind.counts[iy, ix]},"
                         f"{int(ind.inside[iy, ix])}")
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_indicator_csv(path):
    """Read back a CSV written by write_indicator_csv (counts and flags)."""
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    if not lines or lines[0] != "x,y,count,inside":
        raise DataFormatError("bad indicator CSV header")
    rows = []
    for ln in lines[1:]:
        parts = ln.split(",")
        if len(parts) != 4:
            raise DataFormatError(f"bad CSV row: {ln!r}")
        rows.append((float(parts[0]), float(parts[1]), int(parts[2]), int(parts[3])))
    return rows


def write_indicator_pgm(ind, path):
    """Plain PGM (P2): 255 inside, 0 outside, 128 failed; top row is ymax."""
    vals = np.where(ind.failed, 128, np.where(ind.inside, 255, 0))
    lines = ["P2", f"{ind.grid.nx} {ind.grid.ny}", "255"]
    for iy in range(ind.grid.ny - 1, -1, -1):
        lines.append(" ".join(str(v) for v in vals[iy]))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
