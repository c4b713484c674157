"""Forward scattering: exterior Dirichlet solver, far fields, F and G matrices.

The scattered field of a rigid obstacle is represented by a single-layer
ansatz u = SL[phi]; the density solves the trace equation S phi = f, which
inherits the interior-eigenvalue breakdown of the single-layer operator.
That breakdown is detected through a condition estimate and reported, not
circumvented.  One dense LU of S is shared by every incident direction and
every nodal basis column.

Far-field data files (.ffd) are a small line-oriented text format; see
write_ffd / read_ffd for the exact grammar.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as sla

from . import boundary as bd
from .elastic import farfield_prefactors, kernel_split, make_medium, perp
from .errors import (DataFormatError, InteriorEigenvalueError, ParameterError)

TWO_PI = 2.0 * np.pi

COND_LIMIT = 1e12


@dataclass(frozen=True)
class DirectionSet:
    """m uniform directions on the unit circle with quadrature weight 2pi/m."""
    m: int
    thetas: np.ndarray
    directions: np.ndarray  # (m, 2)

    @property
    def weight(self):
        return TWO_PI / self.m


def direction_set(m):
    if m < 2 or m % 2:
        raise ParameterError(f"m must be even and >= 2, got {m}")
    thetas = TWO_PI * np.arange(m) / m
    dirs = np.stack([np.cos(thetas), np.sin(thetas)], axis=-1)
    return DirectionSet(m, thetas, dirs)


@dataclass(frozen=True)
class FarFieldOperatorMatrix:
    """2m x 2m far-field operator in [pp ps; sp ss] block order."""
    m: int
    entries: np.ndarray
    medium: object
    noise_level: Optional[float] = None
    seed: Optional[int] = None


@dataclass(frozen=True)
class DataToPatternMatrix:
    """2m x 2n matrix: nodal Dirichlet data on the scatterer -> far-field coefficients."""
    entries: np.ndarray


def _flat(f):
    f = np.asarray(f)
    return f.reshape(-1) if f.ndim == 2 else f


class ExteriorSolver:
    """Factorized single-layer system at the medium frequency."""

    def __init__(self, disc, medium):
        self.disc = disc
        self.medium = medium
        self.smat = bd.assemble_single_layer(disc, medium, medium.omega)
        a = self.smat.entries
        self._lu = sla.lu_factor(a)
        anorm = np.linalg.norm(a, 1)
        rcond, info = sla.lapack.zgecon(self._lu[0], anorm)
        self.condition = np.inf if (info != 0 or rcond == 0.0) else 1.0 / rcond
        if self.condition >= COND_LIMIT:
            raise InteriorEigenvalueError(
                f"single-layer system condition {self.condition:.2e} >= {COND_LIMIT:.0e}; "
                "omega^2 is (numerically) a Dirichlet eigenvalue of the obstacle")

    def solve(self, rhs):
        return sla.lu_solve(self._lu, rhs)


def solve_exterior_dirichlet(disc, smat, f):
    """Solve S phi = f for the single-layer density of the exterior solution.

    f holds nodal boundary values, either stacked (2n,) or as (n, 2); the
    density is returned in the same shape.
    """
    a = smat.entries
    fv = _flat(f)
    if fv.shape[0] != a.shape[0]:
        raise ParameterError(f"boundary data size {fv.shape[0]} != {a.shape[0]}")
    cond = bd.condition_estimate(a)
    if cond >= COND_LIMIT:
        raise InteriorEigenvalueError(
            f"single-layer system condition {cond:.2e} >= {COND_LIMIT:.0e}")
    phi = np.linalg.solve(a, fv)
    return phi.reshape(np.asarray(f).shape)


def evaluate_potential(disc, medium, phi, points, frequency=None):
    """Single-layer potential SL[phi] at points away from the boundary."""
    imag = frequency == 1j
    points = np.atleast_2d(np.asarray(points, dtype=float))
    phi = _flat(phi).reshape(-1, 2)
    d = points[:, None, :] - disc.nodes[None, :, :]
    r = np.hypot(d[..., 0], d[..., 1])
    phi1, phi2 = kernel_split(medium, r, imag=imag)
    proj = np.einsum("tnc,nc->tn", d, phi) / (r * r)
    vals = np.einsum("tn,nc->tc", phi1 * disc.quad_weights, phi) \
        + np.einsum("tn,tnc->tc", phi2 * proj * disc.quad_weights, d)
    return vals


def incident_trace_matrix(disc, medium, dirs):
    """(2n, 2m) matrix of unit-amplitude plane-wave traces at the nodes.

    Column (j, beta) holds the nodal values of the incident wave from
    direction d_j with pure P (beta = p) or pure S (beta = s) amplitude.
    """
    y = disc.nodes
    dmat = dirs.directions
    phase_p = np.exp(1j * medium.kp * y @ dmat.T)     # (n, m)
    phase_s = np.exp(1j * medium.ks * y @ dmat.T)
    tp = phase_p[:, None, :] * dmat.T[None, :, :]     # (n, 2, m)
    ts = phase_s[:, None, :] * perp(dmat).T[None, :, :]
    n = disc.n
    return np.concatenate([tp.reshape(2 * n, dirs.m), ts.reshape(2 * n, dirs.m)],
                          axis=1)


def farfield_matrix(disc, dirs, medium):
    """(2m, 2n) quadrature matrix: nodal density -> far-field coefficients.

    Row (i, p) yields the P coefficient xhat_i . up_inf and row (i, s) the
    S coefficient perp(xhat_i) . us_inf of the single-layer potential.
    """
    cp, cs = farfield_prefactors(medium)
    y = disc.nodes
    dmat = dirs.directions
    wq = disc.quad_weights
    rp = cp * np.exp(-1j * medium.kp * dmat @ y.T)    # (m, n)
    rs = cs * np.exp(-1j * medium.ks * dmat @ y.T)
    rows_p = rp[:, :, None] * dmat[:, None, :] * wq[None, :, None]
    rows_s = rs[:, :, None] * perp(dmat)[:, None, :] * wq[None, :, None]
    m, n = dirs.m, disc.n
    return np.concatenate([rows_p.reshape(m, 2 * n), rows_s.reshape(m, 2 * n)],
                          axis=0)


def scattered_farfield(phi, disc, dirs, medium):
    """Far-field pattern vectors (up_inf, us_inf), each (m, 2), of SL[phi]."""
    ff = farfield_matrix(disc, dirs, medium)
    coef = ff @ _flat(phi)
    m = dirs.m
    up = coef[:m, None] * dirs.directions
    us = coef[m:, None] * perp(dirs.directions)
    return up, us


def _herglotz_column_scales(medium, dirs):
    """Incident weights e^{-i pi/4} sqrt(k_beta/omega) * (2pi/m) per column."""
    w = np.exp(-1j * np.pi / 4.0) * dirs.weight
    sp = w * np.sqrt(medium.kp / medium.omega)
    ss = w * np.sqrt(medium.ks / medium.omega)
    return np.concatenate([np.full(dirs.m, sp), np.full(dirs.m, ss)])


def assemble_farfield_operator(disc, medium, dirs, solver=None):
    """Discrete far-field operator from one LU of S shared by all columns."""
    solver = solver or ExteriorSolver(disc, medium)
    trace = incident_trace_matrix(disc, medium, dirs)
    densities = solver.solve(-trace)
    ff = farfield_matrix(disc, dirs, medium)
    entries = (ff @ densities) * _herglotz_column_scales(medium, dirs)[None, :]
    return FarFieldOperatorMatrix(dirs.m, entries, medium)


def assemble_data_to_pattern(disc, medium, dirs, solver=None):
    """Discrete data-to-pattern matrix G (2m x 2n)."""
    solver = solver or ExteriorSolver(disc, medium)
    densities = solver.solve(np.eye(2 * disc.n, dtype=complex))
    return DataToPatternMatrix(farfield_matrix(disc, dirs, medium) @ densities)


def add_noise(fop, level, seed):
    """Additive complex Gaussian noise, relative to the Frobenius norm.

    The perturbation is level * ||F||_F / (2m) * E where E has independent
    entries (x + iy)/sqrt(2), x and y standard normal from
    numpy.random.Generator(PCG64(seed)), drawn as two (2m, 2m) blocks (real
    parts first).  Bit-reproducible for a fixed seed within this package.
    """
    if not 0.0 <= level < 1.0:
        raise ParameterError(f"noise level must be in [0, 1), got {level}")
    if level == 0.0:
        return FarFieldOperatorMatrix(fop.m, fop.entries.copy(), fop.medium,
                                      noise_level=0.0, seed=int(seed))
    rng = np.random.Generator(np.random.PCG64(int(seed)))
    shape = fop.entries.shape
    e = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)
    scale = level * np.linalg.norm(fop.entries, "fro") / (2.0 * fop.m)
    return FarFieldOperatorMatrix(fop.m, fop.entries + scale * e, fop.medium,
                                  noise_level=float(level), seed=int(seed))


# ---------------------------------------------------------------------------
# .ffd file format
# ---------------------------------------------------------------------------
#   line 1:     "ffd 1"
#   comments:   lines starting with "#" (anywhere before the matrix rows)
#   header:     "key value" lines: lambda, mu, omega, m [, noise_level, seed]
#   matrix:     2m lines of 4m fields, row-major, alternating Re Im,
#               17 significant digits, block order [pp ps; sp ss]

_FFD_KEYS = ("lambda", "mu", "omega", "m", "noise_level", "seed")


def _fmt(x):
    return f"{x:.17g}"


def write_ffd(fop, path):
    """Write a far-field operator to the text .ffd format (LF endings)."""
    med = fop.medium
    lines = ["ffd 1",
             f"lambda {_fmt(med.lam)}",
             f"mu {_fmt(med.mu)}",
             f"omega {_fmt(med.omega)}",
             f"m {fop.m}"]
    if fop.noise_level is not None:
        lines.append(f"noise_level {_fmt(fop.noise_level)}")
    if fop.seed is not None:
        lines.append(f"seed {fop.seed}")
    for row in fop.entries:
        fields = np.empty(2 * row.size)
        fields[0::2] = row.real
        fields[1::2] = row.imag
        lines.append(" ".join(_fmt(v) for v in fields))
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def read_ffd(path):
    """Read a .ffd file; rejects unknown versions, keys and malformed sizes."""
    with open(path) as fh:
        raw = [ln.rstrip("\n") for ln in fh]
    lines = [ln for ln in raw if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0].strip() != "ffd 1":
        raise DataFormatError("not a recognized ffd version (expected 'ffd 1')")
    header = {}
    i = 1
    while i < len(lines):
        parts = lines[i].split()
        if len(parts) == 2 and parts[0] in _FFD_KEYS:
            if parts[0] in header:
                raise DataFormatError(f"duplicate header key {parts[0]!r}")
            header[parts[0]] = parts[1]
            i += 1
        else:
            break
    for key in ("lambda", "mu", "omega", "m"):
        if key not in header:
            raise DataFormatError(f"missing header key {key!r}")
    try:
        m = int(header["m"])
        medium = make_medium(float(header["lambda"]), float(header["mu"]),
                             float(header["omega"]))
    except (ValueError, ParameterError) as exc:
        raise DataFormatError(f"bad header value: {exc}") from exc
    rows = lines[i:]
    if len(rows) != 2 * m:
        raise DataFormatError(f"expected {2 * m} matrix rows, found {len(rows)}")
    entries = np.empty((2 * m, 2 * m), dtype=complex)
    for k, ln in enumerate(rows):
        vals = ln.split()
        if len(vals) != 4 * m:
            raise DataFormatError(f"row {k}: expected {4 * m} fields, got {len(vals)}")
        try:
            arr = np.array([float(v) for v in vals])
        except ValueError as exc:
            raise DataFormatError(f"row {k}: {exc}") from exc
        entries[k] = arr[0::2] + 1j * arr[1::2]
    noise = float(header["noise_level"]) if "noise_level" in header else None
    seed = int(header["seed"]) if "seed" in header else None
    return FarFieldOperatorMatrix(m, entries, medium, noise_level=noise, seed=seed)
