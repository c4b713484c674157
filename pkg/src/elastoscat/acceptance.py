"""Acceptance suite: every shipped claim run at its stated tolerance.

Each criterion function returns (passed, detail) and is independent of the
code path it checks wherever an oracle is involved (power-series references,
finite differences, self-convergence, end-to-end phantoms).  `run_all`
prints one PASS/FAIL line per criterion; the CLI `validate` subcommand and
tests/test_acceptance.py both drive it.  Quick mode shrinks grids and
sample counts but keeps every criterion active.
"""

import os
import tempfile

import numpy as np

from . import boundary as bd
from . import cli
from . import cylfun as cf
from . import elastic as el
from . import forward as fw
from . import probe as pr
from . import reconstruct as rc
from . import _refseries as rs

PHANTOM_SEED = 7


def _phantom_config(shape_lines, nx=41, ny=41, noise=0.0):
    return "\n".join([
        "# phantom run fixture",
        "lambda = 2",
        "mu = 1",
        "omega = 1",
        *shape_lines,
        "n_boundary = 128",
        "m_directions = 64",
        f"noise_level = {noise:g}",
        f"seed = {PHANTOM_SEED}",
        "grid.xmin = -2", "grid.xmax = 2",
        "grid.ymin = -2", "grid.ymax = 2",
        f"grid.nx = {nx}", f"grid.ny = {ny}",
        "test_radius = 0.3",
        "nB = 32",
        "delta = auto",
        "r_max = auto",
    ]) + "\n"


DISK_CONFIG = _phantom_config(["scatterer = circle", "scatterer.center = 0,0",
                               "scatterer.radius = 1"])
KITE_CONFIG = _phantom_config(["scatterer = kite", "scatterer.center = 0,0",
                               "scatterer.scale = 1"])


class _Context:
    """Caches the expensive shared objects (F, G, solvers) across criteria."""

    def __init__(self, quick=False):
        self.quick = quick
        self._cache = {}

    def medium(self):
        return el.make_medium(2.0, 1.0, 1.0)

    def scatterer(self, name, n=128):
        key = ("disc", name, n)
        if key not in self._cache:
            shape = bd.circle(radius=1.0) if name == "circle" else bd.make_shape(name)
            self._cache[key] = bd.discretize(shape, n)
        return self._cache[key]

    def solver(self, name, n=128):
        key = ("solver", name, n)
        if key not in self._cache:
            self._cache[key] = fw.ExteriorSolver(self.scatterer(name, n), self.medium())
        return self._cache[key]

    def farfield(self, name, n=128, m=64):
        key = ("F", name, n, m)
        if key not in self._cache:
            self._cache[key] = fw.assemble_farfield_operator(
                self.scatterer(name, n), self.medium(), fw.direction_set(m),
                solver=self.solver(name, n))
        return self._cache[key]

    def data_to_pattern(self, name, n=128, m=64):
        key = ("G", name, n, m)
        if key not in self._cache:
            self._cache[key] = fw.assemble_data_to_pattern(
                self.scatterer(name, n), self.medium(), fw.direction_set(m),
                solver=self.solver(name, n))
        return self._cache[key]


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def criterion_1_special_functions(ctx):
    """J/Y vs series oracle 1e-10 abs on [1e-3, 100]; Wronskian 1e-10 rel;
    K0/K1 connection formula 1e-9 rel on [0.1, 20]."""
    npts = 24 if ctx.quick else 60
    zs = np.concatenate([np.geomspace(1e-3, 100.0, npts),
                         [10.999, 11.001, 11.999, 12.001]])
    worst_jy = 0.0
    for z in zs:
        for order in (0, 1):
            jref, yref = rs.ref_bessel_jy(order, float(z))
            j, y = cf.bessel_jy(order, float(z))
            worst_jy = max(worst_jy, abs(j - jref.real), abs(y - yref.real))
    ok1 = worst_jy <= 1e-10

    zw = np.geomspace(1e-3, 100.0, 100 if ctx.quick else 1000)
    j0, y0 = cf.bessel_jy(0, zw)
    j1, y1 = cf.bessel_jy(1, zw)
    wr = np.abs(j0 * y1 - j1 * y0 + 2.0 / (np.pi * zw)) / (2.0 / (np.pi * zw))
    ok2 = wr.max() <= 1e-10

    worst_k = 0.0
    for x in np.geomspace(0.1, 20.0, 12 if ctx.quick else 40):
        h0 = rs.ref_hankel1(0, 1j * float(x))
        h1 = rs.ref_hankel1(1, 1j * float(x))
        c0 = 2.0 / (1j * np.pi) * cf.modbessel_k(0, float(x))
        c1 = -2.0 / np.pi * cf.modbessel_k(1, float(x))
        worst_k = max(worst_k, abs(h0 - c0) / abs(h0), abs(h1 - c1) / abs(h1))
    ok3 = worst_k <= 1e-9
    return (ok1 and ok2 and ok3,
            f"J/Y abs {worst_jy:.2e} (<=1e-10), Wronskian {wr.max():.2e} "
            f"(<=1e-10), K connection {worst_k:.2e} (<=1e-9)")


def _navier_residual(fieldfn, x, medium, h=5e-4):
    # h = 5e-4: at the closest sampled pairs (r = 0.5) the 1e-3 step's O(h^2)
    # truncation slightly overshoots the 1e-5 budget; rounding is ~eps/h^2.
    e1, e2 = np.array([h, 0.0]), np.array([0.0, h])
    u0 = fieldfn(x)
    uxx = (fieldfn(x + e1) - 2 * u0 + fieldfn(x - e1)) / h ** 2
    uyy = (fieldfn(x + e2) - 2 * u0 + fieldfn(x - e2)) / h ** 2
    uxy = (fieldfn(x + e1 + e2) - fieldfn(x + e1 - e2)
           - fieldfn(x - e1 + e2) + fieldfn(x - e1 - e2)) / (4 * h ** 2)
    lap = uxx + uyy
    graddiv = np.array([uxx[0] + uxy[1], uxy[0] + uyy[1]])
    t1 = medium.mu * lap
    t2 = (medium.lam + medium.mu) * graddiv
    t3 = medium.omega ** 2 * u0
    scale = max(np.abs(t1).max(), np.abs(t2).max(), np.abs(t3).max())
    return np.abs(t1 + t2 + t3).max() / scale


def criterion_2_green_tensor(ctx):
    """PDE residual <= 1e-5 (FD oracle) at random pairs; reciprocity 1e-13."""
    med = ctx.medium()
    rng = np.random.default_rng(42)
    npairs = 50 if ctx.quick else 200
    worst = 0.0
    for _ in range(npairs):
        y = rng.uniform(-1, 1, 2)
        e = rng.standard_normal(2)
        ang = rng.uniform(0, 2 * np.pi)
        x = y + rng.uniform(0.5, 3.0) * np.array([np.cos(ang), np.sin(ang)])
        worst = max(worst, _navier_residual(
            lambda p: el.green_tensor(p, y, med) @ e, x, med))
    ok1 = worst <= 1e-5

    worst_rec = 0.0
    for _ in range(100):
        x = rng.uniform(-3, 3, 2)
        ang = rng.uniform(0, 2 * np.pi)
        y = x + rng.uniform(0.1, 10.0) * np.array([np.cos(ang), np.sin(ang)])
        g1 = el.green_tensor(x, y, med)
        g2 = el.green_tensor(y, x, med)
        worst_rec = max(worst_rec,
                        np.abs(g1 - g2.T).max() / np.abs(g1).max())
    ok2 = worst_rec <= 1e-13
    return (ok1 and ok2, f"PDE residual {worst:.2e} (<=1e-5), "
                         f"reciprocity {worst_rec:.2e} (<=1e-13)")


def _boundary_residual(ctx, n):
    med = ctx.medium()
    disc = ctx.scatterer("kite", n)
    solver = ctx.solver("kite", n)
    spec = el.PlaneWaveSpec(np.array([1.0, 0.0]), 1.0, 0.7)
    ui = el.incident_field(spec, med, disc.nodes)
    phi = solver.solve(-ui.reshape(-1))
    taus = disc.t + np.pi / n
    rows = bd.single_layer_offnode(disc, med, med.omega, taus)
    total = el.incident_field(spec, med, disc.boundary.gamma(taus)) \
        + (rows @ phi).reshape(-1, 2)
    return np.abs(total).max() / np.abs(ui).max()


def criterion_3_forward_solver(ctx):
    """Interior-source oracle 1e-6; boundary residual 1e-6; >=100x at 2n."""
    med = ctx.medium()
    disc = ctx.scatterer("kite", 128)
    solver = ctx.solver("kite", 128)
    z = np.array([0.1, 0.2])
    e = np.array([1.0, -0.5])
    f = np.array([el.green_tensor(x, z, med) @ e for x in disc.nodes])
    phi = fw.solve_exterior_dirichlet(disc, solver.smat, f)
    pts = np.array([[3.0, 0.5], [0.0, 4.0], [-2.5, -2.0], [5.0, -1.0]])
    u_rep = fw.evaluate_potential(disc, med, phi, pts)
    u_ref = np.array([el.green_tensor(p, z, med) @ e for p in pts])
    err_src = np.abs(u_rep - u_ref).max() / np.abs(u_ref).max()

    r128 = _boundary_residual(ctx, 128)
    r64 = _boundary_residual(ctx, 64)
    gain = r64 / max(r128, 1e-300)
    ok = err_src <= 1e-6 and r128 <= 1e-6 and gain >= 100.0
    return (ok, f"interior-source {err_src:.2e} (<=1e-6), boundary residual "
                f"{r128:.2e} (<=1e-6), n=64->128 gain {gain:.0f}x (>=100x)")


def criterion_4_factorization(ctx):
    """||F + sqrt(8 pi w) G S* G*|| <= 1e-3 ||F||; H* = sqrt(8 pi w) G S to 1e-3."""
    n, m = (64, 32) if ctx.quick else (128, 64)
    med = ctx.medium()
    disc = ctx.scatterer("kite", n)
    dirs = fw.direction_set(m)
    space = pr.weighted_space(dirs, med)
    fop = ctx.farfield("kite", n, m)
    gmat = ctx.data_to_pattern("kite", n, m).entries
    smat = ctx.solver("kite", n).smat.entries
    g0 = np.repeat(disc.quad_weights, 2)
    w = space.weights
    c = np.sqrt(8.0 * np.pi * med.omega)

    h = pr.herglotz_matrix_points(disc.nodes, space, med)
    hstar = (h.conj().T * g0[None, :]) / w[:, None]
    gs = c * (gmat @ smat)
    err_h = np.linalg.norm(hstar - gs) / np.linalg.norm(gs)

    sstar = (smat.conj().T * g0[None, :]) / g0[:, None]
    gstar = (gmat.conj().T * w[None, :]) / g0[:, None]
    resid = fop.entries + c * gmat @ sstar @ gstar
    err_f = pr.weighted_opnorm(resid, space) / pr.weighted_opnorm(fop.entries, space)
    ok = err_f <= 1e-3 and err_h <= 1e-3
    return (ok, f"factorization residual {err_f:.2e} (<=1e-3), "
                f"H* identity {err_h:.2e} (<=1e-3)")


def criterion_5_si_coercivity(ctx):
    """Symmetrized discrete S_i positive definite on all catalog shapes."""
    med = ctx.medium()
    ns = (32, 64) if ctx.quick else (32, 64, 128)
    worst = np.inf
    for name in ("circle", "ellipse", "kite", "peanut"):
        for n in ns:
            disc = bd.discretize(bd.make_shape(name), n)
            si = bd.assemble_single_layer(disc, med, 1j).entries.real
            g0 = np.repeat(disc.quad_weights, 2)
            sym = 0.5 * (g0[:, None] * si + (g0[:, None] * si).T)
            worst = min(worst, np.linalg.eigvalsh(sym).min())
    return (worst > 0.0, f"min eigenvalue over shapes/sizes {worst:.3e} (>0)")


def criterion_6_localized_waves(ctx):
    """>=10x Herglotz growth with >=10x G*-decay for a protruding disk;
    neither for an interior disk (control)."""
    med = ctx.medium()
    disc = ctx.scatterer("kite", 128)
    dirs = fw.direction_set(64)
    space = pr.weighted_space(dirs, med)
    gmat = ctx.data_to_pattern("kite", 128, 64).entries
    gram0 = bd.sobolev_gram(disc, 0.0)
    gram_m = bd.sobolev_gram(disc, -0.5)
    sigmas = [10.0 ** (-k) for k in range(1, 13)]

    def ratios(center, radius):
        disk = pr.test_disk(center, radius, 48)
        hb = pr.herglotz_matrix(disk, space, med)
        gram_b = bd.sobolev_gram(disk.disc, 0.5)
        gs = pr.localized_density(hb, gram_b, gmat, gram_m, gram0, space, sigmas)
        sb = bd.gram_sqrt(gram_b)
        smd = bd.gram_sqrt(gram_m)
        g0d = np.diag(gram0.matrix)
        hn = [np.linalg.norm(sb @ (hb @ g)) for g in gs]
        gn = [np.linalg.norm(smd @ ((gmat.conj().T @ (space.weights * g)) / g0d))
              for g in gs]
        return hn[-1] / hn[0], gn[0] / gn[-1]

    grow_p, decay_p = ratios((-2.3, 0.0), 1.4)
    grow_i, decay_i = ratios((0.1, 0.0), 0.5)
    ok = grow_p >= 10.0 and decay_p >= 10.0 and grow_i < 10.0 and decay_i < 10.0
    return (ok, f"protruding: H x{grow_p:.1f}, G* /{decay_p:.1f} (both >=10); "
                f"interior control: H x{grow_i:.1f}, G* /{decay_i:.1f} (both <10)")


def criterion_7_monotonicity_separation(ctx):
    """Counts <= r_max for 10 interior disks, > r_max for 10 exterior or
    protruding disks, noise 0 and 1e-3, after calibration."""
    med = ctx.medium()
    dirs = fw.direction_set(64)
    space = pr.weighted_space(dirs, med)
    f_clean = ctx.farfield("circle", 128, 64)
    radius, nb = 0.4, 32
    interior = [(0.0, 0.0), (0.3, 0.0), (-0.3, 0.0), (0.0, 0.3), (0.0, -0.3),
                (0.39, 0.39), (-0.39, 0.39), (0.39, -0.39), (-0.39, -0.39),
                (0.55, 0.0)]
    outside = [(1.2, 0.0), (0.0, 1.3), (-1.4, 0.0), (0.0, -1.5), (1.6, 0.0),
               (1.2, 1.2), (-1.3, -1.3), (0.0, 1.9), (-1.9, 0.0), (1.4, -0.9)]
    if ctx.quick:
        interior, outside = interior[:5], outside[:5]
    gram = bd.sobolev_gram(pr.test_disk((0, 0), radius, nb).disc, 0.5)

    details = []
    ok = True
    for level in (0.0, 1e-3):
        fop = fw.add_noise(f_clean, level, PHANTOM_SEED)
        delta, r_max = rc.calibrate(fop, space, pr.test_disk((0, 0), radius, nb))

        def count(center):
            op = pr.probe_operator(fop, pr.test_disk(center, radius, nb),
                                   space, gram)
            return pr.count_above(pr.hermitian_eigenvalues(op.matrix),
                                  delta).count_above

        cin = [count(c) for c in interior]
        cout = [count(c) for c in outside]
        good = max(cin) <= r_max and min(cout) > r_max
        ok = ok and good
        details.append(f"noise {level:g}: r_max={r_max}, interior max {max(cin)}, "
                       f"outside min {min(cout)}")
    return ok, "; ".join(details)


def _boundary_polygon(cfg, samples=4096):
    t = 2.0 * np.pi * np.arange(samples) / samples
    return cfg.shape().gamma(t)


def _points_inside(poly, points):
    """Even-odd ray casting against a closed polygon, vectorized over points."""
    x, y = points[:, 0], points[:, 1]
    px, py = poly[:, 0], poly[:, 1]
    qx, qy = np.roll(px, -1), np.roll(py, -1)
    inside = np.zeros(len(points), dtype=bool)
    for ax, ay, bx, by in zip(px, py, qx, qy):
        crosses = (ay > y) != (by > y)
        with np.errstate(divide="ignore", invalid="ignore"):
            xint = ax + (y - ay) * (bx - ax) / (by - ay)
        inside ^= crosses & (x < xint)
    return inside


def _dist_to_polygon(poly, points):
    """Distance from points to a closed polygon boundary (0 if inside)."""
    a = poly
    b = np.roll(poly, -1, axis=0)
    ab = b - a
    denom = np.einsum("ec,ec->e", ab, ab)
    ap = points[:, None, :] - a[None, :, :]
    tpar = np.clip(np.einsum("pec,ec->pe", ap, ab) / denom, 0.0, 1.0)
    closest = a[None, :, :] + tpar[:, :, None] * ab[None, :, :]
    d = np.linalg.norm(points[:, None, :] - closest, axis=2).min(axis=1)
    d[_points_inside(poly, points)] = 0.0
    return d


def _run_phantom(config_text, workdir, tag):
    cfg_path = os.path.join(workdir, f"{tag}.cfg")
    ffd_path = os.path.join(workdir, f"{tag}.ffd")
    csv_path = os.path.join(workdir, f"{tag}.csv")
    pgm_path = os.path.join(workdir, f"{tag}.pgm")
    with open(cfg_path, "w") as fh:
        fh.write(config_text)
    rcode = cli.main(["forward", "--config", cfg_path, "--out", ffd_path])
    if rcode != 0:
        raise RuntimeError(f"forward exited {rcode}")
    rcode = cli.main(["reconstruct", "--config", cfg_path, "--data", ffd_path,
                      "--out", csv_path, "--pgm", pgm_path])
    if rcode != 0:
        raise RuntimeError(f"reconstruct exited {rcode}")
    return cfg_path, ffd_path, csv_path, pgm_path


def _jaccard_from_csv(csv_path, cfg):
    rows = rc.read_indicator_csv(csv_path)
    pts = np.array([(r[0], r[1]) for r in rows])
    inside_rec = np.array([r[3] == 1 for r in rows])
    poly = _boundary_polygon(cfg)
    inside_true = _points_inside(poly, pts)
    union = np.count_nonzero(inside_rec | inside_true)
    inter = np.count_nonzero(inside_rec & inside_true)
    jac = inter / union if union else 0.0
    # regression guard: no inside cell whose disk lies entirely outside the
    # grid-dilated convex hull of the scatterer
    from scipy.spatial import ConvexHull
    hull = poly[ConvexHull(poly).vertices]
    cell = max((cfg.grid.xmax - cfg.grid.xmin) / (cfg.grid.nx - 1),
               (cfg.grid.ymax - cfg.grid.ymin) / (cfg.grid.ny - 1))
    far = _dist_to_polygon(hull, pts) > cfg.test_radius + cell
    guard_ok = not np.any(inside_rec & far)
    return jac, guard_ok


def criterion_8_reconstruction(ctx):
    """Disk and kite phantoms reach Jaccard >= 0.6 on the configured grid."""
    size = 21 if ctx.quick else 41
    details = []
    ok = True
    with tempfile.TemporaryDirectory() as tmp:
        for tag, lines in (("disk", ["scatterer = circle", "scatterer.center = 0,0",
                                     "scatterer.radius = 1"]),
                           ("kite", ["scatterer = kite", "scatterer.center = 0,0",
                                     "scatterer.scale = 1"])):
            text = _phantom_config(lines, nx=size, ny=size)
            _, _, csv_path, _ = _run_phantom(text, tmp, tag)
            jac, guard = _jaccard_from_csv(csv_path, rc.parse_config(text))
            ok = ok and jac >= 0.6 and guard
            details.append(f"{tag}: Jaccard {jac:.3f} (>=0.6), "
                           f"hull guard {'ok' if guard else 'VIOLATED'}")
    return ok, "; ".join(details)


def criterion_9_determinism(ctx):
    """Identical config twice -> byte-identical .ffd, CSV and PGM artifacts."""
    text = _phantom_config(["scatterer = circle", "scatterer.center = 0,0",
                            "scatterer.radius = 1"], nx=9, ny=9, noise=1e-3)
    blobs = []
    with tempfile.TemporaryDirectory() as tmp:
        for run in ("a", "b"):
            paths = _run_phantom(text, tmp, run)[1:]
            blobs.append(tuple(open(p, "rb").read() for p in paths))
    same = all(x == y for x, y in zip(*blobs))
    return same, "ffd/csv/pgm byte-identical across reruns" if same \
        else "artifacts differ between reruns"


CRITERIA = [
    ("1 special functions", criterion_1_special_functions),
    ("2 green tensor", criterion_2_green_tensor),
    ("3 forward solver", criterion_3_forward_solver),
    ("4 factorization", criterion_4_factorization),
    ("5 S_i coercivity", criterion_5_si_coercivity),
    ("6 localized waves", criterion_6_localized_waves),
    ("7 monotonicity separation", criterion_7_monotonicity_separation),
    ("8 end-to-end reconstruction", criterion_8_reconstruction),
    ("9 determinism", criterion_9_determinism),
]


def run_all(quick=False):
    """Run every acceptance criterion; print one line each; True if all pass."""
    ctx = _Context(quick=quick)
    all_ok = True
    for name, fn in CRITERIA:
        try:
            ok, detail = fn(ctx)
        except Exception as exc:  # a crashed criterion is a failed criterion
            ok, detail = False, f"raised {type(exc).__name__}: {exc}"
        all_ok = all_ok and ok
        print(f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}")
    return all_ok
