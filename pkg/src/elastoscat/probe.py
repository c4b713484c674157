"""Monotonicity probe: weighted direction space, Herglotz matrices,
the Hermitian operator Re(F) + H_B* H_B, and eigenvalue counting.

The far-field data live in the weighted L^2 space of direction coefficient
pairs with diagonal weight (omega/k_beta) * (2pi/m).  All adjoints are taken
through Gram matrices: for the Herglotz operator on a probing boundary B,
H_B* = W^{-1} H_B^H Gamma_B.  In the orthonormalizing coordinates
c = W^{1/2} g the probe operator becomes

    M = Sym(W^{1/2} F W^{-1/2}) + A^H A,   A = Gamma_B^{1/2} H_B W^{-1/2},

which is Hermitian with a positive semidefinite Herglotz part.  Deciding
whether a probing disk sits inside the scatterer reduces to counting the
eigenvalues of M above a calibrated threshold.

The localized-wave construction (exploding Herglotz energy on B with
vanishing influence on the scatterer) is realized as a Tikhonov-regularized
generalized eigenpencil; it is a constructive numerical demonstration of an
existence statement, not an equivalent of it.
"""

from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from . import boundary as bd
from .elastic import perp
from .errors import NumericalError, ParameterError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class WeightedDirectionSpace:
    """Direction set plus the diagonal weight of the data inner product."""
    dirs: object
    medium: object
    weights: np.ndarray  # (2m,) positive; P block then S block

    @property
    def m(self):
        return self.dirs.m


def weighted_space(dirs, medium):
    wp = (medium.omega / medium.kp) * dirs.weight
    ws = (medium.omega / medium.ks) * dirs.weight
    w = np.concatenate([np.full(dirs.m, wp), np.full(dirs.m, ws)])
    return WeightedDirectionSpace(dirs, medium, w)


def weighted_inner(g, h, space):
    """<g, h>_W = conj(g)^T W h."""
    g = np.asarray(g)
    h = np.asarray(h)
    if g.shape != (2 * space.m,) or h.shape != (2 * space.m,):
        raise ParameterError("coefficient vectors must have length 2m")
    return np.vdot(g, space.weights * h)


def weighted_opnorm(a, space):
    """Operator norm of a on the weighted space: ||W^(1/2) a W^(-1/2)||_2."""
    ws = np.sqrt(space.weights)
    return np.linalg.norm((ws[:, None] * a) / ws[None, :], 2)


@dataclass(frozen=True)
class TestDisk:
    """Probing disk: center, radius, and its boundary discretization."""
    center: np.ndarray
    radius: float
    nB: int
    disc: object


def test_disk(center, radius, nB=32):
    if radius <= 0:
        raise ParameterError(f"radius must be > 0, got {radius}")
    if nB < 16 or nB % 2:
        raise ParameterError(f"nB must be even and >= 16, got {nB}")
    center = np.asarray(center, dtype=float)
    disc = bd.discretize(bd.circle(center, radius), nB)
    return TestDisk(center, float(radius), int(nB), disc)


def herglotz_matrix_points(points, space, medium):
    """(2N, 2m) matrix of the Herglotz superposition at arbitrary points.

    Column (j, beta) holds e^{-i pi/4} (2pi/m) sqrt(k_beta/omega) times the
    unit plane wave from direction d_j evaluated at the points.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    dirs = space.dirs
    dmat = dirs.directions
    wp = np.exp(-1j * np.pi / 4.0) * dirs.weight * np.sqrt(medium.kp / medium.omega)
    ws = np.exp(-1j * np.pi / 4.0) * dirs.weight * np.sqrt(medium.ks / medium.omega)
    phase_p = np.exp(1j * medium.kp * points @ dmat.T)   # (N, m)
    phase_s = np.exp(1j * medium.ks * points @ dmat.T)
    cols_p = wp * phase_p[:, None, :] * dmat.T[None, :, :]
    cols_s = ws * phase_s[:, None, :] * perp(dmat).T[None, :, :]
    n = len(points)
    return np.concatenate([cols_p.reshape(2 * n, dirs.m),
                           cols_s.reshape(2 * n, dirs.m)], axis=1)


def herglotz_matrix(disk, space, medium):
    """Herglotz matrix H_B of a probing disk: coefficients -> nodal values on dB."""
    return herglotz_matrix_points(disk.disc.nodes, space, medium)


@dataclass(frozen=True)
class ProbeOperator:
    matrix: np.ndarray  # (2m, 2m) Hermitian, weighted coordinates
    disk: TestDisk


def probe_operator(fop, disk, space, gram):
    """Hermitian probe matrix of Re(F) + H_B* H_B in weighted coordinates."""
    if fop.m != space.m:
        raise ParameterError("direction counts of F and the space disagree")
    ws = np.sqrt(space.weights)
    f_t = (ws[:, None] * fop.entries) / ws[None, :]
    sym_f = 0.5 * (f_t + f_t.conj().T)
    hb = herglotz_matrix(disk, space, space.medium)
    a = bd.gram_sqrt(gram) @ hb / ws[None, :]
    mat = sym_f + a.conj().T @ a
    mat = 0.5 * (mat + mat.conj().T)
    return ProbeOperator(mat, disk)


def hermitian_eigenvalues(mat, tol=1e-9):
    """All eigenvalues of a Hermitian matrix, ascending (LAPACK dense solver)."""
    mat = np.asarray(mat)
    scale = np.linalg.norm(mat, "fro")
    if scale > 0 and np.linalg.norm(mat - mat.conj().T, "fro") > tol * scale:
        raise ParameterError("matrix is not Hermitian within tolerance")
    return np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))


@dataclass(frozen=True)
class EigenCount:
    eigenvalues: np.ndarray
    delta: float
    count_above: int


def count_above(eigs, delta):
    """Number of eigenvalues strictly greater than delta > 0."""
    if not delta > 0:
        raise ParameterError(f"delta must be > 0, got {delta}")
    eigs = np.sort(np.asarray(eigs, dtype=float))
    return EigenCount(eigs, float(delta), int(np.count_nonzero(eigs > delta)))


def localized_density(herglotz, gram_b, g_matrix, gram_mhalf_d, gram0_d, space,
                      sigmas):
    """Densities concentrating Herglotz energy on B while muting G* on D.

    For each regularization sigma_k the top generalized eigenvector c_k of
    the pencil (A, C_k) is computed, where A is the Herglotz energy form on
    dB and C_k = Gt^H Gt + sigma_k I with Gt the H^{-1/2}(dD)-weighted
    adjoint-side matrix of G; c_k (unit C_k-quadratic form) maximizes the
    energy ratio rho_k = ||H_B c|| / ||Gt c||.  The returned densities carry
    the rescale g_k = c_k / (lambda_k M_k)^{1/4} (lambda_k the attained
    Rayleigh quotient, M_k = ||Gt c_k||^2), after which

        ||H_B g_k|| = rho_k^{1/2},   ||Gt g_k|| = rho_k^{-1/2},

    so Herglotz growth and G*-decay are witnessed simultaneously and their
    product stays 1.  Densities are returned in unweighted coordinates.
    """
    sigmas = np.asarray(sigmas, dtype=float)
    if np.any(sigmas <= 0) or np.any(np.diff(sigmas) >= 0):
        raise ParameterError("sigmas must be strictly decreasing positive reals")
    ws = np.sqrt(space.weights)
    a_half = bd.gram_sqrt(gram_b) @ herglotz / ws[None, :]
    a = a_half.conj().T @ a_half
    # Gt = Gamma_{-1/2}^{1/2} Gamma_0^{-1} G^H W^{1/2}: the H^{-1/2}(dD)-weighted
    # matrix of G* acting on weighted coordinates c = W^{1/2} g.
    g0 = gram0_d.matrix if hasattr(gram0_d, "matrix") else gram0_d
    g_adj = np.linalg.solve(g0, g_matrix.conj().T * space.weights[None, :])
    gt = bd.gram_sqrt(gram_mhalf_d) @ g_adj / ws[None, :]
    base = gt.conj().T @ gt
    out = []
    for sig in sigmas:
        c_k = base + sig * np.eye(base.shape[0])
        try:
            vals, vecs = sla.eigh(a, c_k)
        except sla.LinAlgError as exc:
            raise NumericalError(f"eigenpencil breakdown at sigma={sig}") from exc
        v = vecs[:, -1]  # unit C_k-norm by eigh's B-orthonormalization
        lam = float(vals[-1])
        msq = float(np.linalg.norm(gt @ v) ** 2)
        if lam <= 0 or msq <= 0:
            raise NumericalError(f"degenerate pencil at sigma={sig}")
        out.append(v / (lam * msq) ** 0.25 / ws)
    return out
