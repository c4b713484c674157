"""Elastic medium, plane waves, and the Navier Green's tensor.

The Green's tensor of 2D time-harmonic elasticity,

    G(x, y) = (i/4mu) H0(ks r) I2
              + (i/4w^2) grad_x grad_x^T [H0(ks r) - H0(kp r)],   r = |x - y|,

is evaluated in kernel-split form G = phi1(r) I2 + phi2(r) rhat rhat^T.
Differentiating the radial Hankel terms gives

    phi1(r) = (i/4mu) H0(ks r) - (i/4w^2) E(r),
    phi2(r) = (i/4w^2) [kp^2 H0(kp r) - ks^2 H0(ks r) + 2 E(r)],
    E(r)    = [ks H1(ks r) - kp H1(kp r)] / r,

where the 1/r^2 poles of the two terms of E cancel; E is computed from the
regularized H1(z)/z so the cancellation is exact.  The logarithmic parts of
phi1, phi2 (needed by the quadrature module) and their r -> 0 limits follow
from the small-argument expansions of H0, H1 and are locked by tests against
finite-difference and Richardson oracles.

At imaginary frequency (w = i) the connection formulas H0(ix) = -(2i/pi)K0(x)
and H1(ix) = -(2/pi)K1(x) turn the same split into a real, exponentially
decaying kernel built from K0, K1.  That kernel is consumed exclusively by
the single-layer boundary operator (the coercive positivity anchor of the
monotonicity test); no far-field object exists at imaginary frequency here.
"""

from dataclasses import dataclass

import numpy as np

from . import cylfun as cf
from .errors import ParameterError, SingularityError

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ElasticMedium:
    """Homogeneous isotropic background: Lame constants, frequency, wavenumbers."""
    lam: float
    mu: float
    omega: float
    kp: float
    ks: float


def make_medium(lam, mu, omega):
    """Build an ElasticMedium, enforcing strong ellipticity and omega > 0."""
    if not (mu > 0 and lam + mu > 0):
        raise ParameterError(f"ellipticity violated: mu={mu}, lam+mu={lam + mu}")
    if not omega > 0:
        raise ParameterError(f"omega must be > 0, got {omega}")
    kp = omega / np.sqrt(lam + 2.0 * mu)
    ks = omega / np.sqrt(mu)
    return ElasticMedium(float(lam), float(mu), float(omega), float(kp), float(ks))


def perp(d):
    """Counterclockwise rotation by pi/2: (d1, d2) -> (-d2, d1)."""
    d = np.asarray(d, dtype=float)
    return np.stack([-d[..., 1], d[..., 0]], axis=-1)


@dataclass(frozen=True)
class PlaneWaveSpec:
    """Incident plane wave: P amplitude ap along d, S amplitude as_ along perp(d)."""
    direction: np.ndarray
    ap: complex
    as_: complex

    def __post_init__(self):
        d = np.asarray(self.direction, dtype=float)
        if d.shape != (2,) or abs(np.hypot(d[0], d[1]) - 1.0) > 1e-14:
            raise ParameterError("direction must be a unit 2-vector")
        if self.ap == 0 and self.as_ == 0:
            raise ParameterError("ap and as_ must not both vanish")
        object.__setattr__(self, "direction", d)


def incident_field(spec, medium, x):
    """Evaluate the incident plane wave at point(s) x (shape (..., 2))."""
    x = np.asarray(x, dtype=float)
    d = spec.direction
    dp = perp(d)
    phase_p = np.exp(1j * medium.kp * (x @ d))
    phase_s = np.exp(1j * medium.ks * (x @ d))
    return (spec.ap * phase_p)[..., None] * d + (spec.as_ * phase_s)[..., None] * dp


# ---------------------------------------------------------------------------
# Kernel split
# ---------------------------------------------------------------------------

def kernel_split(medium, r, imag=False):
    """Scalar kernel factors (phi1, phi2) at distances r.

    With imag=True the split of the w = i kernel is returned (real valued,
    built from K0/K1); otherwise the radiating kernel at medium.omega.
    """
    r = np.asarray(r, dtype=float)
    mu, w2 = medium.mu, medium.omega ** 2
    if imag:
        kp, ks = medium.kp / medium.omega, medium.ks / medium.omega
        k0s = cf.modbessel_k(0, ks * r)
        k0p = cf.modbessel_k(0, kp * r)
        e = ks ** 2 * cf.modbessel_k1_regular(ks * r) \
            - kp ** 2 * cf.modbessel_k1_regular(kp * r)
        phi1 = k0s / (TWO_PI * mu) + e / TWO_PI
        phi2 = (kp ** 2 * k0p - ks ** 2 * k0s - 2.0 * e) / TWO_PI
        return phi1, phi2
    kp, ks = medium.kp, medium.ks
    h0s = cf.hankel1(0, ks * r)
    h0p = cf.hankel1(0, kp * r)
    e = ks ** 2 * cf.hankel1_1_regular(ks * r) \
        - kp ** 2 * cf.hankel1_1_regular(kp * r)
    phi1 = 0.25j * h0s / mu - 0.25j * e / w2
    phi2 = 0.25j * (kp ** 2 * h0p - ks ** 2 * h0s + 2.0 * e) / w2
    return phi1, phi2


def kernel_split_log(medium, r, imag=False):
    """Coefficients of ln(r) in (phi1, phi2); smooth even functions of r."""
    r = np.asarray(r, dtype=float)
    mu, w2 = medium.mu, medium.omega ** 2
    if imag:
        kp, ks = medium.kp / medium.omega, medium.ks / medium.omega
        i0s = cf.modbessel_i(0, ks * r)
        i0p = cf.modbessel_i(0, kp * r)
        el = ks ** 2 * cf.modbessel_i1_over_x(ks * r) \
            - kp ** 2 * cf.modbessel_i1_over_x(kp * r)
        phi1l = -i0s / (TWO_PI * mu) + el / TWO_PI
        phi2l = (ks ** 2 * i0s - kp ** 2 * i0p - 2.0 * el) / TWO_PI
        return phi1l, phi2l
    kp, ks = medium.kp, medium.ks
    j0s = cf.bessel_jy(0, ks * r)[0]
    j0p = cf.bessel_jy(0, kp * r)[0]
    el = ks ** 2 * cf.bessel_j1_over_z(ks * r) \
        - kp ** 2 * cf.bessel_j1_over_z(kp * r)
    phi1l = -j0s / (TWO_PI * mu) + el / (TWO_PI * w2)
    phi2l = -(kp ** 2 * j0p - ks ** 2 * j0s + 2.0 * el) / (TWO_PI * w2)
    return phi1l, phi2l


def kernel_split_diag(medium, imag=False):
    """r -> 0 limits (phi1_log, phi1_reg, phi2_reg) of the split.

    phi1 = phi1_log*ln(r) + phi1_reg + O(r^2 ln r); the ln coefficient of
    phi2 vanishes at r = 0 and phi2 -> phi2_reg.
    """
    mu = medium.mu
    g = cf.EULER_GAMMA
    if imag:
        kp, ks = medium.kp / medium.omega, medium.ks / medium.omega
        dk = ks ** 2 - kp ** 2
        lp, ls = np.log(kp / 2.0) + g, np.log(ks / 2.0) + g
        phi1_log = -1.0 / (TWO_PI * mu) + dk / (2.0 * TWO_PI)
        phi1_reg = (-ls / (TWO_PI * mu)
                    + (ks ** 2 * ls - kp ** 2 * lp) / (2.0 * TWO_PI)
                    - dk / (4.0 * TWO_PI))
        phi2_reg = dk / (2.0 * TWO_PI)
        return phi1_log, phi1_reg, phi2_reg
    kp, ks, w2 = medium.kp, medium.ks, medium.omega ** 2
    dk = ks ** 2 - kp ** 2
    lp, ls = np.log(kp / 2.0) + g, np.log(ks / 2.0) + g
    phi1_log = -1.0 / (TWO_PI * mu) + dk / (2.0 * TWO_PI * w2)
    phi1_reg = (0.25j / mu - 0.125j * dk / w2
                - ls / (TWO_PI * mu)
                + (ks ** 2 * ls - kp ** 2 * lp) / (2.0 * TWO_PI * w2)
                - dk / (4.0 * TWO_PI * w2))
    phi2_reg = dk / (2.0 * TWO_PI * w2)
    return phi1_log, phi1_reg, phi2_reg


def _split_tensor(x, y, phi_pair_fn):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    d = x - y
    r = np.hypot(d[0], d[1])
    if not np.isfinite(r) or r < 1e-14 * max(1.0, np.abs(x).max(), np.abs(y).max()):
        raise SingularityError("green tensor evaluated at coincident points")
    phi1, phi2 = phi_pair_fn(r)
    return phi1 * np.eye(2) + phi2 * np.outer(d, d) / (r * r)


def green_tensor(x, y, medium):
    """Navier Green's tensor G(x, y) as a 2x2 complex matrix."""
    return np.asarray(_split_tensor(x, y, lambda r: kernel_split(medium, r)),
                      dtype=complex)


def green_tensor_imag(x, y, medium):
    """Green's tensor at angular frequency w = i (real symmetric kernel)."""
    return np.asarray(_split_tensor(x, y, lambda r: kernel_split(medium, r, imag=True)),
                      dtype=complex)


# ---------------------------------------------------------------------------
# Far field
# ---------------------------------------------------------------------------

def farfield_prefactors(medium):
    """Complex amplitudes (cp, cs) of the single-layer far-field kernels.

    cp multiplies xhat xhat^T exp(-i kp xhat.y), cs the orthogonal projector
    version; both come from the leading large-argument asymptotics of the
    kernel split and are pinned by the asymptotic-matching test.
    """
    w2 = medium.omega ** 2
    c = np.exp(1j * np.pi / 4.0) / (np.sqrt(8.0 * np.pi) * w2)
    return c * medium.kp ** 1.5, c * medium.ks ** 1.5


def farfield_kernel(xhat, y, medium):
    """Far-field kernels (Kp, Ks) of the single-layer potential at xhat, y."""
    xhat = np.asarray(xhat, dtype=float)
    if abs(np.hypot(xhat[0], xhat[1]) - 1.0) > 1e-12:
        raise ParameterError("xhat must be a unit vector")
    y = np.asarray(y, dtype=float)
    cp, cs = farfield_prefactors(medium)
    proj = np.outer(xhat, xhat)
    kp_mat = cp * np.exp(-1j * medium.kp * (xhat @ y)) * proj
    ks_mat = cs * np.exp(-1j * medium.ks * (xhat @ y)) * (np.eye(2) - proj)
    return kp_mat, ks_mat


# ---------------------------------------------------------------------------
# Helmholtz decomposition (finite differences)
# ---------------------------------------------------------------------------

def helmholtz_components(fieldfn, x, medium, h):
    """Split a smooth field into P and S parts at x by central differences.

    up = -(1/kp^2) grad(div u), us = -(1/ks^2) curl(curl u) with the 2D
    conventions curl u = d1 u2 - d2 u1 (scalar) and curl v = (-d2 v, d1 v),
    under which curl(curl .) = laplacian - grad(div .) and a divergence-free
    wave satisfies us = u.
    """
    x = np.asarray(x, dtype=float)
    e1 = np.array([h, 0.0])
    e2 = np.array([0.0, h])

    def div(p):
        return ((fieldfn(p + e1)[0] - fieldfn(p - e1)[0])
                + (fieldfn(p + e2)[1] - fieldfn(p - e2)[1])) / (2.0 * h)

    def curl(p):
        return ((fieldfn(p + e1)[1] - fieldfn(p - e1)[1])
                - (fieldfn(p + e2)[0] - fieldfn(p - e2)[0])) / (2.0 * h)

    grad_div = np.array([(div(x + e1) - div(x - e1)) / (2.0 * h),
                         (div(x + e2) - div(x - e2)) / (2.0 * h)])
    curl_curl = np.array([-(curl(x + e2) - curl(x - e2)) / (2.0 * h),
                          (curl(x + e1) - curl(x - e1)) / (2.0 * h)])
    up = -grad_div / medium.kp ** 2
    us = -curl_curl / medium.ks ** 2
    return up, us
