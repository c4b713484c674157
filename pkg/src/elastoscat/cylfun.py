"""Cylinder special functions of orders 0 and 1.

Provides Bessel J and Y, Hankel functions of the first kind, and modified
Bessel I and K, together with the regularized combinations that appear in
the kernel split of the Navier Green's tensor.  Everything is evaluated
from power series (with the logarithmic term for Y and K) below a seam at
|z| = 12 and from the classical large-argument expansions above it; both
branches agree to ~1e-11 at the seam.

All functions accept scalars or numpy arrays and are pure.
"""

import numpy as np

from .errors import DomainError, ParameterError

EULER_GAMMA = 0.5772156649015328606
# extended-precision copy for the K series (float64 constants would dominate
# its error budget near the seam)
_EULER_GAMMA_LD = np.longdouble("0.5772156649015328606065120900824024310422")

SEAM = 12.0
# K/I switch a little earlier: the exponential cancellation in the K series
# grows with x while the asymptotic tail is already at ~5e-11 by x = 11.
SEAM_IK = 11.0

_NSERIES = 40  # series terms; ample for arguments up to the seam

# Harmonic numbers h_0 .. h_{NSERIES+1}
_HARMONIC = np.concatenate(([0.0], np.cumsum(1.0 / np.arange(1, _NSERIES + 2))))
_HARMONIC_LD = np.concatenate(
    ([np.longdouble(0)],
     np.cumsum(np.longdouble(1) / np.arange(1, _NSERIES + 2, dtype=np.longdouble))))


def _asymptotic_coeffs(order, nterms=22):
    # a_k = (4o^2-1)(4o^2-9)...(4o^2-(2k-1)^2) / (k! 8^k)
    musq = 4.0 * order * order
    a = np.empty(nterms)
    a[0] = 1.0
    for k in range(1, nterms):
        a[k] = a[k - 1] * (musq - (2 * k - 1) ** 2) / (8.0 * k)
    return a


_ACOEF = {0: _asymptotic_coeffs(0), 1: _asymptotic_coeffs(1)}


def _check_order(order):
    if order not in (0, 1):
        raise ParameterError(f"order must be 0 or 1, got {order!r}")


def _check_positive(z, name="z"):
    arr = np.asarray(z, dtype=np.float64)
    if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
        raise DomainError(f"{name} must be finite and > 0")
    return arr


def _jy_series(order, z):
    u = 0.25 * z * z
    lg = np.log(0.5 * z) + EULER_GAMMA
    if order == 0:
        j = np.ones_like(z)
        t = np.ones_like(z)
        s = np.zeros_like(z)
        h = 0.0
        for k in range(1, _NSERIES + 1):
            t = t * (-u) / (k * k)
            j = j + t
            h += 1.0 / k
            s = s - t * h
        y = (2.0 / np.pi) * (lg * j + s)
        return j, y
    # order 1
    t = np.ones_like(z)
    sj = np.ones_like(z)
    su = np.ones_like(z)  # k=0: (h_0 + h_1) / (0! 1!) = 1
    for k in range(1, _NSERIES + 1):
        t = t * (-u) / (k * (k + 1))
        sj = sj + t
        su = su + t * (_HARMONIC[k] + _HARMONIC[k + 1])
    j = 0.5 * z * sj
    y = (2.0 / np.pi) * lg * j - 2.0 / (np.pi * z) - (0.5 * z / np.pi) * su
    return j, y


def _pq_asymptotic(order, z):
    a = _ACOEF[order]
    zi2 = 1.0 / (z * z)
    p = np.zeros_like(z)
    q = np.zeros_like(z)
    # Horner in 1/z^2, highest terms first
    for k in range(20, -1, -2):
        p = p * zi2 + (a[k] if (k // 2) % 2 == 0 else -a[k])
    for k in range(21, 0, -2):
        q = q * zi2 + (a[k] if (k // 2) % 2 == 0 else -a[k])
    q = q / z
    return p, q


def _jy_asymptotic(order, z):
    p, q = _pq_asymptotic(order, z)
    chi = z - (2 * order + 1) * np.pi / 4.0
    amp = np.sqrt(2.0 / (np.pi * z))
    c, s = np.cos(chi), np.sin(chi)
    return amp * (p * c - q * s), amp * (p * s + q * c)


def _branched(z, small_fn, large_fn, seam=SEAM):
    """Evaluate small_fn below the seam and large_fn above, elementwise."""
    scalar = np.isscalar(z) or np.ndim(z) == 0
    z = np.atleast_1d(np.asarray(z, dtype=np.float64))
    lo = z < seam
    outs = None
    for mask, fn in ((lo, small_fn), (~lo, large_fn)):
        if not np.any(mask):
            continue
        vals = fn(z[mask])
        if not isinstance(vals, tuple):
            vals = (vals,)
        if outs is None:
            outs = tuple(np.zeros(z.shape, dtype=np.result_type(v, np.float64))
                         for v in vals)
        for o, v in zip(outs, vals):
            o[mask] = v
    res = tuple(o[0] if scalar else o for o in outs)
    return res if len(res) > 1 else res[0]


def bessel_jy(order, z):
    """Bessel functions J_order(z), Y_order(z) for real z > 0.

    Returns a pair (J, Y); absolute error below ~1e-10 for z <= 100.
    """
    _check_order(order)
    z = _check_positive(z)
    return _branched(z, lambda w: _jy_series(order, w),
                     lambda w: _jy_asymptotic(order, w))


def hankel1(order, z):
    """Hankel function of the first kind, H_order(z) = J + iY, real z > 0."""
    j, y = bessel_jy(order, z)
    return j + 1j * y


def _k_series(order, x):
    # longdouble throughout: the I0*log cancellation near the seam would
    # otherwise eat the 1e-9 relative budget for x in [8, 12).
    xl = x.astype(np.longdouble)
    u = 0.25 * xl * xl
    lg = np.log(0.5 * xl) + _EULER_GAMMA_LD
    if order == 0:
        t = np.ones_like(xl)
        s = -lg.copy()
        for k in range(1, _NSERIES + 1):
            t = t * u / (k * k)
            s = s + t * (_HARMONIC_LD[k] - lg)
        return s.astype(np.float64)
    t = np.ones_like(xl)
    s = lg - np.longdouble(0.5)  # k=0: L+gamma - (h_0+h_1)/2, L := ln(x/2)
    half = np.longdouble(0.5)
    for k in range(1, _NSERIES + 1):
        t = t * u / (k * (k + 1))
        s = s + t * (lg - half * (_HARMONIC_LD[k] + _HARMONIC_LD[k + 1]))
    return (1.0 / xl + 0.5 * xl * s).astype(np.float64)


def _ik_asymptotic_sum(order, x, alternating):
    musq = 4.0 * order * order
    t = np.ones_like(x)
    s = np.ones_like(x)
    sign = -1.0 if alternating else 1.0
    for k in range(1, 22):
        t = t * sign * (musq - (2 * k - 1) ** 2) / (8.0 * k * x)
        s = s + t
    return s


def _k_asymptotic(order, x):
    return np.sqrt(np.pi / (2.0 * x)) * np.exp(-x) * _ik_asymptotic_sum(order, x, False)


def _i_series(order, x):
    u = 0.25 * x * x
    t = np.ones_like(x)
    s = np.ones_like(x)
    for k in range(1, _NSERIES + 1):
        t = t * u / (k * (k + order))
        s = s + t
    return s if order == 0 else 0.5 * x * s


def _i_asymptotic(order, x):
    return np.exp(x) / np.sqrt(2.0 * np.pi * x) * _ik_asymptotic_sum(order, x, True)


def modbessel_k(order, x):
    """Modified Bessel function K_order(x), real x > 0."""
    _check_order(order)
    x = _check_positive(x, "x")
    return _branched(x, lambda w: _k_series(order, w),
                     lambda w: _k_asymptotic(order, w), seam=SEAM_IK)


def modbessel_i(order, x):
    """Modified Bessel function I_order(x), real x > 0."""
    _check_order(order)
    x = _check_positive(x, "x")
    return _branched(x, lambda w: _i_series(order, w),
                     lambda w: _i_asymptotic(order, w), seam=SEAM_IK)


# ---------------------------------------------------------------------------
# Regularized combinations for the Navier kernel split.  The elastic kernel
# needs H1(z)/z and K1(x)/x with their 1/z^2 poles removed: the poles of the
# compressional and shear terms cancel analytically, so subtracting them
# per-function keeps the difference of wavenumber terms well conditioned.
# ---------------------------------------------------------------------------

def bessel_j1_over_z(z):
    """J_1(z)/z, smooth through z -> 0 (limit 1/2)."""
    z = _check_positive(z)

    def small(w):
        u = 0.25 * w * w
        t = np.ones_like(w)
        s = np.ones_like(w)
        for k in range(1, _NSERIES + 1):
            t = t * (-u) / (k * (k + 1))
            s = s + t
        return 0.5 * s

    def large(w):
        j, _ = _jy_asymptotic(1, w)
        return j / w

    return _branched(z, small, large)


def modbessel_i1_over_x(x):
    """I_1(x)/x, smooth through x -> 0 (limit 1/2)."""
    x = _check_positive(x, "x")

    def small(w):
        u = 0.25 * w * w
        t = np.ones_like(w)
        s = np.ones_like(w)
        for k in range(1, _NSERIES + 1):
            t = t * u / (k * (k + 1))
            s = s + t
        return 0.5 * s

    return _branched(x, small, lambda w: _i_asymptotic(1, w) / w, seam=SEAM_IK)


def hankel1_1_regular(z):
    """H_1(z)/z + 2i/(pi z^2): the pole of H_1/z removed."""
    z = _check_positive(z)

    def small(w):
        u = 0.25 * w * w
        lg = np.log(0.5 * w) + EULER_GAMMA
        t = np.ones_like(w)
        sj = np.ones_like(w)
        su = np.ones_like(w)
        for k in range(1, _NSERIES + 1):
            t = t * (-u) / (k * (k + 1))
            sj = sj + t
            su = su + t * (_HARMONIC[k] + _HARMONIC[k + 1])
        j1n = 0.5 * sj
        y1reg = (2.0 / np.pi) * lg * j1n - su / (2.0 * np.pi)
        return j1n + 1j * y1reg

    def large(w):
        j, y = _jy_asymptotic(1, w)
        return (j + 1j * y) / w + 2j / (np.pi * w * w)

    return _branched(z, small, large)


def modbessel_k1_regular(x):
    """K_1(x)/x - 1/x^2: the pole of K_1/x removed."""
    x = _check_positive(x, "x")

    def small(w):
        wl = w.astype(np.longdouble)
        u = 0.25 * wl * wl
        lg = np.log(0.5 * wl) + _EULER_GAMMA_LD
        t = np.ones_like(wl)
        s = lg - np.longdouble(0.5)
        half = np.longdouble(0.5)
        for k in range(1, _NSERIES + 1):
            t = t * u / (k * (k + 1))
            s = s + t * (lg - half * (_HARMONIC_LD[k] + _HARMONIC_LD[k + 1]))
        return (0.5 * s).astype(np.float64)

    def large(w):
        return _k_asymptotic(1, w) / w - 1.0 / (w * w)

    return _branched(x, small, large, seam=SEAM_IK)
