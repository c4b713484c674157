"""Slow arbitrary-precision reference evaluators for the validation suite.

Power-series-plus-log evaluations of the cylinder functions in mpmath
arithmetic, independent of the float64 paths in cylfun.  Used only by the
acceptance suite and the tests; mpmath is imported lazily so the library
itself carries no hard dependency on it.
"""

from functools import lru_cache


def _mp():
    try:
        import mpmath
    except ImportError as exc:  # pragma: no cover
        raise RuntimeError(
            "the validation suite needs mpmath (pip install elastoscat[test])"
        ) from exc
    return mpmath


@lru_cache(maxsize=None)
def _context(dps):
    mp = _mp()
    ctx = mp.mp.clone()
    ctx.dps = dps
    return ctx


def _series_jy(order, z, ctx, terms):
    """(J_order, Y_order) by the ascending series with the log term."""
    mp = _mp()
    z = ctx.convert(z)
    u = z * z / 4
    lg = ctx.log(z / 2) + ctx.euler
    if order == 0:
        t = ctx.one
        j = ctx.one
        s = ctx.zero
        h = ctx.zero
        for k in range(1, terms + 1):
            t = -t * u / (k * k)
            j += t
            h += ctx.one / k
            s -= t * h
        y = (2 / ctx.pi) * (lg * j + s)
        return j, y
    t = ctx.one
    sj = ctx.one
    su = ctx.one
    h = [ctx.zero, ctx.one]
    for k in range(1, terms + 1):
        t = -t * u / (k * (k + 1))
        sj += t
        h.append(h[-1] + ctx.one / (k + 1))
        su += t * (h[k] + h[k + 1])
    j = z / 2 * sj
    y = (2 / ctx.pi) * lg * j - 2 / (ctx.pi * z) - z / (2 * ctx.pi) * su
    return j, y


def _dps_terms(z):
    # working precision must absorb the largest series term (~10^(0.41 |z|))
    mag = abs(complex(z))
    return int(50 + 0.55 * mag), int(80 + 2.6 * mag)


def ref_bessel_jy(order, z):
    """Reference (J, Y) for real or complex z as complex numbers."""
    dps, terms = _dps_terms(z)
    ctx = _context(dps)
    j, y = _series_jy(order, z, ctx, terms)
    return complex(j), complex(y)


def ref_hankel1(order, z):
    """Reference H^(1)_order(z) for real or complex z (principal log branch)."""
    j, y = ref_bessel_jy(order, z)
    return j + 1j * y


def ref_modbessel_k(order, x):
    """Reference K_order(x) for real x > 0 by the ascending series."""
    dps, terms = _dps_terms(x)
    ctx = _context(dps)
    x = ctx.convert(x)
    u = x * x / 4
    lg = ctx.log(x / 2) + ctx.euler
    if order == 0:
        t = ctx.one
        s = -lg
        h = ctx.zero
        for k in range(1, terms + 1):
            t = t * u / (k * k)
            h += ctx.one / k
            s += t * (h - lg)
        return float(s)
    t = ctx.one
    h = [ctx.zero, ctx.one]
    s = lg - ctx.one / 2
    for k in range(1, terms + 1):
        t = t * u / (k * (k + 1))
        h.append(h[-1] + ctx.one / (k + 1))
        s += t * (lg - (h[k] + h[k + 1]) / 2)
    return float(1 / x + x / 2 * s)
