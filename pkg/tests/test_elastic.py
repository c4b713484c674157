"""Medium, plane waves, Green's tensor and far-field kernels."""

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from conftest import extract_farfield_amplitude, navier_residual
from elastoscat import elastic as el
from elastoscat._refseries import ref_hankel1
from elastoscat.errors import ParameterError, SingularityError


def test_make_medium_wavenumbers():
    m = el.make_medium(2.0, 1.0, 2.0)
    assert m.kp == pytest.approx(1.0) and m.ks == pytest.approx(2.0)
    m = el.make_medium(1.0, 1.0, np.sqrt(3.0))
    assert m.kp == pytest.approx(1.0) and m.ks == pytest.approx(np.sqrt(3.0))


def test_make_medium_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        el.make_medium(-2.0, 1.0, 1.0)  # lam + mu = -1
    with pytest.raises(ParameterError):
        el.make_medium(1.0, -0.5, 1.0)
    with pytest.raises(ParameterError):
        el.make_medium(1.0, 1.0, 0.0)


@given(lam=st.floats(-0.9, 10.0), mu=st.floats(0.1, 10.0),
       omega=st.floats(0.1, 10.0))
def test_wavenumber_ordering(lam, mu, omega):
    assume(lam + mu > 0.05)
    m = el.make_medium(lam, mu, omega)
    assert m.kp < m.ks


def test_plane_wave_validation():
    with pytest.raises(ParameterError):
        el.PlaneWaveSpec(np.array([1.0, 1.0]), 1.0, 0.0)
    with pytest.raises(ParameterError):
        el.PlaneWaveSpec(np.array([1.0, 0.0]), 0.0, 0.0)


def test_incident_field_values(medium):
    spec = el.PlaneWaveSpec(np.array([1.0, 0.0]), 1.0, 0.0)
    med = el.make_medium(2.0, 1.0, 2.0)  # kp = 1
    assert np.allclose(el.incident_field(spec, med, np.zeros(2)), [1.0, 0.0])
    assert np.allclose(el.incident_field(spec, med, np.array([np.pi, 0.0])),
                       [-1.0, 0.0])


def test_pure_s_wave_is_divergence_free(medium):
    spec = el.PlaneWaveSpec(np.array([0.6, 0.8]), 0.0, 2.0)
    h = 1e-5
    for x in (np.array([0.3, -0.7]), np.array([-1.1, 0.4])):
        dx = (el.incident_field(spec, medium, x + [h, 0])[0]
              - el.incident_field(spec, medium, x - [h, 0])[0]) / (2 * h)
        dy = (el.incident_field(spec, medium, x + [0, h])[1]
              - el.incident_field(spec, medium, x - [0, h])[1]) / (2 * h)
        assert abs(dx + dy) <= 1e-8 * medium.ks * abs(spec.as_)


def test_green_tensor_reciprocity(medium):
    rng = np.random.default_rng(3)
    for _ in range(100):
        x = rng.uniform(-3, 3, 2)
        ang = rng.uniform(0, 2 * np.pi)
        y = x + rng.uniform(0.1, 10.0) * np.array([np.cos(ang), np.sin(ang)])
        g1 = el.green_tensor(x, y, medium)
        g2 = el.green_tensor(y, x, medium)
        assert np.abs(g1 - g2.T).max() <= 1e-13 * np.abs(g1).max()


def test_green_tensor_pde_residual(medium):
    rng = np.random.default_rng(4)
    for _ in range(40):
        y = rng.uniform(-1, 1, 2)
        e = rng.standard_normal(2)
        ang = rng.uniform(0, 2 * np.pi)
        x = y + rng.uniform(0.5, 3.0) * np.array([np.cos(ang), np.sin(ang)])
        res = navier_residual(lambda p: el.green_tensor(p, y, medium) @ e,
                              x, medium)
        assert res <= 1e-5


def test_kernel_split_matches_hessian_oracle(medium):
    # direct double differentiation of (i/4w^2)[H0(ks r) - H0(kp r)] plus the
    # isotropic term, at r = 1
    from elastoscat import cylfun as cf
    y = np.zeros(2)
    x = np.array([0.8, 0.6])
    h = 1e-4

    def psi(p):
        r = np.hypot(*(p - y))
        return cf.hankel1(0, medium.ks * r) - cf.hankel1(0, medium.kp * r)

    e1, e2 = np.array([h, 0.0]), np.array([0.0, h])
    hess = np.empty((2, 2), complex)
    hess[0, 0] = (psi(x + e1) - 2 * psi(x) + psi(x - e1)) / h ** 2
    hess[1, 1] = (psi(x + e2) - 2 * psi(x) + psi(x - e2)) / h ** 2
    hess[0, 1] = hess[1, 0] = (psi(x + e1 + e2) - psi(x + e1 - e2)
                               - psi(x - e1 + e2) + psi(x - e1 - e2)) / (4 * h ** 2)
    direct = 0.25j / medium.mu * cf.hankel1(0, medium.ks) * np.eye(2) \
        + 0.25j / medium.omega ** 2 * hess
    split = el.green_tensor(x, y, medium)
    assert np.abs(split - direct).max() <= 1e-6 * np.abs(split).max()


def test_green_tensor_singularity(medium):
    with pytest.raises(SingularityError):
        el.green_tensor(np.array([1.0, 2.0]), np.array([1.0, 2.0]), medium)


def test_green_tensor_imag_is_real(medium):
    rng = np.random.default_rng(5)
    for _ in range(30):
        x = rng.uniform(-2, 2, 2)
        y = rng.uniform(-2, 2, 2)
        if np.hypot(*(x - y)) < 1e-3:
            continue
        g = el.green_tensor_imag(x, y, medium)
        assert np.abs(g.imag).max() <= 1e-12


def test_green_tensor_imag_against_complex_reference(medium):
    # defining split evaluated with complex-argument Hankel functions at w = i
    r = 1.0
    kp, ks = 1j * medium.kp / medium.omega, 1j * medium.ks / medium.omega
    e_val = (ks * ref_hankel1(1, ks * r) - kp * ref_hankel1(1, kp * r)) / r
    w2 = -1.0
    phi1_ref = 0.25j * ref_hankel1(0, ks * r) / medium.mu - 0.25j * e_val / w2
    phi2_ref = 0.25j * (kp ** 2 * ref_hankel1(0, kp * r)
                        - ks ** 2 * ref_hankel1(0, ks * r) + 2 * e_val) / w2
    p1, p2 = el.kernel_split(medium, r, imag=True)
    assert abs(p1 - phi1_ref) <= 1e-8 * abs(phi1_ref)
    assert abs(p2 - phi2_ref) <= 1e-8 * abs(phi2_ref)


def test_green_tensor_imag_decay(medium):
    y = np.zeros(2)
    d = np.array([np.cos(0.3), np.sin(0.3)])
    vals = [np.abs(el.green_tensor_imag(r * d, y, medium)).max()
            for r in np.linspace(1.0, 5.0, 9)]
    assert np.all(np.diff(vals) < 0)


def test_kernel_split_diagonal_limits(medium):
    # Richardson-style check: the closed-form r -> 0 constants against
    # small-r evaluations (error scales like r^2 log r)
    for imag in (False, True):
        p1l0, p1r0, p2r0 = el.kernel_split_diag(medium, imag=imag)
        for r, tol in ((1e-3, 1e-5), (1e-5, 1e-9)):
            p1, p2 = el.kernel_split(medium, r, imag=imag)
            p1l, p2l = el.kernel_split_log(medium, r, imag=imag)
            assert abs(p1 - p1l * np.log(r) - p1r0) < tol
            assert abs(p2 - p2l * np.log(r) - p2r0) < tol
            assert abs(p1l - p1l0) < tol


def test_farfield_kernel_projectors(medium):
    rng = np.random.default_rng(6)
    for _ in range(20):
        ang = rng.uniform(0, 2 * np.pi)
        xhat = np.array([np.cos(ang), np.sin(ang)])
        y = rng.uniform(-2, 2, 2)
        v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        kp_mat, ks_mat = el.farfield_kernel(xhat, y, medium)
        w = kp_mat @ v
        assert abs(xhat[0] * w[1] - xhat[1] * w[0]) <= 1e-13 * max(np.abs(w).max(), 1e-30)
        assert abs(xhat @ (ks_mat @ v)) <= 1e-13
        # projector identities
        assert np.abs((np.eye(2) - np.outer(xhat, xhat)) @ kp_mat).max() <= 1e-15
        assert np.abs(np.outer(xhat, xhat) @ ks_mat).max() <= 1e-15


def test_farfield_kernel_phase(medium):
    xhat = np.array([1.0, 0.0])
    kp0, ks0 = el.farfield_kernel(xhat, np.zeros(2), medium)
    y = np.array([0.4, -1.1])
    kp1, ks1 = el.farfield_kernel(xhat, y, medium)
    assert np.allclose(kp1, kp0 * np.exp(-1j * medium.kp * xhat @ y), rtol=1e-14)
    assert np.allclose(ks1, ks0 * np.exp(-1j * medium.ks * xhat @ y), rtol=1e-14)


def test_farfield_kernel_unit_direction(medium):
    with pytest.raises(ParameterError):
        el.farfield_kernel(np.array([1.0, 1.0]), np.zeros(2), medium)


def test_farfield_prefactor_extraction(medium):
    # asymptotic-matching oracle at |x| in {200, 400, 800}
    xhat = np.array([np.cos(0.7), np.sin(0.7)])
    e = np.array([0.8, 0.6])
    cp, cs = el.farfield_prefactors(medium)
    for mode, cref, proj in (("p", cp, xhat @ e), ("s", cs, el.perp(xhat) @ e)):
        vals = [extract_farfield_amplitude(medium, np.zeros(2), xhat, e, r, mode)
                / proj for r in (200.0, 400.0, 800.0)]
        assert abs(vals[0] - vals[2]) <= 1e-4 * abs(vals[2])
        assert abs(vals[2] - cref) <= 1e-4 * abs(cref)


def test_helmholtz_components(medium):
    d = np.array([np.cos(1.1), np.sin(1.1)])
    x = np.array([0.2, -0.4])
    h = 1e-4
    pure_p = el.PlaneWaveSpec(d, 1.3, 0.0)
    up, us = el.helmholtz_components(
        lambda p: el.incident_field(pure_p, medium, p), x, medium, h)
    want = el.incident_field(pure_p, medium, x)
    assert np.abs(up - want).max() <= 1e-6
    assert np.abs(us).max() <= 1e-6

    pure_s = el.PlaneWaveSpec(d, 0.0, 0.8 - 0.2j)
    up, us = el.helmholtz_components(
        lambda p: el.incident_field(pure_s, medium, p), x, medium, h)
    want = el.incident_field(pure_s, medium, x)
    assert np.abs(us - want).max() <= 1e-6
    assert np.abs(up).max() <= 1e-6

    mixed = el.PlaneWaveSpec(d, 0.5 + 0.1j, -0.9)
    up, us = el.helmholtz_components(
        lambda p: el.incident_field(mixed, medium, p), x, medium, h)
    want = el.incident_field(mixed, medium, x)
    assert np.abs(up + us - want).max() <= 1e-6
