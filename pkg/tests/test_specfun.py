import cmath
import math

import mpmath as mp
import pytest

from heightzeta.errors import DivergenceError, PoleError
from heightzeta.numfield import QQ, field_descriptor
from heightzeta.specfun import effectivity_integral, gamma, hurwitz_zeta, riemann_zeta, xi, zeta_field

GRID = [complex(x, y) for x in (-9.7, -3.3, -0.5, 0.25, 0.5, 1.5, 2, 7.5, 19.1, 29.9) for y in (0, 0.7, -4, 14.1, 29.5)]


def test_gamma_examples():
    assert gamma(5).value == 24
    assert abs(gamma(0.5).value - math.sqrt(math.pi)) < 1e-14
    with pytest.raises(PoleError):
        gamma(0)
    with pytest.raises(PoleError):
        gamma(-3)


@pytest.mark.parametrize("s", GRID)
def test_gamma_against_mpmath(s):
    g = gamma(s)
    ref = complex(mp.gamma(mp.mpc(s.real, s.imag)))
    assert abs(g.value - ref) <= max(g.abs_error, 1e-300)
    assert g.abs_error <= 1e-12 * abs(ref)


@pytest.mark.parametrize("s", [0.3 + 0.2j, 2.5, 4 - 3j, 11.5 + 20j])
def test_gamma_recurrence(s):
    assert abs(gamma(s + 1).value - s * gamma(s).value) <= 1e-11 * abs(gamma(s + 1).value)


@pytest.mark.parametrize("s", GRID)
def test_zeta_against_mpmath(s):
    if s == 1:
        return
    z = riemann_zeta(s)
    ref = complex(mp.zeta(mp.mpc(s.real, s.imag)))
    assert abs(z.value - ref) <= z.abs_error + 1e-15 * abs(ref)
    assert z.abs_error <= 1e-12 * max(1.0, abs(ref))


def test_zeta_examples():
    assert abs(zeta_field(QQ, 2).value - math.pi ** 2 / 6) < 1e-14
    assert abs(zeta_field(QQ, 0).value + 0.5) < 1e-14
    qi = zeta_field(field_descriptor("Q(i)"), 2).value
    assert abs(qi - float(mp.zeta(2) * mp.catalan)) < 1e-13
    assert abs(qi - 1.5067030) < 1e-6
    with pytest.raises(PoleError):
        zeta_field(QQ, 1)


@pytest.mark.parametrize("s", [0.5 + 3j, 2.5, -2.5 + 1j, 5 - 7j])
def test_gaussian_l_factor(s):
    L = zeta_field(field_descriptor("Q(i)"), s) / riemann_zeta(s)
    ref = complex(mp.dirichlet(mp.mpc(s.real, s.imag), [0, 1, 0, -1]))
    assert abs(L.value - ref) < 1e-11 * max(1, abs(ref))


def test_hurwitz_against_mpmath():
    for s, a in [(2.5, 0.25), (0.5 + 10j, 0.75), (3, 1.0)]:
        h = hurwitz_zeta(s, a)
        ref = complex(mp.zeta(s, a))
        assert abs(h.value - ref) <= h.abs_error + 1e-15


def test_xi_examples():
    assert abs(xi(QQ, 2).value - math.pi / 12) < 1e-15
    assert abs(xi(QQ, 4).value - math.pi ** 2 / 180) < 1e-15
    assert abs(xi(QQ, 3).value - float(mp.zeta(3)) / (4 * math.pi)) < 1e-15
    with pytest.raises(PoleError):
        xi(QQ, 1)
    with pytest.raises(PoleError):
        xi(QQ, -2)


def test_xi_gaussian_field():
    s = 2.5
    ref = (2 * mp.pi) ** -s * mp.gamma(s) * mp.zeta(s) * mp.dirichlet(s, [0, 1, 0, -1])
    assert abs(xi(field_descriptor("Q(i)"), s).value - float(ref)) < 1e-14


@pytest.mark.parametrize("s", [0.3, 0.5 + 2j, 0.7 + 14j])
def test_xi_symmetry(s):
    assert abs(xi(QQ, s).value - xi(QQ, 1 - s).value) <= 1e-9


@pytest.mark.parametrize("s,expect", [(2, 1 / (2 * math.pi)), (1, 0.5)])
def test_effectivity_integral_closed_form(s, expect):
    v = effectivity_integral(s)
    assert abs(v.value - expect) <= max(v.abs_error, 1e-14)
    assert v.abs_error <= 1e-8


def test_effectivity_integral_diverges():
    with pytest.raises(DivergenceError):
        effectivity_integral(-1)


@pytest.mark.parametrize("s", [2, 3, 4 + 1j])
def test_xi_as_integral(s):
    lhs = xi(QQ, s).value
    rhs = zeta_field(QQ, s).value * effectivity_integral(s).value
    assert abs(lhs - rhs) / abs(lhs) <= 1e-7
    half = 0.5 * cmath.exp(-s / 2 * math.log(math.pi)) * complex(mp.gamma(s / 2))
    assert abs(effectivity_integral(s).value - half) < 1e-10
