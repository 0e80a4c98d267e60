import itertools
import math
from fractions import Fraction

import mpmath as mp
import pytest
from hypothesis import given, strategies as st

from heightzeta.arakelov import make_bundle
from heightzeta.errors import DomainError, NotPrimitiveError, UnsupportedCaseError
from heightzeta.hirz import (HirzebruchConfig, SurfacePoint, alpha_invariant, compare_counts, count_surface,
                             enumerate_surface, fiber_gram, make_point, minimal_section_count, predicted_poles,
                             read_csv, surface_height, write_csv)
from heightzeta.pcount import count_points

C213 = HirzebruchConfig(2, 1, 3)
C214 = HirzebruchConfig(2, 1, 4)
C225 = HirzebruchConfig(2, 2, 5)
COUNT_213_B2 = 10  # regression constant, confirmed by brute force below


def canon(x, y):
    return (x, y) if x > 0 or (x == 0 and y > 0) else (-x, -y)


def brute_surface(cfg: HirzebruchConfig, B: Fraction):
    """Every (base, fiber) with H <= B, from boxes derived by hand."""
    G = cfg.base_gram
    B2 = B * B
    m = cfg.section_exponent
    lam_min = min(G[0][0], G[1][1]) / 4  # crude lower bound, only used for the box
    out = set()
    hmax = B2 ** Fraction(1, 1)  # H(Q)^(2m) <= B^2 and H(Q)^2 >= 1 on this corpus
    K = math.isqrt(int(hmax / lam_min) + 1) + 1
    for u, v in itertools.product(range(-K, K + 1), repeat=2):
        if math.gcd(u, v) != 1 or canon(u, v) != (u, v):
            continue
        h2 = G[0][0] * u * u + 2 * G[0][1] * u * v + G[1][1] * v * v
        if h2 ** m > B2:
            continue
        L = math.isqrt(int(B2)) + 1
        M = math.isqrt(int(B2 * h2 ** cfg.e) + 1) + 1
        for lam in range(0, L + 1):
            for mu in range(-M, M + 1):
                if math.gcd(lam, mu) != 1 or canon(lam, mu) != (lam, mu):
                    continue
                H2 = (lam * lam + mu * mu / h2 ** cfg.e) ** cfg.a * h2 ** cfg.b
                if H2 <= B2:
                    out.add(((u, v), (lam, mu)))
    return out


def test_config_validation():
    with pytest.raises(DomainError):
        HirzebruchConfig(1, 1, 3)
    with pytest.raises(DomainError):
        HirzebruchConfig(2, 1, 2)
    with pytest.raises(DomainError):
        HirzebruchConfig(2, 0, 3)
    with pytest.raises(Exception):
        HirzebruchConfig(2, 1, 3, ((1, 2), (2, 1)))
    assert C225.section_exponent == 1


def test_surface_height_examples():
    assert surface_height(C213, ((1, 0), (0, 1))) == 1
    assert surface_height(C213, ((1, 1), (0, 1))) == 2
    assert surface_height(C213, ((1, 1), (1, 0))) == 8
    with pytest.raises(NotPrimitiveError):
        surface_height(C213, ((2, 2), (0, 1)))
    P = make_point(C213, (-1, -1), (0, -1))
    assert P.base == (1, 1) and P.fiber == (0, 1) and P.total_height_sq_pow == 2


def test_enumerate_examples():
    assert len(enumerate_surface(C213, 1)) == 4
    assert len(enumerate_surface(C225, 1)) == 4
    bases = {p.base for p in enumerate_surface(C213, 2)}
    assert bases == {(1, 0), (0, 1), (1, 1), (1, -1)}
    assert count_surface(C213, 2) == COUNT_213_B2


@pytest.mark.parametrize("cfg,B", [(C213, 2), (C213, 3), (HirzebruchConfig(3, 1, 4), 3), (C225, 4),
                                   (HirzebruchConfig(2, 1, 3, ((2, 1), (1, 1))), 3),
                                   (HirzebruchConfig(3, 1, 5, ((1, 0), (0, 2))), Fraction(7, 2))])
def test_matches_brute_force(cfg, B):
    got = enumerate_surface(cfg, B)
    pairs = {(p.base, p.fiber) for p in got}
    assert len(pairs) == len(got)
    assert pairs == brute_surface(cfg, Fraction(B))
    assert count_surface(cfg, B) == len(got)


@pytest.mark.parametrize("cfg,B", [(C213, 6), (C225, 7), (HirzebruchConfig(3, 2, 8), 9)])
def test_height_lower_bound(cfg, B):
    for p in enumerate_surface(cfg, B):
        assert p.total_height_sq_pow >= p.base_height_sq ** cfg.section_exponent >= 1
        assert p.total_height_sq_pow == surface_height(cfg, p)


def test_enumeration_sorted_and_deterministic():
    a = enumerate_surface(C214, 8)
    assert a == sorted(a) == enumerate_surface(C214, 8)


@pytest.mark.parametrize("cfg,B", [(C213, 12), (C214, 20), (HirzebruchConfig(3, 1, 5), 15)])
def test_fiber_census_matches_pcount(cfg, B):
    pts = enumerate_surface(cfg, B)
    by_base = {}
    for p in pts:
        by_base.setdefault((p.base, p.base_height_sq), []).append(p)
    B2 = Fraction(B) ** 2
    for (_, h2), fib in by_base.items():
        bound = B2 / h2 ** cfg.b  # a = 1
        assert len(fib) == count_points(make_bundle(fiber_gram(cfg, h2)), B2=bound)


def test_minimal_section_examples():
    assert minimal_section_count(C213, 1) == 2
    assert minimal_section_count(C225, 100) == count_points(make_bundle(C225.base_gram), 100)
    pts = enumerate_surface(C214, 30)
    assert minimal_section_count(C214, 30) == sum(p.fiber == (0, 1) for p in pts)


def test_minimal_section_regimes():
    f225 = [minimal_section_count(C225, B) / count_surface(C225, B) for B in (50, 100)]
    f214 = [minimal_section_count(C214, B) / count_surface(C214, B) for B in (50, 100)]
    assert f225[0] > 0.8 and f225[1] > f225[0]
    assert f214[1] < 0.01 and f214[1] < f214[0]


def test_predicted_poles_225():
    r = predicted_poles(C225)
    assert (r.s1, r.s2) == (1, 2)
    assert abs(r.rho2 - 6 / math.pi) < 1e-12
    assert r.dominant == 2 and r.s2_in_domain and not r.coincident
    assert r.as_dict()["flags"]["dominant"] == "s2"


def test_predicted_poles_214():
    r = predicted_poles(C214)
    assert r.s1 == 2 and r.s2 == 1 and r.sigma0 == 1
    assert not r.s2_in_domain
    assert r.dominant == 2
    assert abs(r.rho1 - 2.289745607797273 * 6 / math.pi) <= 1e-8
    assert r.rho1_error <= 1e-6


def z_p1(s):
    return float(2 * mp.zeta(s / 2) * mp.dirichlet(s / 2, [0, 1, 0, -1]) / mp.zeta(s))


@pytest.mark.parametrize("cfg,arg", [(C225, 3), (HirzebruchConfig(2, 4, 9), 2.5), (HirzebruchConfig(3, 2, 9), 6)])
def test_rho1_against_closed_form(cfg, arg):
    r = predicted_poles(cfg)
    assert abs(r.rho1 - z_p1(arg) / (cfg.a * math.pi / 6)) <= max(r.rho1_error, 1e-12) + 1e-9
    if arg < 3:
        assert r.z_method == "continued"


def test_coincident():
    r = predicted_poles(HirzebruchConfig(3, 1, 4))
    assert r.coincident and r.as_dict()["flags"]["dominant"] == "coincident"
    with pytest.raises(UnsupportedCaseError):
        compare_counts(HirzebruchConfig(3, 1, 4), 10)


def test_compare_counts_225():
    out = compare_counts(C225, 200)
    assert abs(out["predicted"] - 3 / math.pi * 200 ** 2) < 1e-6
    assert abs(out["ratio"] - 1) <= 0.05


def test_compare_counts_214():
    assert abs(compare_counts(C214, 100)["ratio"] - 1) <= 0.10


def test_alpha_examples():
    assert alpha_invariant(C214) == 2
    assert alpha_invariant(C225) == 1


ample = st.tuples(st.integers(2, 6), st.integers(1, 6), st.integers(1, 12)).map(
    lambda t: HirzebruchConfig(t[0], t[1], t[1] * t[0] + t[2]))


@given(ample)
def test_alpha_is_two_over_a(cfg):
    assert alpha_invariant(cfg) == Fraction(2, cfg.a)


@given(ample)
def test_dominant_pole_vs_alpha(cfg):
    # only the exact pole locations enter the comparison
    s1, s2 = Fraction(2, cfg.a), Fraction(2, cfg.section_exponent)
    sigma0 = max(Fraction(1, cfg.a), Fraction(cfg.e + 2, cfg.b))
    dom = max(s for s in (s1, s2) if s > sigma0)
    if cfg.b >= (cfg.e + 1) * cfg.a:
        assert dom == alpha_invariant(cfg)
    else:
        assert dom > alpha_invariant(cfg)


def test_pole_report_locations():
    for cfg in (C213, C214, C225, HirzebruchConfig(3, 2, 7), HirzebruchConfig(4, 1, 7)):
        r = predicted_poles(cfg)
        assert r.s1 == Fraction(2, cfg.a) and r.s2 == Fraction(2, cfg.section_exponent)
        if cfg.b >= (cfg.e + 1) * cfg.a:
            assert r.dominant == alpha_invariant(cfg)
        else:
            assert r.dominant > alpha_invariant(cfg)


def test_csv_roundtrip(tmp_path):
    pts = enumerate_surface(C214, 6)
    p = tmp_path / "surface.csv"
    write_csv(pts, p)
    assert read_csv(p) == pts
    assert all(isinstance(x, SurfacePoint) for x in read_csv(p))
    assert p.read_text().splitlines()[0].startswith("u,v,lambda,mu")
