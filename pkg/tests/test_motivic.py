import itertools
import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from heightzeta.errors import DomainError, InsufficientTruncationError
from heightzeta.motivic import (ONE, ZERO, Lmot, MotivicElement, MotivicSeries, SplittingType, funceq_defect_motivic,
                                lemma_poly_check, motivic_rr_defect, projective_class, rationality_witness,
                                report_json, residue_from_series, residue_specialized, sect_series, specialize,
                                value_at_critical, x_n_class, zeta_p1_funceq_defect, zeta_p1_series, zetaZ_series)

L = Lmot()


def P(n):
    return projective_class(n)


def S(*a):
    return SplittingType.of(*a)


def all_splits(r, bound=3):
    seen = set()
    for a in itertools.product(range(-bound, bound + 1), repeat=r):
        s = tuple(sorted(a, reverse=True))
        if s not in seen:
            seen.add(s)
            yield SplittingType(s)


elements = st.dictionaries(st.integers(-5, 5), st.integers(-6, 6), max_size=5).map(MotivicElement)


def test_element_basics():
    assert MotivicElement({0: 1, 1: 0}) == ONE
    assert MotivicElement({1: 0}).coeffs == {}
    assert (L * L.shift(-1)) == L
    assert str(P(2)) == "1 + L + L^2"
    assert str(P(-2)) == "-L^-1"
    assert str(ZERO) == "0"
    assert specialize(P(2), 5) == 31


def test_projective_class_examples():
    assert P(2) == ONE + L + L * L
    assert P(-1) == ZERO
    assert P(-2) == -Lmot(-1)
    assert P(-4) == -(Lmot(-1) + Lmot(-2) + Lmot(-3))


@pytest.mark.parametrize("m,n", list(itertools.product(range(-6, 7), repeat=2)))
def test_projective_class_identity(m, n):
    assert P(m) - P(n).shift(m - n) == P(m - n - 1)


def test_zeta_p1_examples():
    z = zeta_p1_series(2)
    assert [c for _, c in z.items()] == [ONE, ONE + L, ONE + L + L * L]
    N = 9
    prod = zeta_p1_series(N).mul_poly({0: ONE, 1: -(ONE + L), 2: L})
    assert prod[0] == ONE
    assert all(prod[k].is_zero() for k in range(1, N))


def test_zeta_p1_funceq_rational():
    assert zeta_p1_funceq_defect(10) == {}


def test_zeta_p1_funceq_coefficient_gap():
    # the formal expansions on either side differ coefficientwise by [P^{n}]
    rep = funceq_defect_motivic(S(0), 10)
    assert rep.coefficient_gap
    for n, gap in rep.coefficient_gap.items():
        assert gap == P(n)


def test_x_n_examples():
    assert x_n_class(S(0, 0), 1) == P(3)
    assert x_n_class(S(0, 0), -1) == ZERO
    assert x_n_class(S(0, 2), 0) == P(3)


def test_zetaZ_examples():
    z = zetaZ_series(S(0, 0), 8)
    for n in range(0, 9):
        assert z[n] == P(2 * n + 1)
    assert z[-1] == ZERO and z[-20] == ZERO
    assert zetaZ_series(S(-1, 1), 4)[0] == P(1)
    with pytest.raises(InsufficientTruncationError):
        z[9]


def test_sect_examples():
    s = sect_series(S(0, 0), 8)
    assert s[0] == P(1)
    assert s[1] == L * L * L - L
    assert s[-1] == ZERO
    assert s.truncation == 6
    assert specialize(s[1], 2) == 6


@pytest.mark.parametrize("split", list(all_splits(2)) + list(all_splits(3, 2)), ids=str)
def test_sect_vanishes_below(split):
    s = sect_series(split, 6)
    assert all(s[d].is_zero() for d in range(split.n_min - 6, split.n_min))
    assert s.order >= split.n_min


def test_rationality_examples():
    w = rationality_witness(S(0, 0), 12)
    assert w.residual_zero and max(w.polynomial) <= 2
    assert rationality_witness(S(0, 3), 15).residual_zero
    with pytest.raises(InsufficientTruncationError):
        rationality_witness(S(0, 0), 3)


def test_critical_examples():
    assert value_at_critical(S(0, 0)) == (Lmot(-1) + Lmot(-2), ZERO)
    assert value_at_critical(S(0, 1)) == (ONE + Lmot(-1), ZERO)
    assert value_at_critical(S(0)) == (Lmot(-1), ZERO)


def test_rr_examples():
    assert motivic_rr_defect(S(0, 0), 3) == ZERO
    assert motivic_rr_defect(S(0, 0), -1) == ZERO
    assert all(motivic_rr_defect(S(-2, 3), n) == ZERO for n in range(-5, 6))


@pytest.mark.parametrize("split,N", [(S(0, 0), 12), (S(1, 2), 14), (S(0, 0, 0), 12)], ids=str)
def test_funceq_examples(split, N):
    rep = funceq_defect_motivic(split, N)
    assert rep.ok
    r, deg = split.rank, split.degree
    for n, gap in rep.coefficient_gap.items():
        assert gap == P(r * (n + 1) + deg - 1)


def test_funceq_insufficient():
    with pytest.raises(InsufficientTruncationError):
        funceq_defect_motivic(S(-3, 3), 5)


@pytest.mark.parametrize("split", list(all_splits(2)) + list(all_splits(3)), ids=str)
def test_full_sweep(split):
    N = 15
    assert rationality_witness(split, N).residual_zero
    assert value_at_critical(split, N)[1] == ZERO
    assert all(motivic_rr_defect(split, n) == ZERO for n in range(-8, 9))
    assert funceq_defect_motivic(split, N).ok


def test_specialize_examples():
    assert specialize(P(1), 3) == 4
    assert specialize(L * L * L - L, 2) == 6
    assert specialize(P(-2), 2) == Fraction(-1, 2)
    with pytest.raises(DomainError):
        specialize(P(1), 1)
    assert specialize(zeta_p1_series(2), 2) == {0: 1, 1: 3, 2: 7}


@given(elements, elements, st.integers(2, 9))
def test_specialize_is_ring_hom(x, y, q):
    assert specialize(x + y, q) == specialize(x, q) + specialize(y, q)
    assert specialize(x * y, q) == specialize(x, q) * specialize(y, q)
    assert specialize(x - y, q) == specialize(x, q) - specialize(y, q)


@given(elements, elements, elements)
def test_ring_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert (x * y) * z == x * (y * z)
    assert x - x == ZERO


def test_lemma_examples():
    r = lemma_poly_check(2, 0, 10)
    assert r.ok
    # L^-2 (1 + L [P^0] t)
    assert r.polynomial == {0: Lmot(-2), 1: (L * P(0)).shift(-2)}
    assert lemma_poly_check(1, 0, 10).value == Lmot(-1)
    r = lemma_poly_check(3, 2, 12)
    assert r.value == Lmot(-1) + Lmot(-2) + Lmot(-3) and r.ok


@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 5) for b in range(-4, 5)])
def test_lemma_two_sided(a, b):
    r = lemma_poly_check(a, b, 10)
    assert r.vanishing_ok and r.value_ok and r.two_sided_ok


def test_lemma_bad_input():
    with pytest.raises(DomainError):
        lemma_poly_check(2, 0, 3)


@pytest.mark.parametrize("split,q,expect", [(S(0, 0), 2, Fraction(-3, 8)), (S(0, 0), 3, Fraction(-8, 27)),
                                            (S(0, 1), 2, Fraction(-3, 4))], ids=str)
def test_residue_examples(split, q, expect):
    assert residue_specialized(split, q) == expect
    assert residue_from_series(split, q) == expect


@pytest.mark.parametrize("split", [S(-1, 2), S(0, 0, 1), S(2, 2), S(-2, -1, 3)], ids=str)
@pytest.mark.parametrize("q", [2, 3, 5])
def test_residue_cross_check(split, q):
    assert residue_specialized(split, q) == residue_from_series(split, q)


def test_series_windows():
    s = MotivicSeries(0, 3, (ONE, ONE, ONE, ONE))
    with pytest.raises(InsufficientTruncationError):
        s[4]
    assert s[-3] == ZERO
    inv = s.substitute_inverse(2)
    assert inv.direction == "t^-1" and inv[-2] == Lmot(-4) and inv[1] == ZERO
    with pytest.raises(InsufficientTruncationError):
        inv[-4]
    with pytest.raises(ValueError):
        s + inv
    with pytest.raises(InsufficientTruncationError):
        s.restrict(5)
    # product with 1 - t leaves only the determined coefficients
    d = s.mul_poly({0: ONE, 1: -ONE})
    assert d.truncation == 3 and d[0] == ONE and all(d[k] == ZERO for k in (1, 2, 3))


def test_rendering_and_json():
    text = str(sect_series(S(0, 0), 4))
    assert text.endswith("O(t^3)")
    rep = json.loads(report_json(funceq_defect_motivic(S(0, 1), 8)))
    assert rep["ok"] is True and rep["split"] == [1, 0]
    w = json.loads(report_json(rationality_witness(S(0, 0), 8)))
    assert w["residual_zero"] is True
