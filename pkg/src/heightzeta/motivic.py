"""Motivic height zeta functions of P(V) over the projective line.

At genus 0 every class that shows up ([P^n], [X_n], [Sect_d]) is a Laurent
polynomial in L, so the coefficient ring is Z[L, L^-1] and all identities are
exact. V is split, V = O(a_1) + ... + O(a_r).

Series carry explicit windows. A series in t is exact (zero) below its order
and unknown above its truncation; a series in t^-1 is the mirror image.
Products with polynomials shift the known window accordingly, and nothing
outside a window is ever treated as zero.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DomainError, InsufficientTruncationError


class MotivicElement:
    """Laurent polynomial in L with integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        self._c = {int(k): int(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def L(cls, k: int = 1, c: int = 1) -> "MotivicElement":
        return cls({k: c})

    @classmethod
    def one(cls) -> "MotivicElement":
        return cls({0: 1})

    @classmethod
    def zero(cls) -> "MotivicElement":
        return cls()

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = MotivicElement({0: other})
        return isinstance(other, MotivicElement) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def _coerce(self, other) -> "MotivicElement":
        if isinstance(other, MotivicElement):
            return other
        if isinstance(other, int):
            return MotivicElement({0: other})
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return MotivicElement(out)

    __radd__ = __add__

    def __neg__(self):
        return MotivicElement({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict[int, int] = {}
        for i, u in self._c.items():
            for j, v in other._c.items():
                out[i + j] = out.get(i + j, 0) + u * v
        return MotivicElement(out)

    __rmul__ = __mul__

    def shift(self, k: int) -> "MotivicElement":
        """Multiply by L^k."""
        return MotivicElement({e + k: v for e, v in self._c.items()})

    def specialize(self, q: int) -> Fraction:
        return sum((Fraction(q) ** e * v for e, v in self._c.items()), Fraction(0))

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e in sorted(self._c):
            v = self._c[e]
            mono = "" if e == 0 else ("L" if e == 1 else f"L^{e}")
            if mono and abs(v) == 1:
                term = mono
            elif mono:
                term = f"{abs(v)}*{mono}"
            else:
                term = str(abs(v))
            parts.append(("-" if v < 0 else "+", term))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, term in parts[1:]:
            s += f" {sign} {term}"
        return s

    def __repr__(self):
        return f"MotivicElement({str(self)!r})"

    def to_json(self) -> dict[str, int]:
        return {str(k): v for k, v in sorted(self._c.items())}


ZERO = MotivicElement()
ONE = MotivicElement.one()
Lmot = MotivicElement.L


@dataclass(frozen=True)
class MotivicSeries:
    """Coefficients for exponents order..truncation of t.

    direction "t": every coefficient below ``order`` is zero, above
    ``truncation`` unknown. direction "t^-1": above ``truncation`` zero, below
    ``order`` unknown.
    """

    order: int
    truncation: int
    coefficients: tuple[MotivicElement, ...]
    direction: str = "t"

    def __post_init__(self):
        if self.direction not in ("t", "t^-1"):
            raise ValueError("direction must be 't' or 't^-1'")
        if len(self.coefficients) != max(self.truncation - self.order + 1, 0):
            raise ValueError("coefficient count does not match the window")

    def __getitem__(self, n: int) -> MotivicElement:
        if self.order <= n <= self.truncation:
            return self.coefficients[n - self.order]
        if (self.direction == "t" and n < self.order) or (self.direction == "t^-1" and n > self.truncation):
            return ZERO
        raise InsufficientTruncationError(f"coefficient of t^{n} lies outside the known window")

    def items(self) -> Iterable[tuple[int, MotivicElement]]:
        return zip(range(self.order, self.truncation + 1), self.coefficients)

    def mul_poly(self, poly: Mapping[int, MotivicElement]) -> "MotivicSeries":
        """Product with a Laurent polynomial in t; the window is the set of
        exponents whose coefficient is fully determined."""
        exps = [k for k, v in poly.items() if v]
        if not exps:
            raise ValueError("multiplication by the zero polynomial")
        pmin, pmax = min(exps), max(exps)
        if self.direction == "t":
            lo, hi = self.order + pmin, self.truncation + pmin
        else:
            lo, hi = self.order + pmax, self.truncation + pmax
        out = []
        for k in range(lo, hi + 1):
            acc = ZERO
            for j in exps:
                acc = acc + poly[j] * self[k - j]
            out.append(acc)
        return MotivicSeries(lo, hi, tuple(out), self.direction)

    def __add__(self, other: "MotivicSeries") -> "MotivicSeries":
        if self.direction != other.direction:
            raise ValueError("cannot add series expanded in t and in t^-1")
        if self.direction == "t":
            lo, hi = min(self.order, other.order), min(self.truncation, other.truncation)
        else:
            lo, hi = max(self.order, other.order), max(self.truncation, other.truncation)
        return MotivicSeries(lo, hi, tuple(self[k] + other[k] for k in range(lo, hi + 1)), self.direction)

    def scale(self, c: MotivicElement | int) -> "MotivicSeries":
        return MotivicSeries(self.order, self.truncation, tuple(c * x for x in self.coefficients), self.direction)

    def restrict(self, hi: int) -> "MotivicSeries":
        if self.direction != "t" or hi > self.truncation:
            raise InsufficientTruncationError("cannot extend a window by restriction")
        hi = max(hi, self.order - 1)
        return MotivicSeries(self.order, hi, self.coefficients[: hi - self.order + 1], "t")

    def substitute_inverse(self, r: int) -> "MotivicSeries":
        """t -> L^-r t^-1: the coefficient c_m t^m becomes L^{-rm} c_m t^{-m}."""
        coeffs = tuple(self[m].shift(-r * m) for m in range(self.truncation, self.order - 1, -1))
        flip = "t^-1" if self.direction == "t" else "t"
        return MotivicSeries(-self.truncation, -self.order, coeffs, flip)

    def specialize(self, q: int) -> dict[int, Fraction]:
        return {n: c.specialize(q) for n, c in self.items()}

    def __str__(self):
        terms = []
        for n, c in self.items():
            if c.is_zero():
                continue
            tpow = "" if n == 0 else ("*t" if n == 1 else f"*t^{n}")
            terms.append(f"({c}){tpow}")
        body = " + ".join(terms) if terms else "0"
        if self.direction == "t":
            return f"{body} + O(t^{self.truncation + 1})"
        return f"O(t^{self.order - 1}) + {body}"

    def to_json(self) -> dict:
        return {"order": self.order, "truncation": self.truncation, "direction": self.direction,
                "coefficients": {str(n): c.to_json() for n, c in self.items()}}


@dataclass(frozen=True)
class SplittingType:
    """V = O(a_1) + ... + O(a_r) on P^1, stored with a_1 >= ... >= a_r."""

    degrees: tuple[int, ...]

    def __post_init__(self):
        if len(self.degrees) < 1:
            raise DomainError("a splitting type needs rank >= 1")
        object.__setattr__(self, "degrees", tuple(sorted((int(a) for a in self.degrees), reverse=True)))

    @classmethod
    def of(cls, *a: int) -> "SplittingType":
        return cls(tuple(a))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def dual(self) -> "SplittingType":
        return SplittingType(tuple(-a for a in self.degrees))

    @property
    def n_min(self) -> int:
        """First index where X_n can be nonempty."""
        return -max(self.degrees) - 1

    @property
    def stable_from(self) -> int:
        """From here on h^0(O(n) (x) V) = r n + deg V + r."""
        return -min(self.degrees)

    def __str__(self):
        return "(" + ",".join(str(a) for a in self.degrees) + ")"


def _split(split) -> SplittingType:
    if isinstance(split, SplittingType):
        return split
    return SplittingType(tuple(split))


def projective_class(n: int) -> MotivicElement:
    """[P^n] for every integer n, from [P^{n+1}] = L [P^n] + 1 and [P^0] = 1."""
    if n >= 0:
        return MotivicElement({i: 1 for i in range(n + 1)})
    if n == -1:
        return ZERO
    return MotivicElement({-i: -1 for i in range(1, -n)})


def _tpoly(*terms: tuple[int, MotivicElement]) -> dict[int, MotivicElement]:
    out: dict[int, MotivicElement] = {}
    for k, v in terms:
        out[k] = out.get(k, ZERO) + v
    return out


def zeta_p1_series(N: int) -> MotivicSeries:
    """sum_{0<=n<=N} [P^n] t^n, the motivic zeta function of P^1."""
    if N < 0:
        raise DomainError("N must be nonnegative")
    return MotivicSeries(0, N, tuple(projective_class(n) for n in range(N + 1)))


def h0_twist(split, n: int) -> int:
    """dim H^0(P^1, O(n) (x) V)."""
    return sum(max(0, n + a + 1) for a in _split(split).degrees)


def x_n_class(split, n: int) -> MotivicElement:
    """[X_n(V)] = [P(H^0(O(n) (x) V))]."""
    return projective_class(h0_twist(split, n) - 1)


def zetaZ_series(split, N: int) -> MotivicSeries:
    """zeta(t) Z(P(V), t) = sum_n [X_n(V)] t^n up to t^N."""
    split = _split(split)
    if N < 0:
        raise DomainError("N must be nonnegative")
    lo = split.n_min
    return MotivicSeries(lo, N, tuple(x_n_class(split, n) for n in range(lo, N + 1)))


def _one_minus_t_one_minus_Lt() -> dict[int, MotivicElement]:
    # (1 - t)(1 - L t) = 1 - (1 + L) t + L t^2
    return _tpoly((0, ONE), (1, -(ONE + Lmot())), (2, Lmot()))


def _critical_denominator(r: int) -> dict[int, MotivicElement]:
    # (t - 1)(t - L^-r) = t^2 - (1 + L^-r) t + L^-r
    return _tpoly((2, ONE), (1, -(ONE + Lmot(-r))), (0, Lmot(-r)))


def sect_series(split, N: int) -> MotivicSeries:
    """Z(P(V), t) = sum_d [Sect_d] t^d, i.e. zetaZ divided by zeta(P^1, t)."""
    if N < 2:
        raise DomainError("sect_series needs N >= 2")
    return zetaZ_series(split, N).mul_poly(_one_minus_t_one_minus_Lt()).restrict(N - 2)


@dataclass(frozen=True)
class RationalityWitness:
    split: SplittingType
    N: int
    polynomial: dict[int, MotivicElement]
    checked: tuple[int, int]
    residual_zero: bool

    def evaluate(self, t_exp: int) -> MotivicElement:
        """P(L^t_exp)."""
        return sum((c.shift(t_exp * k) for k, c in self.polynomial.items()), ZERO)

    def as_dict(self) -> dict:
        return {"split": list(self.split.degrees), "N": self.N,
                "polynomial": {str(k): v.to_json() for k, v in sorted(self.polynomial.items())},
                "checked_window": list(self.checked), "residual_zero": self.residual_zero}


def rationality_witness(split, N: int) -> RationalityWitness:
    """P(t) = (t - 1)(t - L^-r) zeta(t) Z(P(V), t), shown to be a Laurent
    polynomial: every coefficient past the stabilisation index vanishes."""
    split = _split(split)
    n1 = split.stable_from
    if N < n1 + 4:
        raise InsufficientTruncationError(f"N = {N} is below n1 + 4 = {n1 + 4} for split {split}")
    P = zetaZ_series(split, N).mul_poly(_critical_denominator(split.rank))
    lo, hi = n1 + 2, P.truncation
    residual = all(P[k].is_zero() for k in range(lo, hi + 1))
    poly = {k: c for k, c in P.items() if k <= n1 + 1 and not c.is_zero()}
    return RationalityWitness(split, N, poly, (lo, hi), residual)


def critical_value_expected(split) -> MotivicElement:
    """L^{-1 + deg V} (1 - [P^-r]) (genus 0, [J] = 1)."""
    split = _split(split)
    return (ONE - projective_class(-split.rank)).shift(split.degree - 1)


def value_at_critical(split, N: int | None = None) -> tuple[MotivicElement, MotivicElement]:
    """(P(L^-r), defect against the closed form); the defect must be zero."""
    split = _split(split)
    if N is None:
        N = split.stable_from + 6
    w = rationality_witness(split, N)
    if not w.residual_zero:
        raise InsufficientTruncationError("the rationality residual does not vanish")
    val = w.evaluate(-split.rank)
    return val, val - critical_value_expected(split)


def motivic_rr_defect(split, n: int) -> MotivicElement:
    """[X_n(V)] - L^{r(n+1)+deg} [X_{-2-n}(V^)] - [P^{r(n+1)+deg-1}]."""
    split = _split(split)
    r, deg = split.rank, split.degree
    k = r * (n + 1) + deg
    return x_n_class(split, n) - x_n_class(split.dual(), -2 - n).shift(k) - projective_class(k - 1)


def _laurent_sub(P: Mapping[int, MotivicElement], Q: Mapping[int, MotivicElement]) -> dict[int, MotivicElement]:
    out = {k: P.get(k, ZERO) - Q.get(k, ZERO) for k in set(P) | set(Q)}
    return {k: v for k, v in out.items() if not v.is_zero()}


@dataclass(frozen=True)
class FunctionalEquationReport:
    split: SplittingType
    N: int
    residual: dict[int, MotivicElement]
    coefficient_gap: dict[int, MotivicElement]

    @property
    def ok(self) -> bool:
        return not self.residual

    def as_dict(self) -> dict:
        return {"split": list(self.split.degrees), "N": self.N, "ok": self.ok,
                "residual": {str(k): v.to_json() for k, v in sorted(self.residual.items())},
                "coefficient_gap": {str(k): str(v) for k, v in sorted(self.coefficient_gap.items())}}


def funceq_defect_motivic(split, N: int) -> FunctionalEquationReport:
    """zeta(t) Z(V, t) = L^{deg V - r} t^-2 zeta(L^-r t^-1) Z(V^, L^-r t^-1).

    The two sides expand in t and in t^-1 respectively, so they are compared
    as rational functions. Both share the denominator (t - 1)(t - L^-r) and
    the identity is equivalent to

        P_V(t) = L^{deg V} P_{V^}(L^-r t^-1),

    checked exactly. ``coefficient_gap`` records, over the window, the
    difference of the two formal expansions coefficient by coefficient; it
    equals [P^{r(n+1)+deg-1}] (the Riemann--Roch correction), which is why a
    naive coefficientwise comparison does not vanish.
    """
    split = _split(split)
    d = split.dual()
    if N < max(split.stable_from, d.stable_from) + 4:
        raise InsufficientTruncationError(
            f"N = {N} too small for a 5-term overlap for split {split} and its dual")
    r, deg = split.rank, split.degree
    wv = rationality_witness(split, N)
    wd = rationality_witness(d, N)
    if not (wv.residual_zero and wd.residual_zero):
        raise InsufficientTruncationError("rationality residual does not vanish")
    # L^deg P_{V^}(L^-r t^-1): coefficient c_m t^m -> L^{deg - r m} c_m t^{-m}
    rhs = {-m: c.shift(deg - r * m) for m, c in wd.polynomial.items()}
    residual = _laurent_sub(wv.polynomial, rhs)
    lhs_series = zetaZ_series(split, N)
    rhs_series = zetaZ_series(d, N).substitute_inverse(r)
    gap = {}
    lo = max(lhs_series.order, rhs_series.order + 2)
    for n in range(lo, min(lhs_series.truncation, rhs_series.truncation + 2) + 1):
        # t^-2 shifts exponents by -2, L^{deg - r} scales
        gap[n] = lhs_series[n] - rhs_series[n + 2].shift(deg - r)
    return FunctionalEquationReport(split, N, residual, gap)


def zeta_p1_funceq_defect(N: int) -> dict[int, MotivicElement]:
    """zeta(t) = L^-1 t^-2 zeta(L^-1 t^-1) as rational functions (rank 1, V = O)."""
    return funceq_defect_motivic(SplittingType.of(0), N).residual


def specialize(x, q: int):
    """Substitute L -> q."""
    if q < 2:
        raise DomainError("q must be at least 2")
    if isinstance(x, MotivicElement):
        return x.specialize(q)
    if isinstance(x, MotivicSeries):
        return x.specialize(q)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot specialize {type(x).__name__}")


@dataclass(frozen=True)
class LemmaReport:
    a: int
    b: int
    N: int
    polynomial: dict[int, MotivicElement]
    vanishing_ok: bool
    value: MotivicElement
    value_ok: bool
    two_sided_ok: bool

    @property
    def ok(self) -> bool:
        return self.vanishing_ok and self.value_ok and self.two_sided_ok

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "N": self.N, "ok": self.ok,
                "polynomial": {str(k): str(v) for k, v in sorted(self.polynomial.items())},
                "value": str(self.value), "vanishing_ok": self.vanishing_ok,
                "value_ok": self.value_ok, "two_sided_ok": self.two_sided_ok}


def lemma_poly_check(a: int, b: int, N: int) -> LemmaReport:
    """g(t) = (t - 1)(t - L^-a) sum_{n>=0} [P^{an+b}] t^n is a polynomial of
    degree <= 1 with g(L^-a) = L^{b-a}(1 - [P^-a]); the same product over the
    negative half, sum_{n<0}, is -g."""
    if N < 4:
        raise DomainError("lemma_poly_check needs N >= 4")
    if a < 1:
        raise DomainError("a must be positive")
    den = _critical_denominator(a)
    pos = MotivicSeries(0, N, tuple(projective_class(a * n + b) for n in range(N + 1)))
    g = pos.mul_poly(den)
    vanishing = all(g[k].is_zero() for k in range(2, g.truncation + 1))
    poly = {k: c for k, c in g.items() if k <= 1 and not c.is_zero()}
    value = sum((c.shift(-a * k) for k, c in poly.items()), ZERO)
    expected = (ONE - projective_class(-a)).shift(b - a)
    neg = MotivicSeries(-N, -1, tuple(projective_class(a * n + b) for n in range(-N, 0)), "t^-1")
    h = neg.mul_poly(den)
    neg_tail = all(h[k].is_zero() for k in range(h.order, 0))
    two_sided = neg_tail and all((h[k] + g[k]).is_zero() for k in (0, 1))
    return LemmaReport(a, b, N, poly, vanishing, value, value == expected, two_sided)


def residue_specialized(split, q: int) -> Fraction:
    """Residue of mu(Z(P(V), t)) at t = q^-r:
    -q^deg (1 - q^-r)(1 - q^{1-r}) / (q - 1)."""
    split = _split(split)
    if q < 2:
        raise DomainError("q must be at least 2")
    r, deg = split.rank, split.degree
    Q = Fraction(q)
    return -(Q ** deg) * (1 - Q ** -r) * (1 - Q ** (1 - r)) / (q - 1)


def residue_from_series(split, q: int, N: int | None = None) -> Fraction:
    """Same residue read off the specialised series: (t - q^-r) Z(t) must be a
    polynomial, whose value at q^-r is the residue."""
    split = _split(split)
    r = split.rank
    if N is None:
        N = split.stable_from + 8
    Z = sect_series(split, N).specialize(q)
    t0 = Fraction(q) ** -r
    lo, hi = min(Z), max(Z)
    prod = {k: Z.get(k - 1, Fraction(0)) - t0 * Z.get(k, Fraction(0)) for k in range(lo, hi + 1)}
    tail = [k for k in range(split.stable_from + 3, hi + 1) if prod[k] != 0]
    if tail:
        raise InsufficientTruncationError(f"(t - q^-r) Z(t) is not yet polynomial at degrees {tail}")
    return sum((c * t0 ** k for k, c in prod.items() if k < split.stable_from + 3), Fraction(0))


def report_json(obj) -> str:
    return json.dumps(obj.as_dict() if hasattr(obj, "as_dict") else obj, indent=2)
