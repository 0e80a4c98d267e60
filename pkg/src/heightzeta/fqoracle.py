"""Brute-force census of sections of P(V) -> P^1 over a small prime field.

A degree-d section of P(O(a_1) + ... + O(a_r)) is a tuple of binary forms
(f_1, ..., f_r), deg f_i = d + a_i, with no common zero over the algebraic
closure, taken up to a common scalar. No common zero is the same as the
forms having constant gcd, which is decided exactly over F_q.

Forms are coefficient tuples: c[i] is the coefficient of x^i y^(m-i).
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import BudgetExceededError, DomainError

COEFF_BUDGET = 12
# q^(coefficients) tuples are visited; keep the raw odometer bounded as well
RAW_BUDGET = 3**12


def _check_prime(q: int) -> None:
    if q < 2 or any(q % p == 0 for p in range(2, int(q**0.5) + 1)):
        raise DomainError(f"{q} is not prime")


@dataclass(frozen=True)
class Form:
    """Binary form of degree ``degree`` over F_q; coeffs[i] multiplies x^i y^(degree-i)."""

    q: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(int(c) % self.q for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        m = self.degree
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "".join(v if e == 1 else f"{v}^{e}" for v, e in (("x", i), ("y", m - i)) if e)
            terms.append(mono if c == 1 and mono else f"{c}{mono}")
        return " + ".join(reversed(terms)) or "0"


# univariate polynomials over F_q: coefficient lists, low degree first, trimmed

def _trim(p: list[int]) -> list[int]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mod(a: list[int], b: list[int], q: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], q - 2, q)
    while len(a) >= len(b):
        f = a[-1] * inv % q
        s = len(a) - len(b)
        for i, c in enumerate(b):
            a[s + i] = (a[s + i] - f * c) % q
        _trim(a)
    return a


def _poly_gcd(a: list[int], b: list[int], q: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _poly_mod(a, b, q)
    if a:
        inv = pow(a[-1], q - 2, q)
        a = [c * inv % q for c in a]
    return a


def _dehom(f: Form) -> tuple[list[int], int]:
    """(f(x, 1), power of y dividing f)."""
    p = _trim(list(f.coeffs))
    return p, f.degree - (len(p) - 1)


def _homogenise(h: list[int], v: int, q: int) -> Form:
    # x-power indexing means y^v is just v trailing zero coefficients
    return Form(q, tuple(h) + (0,) * v)


def homogeneous_gcd(f: Form, g: Form) -> Form:
    """Monic gcd of two binary forms: y^(min v_y) times the re-homogenised gcd
    of f(x, 1) and g(x, 1). gcd(0, g) = g up to scaling."""
    if f.q != g.q:
        raise DomainError("forms over different fields")
    q = f.q
    if f.is_zero() and g.is_zero():
        raise DomainError("gcd of two zero forms")
    if f.is_zero():
        f, g = g, f
    pf, vf = _dehom(f)
    if g.is_zero():
        return _homogenise(_poly_gcd(pf, [], q), vf, q)
    pg, vg = _dehom(g)
    return _homogenise(_poly_gcd(pf, pg, q), min(vf, vg), q)


def _representatives(q: int, n: int):
    """Coefficient vectors of length n whose first nonzero entry is 1."""
    for p in range(n):
        head = (0,) * p + (1,)
        for tail in itertools.product(range(q), repeat=n - p - 1):
            yield head + tail


def count_sections(q: int, split, d: int) -> int:
    """Number of degree-d sections of P(V) -> P^1 over F_q, V = sum O(a_i)."""
    _check_prime(q)
    degrees = [d + int(a) for a in split]
    n_coeffs = sum(max(0, m + 1) for m in degrees)
    if n_coeffs > COEFF_BUDGET:
        raise BudgetExceededError(f"{n_coeffs} coefficients exceed the budget of {COEFF_BUDGET}")
    if q ** n_coeffs > RAW_BUDGET:
        raise BudgetExceededError(f"{q}^{n_coeffs} coefficient tuples exceed the enumeration budget")
    slots = []
    pos = 0
    for m in degrees:
        if m >= 0:
            slots.append((pos, pos + m + 1, m))
            pos += m + 1
    dehom: dict = {}
    gcds: dict = {}
    count = 0
    for vec in _representatives(q, n_coeffs):
        g = None
        for lo, hi, m in slots:
            f = vec[lo:hi]
            if not any(f):
                continue
            if f not in dehom:
                dehom[f] = _dehom(Form(q, f))
            pf, vf = dehom[f]
            if g is None:
                g = (tuple(_poly_gcd(pf, [], q)), vf)
            else:
                key = (g[0], tuple(pf))
                if key not in gcds:
                    gcds[key] = tuple(_poly_gcd(list(g[0]), pf, q))
                g = (gcds[key], min(g[1], vf))
            if len(g[0]) == 1 and g[1] == 0:
                break  # already coprime
        if len(g[0]) == 1 and g[1] == 0:
            count += 1
    return count


def count_table(q: int, split, degrees) -> list[dict]:
    return [{"q": q, "split": list(split), "d": d, "count": count_sections(q, split, d)} for d in degrees]


def table_json(rows) -> str:
    return json.dumps(list(rows), indent=2)
