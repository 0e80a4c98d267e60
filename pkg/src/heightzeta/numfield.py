"""Arithmetic invariants of the base field and Arakelov divisors over Q."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import DomainError, UnsupportedFieldError


@dataclass(frozen=True)
class FieldDescriptor:
    label: str
    r1: int
    r2: int
    discriminant: int
    w: int
    class_number: int
    regulator: float
    local_degrees: Mapping[str, int] = field(default_factory=dict)

    @property
    def alpha(self) -> float:
        return self.regulator * self.class_number

    @property
    def canonical_degree(self) -> float:
        return math.log(abs(self.discriminant))

    @property
    def degree(self) -> int:
        return self.r1 + 2 * self.r2


_REGISTRY = {
    "Q": FieldDescriptor("Q", r1=1, r2=0, discriminant=1, w=2, class_number=1,
                         regulator=1.0, local_degrees={"inf": 1}),
    # units {1, i, -1, -i}; Minkowski bound (2/pi)*sqrt(4) < 2 gives h = 1
    "Q(i)": FieldDescriptor("Q(i)", r1=0, r2=1, discriminant=-4, w=4, class_number=1,
                            regulator=1.0, local_degrees={"inf": 2}),
}

QQ = _REGISTRY["Q"]


def field_descriptor(label: str) -> FieldDescriptor:
    try:
        return _REGISTRY[label]
    except KeyError:
        raise UnsupportedFieldError(f"no built-in descriptor for field {label!r}") from None


@dataclass(frozen=True)
class ArithDivisor:
    """Arakelov divisor on Spec Z: a real coefficient at the infinite place
    and integer multiplicities at finitely many primes."""

    infinite_part: float = 0.0
    finite_part: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(p): int(m) for p, m in self.finite_part.items() if m != 0}
        object.__setattr__(self, "finite_part", clean)

    def __add__(self, other: ArithDivisor) -> ArithDivisor:
        fin = dict(self.finite_part)
        for p, m in other.finite_part.items():
            fin[p] = fin.get(p, 0) + m
        return ArithDivisor(self.infinite_part + other.infinite_part, fin)

    def __neg__(self) -> ArithDivisor:
        return ArithDivisor(-self.infinite_part, {p: -m for p, m in self.finite_part.items()})

    def __sub__(self, other: ArithDivisor) -> ArithDivisor:
        return self + (-other)

    def is_finite_effective(self) -> bool:
        return all(m >= 0 for m in self.finite_part.values())


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def principal_divisor(f) -> ArithDivisor:
    """Divisor of a nonzero rational: ``-log|f|`` at infinity, ``ord_p(f)`` at p."""
    f = Fraction(f)
    if f == 0:
        raise DomainError("principal divisor of 0 is undefined")
    fin = _factor(abs(f.numerator))
    for p, m in _factor(f.denominator).items():
        fin[p] = fin.get(p, 0) - m
    return ArithDivisor(-math.log(abs(f.numerator)) + math.log(f.denominator), fin)


def divisor_degree(D: ArithDivisor) -> float:
    # fsum keeps principal divisors at degree 0 to rounding
    return math.fsum([D.infinite_part] + [m * math.log(p) for p, m in D.finite_part.items()])


def divisor_norm(D: ArithDivisor) -> float:
    return math.exp(divisor_degree(D))


def effectivity(D: ArithDivisor) -> float:
    """Gaussian weight of the section 1 of O(D), zero if the finite part is not effective."""
    if not D.is_finite_effective():
        return 0.0
    return math.exp(-math.pi * math.exp(-2.0 * D.infinite_part))
