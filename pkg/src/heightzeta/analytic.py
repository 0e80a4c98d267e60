"""Complex values carrying an absolute error bound."""
from __future__ import annotations

import math
from dataclasses import dataclass

EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class AnalyticValue:
    value: complex
    abs_error: float

    @property
    def real(self) -> float:
        return self.value.real

    def rel_error(self) -> float:
        return self.abs_error / abs(self.value) if self.value else math.inf

    def __add__(self, other):
        other = _lift(other)
        v = self.value + other.value
        return AnalyticValue(v, self.abs_error + other.abs_error + EPS * abs(v))

    __radd__ = __add__

    def __neg__(self):
        return AnalyticValue(-self.value, self.abs_error)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        v = self.value * other.value
        err = (abs(self.value) * other.abs_error + abs(other.value) * self.abs_error
               + self.abs_error * other.abs_error + EPS * abs(v))
        return AnalyticValue(v, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        d = abs(other.value)
        if other.abs_error >= d:
            return AnalyticValue(self.value / other.value, math.inf)
        v = self.value / other.value
        err = (self.abs_error + abs(v) * other.abs_error) / (d - other.abs_error) + EPS * abs(v)
        return AnalyticValue(v, err)

    def __rtruediv__(self, other):
        return _lift(other) / self

    def as_dict(self) -> dict:
        v = self.value
        out = {"value": v.real if v.imag == 0 else [v.real, v.imag], "abs_error": self.abs_error}
        return out


def _lift(x) -> AnalyticValue:
    if isinstance(x, AnalyticValue):
        return x
    return AnalyticValue(complex(x), 0.0)


def exact(x) -> AnalyticValue:
    return AnalyticValue(complex(x), 0.0)
