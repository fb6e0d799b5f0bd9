"""Order-3 jets: truncated Taylor arithmetic.

A jet stores the Taylor coefficients (c0..c3) of a function at a point, so
f = c0, f' = c1, f'' = 2 c2, f''' = 6 c3. Products and quotients follow the
truncated Cauchy rules exactly; this is what the Schwarzian needs (third
derivatives with uniform accuracy where finite differences would drown in the
exp(|z|^{3/2}) growth of the functions involved).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

__all__ = ["Jet3", "variable", "constant", "exp_jet", "sin_jet", "cos_jet"]


@dataclass(frozen=True)
class Jet3:
    c0: complex
    c1: complex
    c2: complex
    c3: complex

    def coeffs(self) -> np.ndarray:
        return np.array([self.c0, self.c1, self.c2, self.c3], dtype=complex)

    @property
    def scale(self) -> float:
        """Magnitude scale of the jet, used by tolerance checks."""
        return float(max(abs(self.c0), abs(self.c1), abs(self.c2), abs(self.c3)))

    def __add__(self, other):
        o = _as_jet(other)
        return Jet3(self.c0 + o.c0, self.c1 + o.c1, self.c2 + o.c2, self.c3 + o.c3)

    __radd__ = __add__

    def __neg__(self):
        return Jet3(-self.c0, -self.c1, -self.c2, -self.c3)

    def __sub__(self, other):
        return self + (-_as_jet(other))

    def __rsub__(self, other):
        return _as_jet(other) + (-self)

    def __mul__(self, other):
        o = _as_jet(other)
        a, b = self, o
        return Jet3(
            a.c0 * b.c0,
            a.c0 * b.c1 + a.c1 * b.c0,
            a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0,
            a.c0 * b.c3 + a.c1 * b.c2 + a.c2 * b.c1 + a.c3 * b.c0,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "Jet3":
        if self.c0 == 0:
            raise ValidationError("jet reciprocal requires nonzero constant term")
        r0 = 1.0 / self.c0
        r1 = -self.c1 * r0 * r0
        r2 = -(self.c2 * r0 + self.c1 * r1) * r0
        r3 = -(self.c3 * r0 + self.c2 * r1 + self.c1 * r2) * r0
        return Jet3(r0, r1, r2, r3)

    def __truediv__(self, other):
        return self * _as_jet(other).reciprocal()

    def __rtruediv__(self, other):
        return _as_jet(other) * self.reciprocal()

    def scaled(self, factor: complex) -> "Jet3":
        f = complex(factor)
        return Jet3(self.c0 * f, self.c1 * f, self.c2 * f, self.c3 * f)


def _as_jet(x) -> Jet3:
    if isinstance(x, Jet3):
        return x
    return constant(complex(x))


def constant(c: complex) -> Jet3:
    return Jet3(complex(c), 0.0, 0.0, 0.0)


def variable(z0: complex) -> Jet3:
    """Jet of the identity map at z0."""
    return Jet3(complex(z0), 1.0, 0.0, 0.0)


def exp_jet(z0: complex) -> Jet3:
    e = np.exp(complex(z0))
    return Jet3(e, e, e / 2.0, e / 6.0)


def sin_jet(z0: complex) -> Jet3:
    s, c = np.sin(complex(z0)), np.cos(complex(z0))
    return Jet3(s, c, -s / 2.0, -c / 6.0)


def cos_jet(z0: complex) -> Jet3:
    s, c = np.sin(complex(z0)), np.cos(complex(z0))
    return Jet3(c, -s, -c / 2.0, s / 6.0)
