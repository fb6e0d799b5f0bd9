"""Meromorphic maps as jet-evaluation contracts: the Airy-quotient model
function, rational maps, Moebius algebra, the Schwarzian derivative, and the
rotationally equivariant rational builder Q(z) = e^{3 i theta} z R(z^3).

A MeroMap promises an order-3 jet at every non-singular point. At (or within
tolerance of) a pole it returns the jet of 1/f flagged as a reciprocal chart
instead of raising: the Schwarzian is chart-independent (S(1/f) = S(f)), so
consumers switch charts without loss.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import jets
from .airy import airy_scaled, airy_zeros
from .errors import CriticalPointError, RangeError, ValidationError
from .jets import Jet3
from .util import ensure_finite, wrap_angle

__all__ = [
    "RaySpec",
    "Mobius",
    "MeroMap",
    "JetFunctionMap",
    "ExampleOneMap",
    "RationalMap",
    "RationalMeroMap",
    "schwarzian",
    "mobius_apply",
    "mobius_invariance_residual",
    "build_q",
]

_OMEGA = np.exp(2j * np.pi / 3)
_CRITICAL_TOL = 1e-12
_POLE_TOL = 1e-9
_EXP_LIMIT = 705.0


@dataclass(frozen=True)
class RaySpec:
    """A ray from the origin, stored by its argument in (-pi, pi]."""

    theta: float

    def __post_init__(self):
        ensure_finite(self.theta, "ray angle")
        object.__setattr__(self, "theta", float(wrap_angle(self.theta)))

    def direction(self) -> complex:
        return complex(np.exp(1j * self.theta))


@dataclass(frozen=True)
class Mobius:
    """Linear fractional transformation w -> (a w + b)/(c w + d)."""

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            ensure_finite(v, "Mobius coefficient")
        det = self.a * self.d - self.b * self.c
        scale = max(abs(self.a), abs(self.b), abs(self.c), abs(self.d), 1.0)
        if abs(det) <= 1e-14 * scale * scale:
            raise ValidationError("Mobius map is degenerate: |ad - bc| below tolerance")

    def __call__(self, w: complex) -> complex:
        return (self.a * w + self.b) / (self.c * w + self.d)

    def apply_jet(self, j: Jet3) -> Jet3:
        return (j * self.a + self.b) / (j * self.c + self.d)

    @staticmethod
    def identity() -> "Mobius":
        return Mobius(1.0, 0.0, 0.0, 1.0)


class MeroMap:
    """Evaluation contract: point -> order-3 jet (plus chart flag).

    ``jet(z)`` returns ``(Jet3, reciprocal)``; ``reciprocal=True`` means the
    jet describes 1/f (the pole chart). Subclasses may also advertise

    * ``declared_poles(r_max)``: known pole locations (argument-principle
      counts are corrected by them on the generic path), and
    * ``factor_for_target(a)``: a holomorphic function sharing the a-points
      of f, as a vectorized ``(values, derivatives)`` callable. Root scanning
      prefers this: winding numbers of an entire factor count a-points with
      no pole bookkeeping at all.
    """

    name = "meromap"

    def jet(self, z: complex):
        raise NotImplementedError

    def value(self, z: complex) -> complex:
        j, recip = self.jet(z)
        if recip:
            if j.c0 == 0:
                raise RangeError(f"value at pole z={z!r}")
            return 1.0 / j.c0
        return j.c0

    def log_abs(self, z: complex) -> float:
        """log|f(z)|; -inf at zeros, +inf at exact poles."""
        j, recip = self.jet(z)
        mag = abs(j.c0)
        if mag == 0.0:
            return float("inf") if recip else float("-inf")
        la = float(np.log(mag))
        return -la if recip else la

    def declared_poles(self, r_max: float):
        return None

    def factor_for_target(self, a):
        return None


class JetFunctionMap(MeroMap):
    """Wrap a plain ``z -> Jet3`` callable (entire functions, test fixtures)."""

    def __init__(self, fn, name="func", poles=None):
        self._fn = fn
        self.name = name
        self._poles = None if poles is None else np.asarray(poles, dtype=complex)

    def jet(self, z: complex):
        return self._fn(complex(z)), False

    def declared_poles(self, r_max: float):
        if self._poles is None:
            return None
        return self._poles[np.abs(self._poles) <= r_max]


class ReciprocalMap(MeroMap):
    """1/f for an underlying MeroMap (chart flags swap roles)."""

    def __init__(self, base: MeroMap):
        self.base = base
        self.name = f"recip({base.name})"

    def jet(self, z: complex):
        j, recip = self.base.jet(z)
        return j, not recip


class MobiusComposedMap(MeroMap):
    """L o f for a Moebius map L."""

    def __init__(self, L: Mobius, base: MeroMap):
        self.L = L
        self.base = base
        self.name = f"mobius({base.name})"

    def jet(self, z: complex):
        j, recip = self.base.jet(z)
        if recip:
            # j is the jet of g = 1/f; L(f) = (a/g + b)/(c/g + d) = (a + b g)/(c + d g)
            num = j * self.L.b + self.L.a
            den = j * self.L.d + self.L.c
        else:
            num = j * self.L.a + self.L.b
            den = j * self.L.c + self.L.d
        if abs(den.c0) <= _POLE_TOL * max(den.scale, 1e-300):
            return den / num, True
        return num / den, False


class ExampleOneMap(MeroMap):
    """The model function f(z) = e^{i pi/3} Ai(omega z)/Ai(conj(omega) z),
    omega = e^{2 pi i/3}.

    Zeros sit on arg z = pi/3, poles on arg z = -pi/3, and 1-points on the
    negative real axis (each family is a rotated copy of the Airy zeros).
    Evaluation combines exp-scaled Airy jets, so quotient jets stay finite
    far beyond the overflow radius of the individual factors; a RangeError
    signals the (deep-sector, |z| >~ 100) points where even the quotient
    exceeds float64.
    """

    name = "example1"

    _PHASE = np.exp(1j * np.pi / 3)

    def jet(self, z: complex):
        z = complex(ensure_finite(z, "evaluation point"))
        from .airy import airy_jet_scaled

        cn, sn = airy_jet_scaled(_OMEGA * z)
        cd, sd = airy_jet_scaled(np.conj(_OMEGA) * z)
        # chain rule for w = omega z: multiply coefficient k by omega^k
        rot = _OMEGA ** np.arange(4)
        num = Jet3(*(cn * rot))
        den = Jet3(*(cd * np.conj(rot)))
        ds = sn - sd
        if abs(ds.real) > _EXP_LIMIT:
            raise RangeError(
                f"|f| magnitude exp({ds.real:.0f}) exceeds float64 at z={z!r}"
            )
        phase = self._PHASE * np.exp(ds)
        if abs(den.c0) <= _POLE_TOL * max(den.scale, 1e-300):
            # reciprocal chart: 1/f = e^{-i pi/3} e^{sd-sn} den/num
            return (den / num).scaled(1.0 / phase), True
        return (num / den).scaled(phase), False

    def log_abs(self, z: complex) -> float:
        z = complex(z)
        gn, _, sn, _ = airy_scaled(_OMEGA * z)
        gd, _, sd, _ = airy_scaled(np.conj(_OMEGA) * z)
        if abs(gn) == 0.0:
            return float("-inf")
        if abs(gd) == 0.0:
            return float("inf")
        return float((sn - sd).real + np.log(abs(gn)) - np.log(abs(gd)))

    def _family_magnitudes(self, r_max: float) -> np.ndarray:
        mags = []
        k = 64
        while True:
            zs = np.abs(airy_zeros(k))
            if zs[-1] > r_max or k >= 20000:
                break
            k *= 2
        return zs[zs <= r_max]

    def known_ray_roots(self, target, r_max: float) -> np.ndarray:
        """Exact root locations on the target's ray up to modulus r_max.

        These come from the 1-D Airy-zero solver, independently of any 2-D
        contour scan; scans use them only as declared singular points.
        """
        mags = self._family_magnitudes(r_max)
        if target == 0:
            return mags * np.exp(1j * np.pi / 3)
        if target == 1:
            return -mags.astype(complex)
        if target in ("inf", np.inf):
            return mags * np.exp(-1j * np.pi / 3)
        raise ValidationError(f"example1 has root rays only for targets 0, 1, inf (got {target!r})")

    def declared_poles(self, r_max: float):
        return self.known_ray_roots("inf", r_max)

    def factor_for_target(self, a):
        """Entire factor whose zeros are exactly the a-points, for a in {0,1,inf}.

        f - 1 reduces by the three-fold rotation identity to
        -e^{-i pi/3} Ai(z)/Ai(conj(omega) z), so the 1-points are the zeros of
        Ai itself; the 0/inf factors are the rotated numerator/denominator.
        """
        if a == 0:
            rot = _OMEGA
        elif a == 1:
            rot = 1.0
        elif a in ("inf", np.inf):
            rot = np.conj(_OMEGA)
        else:
            return None

        def factor(z):
            z = np.asarray(z, dtype=complex)
            g, gp, s, _ = airy_scaled(rot * z)
            # scaled values suffice: winding integrands use g'/g and the
            # scale e^s is locally analytic and nonvanishing -- its log
            # derivative is subtracted analytically below.
            return g, rot * gp, s

        return factor


class RationalMap:
    """Rational function stored as numerator/denominator coefficient arrays,
    lowest degree first."""

    def __init__(self, num, den=(1.0,), name="rational"):
        self.num = np.trim_zeros(np.asarray(num, dtype=complex), "b")
        self.den = np.trim_zeros(np.asarray(den, dtype=complex), "b")
        self.name = name
        if self.num.size == 0:
            self.num = np.zeros(1, dtype=complex)
        if self.den.size == 0:
            raise ValidationError("denominator is identically zero")
        ensure_finite(self.num, "numerator coefficients")
        ensure_finite(self.den, "denominator coefficients")
        if self.num.any() and self._common_root():
            raise ValidationError("numerator and denominator share a root within tolerance")

    def _common_root(self) -> bool:
        if self.deg_den == 0 or self.deg_num == 0:
            return False
        dr = self.poles()
        vals = np.polyval(self.num[::-1], dr)
        scale = np.max(np.abs(self.num)) * np.maximum(1.0, np.abs(dr)) ** self.deg_num
        return bool(np.any(np.abs(vals) <= 1e-12 * scale))

    @property
    def deg_num(self) -> int:
        return len(self.num) - 1

    @property
    def deg_den(self) -> int:
        return len(self.den) - 1

    def poles(self) -> np.ndarray:
        if self.deg_den == 0:
            return np.zeros(0, dtype=complex)
        return np.roots(self.den[::-1])

    def at_infinity(self):
        """Limit at infinity: 0, finite ratio, or None when it diverges."""
        if self.deg_num < self.deg_den:
            return 0.0
        if self.deg_num == self.deg_den:
            return self.num[-1] / self.den[-1]
        return None

    def is_real(self, tol=1e-12) -> bool:
        lead = self.den[-1]
        n = self.num / lead
        d = self.den / lead
        scale = max(np.max(np.abs(n)), np.max(np.abs(d)), 1.0)
        return bool(max(np.max(np.abs(n.imag)), np.max(np.abs(d.imag))) <= tol * scale)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        return np.polyval(self.num[::-1], z) / np.polyval(self.den[::-1], z)

    def derivative(self) -> "RationalMap":
        n, d = self.num, self.den
        dn = n[1:] * np.arange(1, len(n))
        dd = d[1:] * np.arange(1, len(d)) if len(d) > 1 else np.zeros(0)
        num = np.polysub(np.polymul(dn[::-1] if dn.size else [0.0], d[::-1]),
                         np.polymul(n[::-1], dd[::-1] if dd.size else [0.0]))[::-1]
        den = np.polymul(d[::-1], d[::-1])[::-1]
        return RationalMap(num, den, name=self.name + "'")

    def jet(self, z: complex) -> Jet3:
        zj = jets.variable(complex(z))
        num = _poly_jet(self.num, zj)
        den = _poly_jet(self.den, zj)
        return num / den

    # -- serialization: {"num": [[re, im], ...], "den": [[re, im], ...]} --

    def to_json(self) -> str:
        return json.dumps(self.to_obj())

    def to_obj(self) -> dict:
        return {
            "num": [[float(c.real), float(c.imag)] for c in self.num],
            "den": [[float(c.real), float(c.imag)] for c in self.den],
        }

    @staticmethod
    def from_obj(obj: dict) -> "RationalMap":
        num = [complex(re, im) for re, im in obj["num"]]
        den = [complex(re, im) for re, im in obj["den"]]
        return RationalMap(num, den)

    @staticmethod
    def from_json(text: str) -> "RationalMap":
        return RationalMap.from_obj(json.loads(text))

    def __repr__(self):
        return f"RationalMap(num={self.num!r}, den={self.den!r})"


def _poly_jet(coeffs: np.ndarray, zj: Jet3) -> Jet3:
    acc = jets.constant(coeffs[-1])
    for c in coeffs[-2::-1]:
        acc = acc * zj + c
    return acc


class RationalMeroMap(MeroMap):
    """MeroMap view of a RationalMap (poles declared, factors explicit)."""

    def __init__(self, rmap: RationalMap):
        self.rmap = rmap
        self.name = rmap.name

    def jet(self, z: complex):
        zj = jets.variable(complex(z))
        num = _poly_jet(self.rmap.num, zj)
        den = _poly_jet(self.rmap.den, zj)
        if abs(den.c0) <= _POLE_TOL * max(den.scale, abs(num.c0), 1e-300):
            return den / num, True
        return num / den, False

    def declared_poles(self, r_max: float):
        p = self.rmap.poles()
        return p[np.abs(p) <= r_max]

    def factor_for_target(self, a):
        num, den = self.rmap.num, self.rmap.den
        if a in ("inf", np.inf):
            coeffs = den
        else:
            n = max(len(num), len(den))
            coeffs = np.zeros(n, dtype=complex)
            coeffs[: len(num)] += num
            coeffs[: len(den)] -= complex(a) * den
            coeffs = np.trim_zeros(coeffs, "b")
            if coeffs.size == 0:
                return None  # f identically equal to a
        dcoeffs = coeffs[1:] * np.arange(1, len(coeffs)) if len(coeffs) > 1 else np.zeros(1)

        def factor(z):
            z = np.asarray(z, dtype=complex)
            return np.polyval(coeffs[::-1], z), np.polyval(dcoeffs[::-1], z), np.zeros_like(z)

        return factor


def schwarzian(f: MeroMap, z: complex) -> complex:
    """Schwarzian derivative S(f)(z) = (f''/f')' - (f''/f')^2 / 2 from the jet.

    Chart-independent: a reciprocal-chart jet gives the same value since
    S(1/f) = S(f). Raises CriticalPointError when |f'| falls below
    1e-12 x (jet scale): the maps of interest have finitely many critical
    points and callers must see them rather than NaNs.
    """
    j, _ = f.jet(z) if isinstance(f, MeroMap) else (f, False)
    scale = j.scale
    if abs(j.c1) <= _CRITICAL_TOL * max(scale, 1e-300):
        raise CriticalPointError(z, scale)
    c1, c2, c3 = j.c1, j.c2, j.c3
    return complex(6.0 * (c1 * c3 - c2 * c2) / (c1 * c1))


def mobius_apply(L: Mobius, f: MeroMap) -> MeroMap:
    return MobiusComposedMap(L, f)


def mobius_invariance_residual(L: Mobius, f: MeroMap, z: complex) -> float:
    """|S(L o f)(z) - S(f)(z)| - zero in exact arithmetic."""
    return abs(schwarzian(mobius_apply(L, f), z) - schwarzian(f, z))


def build_q(theta, R: RationalMap) -> RationalMap:
    """Assemble Q(z) = e^{3 i theta} z R(z^3) as an explicit rational map.

    Preconditions (validated): R has real coefficients after normalizing the
    leading denominator coefficient to 1, and 0 < R(infinity) < infinity, i.e.
    deg num = deg den with a positive real leading ratio. All rotation is
    carried by theta: when a source of coefficients arrives with R(infinity)
    negative, fold the sign into theta (theta -> theta + pi/3) rather than
    into R. Consequently Q(z) ~ e^{3 i theta} R(inf) z at infinity and
    Q(omega z) omega^2 = Q(z) for omega = e^{2 pi i/3}.
    """
    if isinstance(theta, RaySpec):
        theta = theta.theta
    violations = []
    if not R.is_real():
        violations.append("R must be a real rational function (|Im coeff| <= 1e-12 after normalization)")
    rinf = R.at_infinity()
    if rinf is None or not (np.isreal(rinf) or abs(rinf.imag) <= 1e-12 * abs(rinf)) or not (rinf.real > 0 and np.isfinite(rinf.real)):
        violations.append("R must satisfy 0 < R(inf) < inf (deg num = deg den, positive leading ratio)")
    if violations:
        raise ValidationError(violations)

    phase = np.exp(3j * theta)
    # compose with z^3: interleave coefficients, then multiply by z
    num3 = np.zeros(3 * len(R.num) - 2 + 3, dtype=complex)
    num3[1 : 1 + 3 * len(R.num) : 3] = R.num * phase
    den3 = np.zeros(3 * len(R.den) - 2, dtype=complex)
    den3[0 : 3 * len(R.den) : 3] = R.den
    return RationalMap(num3, den3, name=f"q(theta={theta:.6g})")
