"""Complex Airy function Ai on all of C, with derivative, error estimates,
exp-scaled variants, and the real negative zeros.

Evaluation strategy
-------------------
Three regimes, selected per point (all vectorized):

* ``|z| < 8``: Maclaurin series, summed in 80-bit extended precision. The
  switch radius is 8 (not smaller) because identities that cancel two
  exponentially large rotated values down to an O(1) residual need absolute
  accuracy ~1e-11 on values of size ~1e6, which the Poincare expansion cannot
  deliver below ``|z| ~ 8``. Extended precision removes the cancellation
  noise of the series' large intermediate terms (~2e5 at ``|z| = 8``).
* ``|z| >= 5.5`` and ``|arg z| <= pi/6``: asymptotic expansion. In this decay
  cone the series would lose relative accuracy to cancellation, while the
  asymptotic error (relative ~e^{-2|zeta|}) is multiplied by the tiny
  e^{-Re zeta}, keeping the absolute error far below 1e-10.
* ``|z| >= 8``: asymptotic expansion for ``|arg z| <= 2pi/3``; beyond that the
  three-fold rotation identity maps the point back into the reliable sector
  (the identity is exact, so this is the numerically stable route near the
  negative axis where a single expansion straddles a Stokes line).

Scaled form: every branch reports ``(g, g', s)`` with ``Ai = g e^s``; the
series branch has ``s = 0``. Quotients of Airy values at ``|z| >> 12`` stay
finite by combining scaled parts and exponent differences.

Error estimates are truncation bounds: 4x the first omitted term (the safety
factor covers the non-alternating sectors). They do not include roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import RangeError, ValidationError
from .util import ensure_finite

__all__ = [
    "AiryValue",
    "airy",
    "airy_arrays",
    "airy_scaled",
    "airy_jet_scaled",
    "airy_connection_residual",
    "airy_zero",
    "airy_zeros",
    "SERIES_RADIUS",
]

# Ai(0) = 3^{-2/3}/Gamma(2/3) and Ai'(0) = -3^{-1/3}/Gamma(1/3), to quad accuracy.
_AI0 = np.longdouble("0.35502805388781723926006318600418317640")
_AIP0 = np.longdouble("-0.25881940379280679840518356018920396348")
_OMEGA_LD = np.clongdouble(-0.5) + np.clongdouble(1j) * np.sqrt(np.clongdouble(3)) / 2
_OMEGA = complex(_OMEGA_LD)
_SQRTPI = np.sqrt(np.pi)

SERIES_RADIUS = 8.0
_FAST_RADIUS = 5.5
_FAST_ARG = np.pi / 6.0
_SERIES_TERMS = 100
_ASYM_TERMS = 42
_SAFETY = 4.0
# log-scale beyond which unscaled values overflow float64
_EXP_LIMIT = 705.0
_ZERO_K_MAX = 20000


@dataclass(frozen=True)
class AiryValue:
    """Ai and Ai' at a point, with a truncation-error bound.

    ``est_abs_error`` bounds the truncation error of the chosen expansion
    branch (first omitted term x4). For exponentially large values it scales
    with the magnitude; for ``|Ai| <= 1`` it is an absolute bound.
    """

    ai: complex
    ai_prime: complex
    est_abs_error: float


def _series_scaled(z):
    """Maclaurin series for (Ai, Ai') in extended precision.

    Accepts complex128 or clongdouble input; sums in clongdouble. Returns
    clongdouble arrays plus a float truncation estimate.
    """
    z = np.asarray(z, dtype=np.clongdouble)
    z3 = z * z * z
    zsafe = np.where(np.abs(z) < 1e-300, np.clongdouble(1.0), z)
    f = np.ones_like(z)
    g = z.copy()
    fp = np.zeros_like(z)
    gp = np.ones_like(z)
    tf = np.ones_like(z)
    tg = z.copy()
    for k in range(1, _SERIES_TERMS):
        tf = tf * z3 / ((3 * k - 1) * (3 * k))
        tg = tg * z3 / ((3 * k) * (3 * k + 1))
        f = f + tf
        g = g + tg
        fp = fp + tf * (3 * k) / zsafe
        gp = gp + tg * (3 * k + 1) / zsafe
        if k % 16 == 0 and np.max(np.abs(tf)) < 1e-26 and np.max(np.abs(tg)) < 1e-26:
            break
    # first omitted terms
    tf = tf * z3 / ((3 * _SERIES_TERMS - 1) * (3 * _SERIES_TERMS))
    tg = tg * z3 / ((3 * _SERIES_TERMS) * (3 * _SERIES_TERMS + 1))
    est = _SAFETY * (np.abs(_AI0 * tf) + np.abs(_AIP0 * tg)).astype(float)
    ai = _AI0 * f + _AIP0 * g
    aip = _AI0 * fp + _AIP0 * gp
    return ai, aip, est


def _asym_scaled(z):
    """Poincare expansion of Ai = g e^s, s = -zeta = -(2/3) z^{3/2}.

    Optimal truncation per point: each partial sum stops adding once its term
    magnitudes stop decreasing (or drop below 1e-18). Valid for
    ``|arg z| < pi``; accuracy degrades toward the boundary, which callers
    avoid by rotating instead.
    """
    z = np.asarray(z, dtype=complex)
    sz = np.sqrt(z)
    zeta = (2.0 / 3.0) * z * sz
    inv = -1.0 / zeta
    su = np.ones_like(z)
    sv = np.ones_like(z)
    term = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    prev = np.full(z.shape, np.inf)
    rel_err = np.zeros(z.shape)
    uk = 1.0
    for k in range(1, _ASYM_TERMS):
        uk = uk * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / (216.0 * k * (2 * k - 1))
        vk = -uk * (6 * k + 1) / (6 * k - 1)
        term = term * inv
        tu = uk * term
        mag = np.abs(tu)
        grown = active & (mag >= prev)
        rel_err = np.where(grown, prev, rel_err)
        active &= ~grown
        su = np.where(active, su + tu, su)
        sv = np.where(active, sv + vk * term, sv)
        tiny = active & (mag < 1e-18)
        rel_err = np.where(tiny, mag, rel_err)
        prev = np.where(active, mag, prev)
        active &= ~tiny
        if not active.any():
            break
    rel_err = np.where(active, prev, rel_err)
    z14 = np.sqrt(sz)
    pref = 1.0 / (2.0 * _SQRTPI * z14)
    g = pref * su
    gp = -(z14 / (2.0 * _SQRTPI)) * sv
    est = _SAFETY * rel_err * np.abs(pref)
    return g, gp, -zeta, est


def airy_scaled(z):
    """Vectorized scaled evaluation: returns ``(g, gp, s, est)`` with
    ``Ai(z) = g e^s`` and ``Ai'(z) = gp e^s``; ``est`` bounds the truncation
    error of ``g`` (multiply by ``|e^s|`` for the unscaled bound)."""
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    ensure_finite(z, "airy argument")
    g = np.empty_like(z)
    gp = np.empty_like(z)
    s = np.zeros_like(z)
    est = np.zeros(z.shape)

    r = np.abs(z)
    absarg = np.abs(np.angle(z))
    m_fast = (r >= _FAST_RADIUS) & (absarg <= _FAST_ARG)
    m_series = (r < SERIES_RADIUS) & ~m_fast
    m_direct = ~m_series & ~m_fast & (absarg <= 2 * np.pi / 3)
    m_conn = ~(m_series | m_fast | m_direct)

    if m_series.any():
        ai, aip, e = _series_scaled(z[m_series])
        g[m_series] = ai.astype(complex)
        gp[m_series] = aip.astype(complex)
        est[m_series] = e
    md = m_fast | m_direct
    if md.any():
        gg, ggp, ss, e = _asym_scaled(z[md])
        g[md] = gg
        gp[md] = ggp
        s[md] = ss
        est[md] = e
    if m_conn.any():
        zc = z[m_conn]
        # Ai(z) = -w' Ai(w' z) - w Ai(w z) with w = e^{2pi i/3}; both rotated
        # arguments land in |arg| <= 2pi/3 where the expansion is reliable.
        ga, gpa, sa, ea = _asym_scaled(zc * np.conj(_OMEGA))
        gb, gpb, sb, eb = _asym_scaled(zc * _OMEGA)
        smax = np.where(sa.real >= sb.real, sa, sb)
        fa = np.exp(sa - smax)
        fb = np.exp(sb - smax)
        g[m_conn] = -np.conj(_OMEGA) * ga * fa - _OMEGA * gb * fb
        # chain rule: d/dz Ai(wz) = w Ai'(wz)
        gp[m_conn] = -np.conj(_OMEGA) ** 2 * gpa * fa - _OMEGA**2 * gpb * fb
        s[m_conn] = smax
        est[m_conn] = ea * np.abs(fa) + eb * np.abs(fb)
    if scalar:
        return g[0], gp[0], s[0], float(est[0])
    return g, gp, s, est


def airy_arrays(z):
    """Unscaled vectorized (ai, ai_prime, est). Raises RangeError on overflow."""
    g, gp, s, est = airy_scaled(np.asarray(z, dtype=complex))
    sr = np.atleast_1d(np.asarray(s).real)
    if np.any(sr > _EXP_LIMIT):
        worst = np.atleast_1d(z).ravel()[int(np.argmax(sr.ravel()))]
        raise RangeError(
            f"|Ai| exceeds float64 range at z={worst!r} (log-scale {sr.max():.1f}); "
            "use airy_scaled for quotients at this magnitude"
        )
    es = np.exp(s)
    return g * es, gp * es, est * np.abs(es)


def airy(z) -> AiryValue:
    """Ai(z) and Ai'(z) with a truncation-error bound."""
    ai, aip, est = airy_arrays(complex(z))
    return AiryValue(complex(ai), complex(aip), float(est))


def airy_jet_scaled(z):
    """Order-3 Taylor coefficients of Ai at z, in scaled form ``(coeffs, s)``.

    c2 and c3 follow from Ai'' = z Ai, so their accuracy matches (ai, ai').
    """
    z = complex(z)
    g, gp, s, _ = airy_scaled(z)
    c = np.array([g, gp, z * g / 2.0, (g + z * gp) / 6.0], dtype=complex)
    return c, complex(s)


def airy_connection_residual(z) -> float:
    """|Ai(z) + e^{-2pi i/3} Ai(e^{-2pi i/3} z) + e^{2pi i/3} Ai(e^{2pi i/3} z)|.

    For ``|z| <= 8`` the three terms are computed in extended precision,
    rotations included: in float64 the rounding of the rotated points alone
    contributes ~1e-9 at ``|z| = 8``, masking the identity.
    """
    z = complex(ensure_finite(z, "residual argument"))
    if abs(z) <= SERIES_RADIUS:
        zl = np.clongdouble(z)
        pts = np.array([zl, zl * np.conj(_OMEGA_LD), zl * _OMEGA_LD])
        ai, _, _ = _series_scaled(pts)
        total = ai[0] + np.conj(_OMEGA_LD) * ai[1] + _OMEGA_LD * ai[2]
        return float(np.abs(total))
    g, gp, s, _ = airy_scaled(np.array([z, z * np.conj(_OMEGA), z * _OMEGA]))
    smax = s[np.argmax(s.real)]
    w = np.array([1.0, np.conj(_OMEGA), _OMEGA])
    total = np.sum(w * g * np.exp(s - smax))
    return float(abs(total) * np.exp(smax.real))


def _ai_neg_axis(x):
    """(Ai(-x), Ai'(-x)) for real x > 0 arrays, accurate for any magnitude.

    On the negative axis Ai is oscillatory and O(x^{-1/4}); both rotated
    arguments in the connection identity sit on the anti-Stokes rays
    arg = +-pi/3, so the asymptotic pieces have purely imaginary exponents and
    never overflow.
    """
    x = np.asarray(x, dtype=float)
    ai, aip, _ = airy_arrays(-x.astype(complex))
    return ai.real, aip.real


def airy_zeros(kmax: int) -> np.ndarray:
    """First kmax real zeros of Ai, descending from -2.338...: a_1 > a_2 > ...

    Seeds from the standard asymptotic t^{2/3} expansion, polished by Newton
    on the negative axis. Bounded at k <= 20000: beyond, the oscillation phase
    (2/3)|a_k|^{3/2} grows past ~1e5 and float64 phase error would break the
    |Ai(a_k)| <= 1e-10 contract.
    """
    if kmax < 1:
        raise ValidationError("kmax must be >= 1")
    if kmax > _ZERO_K_MAX:
        raise RangeError(f"airy zeros supported for k <= {_ZERO_K_MAX} (phase accuracy)")
    k = np.arange(1, kmax + 1, dtype=float)
    t = 3.0 * np.pi * (4.0 * k - 1.0) / 8.0
    u = t ** (-2.0)
    # T(t) expansion for the k-th zero magnitude
    mag = t ** (2.0 / 3.0) * (1.0 + u * (5.0 / 48.0 + u * (-5.0 / 36.0 + u * (77125.0 / 82944.0))))
    x = mag.copy()  # zero of x -> Ai(-x)
    for _ in range(60):
        ai, aip = _ai_neg_axis(x)
        # Newton on h(x) = Ai(-x): h' = -Ai'(-x), so x <- x + Ai(-x)/Ai'(-x)
        step = ai / aip
        np.clip(step, -0.5, 0.5, out=step)
        x = x + step
        if np.max(np.abs(step)) < 1e-14 * np.max(x):
            break
    ai, _ = _ai_neg_axis(x)
    if np.max(np.abs(ai)) > 1e-10:
        raise RangeError("airy zero refinement failed the |Ai| <= 1e-10 contract")
    return -x


def airy_zero(k: int) -> float:
    """The k-th real zero a_k < 0 of Ai (a_1 = -2.33810...)."""
    if k < 1:
        raise ValidationError("k must be >= 1")
    return float(airy_zeros(k)[-1])
