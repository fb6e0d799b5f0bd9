"""Shared numerics plumbing: counter-based RNG streams, Gauss-Legendre nodes."""

from __future__ import annotations

import functools

import numpy as np

from .errors import ValidationError


def counter_rng(seed: int, counter: int) -> np.random.Generator:
    """Philox generator at a (seed, counter) coordinate.

    Philox is a counter-based RNG: the (key, counter) pair addresses the
    stream directly, so independent (seed, counter) cells are reproducible
    regardless of how work is partitioned across workers.
    """
    bits = np.random.Philox(key=np.uint64(seed & 0xFFFFFFFFFFFFFFFF),
                            counter=[np.uint64(counter & 0xFFFFFFFFFFFFFFFF), 0, 0, 0])
    return np.random.Generator(bits)


@functools.lru_cache(maxsize=32)
def gauss_legendre(n: int):
    """Cached Gauss-Legendre nodes/weights on [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) / 2.0, w / 2.0


def require(condition: bool, message: str, collected: list | None = None):
    """Collect or raise a precondition violation.

    With `collected` given, failures are appended so a caller can report every
    violation at once (the CLI contract); otherwise raise immediately.
    """
    if condition:
        return
    if collected is None:
        raise ValidationError(message)
    collected.append(message)


def ensure_finite(z, what: str):
    arr = np.asarray(z)
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{what} must be finite (no NaN/inf)")
    return z


def wrap_angle(theta):
    """Normalize an angle to the representative interval (-pi, pi]."""
    t = np.remainder(np.asarray(theta, dtype=float) + np.pi, 2.0 * np.pi) - np.pi
    t = np.where(t == -np.pi, np.pi, t)
    return t if t.ndim else float(t)
