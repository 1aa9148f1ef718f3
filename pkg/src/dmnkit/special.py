"""Sine and cosine integrals used by the induced-EMF impedance formulas."""

from __future__ import annotations

import numpy as np
from scipy.special import sici

EULER_GAMMA = 0.5772156649015329


def sine_cosine_integrals(x):
    """Return ``(Si(x), Ci(x))``.

    ``Si(x) = int_0^x sin(t)/t dt`` and ``Ci(x) = -int_x^inf cos(t)/t dt``.
    Works on scalars and arrays. Ci is only defined for ``x > 0``; a
    non-positive argument raises ``ValueError``.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        bad = arr[arr <= 0].flat[0]
        raise ValueError(f"Ci(x) is undefined for x <= 0 (got x={bad!r})")
    si, ci = sici(arr)
    if np.ndim(x) == 0:
        return float(si), float(ci)
    return si, ci


def sine_integral(x):
    """Si(x) for any real x (odd function, Si(0) = 0)."""
    si, _ = sici(np.asarray(x, dtype=float))
    return float(si) if np.ndim(x) == 0 else si


def exp_integral_minus_j(x):
    """``Ci(x) - j Si(x)``, i.e. ``int e^{-jt}/t dt`` up to a constant."""
    si, ci = sine_cosine_integrals(x)
    return ci - 1j * si
