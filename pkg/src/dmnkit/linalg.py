from __future__ import annotations

import numpy as np


def principal_sqrt_spd(m) -> np.ndarray:
    """Principal square root of a real symmetric positive-definite matrix.

    Raises ``ValueError`` for non-symmetric input or a non-positive
    eigenvalue (the message carries the offending eigenvalue).
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    scale = max(np.abs(m).max(), np.finfo(float).tiny)
    if np.abs(m - m.T).max() > 1e-12 * scale:
        raise ValueError("matrix is not symmetric")
    w, v = np.linalg.eigh((m + m.T) / 2)
    if w[0] <= 0:
        raise ValueError(f"matrix is not positive definite (eigenvalue {w[0]:.6g})")
    s = (v * np.sqrt(w)) @ v.T
    return (s + s.T) / 2


def inverse_sqrt_spd(m) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    w, v = np.linalg.eigh((m + m.T) / 2)
    if w[0] <= 0:
        raise ValueError(f"matrix is not positive definite (eigenvalue {w[0]:.6g})")
    s = (v / np.sqrt(w)) @ v.T
    return (s + s.T) / 2
