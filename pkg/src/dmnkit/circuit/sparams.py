from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .mna import CircuitError, _Layout, check_connectivity, port_response
from .netlist import Netlist

DB_FLOOR = -300.0


def to_db(x) -> np.ndarray:
    mag = np.abs(np.asarray(x))
    with np.errstate(divide="ignore"):
        db = 20 * np.log10(mag)
    return np.maximum(db, DB_FLOOR)


@dataclass(frozen=True)
class SParameterSweep:
    frequencies: np.ndarray
    s: np.ndarray  # (F, N, N)
    reference: np.ndarray  # (N,)

    def __post_init__(self):
        f = np.asarray(self.frequencies, dtype=float)
        s = np.asarray(self.s, dtype=complex)
        ref = np.broadcast_to(np.asarray(self.reference, dtype=float), (s.shape[1],)).copy()
        if s.ndim != 3 or s.shape[0] != f.size or s.shape[1] != s.shape[2]:
            raise ValueError(f"S array shape {s.shape} does not match {f.size} frequencies")
        if f.size > 1 and np.any(np.diff(f) <= 0):
            raise ValueError("frequency grid must be strictly increasing")
        if not np.all(np.isfinite(s)):
            raise ValueError("S-parameters contain non-finite values")
        object.__setattr__(self, "frequencies", f)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "reference", ref)

    @property
    def n_ports(self) -> int:
        return self.s.shape[1]

    def trace(self, i: int, j: int) -> np.ndarray:
        """S_ij over frequency (0-based indices)."""
        return self.s[:, i, j]

    def db(self, i: int, j: int) -> np.ndarray:
        return to_db(self.trace(i, j))

    def at(self, frequency: float) -> np.ndarray:
        """S matrix at the grid point nearest to ``frequency``."""
        return self.s[int(np.argmin(np.abs(self.frequencies - frequency)))]


def _s_at(netlist: Netlist, lay: _Layout, frequency: float) -> np.ndarray:
    try:
        v, i = port_response(netlist, frequency, lay)
    except CircuitError as exc:
        raise CircuitError(f"{exc} [f = {frequency:.9g} Hz]") from exc
    r = np.array([p.r for p in netlist.ports])
    sq = np.sqrt(r)
    # b_j = (V_j - R_j I_j) / (2 sqrt R_j), a_k = 1 / (2 sqrt R_k)
    return (v - r[:, None] * i) / sq[:, None] * sq[None, :]


def s_parameters(netlist: Netlist, frequencies, workers: int | None = None) -> SParameterSweep:
    """S-parameter sweep by port-wise excitation through each reference resistance.

    Independent sources are zeroed; controlled sources stay active. Frequency
    points are independent, so ``workers`` > 1 evaluates them on a thread pool.
    """
    if not netlist.ports:
        raise ValueError("netlist has no ports")
    netlist.validate()
    check_connectivity(netlist)
    freqs = np.atleast_1d(np.asarray(frequencies, dtype=float))
    lay = _Layout(netlist)
    if workers and workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            s = list(pool.map(lambda f: _s_at(netlist, lay, f), freqs))
    else:
        s = [_s_at(netlist, lay, f) for f in freqs]
    return SParameterSweep(freqs, np.array(s), np.array([p.r for p in netlist.ports]))


@dataclass(frozen=True)
class Bandwidth:
    threshold_db: float
    lower: float | None
    upper: float | None
    clipped_low: bool = False
    clipped_high: bool = False

    @property
    def width(self) -> float:
        if self.lower is None:
            return 0.0
        return self.upper - self.lower

    @property
    def empty(self) -> bool:
        return self.lower is None

    def to_dict(self) -> dict:
        return {
            "threshold_db": self.threshold_db,
            "interval_hz": None if self.empty else [self.lower, self.upper],
            "width_hz": self.width,
            "clipped": {"low": self.clipped_low, "high": self.clipped_high},
        }


def band_around(frequencies, trace_db, threshold_db: float, center: float) -> Bandwidth:
    """Maximal interval containing ``center`` where ``trace_db <= threshold_db``.

    Band edges are linearly interpolated in dB between grid points.
    """
    f = np.asarray(frequencies, dtype=float)
    y = np.asarray(trace_db, dtype=float)
    if not f[0] <= center <= f[-1]:
        raise ValueError("sweep does not cover the center frequency")
    c = int(np.argmin(np.abs(f - center)))
    below = y <= threshold_db
    if not below[c]:
        return Bandwidth(threshold_db, None, None)
    lo = c
    while lo > 0 and below[lo - 1]:
        lo -= 1
    hi = c
    while hi < f.size - 1 and below[hi + 1]:
        hi += 1

    def cross(i_out, i_in):
        y0, y1 = y[i_out], y[i_in]
        t = (threshold_db - y0) / (y1 - y0)
        return f[i_out] + t * (f[i_in] - f[i_out])

    lower = f[0] if lo == 0 else cross(lo - 1, lo)
    upper = f[-1] if hi == f.size - 1 else cross(hi + 1, hi)
    return Bandwidth(threshold_db, float(lower), float(upper), lo == 0, hi == f.size - 1)


def bandwidth(sweep: SParameterSweep, i, j=None, threshold_db: float = -10.0, center: float | None = None) -> Bandwidth:
    """Bandwidth of |S_ij| below ``threshold_db`` around ``center``.

    ``i`` may also be a list of (i, j) pairs, in which case the worst
    (largest) magnitude among them is used: a joint bandwidth.
    """
    pairs = [(i, j)] if j is not None else list(i)
    trace = np.max([sweep.db(a, b) for a, b in pairs], axis=0)
    if center is None:
        center = 0.5 * (sweep.frequencies[0] + sweep.frequencies[-1])
    return band_around(sweep.frequencies, trace, threshold_db, center)
