"""Microstrip line synthesis: width and physical length for a target Z and angle.

The width starts from the zero-thickness A/B synthesis formulas and is then
refined against the Hammerstad-Jensen analysis formulas (with the strip
thickness correction), which also supply the effective permittivity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.optimize import brentq

C0 = 299_792_458.0
ETA0 = 376.730313668
Z_MIN, Z_MAX = 10.0, 200.0


@dataclass(frozen=True)
class Substrate:
    eps_r: float = 6.15
    height: float = 1.52e-3
    thickness: float = 35e-6

    def __post_init__(self):
        if self.eps_r <= 1 or self.height <= 0 or self.thickness < 0:
            raise ValueError("need eps_r > 1, height > 0, thickness >= 0")


RO3006 = Substrate(6.15, 1.52e-3, 35e-6)


@dataclass(frozen=True)
class MicrostripSpec:
    target_impedance: float
    electrical_length: float  # degrees
    substrate: Substrate
    frequency: float
    width: float
    physical_length: float
    effective_eps: float


def synthesis_width(z0: float, substrate: Substrate) -> float:
    """Zero-thickness closed-form width (narrow/wide strip branches)."""
    er, h = substrate.eps_r, substrate.height
    a = z0 / 60 * math.sqrt((er + 1) / 2) + (er - 1) / (er + 1) * (0.23 + 0.11 / er)
    wd = 8 * math.exp(a) / (math.exp(2 * a) - 2)
    if wd > 2:
        b = ETA0 * math.pi / (2 * z0 * math.sqrt(er))
        wd = 2 / math.pi * (b - 1 - math.log(2 * b - 1) + (er - 1) / (2 * er) * (math.log(b - 1) + 0.39 - 0.61 / er))
    return wd * h


def _z_air(u: float) -> float:
    f = 6 + (2 * math.pi - 6) * math.exp(-((30.666 / u) ** 0.7528))
    return ETA0 / (2 * math.pi) * math.log(f / u + math.sqrt(1 + (2 / u) ** 2))


def _eps_eff_zero_t(u: float, er: float) -> float:
    a = 1 + math.log((u**4 + (u / 52) ** 2) / (u**4 + 0.432)) / 49 + math.log(1 + (u / 18.1) ** 3) / 18.7
    b = 0.564 * ((er - 0.9) / (er + 3)) ** 0.053
    return (er + 1) / 2 + (er - 1) / 2 * (1 + 10 / u) ** (-a * b)


def analyze(width: float, substrate: Substrate) -> tuple[float, float]:
    """Characteristic impedance and effective permittivity of a strip."""
    er, h, t = substrate.eps_r, substrate.height, substrate.thickness
    u = width / h
    if t > 0:
        tn = t / h
        du1 = tn / math.pi * math.log(1 + 4 * math.e / (tn / math.tanh(math.sqrt(6.517 * u)) ** 2))
        dur = 0.5 * (1 + 1 / math.cosh(math.sqrt(er - 1))) * du1
    else:
        du1 = dur = 0.0
    u1, ur = u + du1, u + dur
    e_r = _eps_eff_zero_t(ur, er)
    z = _z_air(ur) / math.sqrt(e_r)
    e_eff = e_r * (_z_air(u1) / _z_air(ur)) ** 2
    return z, e_eff


def microstrip_dimensions(
    target_impedance: float,
    electrical_length: float,
    substrate: Substrate = RO3006,
    frequency: float = 3e9,
) -> MicrostripSpec:
    if not Z_MIN <= target_impedance <= Z_MAX:
        raise ValueError(f"target impedance {target_impedance:.4g} ohm outside valid range [{Z_MIN}, {Z_MAX}] ohm")
    if electrical_length <= 0 or frequency <= 0:
        raise ValueError("electrical length and frequency must be positive")
    w0 = synthesis_width(target_impedance, substrate)
    if not w0 > 0:
        # the wide-strip branch can break down for low eps_r and very low Z
        w0 = substrate.height
    lo, hi = w0 / 4, w0 * 4

    def mismatch(w):
        return analyze(w, substrate)[0] - target_impedance

    # Z falls with width: widen the bracket until it straddles the target
    while mismatch(lo) < 0:
        lo /= 4
    while mismatch(hi) > 0:
        hi *= 4
    width = brentq(mismatch, lo, hi, xtol=1e-18, rtol=1e-14)
    _, e_eff = analyze(width, substrate)
    length = electrical_length / 360 * C0 / frequency / math.sqrt(e_eff)
    return MicrostripSpec(target_impedance, electrical_length, substrate, frequency, width, length, e_eff)
