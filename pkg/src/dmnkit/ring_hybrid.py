"""Ring-hybrid (rat-race) decoupling network with port matching sections.

Ring ordering around the circumference: T1-A2 90 deg, T1-A1 90 deg,
A1-T2 90 deg, T2-A2 270 deg. T1 then sees the even array mode (a + b) and
T2 the odd mode (a - b), which are isolated from each other at f_r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .circuit.netlist import Netlist, ShortedStub, TransmissionLine, ZBlock
from .microstrip import RO3006, MicrostripSpec, Substrate, microstrip_dimensions

RING_SEGMENTS = (("R1", "A2", 90.0), ("R1", "A1", 90.0), ("A1", "R2", 90.0), ("R2", "A2", 270.0))


class InfeasibleMatch(ValueError):
    """A matching section cannot be realized with the requested topology."""


def design_ring(a: complex, b: complex, r: float = 50.0) -> tuple[float, complex, complex]:
    """Ring impedance and the impedances seen at the T1 and T2 ring ports."""
    s, d = complex(a) + complex(b), complex(a) - complex(b)
    if abs(s) < 1e-12 or abs(d) < 1e-12:
        raise ValueError("a = +/-b: the array modes are degenerate and cannot be separated by a ring hybrid")
    z0 = (4 * abs(s) * abs(d) * r * r) ** 0.25
    return z0, (z0 * z0 / 2) / s, (z0 * z0 / 2) / d


@dataclass(frozen=True)
class SingleLineMatch:
    z0: complex  # purely imaginary when infeasible
    theta_deg: float
    theta_raw_deg: float
    feasible: bool


def match_single_line(z_port: complex, r: float = 50.0) -> SingleLineMatch:
    """One line section turning ``z_port`` into ``r``.

    The raw angle from the tangent formula is folded into (0, 180] deg.
    A negative radicand yields an imaginary line impedance (infeasible).
    """
    z = complex(z_port)
    if abs(z.real - r) < 1e-12 * r:
        if abs(z.imag) < 1e-12 * r:
            return SingleLineMatch(complex(r), 0.0, 0.0, True)
        raise InfeasibleMatch("Re{z} = r with nonzero reactance: single-line formula has a pole")
    radicand = r * z.real - r * z.imag**2 / (r - z.real)
    if radicand < 0:
        return SingleLineMatch(1j * math.sqrt(-radicand), float("nan"), float("nan"), False)
    z0 = math.sqrt(radicand)
    num, den = (r - z.real) * z0, r * z.imag
    raw = 90.0 if den == 0 else math.degrees(math.atan(num / den))
    if den == 0 and num < 0:
        raw = -90.0
    theta = raw + 180.0 if raw <= 0 else raw
    return SingleLineMatch(complex(z0), theta, raw, True)


def _line_input(z_load: complex, z0: float, theta_rad: float) -> complex:
    t = math.tan(theta_rad)
    return z0 * (z_load + 1j * z0 * t) / (z0 + 1j * z_load * t)


@dataclass(frozen=True)
class QuarterWaveMatch:
    """A line of impedance ``r`` (theta21) makes the port real, then a 90 deg transformer."""

    z21: float
    theta21_deg: float
    z22: float
    theta22_deg: float = 90.0
    r_x: float = 0.0


def match_t2_quarter_wave(z2: complex, r: float = 50.0) -> QuarterWaveMatch:
    z2 = complex(z2)
    x = z2.imag
    if abs(x) < 1e-12 * max(abs(z2), 1.0):
        return QuarterWaveMatch(r, 0.0, math.sqrt(r * z2.real), 90.0, z2.real)
    # Im{Z_in(tan th)} = 0  <=>  r x t^2 - (r^2 - |z2|^2) t - r x = 0
    p = r * r - abs(z2) ** 2
    disc = math.sqrt(p * p + 4 * r * r * x * x)
    roots = [(p + disc) / (2 * r * x), (p - disc) / (2 * r * x)]
    thetas = sorted(math.degrees(math.atan(t)) % 180.0 for t in roots)
    assert thetas[0] > 0, "a passive load must have a real crossing in (0, 180) deg"
    theta = thetas[0]
    r_x = _line_input(z2, r, math.radians(theta)).real
    return QuarterWaveMatch(r, theta, math.sqrt(r * r_x), 90.0, r_x)


@dataclass(frozen=True)
class StubMatch:
    """Shunt short-circuited stub cancels the port susceptance, then a 90 deg transformer."""

    z_s1: float
    theta_s1_deg: float
    z_s2: float
    theta_s2_deg: float = 90.0
    conductance: float = 0.0


def match_t2_stub(z2: complex, r: float = 50.0) -> StubMatch:
    y = 1 / complex(z2)
    if abs(y.imag) < 1e-12 * abs(y):
        raise InfeasibleMatch("port impedance is real: stub is degenerate, use the quarter-wave path")
    # stub input impedance j z_s1 tan(theta); 45 deg for a capacitive port, 135 deg for inductive
    if y.imag > 0:
        z_s1, theta = 1 / y.imag, 45.0
    else:
        z_s1, theta = -1 / y.imag, 135.0
    return StubMatch(z_s1, theta, math.sqrt(r / y.real), 90.0, y.real)


@dataclass(frozen=True)
class RingHybridDesign:
    a: complex
    b: complex
    r: float
    frequency: float
    z0: float
    z1: complex
    z2: complex
    t1: SingleLineMatch | QuarterWaveMatch | StubMatch
    t2: SingleLineMatch | QuarterWaveMatch | StubMatch
    t2_single: SingleLineMatch | None = None
    segments: tuple = (90.0, 90.0, 90.0, 270.0)
    lines: dict = field(default_factory=dict)  # name -> MicrostripSpec


def _match_port(z: complex, r: float, alternative: str):
    try:
        single = match_single_line(z, r)
    except InfeasibleMatch:
        single = None
    if single is not None and single.feasible:
        return single, single
    if alternative == "stub":
        try:
            return match_t2_stub(z, r), single
        except InfeasibleMatch:
            pass
    return match_t2_quarter_wave(z, r), single


def design_ring_hybrid(
    a: complex,
    b: complex,
    r: float = 50.0,
    frequency: float = 3e9,
    t2_solution: str = "quarter_wave",
    substrate: Substrate | None = RO3006,
) -> RingHybridDesign:
    """Full ring-hybrid design; ``t2_solution`` picks the fallback when a single line cannot match."""
    if t2_solution not in ("quarter_wave", "stub"):
        raise ValueError("t2_solution must be 'quarter_wave' or 'stub'")
    z0, z1, z2 = design_ring(a, b, r)
    t1, _ = _match_port(z1, r, t2_solution)
    t2, t2_single = _match_port(z2, r, t2_solution)
    lines = {}
    if substrate is not None:
        for name, (zc, th) in _line_sections(z0, t1, t2, r).items():
            lines[name] = microstrip_dimensions(zc, th, substrate, frequency)
    return RingHybridDesign(complex(a), complex(b), r, frequency, z0, z1, z2, t1, t2, t2_single, lines=lines)


def _port_sections(prefix: str, m) -> dict:
    if isinstance(m, SingleLineMatch):
        return {} if m.theta_deg == 0 else {prefix: (m.z0.real, m.theta_deg)}
    if isinstance(m, QuarterWaveMatch):
        out = {f"{prefix}_22": (m.z22, m.theta22_deg)}
        if m.theta21_deg > 0:
            out[f"{prefix}_21"] = (m.z21, m.theta21_deg)
        return out
    return {f"{prefix}_stub": (m.z_s1, m.theta_s1_deg), f"{prefix}_s2": (m.z_s2, m.theta_s2_deg)}


def _line_sections(z0, t1, t2, r) -> dict:
    out = {"ring": (z0, 90.0), "ring_270": (z0, 270.0)}
    out.update(_port_sections("t1", t1))
    out.update(_port_sections("t2", t2))
    return out


def _emit_port(net: Netlist, prefix: str, port_node: str, ring_node: str, m, f_r: float) -> None:
    if isinstance(m, SingleLineMatch):
        if m.theta_deg == 0:
            net.add(TransmissionLine(f"{prefix}_thru", port_node, ring_node, m.z0.real, 0.0, f_r))
        else:
            net.add(TransmissionLine(f"{prefix}_line", port_node, ring_node, m.z0.real, m.theta_deg, f_r))
    elif isinstance(m, QuarterWaveMatch):
        mid = f"{prefix}_mid"
        net.add(TransmissionLine(f"{prefix}_22", port_node, mid, m.z22, m.theta22_deg, f_r))
        net.add(TransmissionLine(f"{prefix}_21", mid, ring_node, m.z21, m.theta21_deg, f_r))
    else:
        net.add(ShortedStub(f"{prefix}_stub", ring_node, m.z_s1, m.theta_s1_deg, f_r))
        net.add(TransmissionLine(f"{prefix}_s2", port_node, ring_node, m.z_s2, m.theta_s2_deg, f_r))


def ring_netlist(design: RingHybridDesign, load: ZBlock, segments=RING_SEGMENTS) -> Netlist:
    """Ideal-line netlist: ring, port matching sections, ports T1/T2, array on A1/A2."""
    f_r = design.frequency
    net = Netlist(title="dmn-rh")
    for k, (n1, n2, th) in enumerate(segments):
        net.add(TransmissionLine(f"ring{k + 1}", n1, n2, design.z0, th, f_r))
    _emit_port(net, "t1", "T1", "R1", design.t1, f_r)
    _emit_port(net, "t2", "T2", "R2", design.t2, f_r)
    net.add(load)
    net.add_port("P1", "T1", design.r)
    net.add_port("P2", "T2", design.r)
    return net


def line_table(design: RingHybridDesign) -> list[dict]:
    rows = []
    for name, spec in design.lines.items():
        rows.append(
            {
                "line": name,
                "impedance_ohm": spec.target_impedance,
                "electrical_length_deg": spec.electrical_length,
                "width_mm": spec.width * 1e3,
                "length_mm": spec.physical_length * 1e3,
                "effective_eps": spec.effective_eps,
            }
        )
    return rows
