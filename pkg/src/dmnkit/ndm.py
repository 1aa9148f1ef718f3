"""Networkless decoupling and matching for a 3-element array.

Three generators with internal impedances Z1..Z3 drive the array directly;
the center generator is slaved to the outer two, ``u03 = g1 u01 + g2 u02``.
With ``Z1 = Z2 = a* - b*`` and ``Z3 = a* - (c^2/b)*`` the matrix ``Z - Z0*``
has rank one with row ``[b, b, c]``. Every drive whose currents satisfy
``b (i1 + i2) + c i3 = 0`` is then conjugate matched at all three ports,
which fixes ``g1 = g2 = -b Re{Z3} / (c Re{Z1})``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit.netlist import VCVS, Capacitor, Inductor, Netlist, Resistor, TransmissionLine, ZBlock
from .dmn_core import LumpedComponent


def check_structure(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if z.shape != (3, 3):
        raise ValueError(f"expected a 3x3 impedance matrix, got {z.shape}")
    a, b, c = z[0, 0], z[0, 1], z[0, 2]
    expected = np.array([[a, b, c], [b, a, c], [c, c, a]])
    if np.abs(z - expected).max() > 1e-9 * np.abs(z).max():
        raise ValueError("matrix lacks the [[a,b,c],[b,a,c],[c,c,a]] structure")
    return z


@dataclass(frozen=True)
class NdmSolution:
    z: np.ndarray
    z_sources: tuple  # (Z1, Z2, Z3)
    g1: complex
    g2: complex
    x: tuple  # conjugate-match voltage ratios u_i / u0_i

    @property
    def z0(self) -> np.ndarray:
        return np.diag(self.z_sources)

    def drives(self, u01: complex, u02: complex) -> np.ndarray:
        return np.array([u01, u02, self.g1 * u01 + self.g2 * u02], dtype=complex)


def match_ratio(z_source: complex) -> complex:
    """u/u0 for a generator of internal impedance Z loaded by Z*."""
    return 1 / (1 + np.exp(2j * np.angle(z_source)))


def gain_direct_expression(a, b, c, z1, z3) -> complex:
    """``(-c^2 + (a + Z3) b) / ((b - a + Z1) c)``, kept for comparison reports only.

    It does not satisfy the matching condition; ``ndm_solve`` uses the
    null-space gain instead.
    """
    den = (b - a + z1) * c
    if den == 0:
        return complex("nan")
    return complex((-c * c + (a + z3) * b) / den)


def ndm_solve(z) -> NdmSolution:
    z = check_structure(z)
    a, b, c = z[0, 0], z[0, 1], z[0, 2]
    if b == 0:
        raise ValueError("b = 0: the outer elements are uncoupled and Z3 is undefined")
    if c == 0:
        raise ValueError("c = 0: the center element cannot influence the outer ports")
    z1 = np.conj(a - b)
    z3 = np.conj(a - c * c / b)
    for name, zs in (("Z1", z1), ("Z3", z3)):
        if zs.real <= 0:
            raise ValueError(f"{name} = {zs:.6g} has no positive resistance; conjugate matching impossible")
    g = -b * z3.real / (c * z1.real)
    zs = (complex(z1), complex(z1), complex(z3))
    return NdmSolution(z, zs, complex(g), complex(g), tuple(match_ratio(v) for v in zs))


@dataclass(frozen=True)
class MatchingReport:
    residual: float
    identity_residual: float
    voltages: np.ndarray
    currents: np.ndarray
    delivered_power: float
    available_power: float


def verify_matching(z, sol: NdmSolution, u01: complex, u02: complex) -> MatchingReport:
    """Drive the array through the solved sources and measure the match.

    ``residual`` is ``max_i |u_i - u0_i x_i| / |u0_i|`` (0 when all drives vanish);
    ``identity_residual`` checks ``(1 - Z0 (Z0 + Z)^-1) M = diag(x) M`` columnwise.
    """
    z = np.asarray(z, dtype=complex)
    z0 = sol.z0
    m = z0 + z
    if abs(np.linalg.det(m)) < 1e-300 or np.linalg.cond(m) > 1e14:
        raise np.linalg.LinAlgError("Z0 + Z is singular")
    u0 = sol.drives(u01, u02)
    i = np.linalg.solve(m, u0)
    u = z @ i
    x = np.array(sol.x)
    scale = np.abs(u0)
    nz = scale > 0
    residual = float(np.max(np.abs(u - x * u0)[nz] / scale[nz])) if nz.any() else 0.0

    mix = np.array([[1, 0], [0, 1], [sol.g1, sol.g2]], dtype=complex)
    lhs = (np.eye(3) - z0 @ np.linalg.inv(m)) @ mix
    rhs = np.array([[x[0], 0], [0, x[1]], [sol.g1 * x[2], sol.g2 * x[2]]])
    identity = float(np.abs(lhs - rhs).max())

    delivered = 0.5 * float(np.real(np.vdot(i, u)))
    available = float(np.sum(np.abs(u0) ** 2 / (8 * np.real(sol.z_sources))))
    return MatchingReport(residual, identity, u, i, delivered, available)


@dataclass(frozen=True)
class LSection:
    """Lossless two-element match; seen from the load side, ``r`` looks like ``z_target``.

    ``shunt_at_source`` puts the shunt susceptance across the ``r`` side and the
    series reactance towards the load; otherwise the order is reversed.
    ``voltage_transfer`` is the open-circuit load-side voltage per volt of
    source EMF.
    """

    z_target: complex
    r: float
    frequency: float
    shunt_at_source: bool
    series_reactance: float
    shunt_susceptance: float
    voltage_transfer: complex

    def elements(self) -> dict:
        out = {}
        w = 2 * np.pi * self.frequency
        x, bsh = self.series_reactance, self.shunt_susceptance
        if x != 0:
            out["series"] = LumpedComponent("inductor", x / w) if x > 0 else LumpedComponent("capacitor", 1 / (w * -x))
        if bsh != 0:
            out["shunt"] = LumpedComponent("capacitor", bsh / w) if bsh > 0 else LumpedComponent("inductor", 1 / (w * -bsh))
        return out

    def input_impedance(self) -> complex:
        """Impedance looking back from the load side at f_r (source side terminated in r)."""
        x, bsh, r = self.series_reactance, self.shunt_susceptance, self.r
        if self.shunt_at_source:
            return 1 / (1 / r + 1j * bsh) + 1j * x
        return 1 / (1 / (r + 1j * x) + 1j * bsh)


def l_section_match(z_target: complex, r: float = 50.0, f_r: float = 3e9) -> LSection:
    zt = complex(z_target)
    if zt.real <= 0:
        raise ValueError("target impedance needs a positive real part")
    rt, xt = zt.real, zt.imag
    if abs(rt - r) <= 1e-12 * r:
        # degenerate: a single series reactance (or nothing at all)
        return LSection(zt, r, f_r, True, xt if abs(xt) > 1e-12 * r else 0.0, 0.0, 1.0 + 0j)
    if rt < r:
        q = np.sqrt(r / rt - 1)
        candidates = [(s * q / r, xt + s * q * rt) for s in (1, -1)]
        bsh, x = min(candidates, key=lambda bx: abs(bx[1]))
        return LSection(zt, r, f_r, True, float(x), float(bsh), complex(1 / (1 + 1j * bsh * r)))
    yt = 1 / zt
    gt, bt = yt.real, yt.imag
    q = np.sqrt(r / gt - r * r)
    candidates = [(s * q, bt + s * q / (r * r + q * q)) for s in (1, -1)]
    x, bsh = min(candidates, key=lambda xb: abs(xb[1]))
    return LSection(zt, r, f_r, False, float(x), float(bsh), complex(1 / (1 - bsh * x + 1j * bsh * r)))


def compensate_drives(u0, transfers) -> np.ndarray:
    """Source EMFs that reproduce ``u0`` behind the matching two-ports."""
    u0 = np.asarray(u0, dtype=complex)
    t = np.asarray(transfers, dtype=complex)
    if np.any(np.abs(t) == 0):
        raise ZeroDivisionError("matching two-port has zero voltage transfer")
    return u0 / t


@dataclass(frozen=True)
class NdmDesign:
    solution: NdmSolution
    sections: tuple  # three LSection
    u0: np.ndarray
    u0_prime: np.ndarray
    r: float
    frequency: float

    @property
    def transfers(self) -> np.ndarray:
        return np.array([s.voltage_transfer for s in self.sections])


def design_ndm(z, r: float = 50.0, f_r: float = 3e9, u01: complex = 1.0, u02: complex = 0.0) -> NdmDesign:
    sol = ndm_solve(z)
    sections = tuple(l_section_match(zs, r, f_r) for zs in sol.z_sources)
    u0 = sol.drives(u01, u02)
    u0p = compensate_drives(u0, [s.voltage_transfer for s in sections])
    return NdmDesign(sol, sections, u0, u0p, r, f_r)


def _emit_section(net: Netlist, prefix: str, src: str, dst: str, sec: LSection) -> None:
    parts = sec.elements()
    series, shunt = parts.get("series"), parts.get("shunt")
    if series is None:
        # no series element: zero-length line ties the two sides together
        net.add(TransmissionLine(f"{prefix}_thru", src, dst, sec.r, 0.0, sec.frequency))
    elif series.kind == "inductor":
        net.add(Inductor(f"{prefix}_Ls", src, dst, series.value))
    else:
        net.add(Capacitor(f"{prefix}_Cs", src, dst, series.value))
    if shunt is not None:
        node = src if sec.shunt_at_source else dst
        if shunt.kind == "inductor":
            net.add(Inductor(f"{prefix}_Lp", node, "0", shunt.value))
        else:
            net.add(Capacitor(f"{prefix}_Cp", node, "0", shunt.value))


def ndm_netlist(design: NdmDesign, load: ZBlock) -> Netlist:
    """Two source ports (outer elements) and a slaved center generator.

    The center EMF is ``g1 T1/T3 e1 + g2 T2/T3 e2`` where ``e_k`` are the
    port EMFs and ``T_k`` the matching-section transfers, realized as two
    series VCVS sensing the port EMF nodes.
    """
    sol, secs, r = design.solution, design.sections, design.r
    t = design.transfers
    net = Netlist(title="ndm")
    _emit_section(net, "m1", "S1", "A1", secs[0])
    _emit_section(net, "m2", "S2", "A2", secs[1])
    _emit_section(net, "m3", "S3", "A3", secs[2])
    net.add(VCVS("E3a", "N3a", "0", "P1.emf", "0", complex(sol.g1 * t[0] / t[2])))
    net.add(VCVS("E3b", "N3b", "N3a", "P2.emf", "0", complex(sol.g2 * t[1] / t[2])))
    net.add(Resistor("R3", "N3b", "S3", r))
    net.add(load)
    net.add_port("P1", "S1", r)
    net.add_port("P2", "S2", r)
    return net
