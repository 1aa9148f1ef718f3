"""Lumped-element decoupling and matching network (2-element array).

The ideal 4-port is described in impedance form ``Z_MT = [[0, X1], [X1, X2]]``
(T ports first, then antenna ports) and in admittance form
``Y_MT = [[B1, B2], [B2, 0]]``. Its nodal admittance matrix is realized as
ten branches between the nodes T1, T2, A1, A2 and ground.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circuit.netlist import Capacitor, Inductor, Netlist, ZBlock
from .linalg import inverse_sqrt_spd, principal_sqrt_spd

PORT_NODES = ("T1", "T2", "A1", "A2")

# branch index -> (node, other node or None for a shunt branch to ground)
BRANCH_TOPOLOGY = {
    1: ("T1", None),
    2: ("T2", None),
    3: ("A1", None),
    4: ("A2", None),
    5: ("T1", "T2"),
    6: ("T1", "A1"),
    7: ("T1", "A2"),
    8: ("T2", "A1"),
    9: ("T2", "A2"),
    10: ("A1", "A2"),
}
_PAIRS = {5: (0, 1), 6: (0, 2), 7: (0, 3), 8: (1, 2), 9: (1, 3), 10: (2, 3)}

ZERO_BRANCH_SIEMENS = 1e-12


def _block(tl, tr, bl, br) -> np.ndarray:
    return np.block([[tl, tr], [bl, br]])


@dataclass(frozen=True)
class DmnAbstract:
    x1: np.ndarray
    x2: np.ndarray
    b1: np.ndarray
    b2: np.ndarray
    source_resistance: float = 50.0

    def zmt(self) -> np.ndarray:
        return _block(np.zeros((2, 2)), self.x1, self.x1, self.x2)

    def ymt(self) -> np.ndarray:
        return _block(self.b1, self.b2, self.b2, np.zeros((2, 2)))


def _check_array_matrix(z_at) -> np.ndarray:
    z = np.asarray(z_at, dtype=complex)
    if z.shape != (2, 2):
        raise ValueError(f"expected a 2x2 array impedance matrix, got {z.shape}")
    if abs(z[0, 1] - z[1, 0]) > 1e-12 * np.abs(z).max():
        raise ValueError("array impedance matrix must be symmetric (reciprocal)")
    return z


def synthesize_zmt(z_at, r: float = 50.0) -> DmnAbstract:
    """Ideal lossless 4-port that matches and decouples the array to ``r``.

    ``X1 = -j sqrt(r) Re{Z}^(1/2)`` and ``X2 = -j Im{Z}``; its inverse gives
    ``B1 = -j/r Re{Z}^(-1/2) Im{Z} Re{Z}^(-1/2)`` and ``B2 = j/sqrt(r) Re{Z}^(-1/2)``.
    """
    z = _check_array_matrix(z_at)
    re, im = z.real, z.imag
    w = np.linalg.eigvalsh(re)
    if w[0] <= 1e-9 * max(abs(w[-1]), 1.0):
        raise ValueError(
            f"Re{{Z_AT}} is not positive definite (eigenvalue {w[0]:.6g} ohm): "
            "the array is over-coupled and cannot be matched by a lossless network"
        )
    root = principal_sqrt_spd(re)
    inv_root = inverse_sqrt_spd(re)
    x1 = -1j * np.sqrt(r) * root
    x2 = -1j * im
    b1 = -1j / r * inv_root @ im @ inv_root
    b2 = 1j / np.sqrt(r) * inv_root
    dmn = DmnAbstract(x1, x2, (b1 + b1.T) / 2, b2, r)
    err = np.abs(dmn.ymt() @ dmn.zmt() - np.eye(4)).max()
    if err > 1e-10:
        raise ArithmeticError(f"Y_MT is not the inverse of Z_MT (error {err:.3g})")
    return dmn


@dataclass(frozen=True)
class BranchSet:
    """Branch admittances Y1..Y10 (``y[0]`` is Y1)."""

    y: tuple

    def __getitem__(self, index: int) -> complex:
        return self.y[index - 1]

    def to_ymt(self) -> np.ndarray:
        """Nodal admittance matrix of the branch network (inverse of extraction)."""
        m = np.zeros((4, 4), dtype=complex)
        for k in range(1, 5):
            m[k - 1, k - 1] += self[k]
        for k, (i, j) in _PAIRS.items():
            m[i, i] += self[k]
            m[j, j] += self[k]
            m[i, j] -= self[k]
            m[j, i] -= self[k]
        return m


def extract_branches(dmn: DmnAbstract | np.ndarray) -> BranchSet:
    """Shunt branch = row sum of Y_MT; cross branch = minus the off-diagonal entry."""
    y = dmn.ymt() if isinstance(dmn, DmnAbstract) else np.asarray(dmn, dtype=complex)
    shunt = [complex(y[i].sum()) for i in range(4)]
    cross = [complex(-y[i, j]) for i, j in _PAIRS.values()]
    return BranchSet(tuple(shunt + cross))


@dataclass(frozen=True)
class LumpedComponent:
    kind: str  # "capacitor" | "inductor"
    value: float
    q_factor: float | None = None
    q_frequency: float | None = None

    def __post_init__(self):
        if self.kind not in ("capacitor", "inductor"):
            raise ValueError(f"unknown component kind {self.kind!r}")
        if not self.value > 0:
            raise ValueError("component value must be positive")
        if self.q_factor is not None and not self.q_factor > 0:
            raise ValueError("Q factor must be positive")

    @property
    def unit(self) -> str:
        return "F" if self.kind == "capacitor" else "H"


def realize_lc(y: complex, f_r: float, q_factor: float | None = None, q_frequency: float | None = None):
    """Capacitor for a positive susceptance, inductor for a negative one.

    Returns ``None`` for a branch below the zero threshold (open circuit).
    """
    y = complex(y)
    if abs(y) < ZERO_BRANCH_SIEMENS:
        return None
    if abs(y.real) > 1e-12 * abs(y):
        raise ValueError(f"branch admittance {y} has a real part; it is not a pure L or C")
    omega = 2 * np.pi * f_r
    if y.imag > 0:
        return LumpedComponent("capacitor", y.imag / omega, q_factor, q_frequency)
    return LumpedComponent("inductor", 1 / (abs(y.imag) * omega), q_factor, q_frequency)


def apply_q_loss(component: LumpedComponent) -> float:
    """Equivalent series resistance from the Q quoted at ``q_frequency``.

    The resistance is held constant over the sweep.
    """
    if component.q_factor is None or component.q_frequency is None:
        raise ValueError("component has no Q specification")
    if np.isinf(component.q_factor):
        return 0.0
    w_q = 2 * np.pi * component.q_frequency
    if component.kind == "inductor":
        return w_q * component.value / component.q_factor
    return 1 / (w_q * component.value * component.q_factor)


@dataclass(frozen=True)
class DmnLumpedDesign:
    z_at: np.ndarray
    frequency: float
    abstract: DmnAbstract
    branches: BranchSet
    components: dict = field(default_factory=dict)  # branch index -> LumpedComponent
    omitted: tuple = ()

    @staticmethod
    def component_name(index: int, component: LumpedComponent) -> str:
        return f"{'C' if component.kind == 'capacitor' else 'L'}{index}"


def design_dmn_le(z_at, f_r: float, r: float = 50.0, q_table: dict | None = None) -> DmnLumpedDesign:
    """Synthesize, extract branches and realize each as L or C at ``f_r``.

    ``q_table`` maps branch index to ``(Q, f_Q)``.
    """
    z = _check_array_matrix(z_at)
    dmn = synthesize_zmt(z, r)
    branches = extract_branches(dmn)
    components, omitted = {}, []
    for k in range(1, 11):
        q, fq = (q_table or {}).get(k, (None, None))
        comp = realize_lc(branches[k], f_r, q, fq)
        if comp is None:
            omitted.append(k)
        else:
            components[k] = comp
    return DmnLumpedDesign(z, f_r, dmn, branches, components, tuple(omitted))


def lumped_netlist(design: DmnLumpedDesign, load: ZBlock, lossy: bool = False, r: float | None = None) -> Netlist:
    """Branch network with ports at T1/T2 and the array block on A1/A2."""
    r = design.abstract.source_resistance if r is None else r
    net = Netlist(title="dmn-le")
    for k, comp in design.components.items():
        n1, n2 = BRANCH_TOPOLOGY[k]
        n2 = n2 or "0"
        esr = apply_q_loss(comp) if lossy and comp.q_factor is not None else 0.0
        name = DmnLumpedDesign.component_name(k, comp)
        if comp.kind == "capacitor":
            net.add(Capacitor(name, n1, n2, comp.value, esr))
        else:
            net.add(Inductor(name, n1, n2, comp.value, esr))
    net.add(load)
    net.add_port("P1", "T1", r)
    net.add_port("P2", "T2", r)
    return net
