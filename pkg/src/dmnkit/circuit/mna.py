"""Modified nodal analysis at a single frequency."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .netlist import (
    VCVS,
    Capacitor,
    Inductor,
    Netlist,
    Resistor,
    ShortedStub,
    TransmissionLine,
    VoltageSource,
    ZBlock,
    emf_node,
    is_ground,
)


class CircuitError(Exception):
    """Raised when a netlist cannot be solved."""


@dataclass
class Solution:
    frequency: float
    node_voltages: dict
    branch_currents: dict
    port_voltages: np.ndarray
    port_currents: np.ndarray  # into the network


class _Layout:
    """Unknown ordering: node voltages first, then branch currents."""

    def __init__(self, netlist: Netlist):
        self.nodes = netlist.nodes()
        self.node_index = {n: i for i, n in enumerate(self.nodes)}
        self.branch_index = {}
        k = len(self.nodes)
        for p in netlist.ports:
            self.branch_index[emf_node(p.name)] = (k,)
            k += 1
        for e in netlist.elements:
            if isinstance(e, (VoltageSource, VCVS)):
                width = 1
            elif isinstance(e, (TransmissionLine, ShortedStub)):
                width = 2
            elif isinstance(e, ZBlock):
                width = len(e.terminals)
            else:
                continue
            self.branch_index[e.name] = tuple(range(k, k + width))
            k += width
        self.size = k

    def idx(self, node: str):
        return None if is_ground(node) else self.node_index[node]


def check_connectivity(netlist: Netlist) -> None:
    """Every node needs a conductive path (through any element) to ground."""
    parent = {}

    def find(n):
        n = "0" if is_ground(n) else n
        parent.setdefault(n, n)
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    def union(*ns):
        roots = [find(n) for n in ns]
        for r in roots[1:]:
            parent[r] = roots[0]

    find("0")
    for e in netlist.elements:
        if isinstance(e, VCVS):
            union(e.out_p, e.out_n)
            find(e.ctrl_p), find(e.ctrl_n)
        elif isinstance(e, (TransmissionLine, ShortedStub, ZBlock)):
            union("0", *e.nodes())
        else:
            union(*e.nodes())
    for p in netlist.ports:
        union(p.node, p.ref, emf_node(p.name))
    floating = sorted(n for n in parent if n != "0" and find(n) != find("0"))
    if floating:
        raise CircuitError(f"floating node(s) with no path to ground: {', '.join(floating)}")


def _stamp_admittance(a, i, j, y):
    if i is not None:
        a[i, i] += y
    if j is not None:
        a[j, j] += y
    if i is not None and j is not None:
        a[i, j] -= y
        a[j, i] -= y


def _stamp_branch(a, lay, k, n_p, n_n):
    """Current unknown k leaves n_p into the element and returns at n_n."""
    i, j = lay.idx(n_p), lay.idx(n_n)
    if i is not None:
        a[i, k] += 1
        a[k, i] += 1
    if j is not None:
        a[j, k] -= 1
        a[k, j] -= 1


def assemble(netlist: Netlist, frequency: float, lay: _Layout | None = None):
    """Return (matrix, layout). Right-hand sides are built separately."""
    if frequency <= 0:
        raise ValueError("frequency must be positive")
    lay = lay or _Layout(netlist)
    a = np.zeros((lay.size, lay.size), dtype=complex)
    for p in netlist.ports:
        (k,) = lay.branch_index[emf_node(p.name)]
        _stamp_branch(a, lay, k, emf_node(p.name), p.ref)
        _stamp_admittance(a, lay.idx(emf_node(p.name)), lay.idx(p.node), 1 / p.r)
    for e in netlist.elements:
        if isinstance(e, Resistor):
            _stamp_admittance(a, lay.idx(e.n1), lay.idx(e.n2), 1 / e.r)
        elif isinstance(e, (Capacitor, Inductor)):
            _stamp_admittance(a, lay.idx(e.n1), lay.idx(e.n2), 1 / e.impedance(frequency))
        elif isinstance(e, VoltageSource):
            (k,) = lay.branch_index[e.name]
            _stamp_branch(a, lay, k, e.n_p, e.n_n)
            a[k, k] -= e.impedance
        elif isinstance(e, VCVS):
            (k,) = lay.branch_index[e.name]
            _stamp_branch(a, lay, k, e.out_p, e.out_n)
            for node, sign in ((e.ctrl_p, 1), (e.ctrl_n, -1)):
                c = lay.idx(node)
                if c is not None:
                    a[k, c] -= sign * e.gain
        elif isinstance(e, (TransmissionLine, ShortedStub)):
            n1, n2 = (e.n1, e.n2) if isinstance(e, TransmissionLine) else (e.node, "0")
            k1, k2 = lay.branch_index[e.name]
            th = e.theta(frequency)
            cos, sin = np.cos(th), np.sin(th)
            i1, i2 = lay.idx(n1), lay.idx(n2)
            # KCL: I1 enters the line at n1, I2 at n2
            if i1 is not None:
                a[i1, k1] += 1
            if i2 is not None:
                a[i2, k2] += 1
            # chain relations with I2 pointing into port 2:
            #   V1 = cos V2 - j Z sin I2
            #   I1 = j sin/Z V2 - cos I2
            if i1 is not None:
                a[k1, i1] += 1
            if i2 is not None:
                a[k1, i2] -= cos
                a[k2, i2] -= 1j * sin / e.z0
            a[k1, k2] += 1j * e.z0 * sin
            a[k2, k1] += 1
            a[k2, k2] += cos
        elif isinstance(e, ZBlock):
            ks = lay.branch_index[e.name]
            z = np.asarray(e.model(frequency), dtype=complex)
            if z.shape != (len(ks), len(ks)):
                raise CircuitError(f"{e.name}: model returned shape {z.shape}, expected {(len(ks),) * 2}")
            for row, (node, k) in enumerate(zip(e.terminals, ks)):
                n = lay.idx(node)
                if n is not None:
                    a[n, k] += 1
                    a[k, n] += 1
                for col, kk in enumerate(ks):
                    a[k, kk] -= z[row, col]
        else:
            raise CircuitError(f"unsupported element {e!r}")
    return a, lay


def _rhs(netlist: Netlist, lay: _Layout, port_emfs: np.ndarray, sources_on: np.ndarray) -> np.ndarray:
    """Build right-hand sides; column c uses port_emfs[:, c] and sources_on[c]."""
    ncol = port_emfs.shape[1]
    b = np.zeros((lay.size, ncol), dtype=complex)
    for pi, p in enumerate(netlist.ports):
        (k,) = lay.branch_index[emf_node(p.name)]
        b[k] = port_emfs[pi]
    for e in netlist.elements:
        if isinstance(e, VoltageSource):
            (k,) = lay.branch_index[e.name]
            b[k] = e.amplitude * sources_on
    return b


def _solve_linear(a: np.ndarray, b: np.ndarray, frequency: float) -> np.ndarray:
    try:
        x = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise CircuitError(
            f"singular circuit matrix at f={frequency:.6g} Hz "
            "(loop of voltage-defined elements or an isolated sub-network)"
        ) from exc
    bnorm = np.linalg.norm(b)
    if not np.all(np.isfinite(x)) or np.linalg.norm(a @ x - b) > 1e-10 * max(bnorm, 1e-300) * max(1.0, np.linalg.norm(a)):
        raise CircuitError(f"ill-conditioned circuit matrix at f={frequency:.6g} Hz")
    return x


def _port_quantities(netlist, lay, x):
    v = np.zeros((len(netlist.ports), x.shape[1]), dtype=complex)
    i = np.zeros_like(v)

    def volt(node):
        n = lay.idx(node)
        return np.zeros(x.shape[1]) if n is None else x[n]

    for pi, p in enumerate(netlist.ports):
        v[pi] = volt(p.node) - volt(p.ref)
        i[pi] = (volt(emf_node(p.name)) - volt(p.node)) / p.r
    return v, i


def solve(netlist: Netlist, frequency: float, excitation: int | None = None) -> Solution:
    """Solve the circuit at one frequency.

    ``excitation=None`` keeps independent sources active and terminates every
    port in its reference resistance. ``excitation=k`` puts a 1 V EMF behind
    port k and zeroes the independent sources (controlled sources stay).
    """
    netlist.validate()
    check_connectivity(netlist)
    a, lay = assemble(netlist, frequency)
    emfs = np.zeros((len(netlist.ports), 1), dtype=complex)
    if excitation is not None:
        if not 0 <= excitation < len(netlist.ports):
            raise IndexError(f"no port with index {excitation}")
        emfs[excitation, 0] = 1.0
    on = np.array([0.0 if excitation is not None else 1.0])
    x = _solve_linear(a, _rhs(netlist, lay, emfs, on), frequency)
    v, i = _port_quantities(netlist, lay, x)
    return Solution(
        frequency=frequency,
        node_voltages={n: complex(x[k, 0]) for n, k in lay.node_index.items()},
        branch_currents={name: complex(x[ks[0], 0]) if len(ks) == 1 else x[list(ks), 0].copy() for name, ks in lay.branch_index.items()},
        port_voltages=v[:, 0],
        port_currents=i[:, 0],
    )


def port_response(netlist: Netlist, frequency: float, lay: _Layout | None = None):
    """Port voltages/currents for unit-EMF excitation of each port in turn.

    Returns ``(V, I)`` of shape (P, P); column k is excitation of port k.
    """
    a, lay = assemble(netlist, frequency, lay)
    npt = len(netlist.ports)
    x = _solve_linear(a, _rhs(netlist, lay, np.eye(npt, dtype=complex), np.zeros(npt)), frequency)
    return _port_quantities(netlist, lay, x)
