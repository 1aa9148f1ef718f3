"""Shared test helpers: array loads for netlists."""

import numpy as np

from dmnkit.array_model import ArrayGeometry
from dmnkit.circuit import ZBlock
from dmnkit.loads import dipole_array_spec, fixed_spec, zblock_model_from_spec

F_R = 3e9


def anchored_load(z, element_count=None):
    z = np.asarray(z, dtype=complex)
    n = z.shape[0] if element_count is None else element_count
    spec = dipole_array_spec(ArrayGeometry.half_wave(element_count=n), z)
    return ZBlock("ZAT", tuple(f"A{k + 1}" for k in range(n)), zblock_model_from_spec(spec), spec)


def fixed_load(z):
    z = np.asarray(z, dtype=complex)
    spec = fixed_spec(z)
    return ZBlock("ZAT", tuple(f"A{k + 1}" for k in range(z.shape[0])), zblock_model_from_spec(spec), spec)


def random_netlist(seed, lossless=False, n_ports=None):
    """Random connected RLC / line / stub network with 1-3 ports.

    A chain of series elements guarantees connectivity; extra branches
    are sprinkled between random node pairs (including ground).
    """
    from dmnkit.circuit import Capacitor, Inductor, Netlist, Resistor, ShortedStub, TransmissionLine

    rng = np.random.default_rng(seed)
    n_nodes = int(rng.integers(2, 6))
    nodes = [f"N{k}" for k in range(n_nodes)]
    net = Netlist(title=f"random-{seed}")
    count = [0]

    def element(n1, n2):
        count[0] += 1
        name = f"E{count[0]}"
        kinds = ["C", "L", "T"] + ([] if lossless else ["R"])
        kind = kinds[int(rng.integers(len(kinds)))]
        esr = 0.0 if lossless else float(rng.uniform(0, 2))
        if kind == "C":
            return Capacitor(name, n1, n2, float(rng.uniform(0.1, 3)) * 1e-12, esr)
        if kind == "L":
            return Inductor(name, n1, n2, float(rng.uniform(0.5, 10)) * 1e-9, esr)
        if kind == "R":
            return Resistor(name, n1, n2, float(rng.uniform(5, 200)))
        return TransmissionLine(name, n1, n2, float(rng.uniform(20, 120)), float(rng.uniform(10, 200)), F_R)

    # ground anchor plus a chain
    net.add(element(nodes[0], "0"))
    for a, b in zip(nodes, nodes[1:]):
        net.add(element(a, b))
    for _ in range(int(rng.integers(0, 5))):
        a, b = rng.choice(nodes + ["0"], size=2, replace=False)
        net.add(element(str(a), str(b)))
    if rng.uniform() < 0.5:
        count[0] += 1
        node = str(rng.choice(nodes))
        net.add(ShortedStub(f"E{count[0]}", node, float(rng.uniform(20, 120)), float(rng.uniform(10, 170)), F_R))
    if n_ports is None:
        n_ports = int(rng.integers(1, min(3, n_nodes) + 1))
    for k, node in enumerate(rng.choice(nodes, size=n_ports, replace=False)):
        net.add_port(f"P{k + 1}", str(node), 50.0)
    return net
