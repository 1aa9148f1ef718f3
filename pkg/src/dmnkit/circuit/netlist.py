"""Element-level circuit description.

Nodes are plain strings; ``"0"`` and ``"gnd"`` denote ground. Every port
adds an internal node ``"<port name>.emf"`` (the port's Thevenin source,
behind the reference resistance) which controlled sources may sense.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Callable, ClassVar

import numpy as np

GROUND_NAMES = frozenset({"0", "gnd", "GND"})


def is_ground(node: str) -> bool:
    return node in GROUND_NAMES


def emf_node(port_name: str) -> str:
    return f"{port_name}.emf"


@dataclass(frozen=True)
class Resistor:
    type: ClassVar[str] = "resistor"
    name: str
    n1: str
    n2: str
    r: float

    def nodes(self):
        return (self.n1, self.n2)

    def check(self):
        if self.r <= 0:
            raise ValueError(f"{self.name}: resistance must be positive")


@dataclass(frozen=True)
class Capacitor:
    type: ClassVar[str] = "capacitor"
    name: str
    n1: str
    n2: str
    c: float
    esr: float = 0.0

    def nodes(self):
        return (self.n1, self.n2)

    def check(self):
        if self.c <= 0 or self.esr < 0:
            raise ValueError(f"{self.name}: need c > 0 and esr >= 0")

    def impedance(self, frequency: float) -> complex:
        return self.esr + 1 / (2j * np.pi * frequency * self.c)


@dataclass(frozen=True)
class Inductor:
    type: ClassVar[str] = "inductor"
    name: str
    n1: str
    n2: str
    l: float  # noqa: E741
    esr: float = 0.0

    def nodes(self):
        return (self.n1, self.n2)

    def check(self):
        if self.l <= 0 or self.esr < 0:
            raise ValueError(f"{self.name}: need l > 0 and esr >= 0")

    def impedance(self, frequency: float) -> complex:
        return self.esr + 2j * np.pi * frequency * self.l


@dataclass(frozen=True)
class TransmissionLine:
    """Ideal TEM line between ``n1`` and ``n2`` (both ground-referenced).

    ``theta_deg`` is the electrical length at ``f_ref``; it scales with f.
    """

    type: ClassVar[str] = "tline"
    name: str
    n1: str
    n2: str
    z0: float
    theta_deg: float
    f_ref: float

    def nodes(self):
        return (self.n1, self.n2)

    def check(self):
        if self.z0 <= 0 or self.theta_deg < 0 or self.f_ref <= 0:
            raise ValueError(f"{self.name}: need z0 > 0, theta >= 0, f_ref > 0")

    def theta(self, frequency: float) -> float:
        return np.radians(self.theta_deg) * frequency / self.f_ref


@dataclass(frozen=True)
class ShortedStub:
    """Short-circuited ideal stub hanging from ``node``."""

    type: ClassVar[str] = "stub"
    name: str
    node: str
    z0: float
    theta_deg: float
    f_ref: float

    def nodes(self):
        return (self.node,)

    def check(self):
        if self.z0 <= 0 or self.theta_deg <= 0 or self.f_ref <= 0:
            raise ValueError(f"{self.name}: need z0 > 0, theta > 0, f_ref > 0")

    def theta(self, frequency: float) -> float:
        return np.radians(self.theta_deg) * frequency / self.f_ref


@dataclass(frozen=True)
class VCVS:
    """V(out_p) - V(out_n) = gain * (V(ctrl_p) - V(ctrl_n))."""

    type: ClassVar[str] = "vcvs"
    name: str
    out_p: str
    out_n: str
    ctrl_p: str
    ctrl_n: str
    gain: complex

    def nodes(self):
        return (self.out_p, self.out_n, self.ctrl_p, self.ctrl_n)

    def check(self):
        pass


@dataclass(frozen=True)
class VoltageSource:
    """Independent source: V(n_p) - V(n_n) = amplitude - impedance * I_out."""

    type: ClassVar[str] = "vsource"
    name: str
    n_p: str
    n_n: str
    amplitude: complex
    impedance: complex = 0j

    def nodes(self):
        return (self.n_p, self.n_n)

    def check(self):
        pass


@dataclass(frozen=True)
class ZBlock:
    """N-port impedance block, each terminal referenced to ground.

    ``model(f)`` returns the N x N impedance matrix; ``spec`` is the
    JSON-serializable description it was built from (may be None for
    purely in-memory blocks).
    """

    type: ClassVar[str] = "zblock"
    name: str
    terminals: tuple
    model: Callable[[float], np.ndarray] = field(compare=False, repr=False)
    spec: dict | None = field(default=None, compare=False)

    def nodes(self):
        return tuple(self.terminals)

    def check(self):
        if len(set(self.terminals)) != len(self.terminals):
            raise ValueError(f"{self.name}: duplicate terminals")


@dataclass(frozen=True)
class Port:
    name: str
    node: str
    ref: str = "0"
    r: float = 50.0


ELEMENT_TYPES = {
    cls.type: cls
    for cls in (Resistor, Capacitor, Inductor, TransmissionLine, ShortedStub, VCVS, VoltageSource, ZBlock)
}


@dataclass
class Netlist:
    elements: list = field(default_factory=list)
    ports: list = field(default_factory=list)
    title: str = ""

    def add(self, *elements) -> "Netlist":
        self.elements.extend(elements)
        return self

    def add_port(self, name: str, node: str, r: float = 50.0, ref: str = "0") -> "Netlist":
        self.ports.append(Port(name, node, ref, r))
        return self

    def validate(self) -> None:
        names = [e.name for e in self.elements] + [p.name for p in self.ports]
        dup = {n for n in names if names.count(n) > 1}
        if dup:
            raise ValueError(f"duplicate element/port names: {sorted(dup)}")
        for e in self.elements:
            e.check()
        for p in self.ports:
            if p.r <= 0:
                raise ValueError(f"port {p.name}: reference impedance must be positive")
            if p.node == p.ref:
                raise ValueError(f"port {p.name}: node and reference coincide")

    def nodes(self) -> list:
        """Non-ground nodes in first-seen order (port EMF nodes included)."""
        seen = {}
        for e in self.elements:
            for n in e.nodes():
                if not is_ground(n):
                    seen.setdefault(n, None)
        for p in self.ports:
            for n in (p.node, p.ref, emf_node(p.name)):
                if not is_ground(n):
                    seen.setdefault(n, None)
        return list(seen)

    # JSON form ---------------------------------------------------------

    def to_dict(self) -> dict:
        elements = []
        for e in self.elements:
            if isinstance(e, ZBlock):
                if e.spec is None:
                    raise ValueError(f"{e.name}: in-memory z_block has no serializable spec")
                d = {"type": e.type, "name": e.name, "terminals": list(e.terminals), "model": e.spec}
            else:
                d = {"type": e.type, **{k: _encode(v) for k, v in asdict(e).items()}}
            elements.append(d)
        return {
            "title": self.title,
            "elements": elements,
            "ports": [asdict(p) for p in self.ports],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), indent=kw.pop("indent", 2), **kw)

    @classmethod
    def from_dict(cls, data: dict, zblock_factory=None) -> "Netlist":
        if zblock_factory is None:
            from ..loads import zblock_model_from_spec as zblock_factory
        elements = []
        for d in data["elements"]:
            d = dict(d)
            kind = d.pop("type")
            if kind not in ELEMENT_TYPES:
                raise ValueError(f"unknown element type {kind!r}")
            if kind == "zblock":
                spec = d["model"]
                elements.append(ZBlock(d["name"], tuple(d["terminals"]), zblock_factory(spec), spec))
            else:
                elements.append(ELEMENT_TYPES[kind](**{k: _decode(v) for k, v in d.items()}))
        ports = [Port(**p) for p in data.get("ports", [])]
        net = cls(elements, ports, data.get("title", ""))
        net.validate()
        return net

    @classmethod
    def from_json(cls, text: str, zblock_factory=None) -> "Netlist":
        return cls.from_dict(json.loads(text), zblock_factory)


def _encode(v):
    if isinstance(v, complex):
        return {"re": v.real, "im": v.imag}
    return v


def _decode(v):
    if isinstance(v, dict) and set(v) == {"re", "im"}:
        return complex(v["re"], v["im"])
    return v
