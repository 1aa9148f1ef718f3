"""Frequency-domain linear circuit engine (MNA) with S-parameter extraction."""

from .io import export_csv, export_touchstone, read_touchstone
from .mna import CircuitError, Solution, solve
from .netlist import (
    VCVS,
    Capacitor,
    Inductor,
    Netlist,
    Port,
    Resistor,
    ShortedStub,
    TransmissionLine,
    VoltageSource,
    ZBlock,
)
from .sparams import Bandwidth, SParameterSweep, band_around, bandwidth, s_parameters, to_db

__all__ = [
    "Bandwidth",
    "Capacitor",
    "CircuitError",
    "Inductor",
    "Netlist",
    "Port",
    "Resistor",
    "SParameterSweep",
    "ShortedStub",
    "Solution",
    "TransmissionLine",
    "VCVS",
    "VoltageSource",
    "ZBlock",
    "band_around",
    "bandwidth",
    "export_csv",
    "export_touchstone",
    "read_touchstone",
    "s_parameters",
    "solve",
    "to_db",
]
