"""Touchstone v1 and CSV writers for S-parameter sweeps."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .sparams import SParameterSweep, to_db


def _num(x: float) -> str:
    s = format(float(x), ".9g")
    if s == "-0":
        s = "0"
    if not any(ch in s for ch in ".eni"):
        s += ".0"
    return s


def _entry_order(n: int):
    if n == 2:
        return [(0, 0), (1, 0), (0, 1), (1, 1)]
    return [(i, j) for i in range(n) for j in range(n)]


def touchstone_text(sweep: SParameterSweep) -> str:
    n = sweep.n_ports
    if not 1 <= n <= 4:
        raise ValueError("Touchstone export supports 1 to 4 ports")
    ref = sweep.reference
    if np.any(ref != ref[0]):
        raise ValueError("Touchstone v1 needs one reference impedance for all ports")
    lines = [f"# GHz S RI R {_num(ref[0]).removesuffix('.0')}"]
    for f, s in zip(sweep.frequencies, sweep.s):
        vals = []
        for i, j in _entry_order(n):
            vals += [_num(s[i, j].real), _num(s[i, j].imag)]
        fstr = _num(f / 1e9)
        if n <= 2:
            lines.append(" ".join([fstr] + vals))
        else:
            # one matrix row per line (n <= 4 keeps each under 4 pairs)
            for r in range(n):
                row = vals[2 * n * r : 2 * n * (r + 1)]
                lines.append(" ".join(([fstr] if r == 0 else [" " * len(fstr)]) + row))
    return "\n".join(lines) + "\n"


def export_touchstone(sweep: SParameterSweep, path) -> Path:
    path = Path(path)
    try:
        path.write_text(touchstone_text(sweep))
    except OSError as exc:
        raise OSError(f"cannot write Touchstone file {path}: {exc}") from exc
    return path


_UNITS = {"HZ": 1.0, "KHZ": 1e3, "MHZ": 1e6, "GHZ": 1e9}


def read_touchstone(path, n_ports: int | None = None) -> SParameterSweep:
    """Parse a Touchstone v1 file (S parameters, RI/MA/DB formats)."""
    path = Path(path)
    if n_ports is None:
        suffix = path.suffix.lower()
        if not (suffix.startswith(".s") and suffix.endswith("p")):
            raise ValueError(f"cannot infer port count from {path.name}")
        n_ports = int(suffix[2:-1])
    unit, fmt, ref = 1e9, "MA", 50.0
    numbers = []
    for raw in path.read_text().splitlines():
        line = raw.split("!", 1)[0].strip()
        if not line:
            continue
        if line.startswith("#"):
            tok = line[1:].upper().split()
            for k, t in enumerate(tok):
                if t in _UNITS:
                    unit = _UNITS[t]
                elif t in ("RI", "MA", "DB"):
                    fmt = t
                elif t == "R":
                    ref = float(tok[k + 1])
            continue
        numbers.extend(float(t) for t in line.split())
    per_point = 1 + 2 * n_ports * n_ports
    if len(numbers) % per_point:
        raise ValueError(f"{path}: data length {len(numbers)} is not a multiple of {per_point}")
    data = np.array(numbers).reshape(-1, per_point)
    freqs = data[:, 0] * unit
    p, q = data[:, 1::2], data[:, 2::2]
    if fmt == "RI":
        vals = p + 1j * q
    elif fmt == "MA":
        vals = p * np.exp(1j * np.radians(q))
    else:
        vals = 10 ** (p / 20) * np.exp(1j * np.radians(q))
    s = np.zeros((len(freqs), n_ports, n_ports), dtype=complex)
    for col, (i, j) in enumerate(_entry_order(n_ports)):
        s[:, i, j] = vals[:, col]
    return SParameterSweep(freqs, s, np.full(n_ports, ref))


def csv_header(n: int) -> list:
    cols = ["freq_hz"]
    for i in range(n):
        for j in range(n):
            cols += [f"s{i + 1}{j + 1}_db", f"s{i + 1}{j + 1}_deg"]
    return cols


def export_csv(sweep: SParameterSweep, path) -> Path:
    """Frequency, |S_ij| in dB (floored at -300 dB) and phase in degrees."""
    path = Path(path)
    n = sweep.n_ports
    try:
        with path.open("w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(csv_header(n))
            for k, f in enumerate(sweep.frequencies):
                row = [_num(f)]
                for i in range(n):
                    for j in range(n):
                        s = sweep.s[k, i, j]
                        row += [_num(to_db(s)), _num(np.degrees(np.angle(s)))]
                w.writerow(row)
    except OSError as exc:
        raise OSError(f"cannot write CSV file {path}: {exc}") from exc
    return path
