"""Serializable antenna-load models for ``ZBlock`` elements.

A spec is a small dict so netlists can round-trip through JSON:

* ``{"kind": "fixed", "matrix": [[[re, im], ...], ...]}``
* ``{"kind": "dipole_array", "element_count": 2, "reference_frequency": 3e9,
  "spacing_wavelengths": 0.25, "radius_wavelengths": 1e-3, "anchor": <matrix or null>}``

With an ``anchor`` the induced-EMF model is shifted by a constant so that it
equals the anchor matrix at the reference frequency and keeps the model's
frequency variation elsewhere.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .array_model import ArrayGeometry, array_impedance


def encode_matrix(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(v.real), float(v.imag)] for v in row] for row in m]


def decode_matrix(data) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in data], dtype=complex)


def dipole_array_spec(geometry: ArrayGeometry, anchor=None) -> dict:
    lam = geometry.wavelength
    return {
        "kind": "dipole_array",
        "element_count": geometry.element_count,
        "reference_frequency": geometry.reference_frequency,
        "spacing_wavelengths": geometry.spacing / lam,
        "radius_wavelengths": geometry.wire_radius / lam,
        "anchor": None if anchor is None else encode_matrix(anchor),
    }


def fixed_spec(matrix) -> dict:
    return {"kind": "fixed", "matrix": encode_matrix(matrix)}


def zblock_model_from_spec(spec: dict):
    kind = spec.get("kind")
    if kind == "fixed":
        z = decode_matrix(spec["matrix"])
        z.setflags(write=False)
        return lambda f: z
    if kind == "dipole_array":
        geometry = ArrayGeometry.half_wave(
            reference_frequency=spec["reference_frequency"],
            spacing_wavelengths=spec["spacing_wavelengths"],
            element_count=spec["element_count"],
            radius_wavelengths=spec.get("radius_wavelengths", 1e-3),
        )
        return dipole_array_model(geometry, None if spec.get("anchor") is None else decode_matrix(spec["anchor"]))
    raise ValueError(f"unknown z_block model kind {kind!r}")


def dipole_array_model(geometry: ArrayGeometry, anchor=None):
    """Callable f -> Z(f) for the array, optionally anchored at f_r."""

    @lru_cache(maxsize=4096)
    def raw(f: float) -> np.ndarray:
        return array_impedance(geometry, f).z_matrix

    offset = 0
    if anchor is not None:
        offset = np.asarray(anchor, dtype=complex) - raw(float(geometry.reference_frequency))

    def model(f):
        return raw(float(f)) + offset

    return model
