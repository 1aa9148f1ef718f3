"""Impedance matrix of side-by-side thin dipoles (induced-EMF method).

Both the self and the mutual terms come from the same closed form: the
sinusoidal-current near field of one dipole integrated against the current
of a parallel dipole at distance ``d``. Using ``d`` equal to the wire radius
gives the self impedance. All impedances are referred to the feed-point
current, so they stay meaningful when the fixed physical length is swept
away from half a wavelength.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .special import exp_integral_minus_j

C0 = 299_792_458.0
MU0 = 1.25663706212e-6
ETA0 = MU0 * C0


@dataclass(frozen=True)
class ArrayGeometry:
    """Collinear-parallel array of identical center-fed dipoles.

    ``spacing`` is the distance between the two outer elements. With three
    elements the third one sits midway, so adjacent spacing is ``spacing/2``.
    """

    element_count: int
    dipole_length: float
    spacing: float
    wire_radius: float
    reference_frequency: float

    def __post_init__(self):
        if self.element_count not in (2, 3):
            raise ValueError(f"element_count must be 2 or 3, got {self.element_count}")
        if self.spacing <= 0:
            raise ValueError("spacing must be positive")
        if self.dipole_length <= 0 or self.reference_frequency <= 0:
            raise ValueError("dipole_length and reference_frequency must be positive")
        if not 0 < self.wire_radius < self.dipole_length / 100:
            raise ValueError("thin-wire model needs 0 < wire_radius < dipole_length/100")

    @classmethod
    def half_wave(
        cls,
        reference_frequency: float = 3e9,
        spacing_wavelengths: float = 0.25,
        element_count: int = 2,
        radius_wavelengths: float = 1e-3,
    ) -> "ArrayGeometry":
        lam = C0 / reference_frequency
        return cls(
            element_count=element_count,
            dipole_length=lam / 2,
            spacing=spacing_wavelengths * lam,
            wire_radius=radius_wavelengths * lam,
            reference_frequency=reference_frequency,
        )

    @property
    def wavelength(self) -> float:
        return C0 / self.reference_frequency


@dataclass(frozen=True)
class ArrayImpedance:
    frequency: float
    z_matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        z = np.array(self.z_matrix, dtype=complex)
        z.setflags(write=False)
        object.__setattr__(self, "z_matrix", z)

    @property
    def a(self) -> complex:
        return complex(self.z_matrix[0, 0])

    @property
    def b(self) -> complex:
        return complex(self.z_matrix[0, 1])

    @property
    def c(self) -> complex:
        if self.z_matrix.shape[0] < 3:
            raise AttributeError("c is only defined for the 3-element array")
        return complex(self.z_matrix[0, 2])


def _segment_integral(d: float, s: float, h: float, k: float) -> complex:
    """int_{-h}^{h} exp(-jkR)/R * sin(k(h - |z|)) dz with R = sqrt(d^2 + (z-s)^2).

    Uses d(R +/- t)/dz = +/-(R +/- t)/R so every piece collapses to
    differences of Ci(x) - j Si(x).
    """

    def w_plus(z):
        t = z - s
        r = np.hypot(d, t)
        return r + t if t >= 0 else d * d / (r - t)

    def w_minus(z):
        t = z - s
        r = np.hypot(d, t)
        return r - t if t <= 0 else d * d / (r + t)

    def f(w):
        return exp_integral_minus_j(k * w)

    eh, es = np.exp(1j * k * h), np.exp(1j * k * s)
    # z in [0, h]: sin(k(h - z))
    upper = eh / es * (f(w_plus(h)) - f(w_plus(0.0))) + es / eh * (f(w_minus(h)) - f(w_minus(0.0)))
    # z in [-h, 0]: sin(k(h + z))
    lower = -eh * es * (f(w_minus(0.0)) - f(w_minus(-h))) - 1 / (eh * es) * (f(w_plus(0.0)) - f(w_plus(-h)))
    return (upper + lower) / 2j


def _coupled_impedance(d: float, half_length: float, frequency: float) -> complex:
    k = 2 * np.pi * frequency / C0
    kh = k * half_length
    total = (
        _segment_integral(d, half_length, half_length, k)
        + _segment_integral(d, -half_length, half_length, k)
        - 2 * np.cos(kh) * _segment_integral(d, 0.0, half_length, k)
    )
    return complex(1j * ETA0 / (4 * np.pi * np.sin(kh) ** 2) * total)


def dipole_self_impedance(geometry: ArrayGeometry, frequency: float) -> complex:
    """Input impedance of one dipole of the array (isolated)."""
    if frequency <= 0:
        raise ValueError("frequency must be positive")
    return _coupled_impedance(geometry.wire_radius, geometry.dipole_length / 2, frequency)


def dipole_mutual_impedance(spacing: float, geometry: ArrayGeometry, frequency: float) -> complex:
    """Mutual impedance of two parallel side-by-side dipoles ``spacing`` apart."""
    if spacing <= 0:
        raise ValueError("spacing must be positive")
    if frequency <= 0:
        raise ValueError("frequency must be positive")
    return _coupled_impedance(spacing, geometry.dipole_length / 2, frequency)


def array_impedance(geometry: ArrayGeometry, frequency: float) -> ArrayImpedance:
    """Symmetric impedance matrix of the array at ``frequency``.

    Three-element ordering is (outer, outer, center), which gives the
    ``[[a, b, c], [b, a, c], [c, c, a]]`` structure used by the networkless
    design. The center self term is taken equal to ``a``.
    """
    a = dipole_self_impedance(geometry, frequency)
    b = dipole_mutual_impedance(geometry.spacing, geometry, frequency)
    if geometry.element_count == 2:
        z = [[a, b], [b, a]]
    else:
        c = dipole_mutual_impedance(geometry.spacing / 2, geometry, frequency)
        z = [[a, b, c], [b, a, c], [c, c, a]]
    return ArrayImpedance(frequency, np.array(z, dtype=complex))


def impedance_sweep(geometry: ArrayGeometry, frequencies) -> np.ndarray:
    """Stack of impedance matrices, shape (F, N, N)."""
    return np.array([array_impedance(geometry, f).z_matrix for f in np.atleast_1d(frequencies)])


def structured_matrix(a: complex, b: complex, c: complex | None = None) -> np.ndarray:
    """Build the symmetric 2x2 (or 3x3 with ``c``) array matrix from its entries."""
    if c is None:
        return np.array([[a, b], [b, a]], dtype=complex)
    return np.array([[a, b, c], [b, a, c], [c, c, a]], dtype=complex)
