"""Values reported for the reference design (3 GHz, lambda/4 dipole pair).

Used as design overrides for table regression and as the comparison
column in printed tables. Angles in degrees, impedances in ohms.
"""

import cmath
import math


def polar(mag: float, deg: float) -> complex:
    return cmath.rect(mag, math.radians(deg))


Z_AT = {
    "a": complex(73.05, 42.44),
    "b": complex(40.74, -28.31),
    "c": complex(64.11, -0.074),
}

COMPONENTS = {
    # name: (value in F or H, Q, f_Q in Hz)
    "C1": (0.53888e-12, 137.0, 2.4e9),
    "C2": (0.53888e-12, 137.0, 2.4e9),
    "C3": (0.63942e-12, 131.0, 2.4e9),
    "C4": (0.63942e-12, 131.0, 2.4e9),
    "L5": (2.3544e-9, 64.4, 2.4e9),
    "L6": (2.7827e-9, 78.9, 2.4e9),
    "C7": (0.29575e-12, 146.0, 2.4e9),
    "C8": (0.29575e-12, 146.0, 2.4e9),
    "L9": (2.7827e-9, 78.9, 2.4e9),
}

# branch index -> (Q, f_Q)
Q_TABLE = {int(name[1:]): (q, fq) for name, (_, q, fq) in COMPONENTS.items()}

RING = {
    "z0_ohm": 97.1845,
    "z1_ohm": complex(40.8666, -5.0754),
    "z2_ohm": complex(25.2097, -55.2266),
    "z01_ohm": 43.6155,
    "theta1_raw_deg": -57.5014,
    "theta1_deg": 122.498,
    "z02_ohm": complex(0, 69.936),
}

RING_LINES = {
    # name: (impedance ohm, electrical length deg, length mm, width mm)
    "ring": (97.1845, 90.0, 12.5859, 0.4356),
    "t1": (43.6155, 122.498, 15.8662, 2.7999),
    "t2_21": (50.0, 51.056, 6.7001, 2.2016),
    "t2_22": (23.3544, 90.0, 11.0431, 7.0753),
}

RING_STUB_LINES = {
    "t2_stub": (66.7342, 45.0, 6.0741, 1.2249),
    "t2_s2": (85.44, 90.0, 12.4345, 0.6503),
}

NDM = {
    "z1_ohm": complex(32.3, -70.76),
    "z2_ohm": complex(32.3, -70.76),
    "z3_ohm": complex(4.09, 4.66),
    "g": polar(0.1176, 145.2833),
    "u0": (polar(10.6327, -41.8153), polar(3.368, 124.8037), polar(0.8736, 109.4254)),
    "u0_prime": (polar(13.2283, 82.5424), polar(4.1514, -110.8386), polar(2.7878, 37.6868)),
}

SUBSTRATE_RO3006 = {"eps_r": 6.15, "height": 1.52e-3, "thickness": 35e-6}
