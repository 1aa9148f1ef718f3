"""End-to-end design flows: configuration, design reports, netlists and sweeps.

Each scenario designs its network at ``f_r``, builds a netlist with the
array as a frequency-dependent load, sweeps it and measures bandwidths.
All report keys carry their unit; angles are degrees.
"""

from __future__ import annotations

import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from . import published
from .array_model import ArrayGeometry, array_impedance, structured_matrix
from .circuit import Netlist, SParameterSweep, ZBlock, bandwidth, export_csv, export_touchstone, s_parameters, to_db
from .dmn_core import DmnLumpedDesign, apply_q_loss, design_dmn_le, lumped_netlist
from .loads import dipole_array_spec, zblock_model_from_spec
from .microstrip import Substrate
from .ndm import design_ndm, gain_direct_expression, ndm_netlist, verify_matching
from .ring_hybrid import QuarterWaveMatch, SingleLineMatch, StubMatch, design_ring_hybrid, line_table, ring_netlist

SCENARIOS = ("baseline", "dmn-le", "dmn-rh", "dmn-rh-stub", "ndm")
ALL_SCENARIOS = SCENARIOS + ("compare",)


@dataclass(frozen=True)
class SweepGrid:
    f_min: float | None = None  # default 0.8 f_r
    f_max: float | None = None  # default 1.2 f_r
    points: int = 601

    def resolve(self, f_r: float) -> "SweepGrid":
        return SweepGrid(
            0.8 * f_r if self.f_min is None else self.f_min,
            1.2 * f_r if self.f_max is None else self.f_max,
            self.points,
        )

    def frequencies(self) -> np.ndarray:
        return np.linspace(self.f_min, self.f_max, self.points)


@dataclass(frozen=True)
class RunConfig:
    scenario: str = "dmn-le"
    f_r: float = 3e9
    spacing: float = 0.25  # wavelengths at f_r
    sweep: SweepGrid = field(default_factory=SweepGrid)
    substrate: Substrate = field(default_factory=Substrate)
    loss: str = "ideal"  # ideal | q-factor
    q_table: dict = field(default_factory=lambda: dict(published.Q_TABLE))
    z_at: object = "published"  # "published" | "model" | {"a": [re, im], "b": ..., "c": ...}
    r: float = 50.0
    radius: float = 1e-3  # wavelengths
    drives: tuple = (published.NDM["u0"][0], published.NDM["u0"][1])
    out: str = "out"

    def validate(self) -> "RunConfig":
        if self.scenario not in ALL_SCENARIOS:
            raise ValueError(f"unknown scenario {self.scenario!r}; choose from {', '.join(ALL_SCENARIOS)}")
        if self.loss not in ("ideal", "q-factor"):
            raise ValueError("loss must be 'ideal' or 'q-factor'")
        if self.f_r <= 0 or self.spacing <= 0 or self.r <= 0:
            raise ValueError("f_r, spacing and reference resistance must be positive")
        g = self.sweep.resolve(self.f_r)
        if not g.f_min < self.f_r < g.f_max:
            raise ValueError(f"sweep [{g.f_min:.6g}, {g.f_max:.6g}] Hz must strictly contain f_r = {self.f_r:.6g} Hz")
        if g.points < 3:
            raise ValueError("sweep needs at least 3 points")
        if self.z_at == "published" and abs(self.spacing - 0.25) > 1e-12:
            raise ValueError("the published Z_AT values belong to a 0.25-wavelength spacing; use z_at = 'model'")
        if not (self.z_at in ("published", "model") or isinstance(self.z_at, dict)):
            raise ValueError("z_at must be 'published', 'model' or an {a, b, c} mapping")
        return self

    @property
    def grid(self) -> SweepGrid:
        return self.sweep.resolve(self.f_r)

    def to_dict(self) -> dict:
        g = self.grid
        z_at = self.z_at
        if isinstance(z_at, dict):
            z_at = {k: _cx(complex(*v) if isinstance(v, (list, tuple)) else v) for k, v in z_at.items()}
        return {
            "scenario": self.scenario,
            "f_r_hz": self.f_r,
            "spacing_wavelengths": self.spacing,
            "sweep": {"f_min_hz": g.f_min, "f_max_hz": g.f_max, "points": g.points},
            "substrate": {
                "eps_r": self.substrate.eps_r,
                "height_m": self.substrate.height,
                "thickness_m": self.substrate.thickness,
            },
            "loss": self.loss,
            "q_table": {str(k): {"q": q, "f_q_hz": fq} for k, (q, fq) in sorted(self.q_table.items())},
            "z_at": z_at,
            "reference_ohm": self.r,
            "radius_wavelengths": self.radius,
            "drives_v": [_cx(complex(u)) for u in self.drives],
            "out": self.out,
        }

    @classmethod
    def from_dict(cls, data: dict, base: "RunConfig | None" = None) -> "RunConfig":
        cfg = base or cls()
        kw = {}
        simple = {
            "scenario": "scenario",
            "f_r_hz": "f_r",
            "spacing_wavelengths": "spacing",
            "loss": "loss",
            "reference_ohm": "r",
            "radius_wavelengths": "radius",
            "out": "out",
        }
        for key, attr in simple.items():
            if key in data:
                kw[attr] = data[key]
        if "sweep" in data:
            s = data["sweep"]
            kw["sweep"] = SweepGrid(s.get("f_min_hz"), s.get("f_max_hz"), int(s.get("points", cfg.sweep.points)))
        if "substrate" in data:
            s = data["substrate"]
            kw["substrate"] = Substrate(
                s.get("eps_r", cfg.substrate.eps_r),
                s.get("height_m", cfg.substrate.height),
                s.get("thickness_m", cfg.substrate.thickness),
            )
        if "q_table" in data:
            kw["q_table"] = {int(k): (float(v["q"]), float(v["f_q_hz"])) for k, v in data["q_table"].items()}
        if "z_at" in data:
            z = data["z_at"]
            kw["z_at"] = z if isinstance(z, str) else {k: _uncx(v) for k, v in z.items()}
        if "drives_v" in data:
            kw["drives"] = tuple(_uncx(v) for v in data["drives_v"])
        unknown = set(data) - set(simple) - {"sweep", "substrate", "q_table", "z_at", "drives_v"}
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return replace(cfg, **kw)


def _cx(z: complex) -> dict:
    return {"re": float(z.real), "im": float(z.imag)}


def _uncx(v) -> complex:
    if isinstance(v, dict):
        return complex(v["re"], v["im"])
    if isinstance(v, (list, tuple)):
        return complex(v[0], v[1])
    return complex(v)


def _polar(z: complex) -> dict:
    return {"mag": float(abs(z)), "deg": float(math.degrees(math.atan2(z.imag, z.real)))}


def _deviation_pct(value, reference) -> float | None:
    if reference is None:
        return None
    if abs(reference) == 0:
        return None
    return float(abs(complex(value) - complex(reference)) / abs(reference) * 100)


def geometry(cfg: RunConfig, element_count: int) -> ArrayGeometry:
    return ArrayGeometry.half_wave(
        reference_frequency=cfg.f_r,
        spacing_wavelengths=cfg.spacing,
        element_count=element_count,
        radius_wavelengths=cfg.radius,
    )


def design_impedance(cfg: RunConfig, element_count: int) -> np.ndarray:
    """Array impedance matrix used for the design at f_r (override or model)."""
    if cfg.z_at == "model":
        return array_impedance(geometry(cfg, element_count), cfg.f_r).z_matrix
    entries = published.Z_AT if cfg.z_at == "published" else cfg.z_at
    a, b = complex(entries["a"]), complex(entries["b"])
    if element_count == 2:
        return structured_matrix(a, b)
    if "c" not in entries:
        raise ValueError("a 3-element design needs the c entry of Z_AT")
    return structured_matrix(a, b, complex(entries["c"]))


def array_load(cfg: RunConfig, element_count: int, z_design: np.ndarray) -> ZBlock:
    """Array block for the sweep; an override anchors the model at f_r."""
    anchor = None if cfg.z_at == "model" else z_design
    spec = dipole_array_spec(geometry(cfg, element_count), anchor)
    terminals = tuple(f"A{k + 1}" for k in range(element_count))
    return ZBlock("ZAT", terminals, zblock_model_from_spec(spec), spec)


@dataclass
class ScenarioResult:
    config: RunConfig
    report: dict
    netlist: Netlist
    sweep: SParameterSweep | None = None
    bandwidth: dict | None = None
    tables: list = field(default_factory=list)  # (title, rows) for print_tables


# ---- designs -----------------------------------------------------------------


def _design_baseline(cfg: RunConfig) -> ScenarioResult:
    z = design_impedance(cfg, 2)
    net = Netlist(title="baseline")
    net.add(array_load(cfg, 2, z))
    net.add_port("P1", "A1", cfg.r)
    net.add_port("P2", "A2", cfg.r)
    report = {"z_at_ohm": [[_cx(v) for v in row] for row in z]}
    rows = [
        ("a (self)", complex(z[0, 0]), published.Z_AT["a"], "ohm"),
        ("b (mutual)", complex(z[0, 1]), published.Z_AT["b"], "ohm"),
    ]
    return ScenarioResult(cfg, report, net, tables=[("Array impedance at f_r", rows)])


def _component_rows(design: DmnLumpedDesign, lossy: bool) -> tuple[list, list]:
    out, rows = [], []
    for k, comp in sorted(design.components.items()):
        name = DmnLumpedDesign.component_name(k, comp)
        ref = published.COMPONENTS.get(name, (None,))[0]
        esr = apply_q_loss(comp) if comp.q_factor is not None else None
        out.append(
            {
                "branch": k,
                "name": name,
                "kind": comp.kind,
                "value_" + ("pf" if comp.kind == "capacitor" else "nh"): comp.value * (1e12 if comp.kind == "capacitor" else 1e9),
                "q": comp.q_factor,
                "f_q_hz": comp.q_frequency,
                "esr_ohm": esr,
                "esr_applied": bool(lossy and esr is not None),
                "published_value": ref,
                "deviation_pct": _deviation_pct(comp.value, ref),
            }
        )
        scale, unit = (1e12, "pF") if comp.kind == "capacitor" else (1e9, "nH")
        rows.append((name, comp.value * scale, None if ref is None else ref * scale, unit))
    return out, rows


def _design_dmn_le(cfg: RunConfig) -> ScenarioResult:
    z = design_impedance(cfg, 2)
    lossy = cfg.loss == "q-factor"
    design = design_dmn_le(z, cfg.f_r, cfg.r, cfg.q_table)
    net = lumped_netlist(design, array_load(cfg, 2, z), lossy=lossy, r=cfg.r)
    comps, rows = _component_rows(design, lossy)
    ab = design.abstract
    report = {
        "z_at_ohm": [[_cx(v) for v in row] for row in z],
        "x1_ohm": [[_cx(v) for v in row] for row in ab.x1],
        "x2_ohm": [[_cx(v) for v in row] for row in ab.x2],
        "b1_s": [[_cx(v) for v in row] for row in ab.b1],
        "b2_s": [[_cx(v) for v in row] for row in ab.b2],
        "branches_s": {f"Y{k}": _cx(design.branches[k]) for k in range(1, 11)},
        "components": comps,
        "omitted_branches": list(design.omitted),
    }
    return ScenarioResult(cfg, report, net, tables=[("DMN-LE components", rows)])


def _match_report(m) -> dict:
    if isinstance(m, SingleLineMatch):
        return {
            "kind": "single_line",
            "z_ohm": float(m.z0.real),
            "theta_deg": m.theta_deg,
            "theta_raw_deg": m.theta_raw_deg,
        }
    if isinstance(m, QuarterWaveMatch):
        return {
            "kind": "quarter_wave",
            "z21_ohm": m.z21,
            "theta21_deg": m.theta21_deg,
            "z22_ohm": m.z22,
            "theta22_deg": m.theta22_deg,
            "r_x_ohm": m.r_x,
        }
    assert isinstance(m, StubMatch)
    return {
        "kind": "stub",
        "z_s1_ohm": m.z_s1,
        "theta_s1_deg": m.theta_s1_deg,
        "z_s2_ohm": m.z_s2,
        "theta_s2_deg": m.theta_s2_deg,
        "conductance_s": m.conductance,
    }


def _design_dmn_rh(cfg: RunConfig, t2_solution: str) -> ScenarioResult:
    z = design_impedance(cfg, 2)
    a, b = complex(z[0, 0]), complex(z[0, 1])
    d = design_ring_hybrid(a, b, cfg.r, cfg.f_r, t2_solution, cfg.substrate)
    net = ring_netlist(d, array_load(cfg, 2, z))
    net.title = "dmn-rh-stub" if t2_solution == "stub" else "dmn-rh"
    ref_lines = dict(published.RING_LINES)
    ref_lines.update(published.RING_STUB_LINES)
    lines = []
    for row in line_table(d):
        ref = ref_lines.get(row["line"])
        row = dict(row)
        row["published_width_mm"] = None if ref is None else ref[3]
        row["published_length_mm"] = None if ref is None else ref[2]
        row["width_deviation_pct"] = None if ref is None else _deviation_pct(row["width_mm"], ref[3])
        row["length_deviation_pct"] = None if ref is None else _deviation_pct(row["length_mm"], ref[2])
        lines.append(row)
    t2s = d.t2_single
    report = {
        "z_at_ohm": [[_cx(v) for v in row] for row in z],
        "z0_ohm": d.z0,
        "z1_ohm": _cx(d.z1),
        "z2_ohm": _cx(d.z2),
        "t1": _match_report(d.t1),
        "t2": _match_report(d.t2),
        "t2_single_line": None
        if t2s is None
        else {"feasible": t2s.feasible, "z02_ohm": _cx(t2s.z0), "theta_deg": None if not t2s.feasible else t2s.theta_deg},
        "ring_segments_deg": list(d.segments),
        "lines": lines,
    }
    p = published.RING
    rows = [
        ("z0", d.z0, p["z0_ohm"], "ohm"),
        ("z1", d.z1, p["z1_ohm"], "ohm"),
        ("z2", d.z2, p["z2_ohm"], "ohm"),
    ]
    if isinstance(d.t1, SingleLineMatch):
        rows += [("z01", d.t1.z0.real, p["z01_ohm"], "ohm"), ("theta1", d.t1.theta_deg, p["theta1_deg"], "deg")]
    if t2s is not None and not t2s.feasible:
        rows.append(("z02 (single line)", t2s.z0, p["z02_ohm"], "ohm"))
    t2 = d.t2
    if isinstance(t2, QuarterWaveMatch):
        rows += [("theta21", t2.theta21_deg, 51.056, "deg"), ("z22", t2.z22, published.RING_LINES["t2_22"][0], "ohm")]
    elif isinstance(t2, StubMatch):
        rows += [
            ("z_s1", t2.z_s1, published.RING_STUB_LINES["t2_stub"][0], "ohm"),
            ("z_s2", t2.z_s2, published.RING_STUB_LINES["t2_s2"][0], "ohm"),
        ]
    line_rows = []
    for row in lines:
        line_rows.append((f"{row['line']} width", row["width_mm"], row["published_width_mm"], "mm"))
        line_rows.append((f"{row['line']} length", row["length_mm"], row["published_length_mm"], "mm"))
    return ScenarioResult(cfg, report, net, tables=[("Ring hybrid parameters", rows), ("Microstrip lines", line_rows)])


def _design_ndm(cfg: RunConfig) -> ScenarioResult:
    z = design_impedance(cfg, 3)
    u01, u02 = (complex(u) for u in cfg.drives)
    d = design_ndm(z, cfg.r, cfg.f_r, u01, u02)
    sol = d.solution
    a, b, c = z[0, 0], z[0, 1], z[0, 2]
    g_direct = gain_direct_expression(a, b, c, sol.z_sources[0], sol.z_sources[2])
    check = verify_matching(z, sol, u01, u02)
    net = ndm_netlist(d, array_load(cfg, 3, z))
    sections = []
    for k, sec in enumerate(d.sections, start=1):
        parts = {}
        for role, comp in sec.elements().items():
            scale, unit = (1e12, "pf") if comp.kind == "capacitor" else (1e9, "nh")
            parts[role] = {"kind": comp.kind, f"value_{unit}": comp.value * scale}
        sections.append(
            {
                "port": k,
                "z_target_ohm": _cx(sec.z_target),
                "shunt_at_source": sec.shunt_at_source,
                "series_reactance_ohm": sec.series_reactance,
                "shunt_susceptance_s": sec.shunt_susceptance,
                "voltage_transfer": _polar(sec.voltage_transfer),
                "elements": parts,
            }
        )
    pn = published.NDM
    report = {
        "z_at_ohm": [[_cx(v) for v in row] for row in z],
        "z_sources_ohm": [_cx(v) for v in sol.z_sources],
        "g1": _polar(sol.g1),
        "g2": _polar(sol.g2),
        "g_direct_expression": _polar(g_direct),
        "x": [_polar(v) for v in sol.x],
        "u0_v": [_polar(v) for v in d.u0],
        "u0_prime_v": [_polar(v) for v in d.u0_prime],
        "matching_residual": check.residual,
        "identity_residual": check.identity_residual,
        "delivered_power_w": check.delivered_power,
        "available_power_w": check.available_power,
        "sections": sections,
        "published": {
            "z3_ohm": _cx(pn["z3_ohm"]),
            "g": _polar(pn["g"]),
            "z3_deviation_pct": _deviation_pct(sol.z_sources[2], pn["z3_ohm"]),
            "g_deviation_pct": _deviation_pct(sol.g1, pn["g"]),
        },
    }
    rows = [
        ("Z1", sol.z_sources[0], pn["z1_ohm"], "ohm"),
        ("Z2", sol.z_sources[1], pn["z2_ohm"], "ohm"),
        ("Z3", sol.z_sources[2], pn["z3_ohm"], "ohm"),
        ("g", sol.g1, pn["g"], ""),
        ("g (direct expression)", g_direct, pn["g"], ""),
    ]
    drive_rows = []
    for k in range(3):
        drive_rows.append((f"|u0,{k + 1}|", abs(d.u0[k]), abs(pn["u0"][k]), "V"))
        drive_rows.append((f"|u0,{k + 1}'|", abs(d.u0_prime[k]), abs(pn["u0_prime"][k]), "V"))
    return ScenarioResult(cfg, report, net, tables=[("NDM sources and gain", rows), ("NDM drives", drive_rows)])


def design(cfg: RunConfig) -> ScenarioResult:
    cfg.validate()
    if cfg.scenario == "baseline":
        res = _design_baseline(cfg)
    elif cfg.scenario == "dmn-le":
        res = _design_dmn_le(cfg)
    elif cfg.scenario == "dmn-rh":
        res = _design_dmn_rh(cfg, "quarter_wave")
    elif cfg.scenario == "dmn-rh-stub":
        res = _design_dmn_rh(cfg, "stub")
    elif cfg.scenario == "ndm":
        res = _design_ndm(cfg)
    else:
        raise ValueError(f"scenario {cfg.scenario!r} has no single design; use compare")
    res.report = {"scenario": cfg.scenario, "config": cfg.to_dict(), **res.report}
    return res


# ---- sweeps and bandwidths -----------------------------------------------------

# scenario -> primary measure first; (label, pairs, threshold dB)
MEASURES = {
    "baseline": [("S11", [(0, 0)], -10.0), ("S21", [(1, 0)], -10.0)],
    "dmn-le": [("joint", [(0, 0), (0, 1), (1, 0), (1, 1)], -20.0), ("joint", [(0, 0), (0, 1), (1, 0), (1, 1)], -10.0)],
    "dmn-rh": [("S21", [(1, 0)], -20.0), ("S22", [(1, 1)], -10.0), ("S11", [(0, 0)], -20.0), ("S22", [(1, 1)], -20.0)],
    "ndm": [("S21", [(1, 0)], -20.0), ("S11", [(0, 0)], -10.0), ("S11", [(0, 0)], -20.0)],
}
MEASURES["dmn-rh-stub"] = MEASURES["dmn-rh"]


def measure_bandwidths(scenario: str, sweep: SParameterSweep, f_r: float) -> dict:
    entries = []
    for label, pairs, thr in MEASURES[scenario]:
        trace = np.max([sweep.db(i, j) for i, j in pairs], axis=0)
        # the bare array is not resonant at f_r, so its band is taken around the dip
        center = float(sweep.frequencies[int(np.argmin(trace))]) if scenario == "baseline" else f_r
        bw = bandwidth(sweep, pairs, threshold_db=thr, center=center)
        entries.append({"measure": label, "center_hz": center, **bw.to_dict()})
    return {**entries[0], "all": entries}


def sweep(res: ScenarioResult, workers: int | None = None) -> ScenarioResult:
    cfg = res.config
    sw = s_parameters(res.netlist, cfg.grid.frequencies(), workers=workers)
    res.sweep = sw
    res.bandwidth = measure_bandwidths(cfg.scenario, sw, cfg.f_r)
    s_fr = sw.at(cfg.f_r)
    res.report["s_at_f_r_db"] = [[float(v) for v in to_db(row)] for row in s_fr]
    return res


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False, default=_json_default) + "\n"


def _json_default(o):
    if isinstance(o, (np.floating, np.integer)):
        return o.item()
    if isinstance(o, np.bool_):
        return bool(o)
    raise TypeError(f"{type(o).__name__} is not JSON serializable")


def _clean(obj):
    """Replace NaN with None so reports stay strict JSON."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    return obj


def write_design(res: ScenarioResult, out: Path) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / "design_report.json", out / "netlist.json"]
    paths[0].write_text(_dump(_clean(res.report)))
    paths[1].write_text(res.netlist.to_json(indent=2) + "\n")
    return paths


def write_sweep(res: ScenarioResult, out: Path) -> list[Path]:
    out.mkdir(parents=True, exist_ok=True)
    paths = write_design(res, out)
    paths.append(export_touchstone(res.sweep, out / f"sweep.s{res.sweep.n_ports}p"))
    paths.append(export_csv(res.sweep, out / "sweep.csv"))
    bw = out / "bandwidth.json"
    bw.write_text(_dump(_clean(res.bandwidth)))
    paths.append(bw)
    return paths


def run(cfg: RunConfig, write: bool = True) -> ScenarioResult:
    """Design, sweep and (optionally) write all artifacts for one scenario."""
    res = sweep(design(cfg))
    if write:
        write_sweep(res, Path(cfg.out))
    return res


def compare(cfg: RunConfig, write: bool = True, jobs: int | None = None) -> dict:
    """Run every scenario on one grid; each writes to its own subdirectory."""
    cfg = replace(cfg, scenario="compare").validate()
    base = Path(cfg.out)
    configs = [replace(cfg, scenario=s, out=str(base / s)) for s in SCENARIOS]
    with ThreadPoolExecutor(max_workers=jobs or len(configs)) as pool:
        results = dict(zip(SCENARIOS, pool.map(lambda c: run(c, write), configs)))
    summary = {
        "config": cfg.to_dict(),
        "worst_s_at_f_r_db": {s: float(np.max(r.report["s_at_f_r_db"])) for s, r in results.items()},
        "bandwidth": {s: r.bandwidth for s, r in results.items()},
    }
    if write:
        base.mkdir(parents=True, exist_ok=True)
        write_compare_csv(results, base / "compare.csv")
        (base / "compare_summary.json").write_text(_dump(_clean(summary)))
    return {"results": results, "summary": summary}


def write_compare_csv(results: dict, path: Path) -> Path:
    freqs = next(iter(results.values())).sweep.frequencies
    header = ["freq_hz"]
    for s in results:
        header += [f"{s}_s11_db", f"{s}_s22_db", f"{s}_s12_db"]
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        cols = []
        for r in results.values():
            cols += [r.sweep.db(0, 0), r.sweep.db(1, 1), r.sweep.db(0, 1)]
        for k, f in enumerate(freqs):
            w.writerow([f"{f:.9g}"] + [f"{c[k]:.9g}" for c in cols])
    return path


# ---- tables --------------------------------------------------------------------


def _fmt(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, complex):
        if v.real == 0:
            return f"j{v.imag:.6g}"
        sign = "+" if v.imag >= 0 else "-"
        return f"{v.real:.6g} {sign} j{abs(v.imag):.6g}"
    return f"{v:.6g}"


def format_table(title: str, rows: list) -> str:
    """Rows of (name, computed, published, unit) with a percent-deviation column."""
    head = ("quantity", "computed", "published", "unit", "dev %")
    body = []
    for name, value, ref, unit in rows:
        dev = _deviation_pct(value, ref)
        body.append((name, _fmt(value), _fmt(ref), unit, "-" if dev is None else f"{dev:.3f}"))
    widths = [max(len(r[i]) for r in [head] + body) for i in range(len(head))]
    line = "  ".join("{:<%d}" % w for w in widths)
    out = [title, line.format(*head), "  ".join("-" * w for w in widths)]
    out += [line.format(*r) for r in body]
    return "\n".join(out)


def print_tables(cfg: RunConfig) -> str:
    res = design(cfg)
    return "\n\n".join(format_table(t, rows) for t, rows in res.tables) + "\n"


def config_from_file(path, base: RunConfig | None = None) -> RunConfig:
    return RunConfig.from_dict(json.loads(Path(path).read_text()), base)


__all__ = [
    "ALL_SCENARIOS",
    "RunConfig",
    "SCENARIOS",
    "ScenarioResult",
    "SweepGrid",
    "compare",
    "config_from_file",
    "design",
    "format_table",
    "measure_bandwidths",
    "print_tables",
    "run",
    "sweep",
    "write_design",
    "write_sweep",
]

