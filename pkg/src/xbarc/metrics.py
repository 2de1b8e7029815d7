"""Gate/depth overhead and estimated success probability.

ESP multiplies one fidelity factor per executed instruction, drawn from a
per-type per-site map: shuttles (zsh and its return included) read the
shuttle fidelity at the destination site, sqswap reads its class at the
lower of its two sites, and a semi-global pulse charges one single-qubit
factor for every qubit currently in the addressed parity, spectators
included.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import Circuit
from .config import ArchConfig, FIDELITY_CLASSES
from .crossbar import Grid, apply_op
from .errors import CompileError
from .instructions import InstrKind, MOVE_KINDS, Schedule
from .ir import CountsByType, counts_by_type, dependency_depth

_CLAMP_LO = 1e-12


@dataclass(frozen=True)
class FidelityMap:
    grid_n: int
    values: dict[str, np.ndarray]  # class -> (N, N) array indexed [y, x]

    def lookup(self, cls: str, site) -> float:
        x, y = site
        return float(self.values[cls][y, x])


def build_fidelity_map(grid: Grid, config: ArchConfig) -> FidelityMap:
    """Draw per-type per-site fidelities from Normal(mean, std), clamped to
    (0, 1]. The seeded generator walks sites row-major for each class in
    the fixed order single_qubit, shuttle, sqswap."""
    rng = np.random.default_rng(config.seed)
    n = grid.n
    values = {}
    for cls in FIDELITY_CLASSES:
        draws = rng.normal(config.means[cls], config.stds[cls], size=(n, n))
        values[cls] = np.clip(draws, _CLAMP_LO, 1.0)
    return FidelityMap(n, values)


@dataclass(frozen=True)
class MetricsReport:
    name: str
    n_qubits: int
    n_decomposed: int
    n_final: int
    gate_overhead_pct: float
    d_dependency: int
    d_final: int
    depth_overhead_pct: float
    esp: float
    compile_time_ms: float
    counts: CountsByType

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "n_qubits": self.n_qubits,
            "n_decomposed": self.n_decomposed,
            "n_final": self.n_final,
            "gate_overhead_pct": self.gate_overhead_pct,
            "d_dependency": self.d_dependency,
            "d_final": self.d_final,
            "depth_overhead_pct": self.depth_overhead_pct,
            "esp": self.esp,
            "compile_time_ms": self.compile_time_ms,
            "counts": {
                "n_xy": self.counts.n_xy,
                "n_z": self.counts.n_z,
                "n_twoq": self.counts.n_twoq,
                "n_total": self.counts.n_total,
            },
        }


# stable CSV layout; twoq/xy percentages use the share-of-total convention
CSV_COLUMNS = [
    "name",
    "n_qubits",
    "n_decomposed",
    "n_final",
    "gate_oh_pct",
    "d_dep",
    "d_final",
    "depth_oh_pct",
    "esp",
    "compile_ms",
    "twoq_pct_post_decomp",
    "xy_pct_post_decomp",
    "error",
]


def csv_row(report: MetricsReport) -> list:
    total = max(report.counts.n_total, 1)
    return [
        report.name,
        report.n_qubits,
        report.n_decomposed,
        report.n_final,
        f"{report.gate_overhead_pct:.4f}",
        report.d_dependency,
        report.d_final,
        f"{report.depth_overhead_pct:.4f}",
        f"{report.esp:.6e}",
        f"{report.compile_time_ms:.3f}",
        f"{100.0 * report.counts.n_twoq / total:.4f}",
        f"{100.0 * report.counts.n_xy / total:.4f}",
        "",
    ]


def esp(schedule: Schedule, fmap: FidelityMap) -> float:
    """Product over cycles and instructions of the applicable fidelity."""
    if fmap.grid_n != schedule.grid_n:
        raise CompileError("fidelity map does not cover this schedule's grid")
    grid = Grid(schedule.grid_n, schedule.placement)
    total = 1.0
    for cycle in schedule.cycles:
        for op in cycle.ops:
            if op.kind in MOVE_KINDS:
                q = op.qubits[0]
                x, y = grid.site_of(q)
                dx, dy = op.move_delta()
                total *= fmap.lookup("shuttle", (x + dx, y + dy))
            elif op.kind is InstrKind.SQSWAP:
                sa = grid.site_of(op.qubits[0])
                sb = grid.site_of(op.qubits[1])
                total *= fmap.lookup("sqswap", min(sa, sb, key=lambda s: s[1]))
            else:  # semi-global pulse: every qubit in the parity contributes
                for q in grid.parity_members(op.parity):
                    total *= fmap.lookup("single_qubit", grid.site_of(q))
            grid = apply_op(grid, op)
    return total


def overhead_report(
    decomposed: Circuit,
    schedule: Schedule,
    fmap: FidelityMap,
    compile_time_ms: float = 0.0,
) -> MetricsReport:
    """Gate overhead is extra instructions over the decomposed count (a
    semi-global pulse counts as one instruction regardless of spectators);
    depth overhead compares cycle count against the dependency-only depth."""
    if not decomposed.gates:
        raise ValueError("empty decomposed circuit")
    n_dec = len(decomposed.gates)
    n_final = schedule.n_instructions
    d_dep = dependency_depth(decomposed)
    d_final = schedule.depth
    return MetricsReport(
        name=schedule.name,
        n_qubits=decomposed.n_qubits,
        n_decomposed=n_dec,
        n_final=n_final,
        gate_overhead_pct=100.0 * (n_final - n_dec) / n_dec,
        d_dependency=d_dep,
        d_final=d_final,
        depth_overhead_pct=100.0 * (d_final - d_dep) / d_dep,
        esp=esp(schedule, fmap),
        compile_time_ms=compile_time_ms,
        counts=counts_by_type(decomposed),
    )
