"""Two-pass routing-integrated scheduler.

Pass 1 walks the dependency DAG in ASAP order and lines the gates up as
ideal single-type cycles, routing each two-qubit gate at the grid state it
meets (routed blocks are placed atomically, in order, and never
parallelized across gates). Pass 2 turns every single-qubit cycle into its
shuttle-backed block; when a cycle's generated shuttles conflict, the
offending gate subset is removed, the clean subset committed, and the
remainder rescheduled as its own cycle(s) via split_cycle.

Every X/Y rotation claims its own compensation scheme instance: the pulse,
shuttle, inverse-pulse, shuttle-back cost is charged per gate, which is
what makes single-qubit gates a real overhead source on this architecture.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

from .circuits import Circuit, GateKind
from .crossbar import Grid, apply_cycle, check_parallel_set
from .errors import CompileError, MapperConflict
from .instructions import Cycle, CycleType, Instruction, InstrKind, Schedule
from .ir import asap_levels
from .mapper import RoutedBlock, expand_semi_global, route_two_qubit, z_route


@dataclass(frozen=True)
class ProtoCycle:
    """Pass-1 ideal cycle: one gate group of a single kind, pre-routing."""

    kind: str  # "xy" | "z" | "twoq"
    gates: tuple[int, ...]  # indices into the decomposed circuit


def _proto_kind(kind: GateKind) -> str:
    if kind in (GateKind.RX, GateKind.RY):
        return "xy"
    if kind is GateKind.RZ:
        return "z"
    return "twoq"


def _pass1(circuit: Circuit) -> list[ProtoCycle]:
    levels = asap_levels(circuit)
    order = sorted(range(len(circuit.gates)), key=lambda i: (levels[i], i))
    return [ProtoCycle(_proto_kind(circuit.gates[i].kind), (i,)) for i in order]


def _z_direction(grid: Grid, q: int) -> str:
    x, y = grid.site_of(q)
    if x - 1 >= 0 and not grid.occupied((x - 1, y)):
        return "L"
    if x + 1 < grid.n and not grid.occupied((x + 1, y)):
        return "R"
    raise MapperConflict(f"both horizontal neighbours of qubit {q} at {(x, y)} are blocked")


def _expand_z_group(circuit: Circuit, grid: Grid, gates) -> RoutedBlock:
    """One Z cycle (phase shuttles) plus one return cycle for a gate group."""
    outs, backs = [], []
    for i in gates:
        g = circuit.gates[i]
        q = g.qubits[0]
        d = _z_direction(grid, q)
        outs.append(Instruction(InstrKind.ZSH, (q,), angle=g.angle, direction=d, src=(i,)))
        backs.append(
            Instruction(InstrKind.ZSH_RET, (q,), direction="L" if d == "R" else "R", src=(i,))
        )
    out_cycle = Cycle(CycleType.Z, tuple(outs))
    back_cycle = Cycle(CycleType.SHUTTLE, tuple(backs))
    g = grid
    for cycle in (out_cycle, back_cycle):
        report = check_parallel_set(g, cycle.ops)
        if not report.ok:
            raise MapperConflict(f"z shuttles conflict ({report.kind.value}): {report.detail}")
        g = apply_cycle(g, cycle)
    return RoutedBlock("z", (out_cycle, back_cycle), tuple(gates))


def _expand_proto(circuit: Circuit, grid: Grid, proto: ProtoCycle) -> RoutedBlock:
    if proto.kind == "twoq":
        if len(proto.gates) != 1:
            raise CompileError("two-qubit blocks are never grouped")
        i = proto.gates[0]
        a, b = circuit.gates[i].qubits
        return route_two_qubit(grid, a, b, src=i)
    if proto.kind == "z":
        if len(proto.gates) == 1:
            i = proto.gates[0]
            g = circuit.gates[i]
            return z_route(grid, g.qubits[0], g.angle, src=i)
        return _expand_z_group(circuit, grid, proto.gates)
    # xy: one scheme instance over the group's targets
    first = circuit.gates[proto.gates[0]]
    axis = "x" if first.kind is GateKind.RX else "y"
    for i in proto.gates[1:]:
        g = circuit.gates[i]
        if g.kind is not first.kind or g.angle != first.angle:
            raise CompileError("xy group must share axis and angle")
    sources = {circuit.gates[i].qubits[0]: i for i in proto.gates}
    targets = [circuit.gates[i].qubits[0] for i in proto.gates]
    return expand_semi_global(grid, targets, axis, first.angle, sources)


def split_cycle(circuit: Circuit, grid: Grid, proto: ProtoCycle) -> list[RoutedBlock]:
    """Partition a conflicted cycle into sequential conflict-free blocks.

    Greedy in program order: keep extending the current subset while it
    still expands conflict-free, defer the rest, then rerun on the deferred
    subset. Terminates in at most len(gates) rounds; a stored remainder
    that is itself clean reschedules in one extra round.
    """
    blocks: list[RoutedBlock] = []
    remaining = list(proto.gates)
    while remaining:
        subset: list[int] = []
        deferred: list[int] = []
        block = None
        for i in remaining:
            try:
                candidate = _expand_proto(circuit, grid, ProtoCycle(proto.kind, tuple(subset + [i])))
            except MapperConflict:
                deferred.append(i)
                continue
            subset.append(i)
            block = candidate
        if block is None:
            raise CompileError(
                f"gate {remaining[0]} conflicts with the static grid; cannot schedule"
            )
        blocks.append(block)
        remaining = deferred
    return blocks


def schedule_integrated(decomposed: Circuit, grid: Grid, name: str | None = None) -> Schedule:
    """Compile a native circuit on an idle-configuration grid."""
    if not decomposed.is_native:
        raise ValueError("schedule_integrated needs a decomposed (native-only) circuit")
    if not grid.is_checkerboard():
        raise ValueError("initial grid must be in the idle configuration")
    if grid.n_qubits != decomposed.n_qubits:
        raise ValueError("grid and circuit disagree on qubit count")

    placement = grid.pos
    cycles: list[Cycle] = []
    positions: list[bytes] = []

    for proto in _pass1(decomposed):
        try:
            blocks = [_expand_proto(decomposed, grid, proto)]
        except MapperConflict:
            blocks = split_cycle(decomposed, grid, proto)
        for block in blocks:
            for cycle in block.cycles:
                grid = apply_cycle(grid, cycle)
                cycles.append(cycle)
                positions.append(grid.packed())

    if not grid.is_checkerboard():
        raise CompileError("final occupancy is not the idle configuration")

    return Schedule(
        name=name if name is not None else decomposed.name,
        n_qubits=decomposed.n_qubits,
        grid_n=grid.n,
        placement=placement,
        cycles=tuple(cycles),
        positions=tuple(positions),
        circuit=decomposed,
    )


def timed_schedule(decomposed: Circuit, grid: Grid, name: str | None = None):
    """Schedule plus wall-clock compile time in milliseconds."""
    t0 = time.perf_counter()
    schedule = schedule_integrated(decomposed, grid, name)
    return schedule, (time.perf_counter() - t0) * 1000.0
