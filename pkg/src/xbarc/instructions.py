"""Compiled-program representation: instructions, cycles, schedules.

A Schedule is a sequence of single-type cycles of parallel instructions,
plus the initial placement and a position snapshot after every cycle.
The JSON document produced by schedule_to_doc is the authoritative
compiled artifact; schedule_from_doc round-trips it exactly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .circuits import Circuit, circuit_from_dict, circuit_to_dict


class InstrKind(Enum):
    SH_L = "sh_l"
    SH_R = "sh_r"
    SH_U = "sh_u"
    SH_D = "sh_d"
    ZSH = "zsh"
    ZSH_RET = "zsh_ret"
    SG_ROT = "sg_rot"
    SG_ROT_INV = "sg_rot_inv"
    SQSWAP = "sqswap"


class CycleType(Enum):
    XY_ROT = "xy_rot"
    XY_ROT_INV = "xy_rot_inv"
    Z = "z"
    SHUTTLE = "shuttle"
    TWOQ = "twoq"


# Which cycle type each instruction kind belongs to ("each cycle is
# dedicated to one instruction type"). zsh carries the phase and gets its
# own Z cycle; the return move is an ordinary shuttle.
CYCLE_FAMILY = {
    InstrKind.SH_L: CycleType.SHUTTLE,
    InstrKind.SH_R: CycleType.SHUTTLE,
    InstrKind.SH_U: CycleType.SHUTTLE,
    InstrKind.SH_D: CycleType.SHUTTLE,
    InstrKind.ZSH_RET: CycleType.SHUTTLE,
    InstrKind.ZSH: CycleType.Z,
    InstrKind.SG_ROT: CycleType.XY_ROT,
    InstrKind.SG_ROT_INV: CycleType.XY_ROT_INV,
    InstrKind.SQSWAP: CycleType.TWOQ,
}

# Unit moves: plain shuttles encode direction in the kind, zsh/zsh_ret in
# their direction field.
_KIND_DELTA = {
    InstrKind.SH_L: (-1, 0),
    InstrKind.SH_R: (1, 0),
    InstrKind.SH_U: (0, 1),
    InstrKind.SH_D: (0, -1),
}
_DIR_DELTA = {"L": (-1, 0), "R": (1, 0)}

MOVE_KINDS = frozenset(
    {InstrKind.SH_L, InstrKind.SH_R, InstrKind.SH_U, InstrKind.SH_D, InstrKind.ZSH, InstrKind.ZSH_RET}
)
SG_KINDS = frozenset({InstrKind.SG_ROT, InstrKind.SG_ROT_INV})


@dataclass(frozen=True)
class Instruction:
    kind: InstrKind
    qubits: tuple[int, ...] = ()
    angle: float | None = None  # zsh: carried Z phase; sg kinds: rotation angle
    axis: str | None = None  # sg kinds: "x" | "y"
    parity: int | None = None  # sg kinds: addressed column parity
    direction: str | None = None  # zsh / zsh_ret: "L" | "R"
    src: tuple[int, ...] = ()  # indices of source gates in the decomposed circuit

    def move_delta(self) -> tuple[int, int] | None:
        if self.kind in _KIND_DELTA:
            return _KIND_DELTA[self.kind]
        if self.kind in (InstrKind.ZSH, InstrKind.ZSH_RET):
            return _DIR_DELTA[self.direction]
        return None


@dataclass(frozen=True)
class Cycle:
    type: CycleType
    ops: tuple[Instruction, ...]

    def __post_init__(self):
        if not self.ops:
            raise ValueError("cycle must hold at least one instruction")


@dataclass(frozen=True)
class Schedule:
    name: str
    n_qubits: int
    grid_n: int
    placement: tuple[tuple[int, int], ...]
    cycles: tuple[Cycle, ...]
    positions: tuple[bytes, ...]  # packed (x, y) per qubit, one snapshot per cycle
    circuit: Circuit | None = None  # decomposed source, embedded for verification

    @property
    def n_instructions(self) -> int:
        return sum(len(c.ops) for c in self.cycles)

    @property
    def depth(self) -> int:
        return len(self.cycles)


def pack_positions(pos) -> bytes:
    out = bytearray()
    for x, y in pos:
        out.append(x)
        out.append(y)
    return bytes(out)


def unpack_positions(data: bytes) -> tuple[tuple[int, int], ...]:
    return tuple((data[i], data[i + 1]) for i in range(0, len(data), 2))


def instruction_to_dict(op: Instruction) -> dict:
    d: dict = {"kind": op.kind.value}
    if op.qubits:
        d["q"] = list(op.qubits)
    if op.angle is not None:
        d["angle"] = op.angle
    if op.axis is not None:
        d["axis"] = op.axis
    if op.parity is not None:
        d["parity"] = op.parity
    if op.direction is not None:
        d["dir"] = op.direction
    if op.src:
        d["src"] = list(op.src)
    return d


def instruction_from_dict(d: dict) -> Instruction:
    return Instruction(
        kind=InstrKind(d["kind"]),
        qubits=tuple(d.get("q", ())),
        angle=d.get("angle"),
        axis=d.get("axis"),
        parity=d.get("parity"),
        direction=d.get("dir"),
        src=tuple(d.get("src", ())),
    )


def schedule_to_doc(s: Schedule) -> dict:
    doc = {
        "name": s.name,
        "n": s.n_qubits,
        "grid": s.grid_n,
        "placement": [list(p) for p in s.placement],
        "cycles": [
            {"type": c.type.value, "ops": [instruction_to_dict(op) for op in c.ops]}
            for c in s.cycles
        ],
        "positions": [[list(p) for p in unpack_positions(snap)] for snap in s.positions],
    }
    if s.circuit is not None:
        doc["circuit"] = circuit_to_dict(s.circuit)
    return doc


def schedule_from_doc(doc: dict) -> Schedule:
    cycles = tuple(
        Cycle(CycleType(c["type"]), tuple(instruction_from_dict(op) for op in c["ops"]))
        for c in doc["cycles"]
    )
    positions = tuple(pack_positions(snap) for snap in doc["positions"])
    circuit = circuit_from_dict(doc["circuit"]) if "circuit" in doc else None
    return Schedule(
        name=doc.get("name", ""),
        n_qubits=doc["n"],
        grid_n=doc["grid"],
        placement=tuple(tuple(p) for p in doc["placement"]),
        cycles=cycles,
        positions=positions,
        circuit=circuit,
    )
