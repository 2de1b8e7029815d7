"""N x N dot-grid model with shared control lines and conflict detection.

Coordinates: x = column from the left, y = row from the bottom. Three line
families address the array:

  CL_i  vertical barrier between columns i and i+1, i in [0, N-1)
  RL_j  horizontal barrier between rows j and j+1, j in [0, N-1)
  QL_k  diagonal DC line through all sites with x - y = k

Grid boundaries act as always-raised barriers and carry no line id. In the
idle configuration every occupied site satisfies (x + y) % 2 == 0, which
guarantees empty horizontal/vertical neighbours for shuttling.

A shuttle of one qubit needs: (1) an empty destination, (2) the barrier
between origin and destination lowered, (3) every other barrier bordering
either site raised, (4) the destination QL voltage above the origin QL
voltage, and (5), for horizontal moves, every other qubit in the two
affected columns biased above its empty site across the lowered barrier so
it stays put. Only ordering relations between QL voltages matter, so (4)
and (5) become a digraph of strict inequalities; a parallel instruction set
is satisfiable exactly when the merged digraph is acyclic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, NamedTuple

from .errors import CompileError, CrossbarError
from .instructions import (
    CYCLE_FAMILY,
    Cycle,
    Instruction,
    InstrKind,
    MOVE_KINDS,
    SG_KINDS,
    pack_positions,
)


class Line(NamedTuple):
    family: str  # "CL" | "RL"
    index: int

    def __repr__(self):
        return f"{self.family}_{self.index}"


class ConflictKind(Enum):
    QL_CONTRADICTION = "ql_contradiction"
    BARRIER_CLASH = "barrier_clash"
    UNWANTED_INTERACTION = "unwanted_interaction"
    BLOCKED_PATH = "blocked_path"
    MIXED_TYPES = "mixed_types"


@dataclass(frozen=True)
class ConflictReport:
    ok: bool
    kind: ConflictKind | None = None
    culprits: tuple[int, ...] = ()
    detail: str = ""
    ql_pairs: tuple[tuple[int, int], ...] = ()  # merged inequality set, dest > origin order

    @property
    def verdict(self) -> str:
        return "ok" if self.ok else "conflict"


@dataclass(frozen=True)
class SignalRequirements:
    lowered: frozenset[Line]
    raised: frozenset[Line]
    ql_gt: frozenset[tuple[int, int]]  # (a, b) means voltage(QL_a) > voltage(QL_b)

    def __post_init__(self):
        if self.lowered & self.raised:
            raise CompileError(f"barrier both lowered and raised: {self.lowered & self.raised}")
        if any(a == b for a, b in self.ql_gt):
            raise CompileError("reflexive QL inequality")


class Grid:
    """Immutable qubit -> site bijection on an N x N array.

    Methods return new Grid values; instances are never mutated after
    construction, so they are safe to share and to key position history on.
    """

    __slots__ = ("n", "pos", "_site_map")

    def __init__(self, n: int, pos: tuple[tuple[int, int], ...]):
        self.n = n
        self.pos = tuple(tuple(p) for p in pos)
        site_map = {}
        for q, site in enumerate(self.pos):
            x, y = site
            if not (0 <= x < n and 0 <= y < n):
                raise CrossbarError(f"qubit {q} at {site} outside {n}x{n} grid")
            if site in site_map:
                raise CrossbarError(f"qubits {site_map[site]} and {q} share site {site}")
            site_map[site] = q
        self._site_map = site_map

    @property
    def n_qubits(self) -> int:
        return len(self.pos)

    def site_of(self, q: int) -> tuple[int, int]:
        return self.pos[q]

    def qubit_at(self, site: tuple[int, int]) -> int | None:
        return self._site_map.get(site)

    def occupied(self, site) -> bool:
        return tuple(site) in self._site_map

    def in_grid(self, site) -> bool:
        x, y = site
        return 0 <= x < self.n and 0 <= y < self.n

    def move(self, q: int, site: tuple[int, int]) -> "Grid":
        pos = list(self.pos)
        pos[q] = tuple(site)
        return Grid(self.n, tuple(pos))

    def is_checkerboard(self) -> bool:
        return all((x + y) % 2 == 0 for x, y in self.pos)

    def column_parity(self, q: int) -> int:
        return self.pos[q][0] % 2

    def parity_members(self, parity: int) -> tuple[int, ...]:
        return tuple(q for q in range(len(self.pos)) if self.pos[q][0] % 2 == parity)

    def packed(self) -> bytes:
        return pack_positions(self.pos)

    def __eq__(self, other):
        return isinstance(other, Grid) and self.n == other.n and self.pos == other.pos

    def __hash__(self):
        return hash((self.n, self.pos))

    def __repr__(self):
        return f"Grid(n={self.n}, pos={self.pos})"


def checkerboard_sites(n: int):
    """Checkerboard sites in left-to-right, bottom-to-top order."""
    for y in range(n):
        for x in range(n):
            if (x + y) % 2 == 0:
                yield (x, y)


def grid_for(n_qubits: int) -> Grid:
    """Smallest grid whose checkerboard holds n_qubits, trivially placed.

    N is the least integer with ceil(N^2 / 2) >= n_qubits; qubit i sits on
    the i-th checkerboard site in left-to-right, bottom-to-top order.
    """
    if n_qubits < 1:
        raise ValueError("need at least one qubit")
    n = 1
    while (n * n + 1) // 2 < n_qubits:
        n += 1
    sites = []
    for site in checkerboard_sites(n):
        sites.append(site)
        if len(sites) == n_qubits:
            break
    return Grid(n, tuple(sites))


def ql_index(site) -> int:
    x, y = site
    return x - y


def site_barriers(site, n: int) -> set[Line]:
    """Interior barriers bordering a site (boundaries are always raised)."""
    x, y = site
    out = set()
    if x >= 1:
        out.add(Line("CL", x - 1))
    if x <= n - 2:
        out.add(Line("CL", x))
    if y >= 1:
        out.add(Line("RL", y - 1))
    if y <= n - 2:
        out.add(Line("RL", y))
    return out


def barrier_between(a, b) -> Line:
    ax, ay = a
    bx, by = b
    if ay == by and abs(ax - bx) == 1:
        return Line("CL", min(ax, bx))
    if ax == bx and abs(ay - by) == 1:
        return Line("RL", min(ay, by))
    raise CompileError(f"sites {a} and {b} are not adjacent")


_DELTAS = {"L": (-1, 0), "R": (1, 0), "U": (0, 1), "D": (0, -1)}


def _shuttle_signals(grid: Grid, q: int, direction: str, movers: frozenset[int]) -> SignalRequirements:
    """Signal requirements for moving q one site; stay-put constraints are
    emitted only for qubits outside `movers`."""
    origin = grid.site_of(q)
    dx, dy = _DELTAS[direction]
    dest = (origin[0] + dx, origin[1] + dy)
    if not grid.in_grid(dest):
        raise CrossbarError(f"shuttle of qubit {q} {direction} leaves the grid from {origin}")
    barrier = barrier_between(origin, dest)
    lowered = {barrier}
    raised = (site_barriers(origin, grid.n) | site_barriers(dest, grid.n)) - lowered
    ql_gt = {(ql_index(dest), ql_index(origin))}
    if dy == 0:
        # horizontal move: bias every other qubit in the two affected
        # columns above its empty neighbour across the lowered barrier
        cols = (origin[0], dest[0])
        for other in range(grid.n_qubits):
            if other == q or other in movers:
                continue
            ox, oy = grid.site_of(other)
            if ox not in cols:
                continue
            across = (dest[0] if ox == origin[0] else origin[0], oy)
            if not grid.occupied(across):
                ql_gt.add((ql_index((ox, oy)), ql_index(across)))
    return SignalRequirements(frozenset(lowered), frozenset(raised), frozenset(ql_gt))


def shuttle_requirements(grid: Grid, q: int, direction: str) -> SignalRequirements:
    """Requirements for a lone shuttle of q one site L/R/U/D.

    Raises CrossbarError (kind BLOCKED_PATH) when the destination is
    occupied, and a plain CrossbarError for out-of-grid moves.
    """
    origin = grid.site_of(q)
    dx, dy = _DELTAS[direction]
    dest = (origin[0] + dx, origin[1] + dy)
    if grid.in_grid(dest) and grid.occupied(dest):
        raise CrossbarError(
            f"destination {dest} of qubit {q} is occupied", kind=ConflictKind.BLOCKED_PATH
        )
    return _shuttle_signals(grid, q, direction, frozenset({q}))


def _sqswap_signals(grid: Grid, a: int, b: int) -> SignalRequirements:
    sa, sb = grid.site_of(a), grid.site_of(b)
    if sa[0] != sb[0] or abs(sa[1] - sb[1]) != 1:
        raise CrossbarError(f"sqswap({a},{b}) needs vertically adjacent sites, got {sa}, {sb}")
    barrier = barrier_between(sa, sb)
    lowered = {barrier}
    raised = (site_barriers(sa, grid.n) | site_barriers(sb, grid.n)) - lowered
    # the two QL lines must sit at equal potential; equality adds no
    # ordering constraint to the inequality digraph
    return SignalRequirements(frozenset(lowered), frozenset(raised), frozenset())


def _instr_direction(op: Instruction) -> str:
    if op.kind is InstrKind.SH_L:
        return "L"
    if op.kind is InstrKind.SH_R:
        return "R"
    if op.kind is InstrKind.SH_U:
        return "U"
    if op.kind is InstrKind.SH_D:
        return "D"
    return op.direction  # zsh / zsh_ret


def _find_ql_cycle(pairs: Iterable[tuple[int, int]]) -> list[int] | None:
    """Return one cycle (as node list) in the a->b digraph, or None."""
    adj: dict[int, list[int]] = {}
    for a, b in pairs:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, [])
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {v: WHITE for v in adj}
    parent: dict[int, int] = {}
    for root in adj:
        if color[root] != WHITE:
            continue
        stack = [(root, iter(adj[root]))]
        color[root] = GRAY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == WHITE:
                    color[nxt] = GRAY
                    parent[nxt] = node
                    stack.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
                if color[nxt] == GRAY:
                    cycle = [nxt, node]
                    cur = node
                    while cur != nxt:
                        cur = parent[cur]
                        cycle.append(cur)
                    cycle.reverse()
                    return cycle
            if not advanced:
                color[node] = BLACK
                stack.pop()
        # exhausted component
    return None


def check_parallel_set(grid: Grid, instructions) -> ConflictReport:
    """Can these instructions share one cycle on this grid?

    Intended movers contribute mover constraints; only non-movers
    contribute stay-put constraints. Conflicts are classified as
    MIXED_TYPES, BLOCKED_PATH, BARRIER_CLASH, UNWANTED_INTERACTION or
    QL_CONTRADICTION (checked in that order).
    """
    ops = tuple(instructions)
    if not ops:
        return ConflictReport(ok=True)

    families = {CYCLE_FAMILY[op.kind] for op in ops}
    if len(families) > 1:
        return ConflictReport(
            ok=False,
            kind=ConflictKind.MIXED_TYPES,
            culprits=tuple(range(len(ops))),
            detail=f"instruction families {sorted(f.value for f in families)} cannot share a cycle",
        )

    if all(op.kind in SG_KINDS for op in ops):
        distinct = {(op.kind, op.axis, op.angle, op.parity) for op in ops}
        if len(distinct) > 1:
            return ConflictReport(
                ok=False,
                kind=ConflictKind.BARRIER_CLASH,
                culprits=tuple(range(len(ops))),
                detail="conflicting semi-global drives on the shared column lines",
            )
        return ConflictReport(ok=True)

    movers = frozenset(op.qubits[0] for op in ops if op.kind in MOVE_KINDS)

    # per-instruction signal requirements
    reqs: list[SignalRequirements] = []
    dests: dict[int, tuple[int, int]] = {}
    for i, op in enumerate(ops):
        if op.kind in MOVE_KINDS:
            q = op.qubits[0]
            direction = _instr_direction(op)
            origin = grid.site_of(q)
            dx, dy = _DELTAS[direction]
            dest = (origin[0] + dx, origin[1] + dy)
            if not grid.in_grid(dest):
                return ConflictReport(
                    ok=False,
                    kind=ConflictKind.BLOCKED_PATH,
                    culprits=(i,),
                    detail=f"qubit {q} shuttled off-grid from {origin}",
                )
            dests[i] = dest
            reqs.append(_shuttle_signals(grid, q, direction, movers))
        elif op.kind is InstrKind.SQSWAP:
            try:
                reqs.append(_sqswap_signals(grid, op.qubits[0], op.qubits[1]))
            except CrossbarError as e:
                return ConflictReport(
                    ok=False, kind=ConflictKind.BLOCKED_PATH, culprits=(i,), detail=str(e)
                )
        else:  # pragma: no cover - families filtered above
            raise CompileError(f"unexpected kind {op.kind}")

    merged_pairs: list[tuple[int, int]] = []
    pair_owner: dict[tuple[int, int], list[int]] = {}
    for i, r in enumerate(reqs):
        for p in sorted(r.ql_gt):
            if p not in pair_owner:
                merged_pairs.append(p)
            pair_owner.setdefault(p, []).append(i)
    ql_pairs = tuple(merged_pairs)

    # blocked paths: duplicate movers, shared destinations, occupied destinations
    seen_mover: dict[int, int] = {}
    for i, op in enumerate(ops):
        if op.kind not in MOVE_KINDS:
            continue
        q = op.qubits[0]
        if q in seen_mover:
            return ConflictReport(
                ok=False,
                kind=ConflictKind.BLOCKED_PATH,
                culprits=(seen_mover[q], i),
                detail=f"qubit {q} moved by two instructions",
                ql_pairs=ql_pairs,
            )
        seen_mover[q] = i
    seen_dest: dict[tuple[int, int], int] = {}
    for i, dest in dests.items():
        if dest in seen_dest:
            return ConflictReport(
                ok=False,
                kind=ConflictKind.BLOCKED_PATH,
                culprits=(seen_dest[dest], i),
                detail=f"two instructions target {dest}",
                ql_pairs=ql_pairs,
            )
        seen_dest[dest] = i
        if grid.occupied(dest):
            return ConflictReport(
                ok=False,
                kind=ConflictKind.BLOCKED_PATH,
                culprits=(i,),
                detail=f"destination {dest} is occupied",
                ql_pairs=ql_pairs,
            )

    # barrier clashes between lowered and raised sets
    for i, ri in enumerate(reqs):
        for j, rj in enumerate(reqs):
            if i == j:
                continue
            clash = ri.lowered & rj.raised
            if clash:
                return ConflictReport(
                    ok=False,
                    kind=ConflictKind.BARRIER_CLASH,
                    culprits=(i, j),
                    detail=f"{sorted(clash)} lowered by one instruction, raised by another",
                    ql_pairs=ql_pairs,
                )

    # unwanted interactions: a lowered barrier also separating an occupied
    # pair elsewhere couples those qubits regardless of QL relations
    for i, op in enumerate(ops):
        if op.kind in MOVE_KINDS:
            q = op.qubits[0]
            origin = grid.site_of(q)
            direction = _instr_direction(op)
            dx, dy = _DELTAS[direction]
            if dy != 0:  # vertical shuttle lowers RL_j in one column
                j = min(origin[1], origin[1] + dy)
                for col in range(grid.n):
                    if col == origin[0]:
                        continue
                    if grid.occupied((col, j)) and grid.occupied((col, j + 1)):
                        return ConflictReport(
                            ok=False,
                            kind=ConflictKind.UNWANTED_INTERACTION,
                            culprits=(i,),
                            detail=f"RL_{j} lowered while column {col} holds an occupied pair",
                            ql_pairs=ql_pairs,
                        )
            else:  # horizontal shuttle lowers CL_i in one row
                ci = min(origin[0], origin[0] + dx)
                for row in range(grid.n):
                    if row == origin[1]:
                        continue
                    if grid.occupied((ci, row)) and grid.occupied((ci + 1, row)):
                        return ConflictReport(
                            ok=False,
                            kind=ConflictKind.UNWANTED_INTERACTION,
                            culprits=(i,),
                            detail=f"CL_{ci} lowered while row {row} holds an occupied pair",
                            ql_pairs=ql_pairs,
                        )
        elif op.kind is InstrKind.SQSWAP:
            sa, sb = grid.site_of(op.qubits[0]), grid.site_of(op.qubits[1])
            j = min(sa[1], sb[1])
            for col in range(grid.n):
                if col == sa[0]:
                    continue
                if grid.occupied((col, j)) and grid.occupied((col, j + 1)):
                    return ConflictReport(
                        ok=False,
                        kind=ConflictKind.UNWANTED_INTERACTION,
                        culprits=(i,),
                        detail=f"RL_{j} lowered while column {col} holds an occupied pair",
                        ql_pairs=ql_pairs,
                    )

    cycle = _find_ql_cycle(merged_pairs)
    if cycle is not None:
        edge_set = set(zip(cycle, cycle[1:]))
        culprits = sorted({i for p, owners in pair_owner.items() if p in edge_set for i in owners})
        return ConflictReport(
            ok=False,
            kind=ConflictKind.QL_CONTRADICTION,
            culprits=tuple(culprits),
            detail="QL inequality cycle " + " > ".join(f"QL_{v}" for v in cycle),
            ql_pairs=ql_pairs,
        )

    return ConflictReport(ok=True, ql_pairs=ql_pairs)


def apply_op(grid: Grid, op: Instruction) -> Grid:
    """Advance positions by one instruction (defensive legality re-check)."""
    if op.kind in MOVE_KINDS:
        q = op.qubits[0]
        x, y = grid.site_of(q)
        dx, dy = op.move_delta()
        dest = (x + dx, y + dy)
        if not grid.in_grid(dest):
            raise CrossbarError(f"{op.kind.value} moves qubit {q} off-grid to {dest}")
        if grid.occupied(dest):
            raise CrossbarError(
                f"{op.kind.value} destination {dest} occupied", kind=ConflictKind.BLOCKED_PATH
            )
        return grid.move(q, dest)
    if op.kind is InstrKind.SQSWAP:
        sa, sb = grid.site_of(op.qubits[0]), grid.site_of(op.qubits[1])
        if sa[0] != sb[0] or abs(sa[1] - sb[1]) != 1:
            raise CrossbarError(f"sqswap operands not vertically adjacent: {sa}, {sb}")
        return grid
    return grid  # semi-global rotations leave positions unchanged


def apply_cycle(grid: Grid, cycle: Cycle) -> Grid:
    for op in cycle.ops:
        grid = apply_op(grid, op)
    return grid
