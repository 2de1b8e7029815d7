"""Placement and routing onto the grid.

Two-qubit gates route the first operand through a chain of diagonal steps
(shuttle-based exchanges with whoever occupies the step target, or a plain
two-shuttle move onto an empty checkerboard site) until it sits diagonally
adjacent to the second operand, then a horizontal shuttle / sqswap /
horizontal shuttle triplet performs the interaction and restores the
checkerboard. Z rotations ride a timed shuttle to a neighbouring column and
back. Targeted X/Y rotations use the semi-global compensation scheme:
rotate the target's column parity, shuttle the targets out, rotate the
parity back, shuttle the targets home.
"""
from __future__ import annotations

from dataclasses import dataclass

from .circuits import Circuit
from .crossbar import Grid, apply_cycle, check_parallel_set, checkerboard_sites
from .errors import CompileError, MapperConflict
from .instructions import Cycle, CycleType, Instruction, InstrKind


@dataclass(frozen=True)
class RoutedBlock:
    """Instruction cycles realizing one source gate (or one gate group)."""

    block_type: str  # "twoq" | "z" | "xy"
    cycles: tuple[Cycle, ...]
    sources: tuple[int, ...]

    @property
    def instructions(self) -> tuple[Instruction, ...]:
        return tuple(op for c in self.cycles for op in c.ops)


def initial_placement(circuit: Circuit, grid: Grid) -> Grid:
    """Trivial one-to-one placement: qubit i on the i-th checkerboard site
    in left-to-right, bottom-to-top order."""
    sites = []
    for site in checkerboard_sites(grid.n):
        sites.append(site)
        if len(sites) == circuit.n_qubits:
            break
    if len(sites) < circuit.n_qubits:
        raise CompileError(f"{grid.n}x{grid.n} grid cannot hold {circuit.n_qubits} qubits")
    return Grid(grid.n, tuple(sites))


def _h_shuttle(q: int, dx: int, src) -> Instruction:
    return Instruction(InstrKind.SH_R if dx > 0 else InstrKind.SH_L, (q,), src=tuple(src))


def _v_shuttle(q: int, dy: int, src) -> Instruction:
    return Instruction(InstrKind.SH_U if dy > 0 else InstrKind.SH_D, (q,), src=tuple(src))


def _checked(grid: Grid, cycle: Cycle) -> Grid:
    report = check_parallel_set(grid, cycle.ops)
    if not report.ok:
        raise CompileError(f"internal routing conflict: {report.kind.value}: {report.detail}")
    return apply_cycle(grid, cycle)


def _pick_corner(grid: Grid, a_site, b_site):
    """Diagonal-neighbour site of b minimizing the step count from a.

    Step count from s to t over diagonal moves is max(|dx|, |dy|); ties
    prefer the corner nearest a in x, then lower column, then lower row.
    """
    ax, ay = a_site
    bx, by = b_site
    best = None
    for cx in (-1, 1):
        for cy in (-1, 1):
            t = (bx + cx, by + cy)
            if not grid.in_grid(t):
                continue
            k = max(abs(ax - t[0]), abs(ay - t[1]))
            key = (k, abs(ax - t[0]), t[0], t[1])
            if best is None or key < best[0]:
                best = (key, t)
    if best is None:  # pragma: no cover - impossible for N >= 2
        raise CompileError(f"no diagonal neighbour of {b_site} inside the grid")
    return best[1]


def _diagonal_path(grid: Grid, start, target):
    """Diagonal unit steps from start to target (both checkerboard sites)."""
    steps = []
    px, py = start
    tx, ty = target
    while (px, py) != (tx, ty):
        if px < tx:
            sx = 1
        elif px > tx:
            sx = -1
        else:  # wiggle x, preferring the lower column
            sx = -1 if px - 1 >= 0 else 1
        if py < ty:
            sy = 1
        elif py > ty:
            sy = -1
        else:
            sy = -1 if py - 1 >= 0 else 1
        px, py = px + sx, py + sy
        steps.append((sx, sy))
    return steps


def route_two_qubit(grid: Grid, a: int, b: int, src: int = 0) -> RoutedBlock:
    """Route qubit a next to b and emit the interaction cycles.

    k diagonal steps (k = Chebyshev(a, b) - 1) bring a diagonally adjacent
    to b; each step is two 2-instruction parallel shuttle cycles when the
    step target is occupied (a shuttle-based exchange, 4 instructions /
    2 cycles) or two 1-instruction cycles onto an empty site. The block
    ends with [horizontal shuttle of a into b's column, sqswap, horizontal
    shuttle back]; the checkerboard is broken only inside those cycles.
    """
    if a == b:
        raise ValueError("two-qubit gate needs distinct operands")
    cycles: list[Cycle] = []
    a_site, b_site = grid.site_of(a), grid.site_of(b)
    corner = _pick_corner(grid, a_site, b_site)
    srcs = (src,)

    for sx, sy in _diagonal_path(grid, a_site, corner):
        px, py = grid.site_of(a)
        step_target = (px + sx, py + sy)
        partner = grid.qubit_at(step_target)
        h_ops = [_h_shuttle(a, sx, srcs)]
        v_ops = [_v_shuttle(a, sy, srcs)]
        if partner is not None:
            h_ops.append(_h_shuttle(partner, -sx, srcs))
            v_ops.append(_v_shuttle(partner, -sy, srcs))
        for ops in (h_ops, v_ops):
            cycle = Cycle(CycleType.SHUTTLE, tuple(ops))
            grid = _checked(grid, cycle)
            cycles.append(cycle)

    ax, ay = grid.site_of(a)
    bx, by = grid.site_of(b)
    if abs(ax - bx) != 1 or abs(ay - by) != 1:
        raise CompileError(f"routing left {a} at {(ax, ay)}, not diagonal to {b} at {(bx, by)}")

    dx = bx - ax
    cycle_in = Cycle(CycleType.SHUTTLE, (_h_shuttle(a, dx, srcs),))
    grid = _checked(grid, cycle_in)
    cycles.append(cycle_in)

    swap = Cycle(CycleType.TWOQ, (Instruction(InstrKind.SQSWAP, (a, b), src=srcs),))
    grid = _checked(grid, swap)
    cycles.append(swap)

    cycle_out = Cycle(CycleType.SHUTTLE, (_h_shuttle(a, -dx, srcs),))
    grid = _checked(grid, cycle_out)
    cycles.append(cycle_out)

    return RoutedBlock("twoq", tuple(cycles), srcs)


def z_route(grid: Grid, q: int, angle: float, src: int = 0) -> RoutedBlock:
    """Z rotation as a phase-carrying shuttle to a neighbouring column and
    back; the empty horizontal neighbour with the lower column index wins
    ties."""
    x, y = grid.site_of(q)
    direction = None
    if x - 1 >= 0 and not grid.occupied((x - 1, y)):
        direction = "L"
    elif x + 1 < grid.n and not grid.occupied((x + 1, y)):
        direction = "R"
    if direction is None:
        raise MapperConflict(f"both horizontal neighbours of qubit {q} at {(x, y)} are blocked")
    out = Cycle(
        CycleType.Z,
        (Instruction(InstrKind.ZSH, (q,), angle=angle, direction=direction, src=(src,)),),
    )
    back = Cycle(
        CycleType.SHUTTLE,
        (
            Instruction(
                InstrKind.ZSH_RET,
                (q,),
                direction="L" if direction == "R" else "R",
                src=(src,),
            ),
        ),
    )
    grid = _checked(grid, out)
    _checked(grid, back)
    return RoutedBlock("z", (out, back), (src,))


def expand_semi_global(
    grid: Grid,
    targets,
    axis: str,
    angle: float,
    sources: dict[int, int] | None = None,
) -> RoutedBlock:
    """Semi-global X/Y rotation on `targets`, all in one column parity.

    If the targets are exactly the parity population, one pulse suffices.
    Otherwise: pulse the parity, shuttle every target to the other parity
    (common direction, right unless blocked, else left), pulse the inverse,
    shuttle back. Raises MapperConflict when no common direction exists or
    the shuttle cycles conflict; the scheduler then splits the group.
    """
    targets = tuple(sorted(targets))
    if not targets:
        raise ValueError("empty target set")
    parities = {grid.column_parity(q) for q in targets}
    if len(parities) > 1:
        raise ValueError(f"targets span both column parities: {targets}")
    parity = parities.pop()
    sources = sources or {}
    all_src = tuple(sorted({sources.get(q, 0) for q in targets}))

    rot = Instruction(InstrKind.SG_ROT, angle=angle, axis=axis, parity=parity, src=all_src)
    if set(targets) == set(grid.parity_members(parity)):
        return RoutedBlock("xy", (Cycle(CycleType.XY_ROT, (rot,)),), all_src)

    def can_move(q, dx):
        x, y = grid.site_of(q)
        dest = (x + dx, y)
        return grid.in_grid(dest) and not grid.occupied(dest)

    if all(can_move(q, 1) for q in targets):
        dx = 1
    elif all(can_move(q, -1) for q in targets):
        dx = -1
    else:
        raise MapperConflict(f"no common shuttle direction for targets {targets}")

    out_ops = tuple(_h_shuttle(q, dx, (sources.get(q, 0),)) for q in targets)
    back_ops = tuple(_h_shuttle(q, -dx, (sources.get(q, 0),)) for q in targets)
    inv = Instruction(InstrKind.SG_ROT_INV, angle=-angle, axis=axis, parity=parity, src=all_src)

    cycles = (
        Cycle(CycleType.XY_ROT, (rot,)),
        Cycle(CycleType.SHUTTLE, out_ops),
        Cycle(CycleType.XY_ROT_INV, (inv,)),
        Cycle(CycleType.SHUTTLE, back_ops),
    )
    g = grid
    for cycle in cycles:
        report = check_parallel_set(g, cycle.ops)
        if not report.ok:
            raise MapperConflict(
                f"scheme shuttles conflict ({report.kind.value}): {report.detail}"
            )
        g = apply_cycle(g, cycle)
    return RoutedBlock("xy", cycles, all_src)
