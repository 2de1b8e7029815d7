"""Command-line entry point.

Subcommands: compile, verify, stats, benchgen, sweep. Exit codes:
0 success, 1 usage error, 2 verification failure, 3 internal defensive
error. The SPINQ_SEED environment variable overrides the config seed.
"""
from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .benchgen import BenchSpec, gen_bernstein_vazirani, gen_random_uniform
from .circuits import Circuit
from .config import ArchConfig, load_config
from .crossbar import grid_for
from .errors import CompileError, XbarcError
from .instructions import Schedule, schedule_from_doc, schedule_to_doc
from .ir import counts_by_type, decompose, interaction_graph
from .mapper import initial_placement
from .metrics import CSV_COLUMNS, build_fidelity_map, csv_row, overhead_report
from .qasm import circuit_to_qasm, emit_output, parse_qasm
from .scheduler import timed_schedule
from .verifier import EQUIV_CAP, replay_verify, statevector_equiv, verify

FIDELITY_FLOOR = 1.0 - 1e-9


def _load_arch(path: str | None) -> ArchConfig:
    config = load_config(Path(path).read_text()) if path else load_config("{}")
    env_seed = os.environ.get("SPINQ_SEED")
    if env_seed is not None:
        try:
            seed = int(env_seed)
        except ValueError:
            raise XbarcError(f"SPINQ_SEED must be an integer, got {env_seed!r}") from None
        config = ArchConfig(
            means=config.means, stds=config.stds, seed=seed, decompositions=config.decompositions
        )
    return config


def _compile_circuit(circuit: Circuit, config: ArchConfig):
    dec = decompose(circuit, config)
    grid = initial_placement(dec, grid_for(dec.n_qubits))
    schedule, ms = timed_schedule(dec, grid, name=circuit.name)
    return dec, schedule, ms


def cmd_compile(args) -> int:
    config = _load_arch(args.config)
    circuit = parse_qasm(Path(args.input).read_text(), name=Path(args.input).stem)
    dec, schedule, ms = _compile_circuit(circuit, config)

    failed = False
    if not args.no_verify:
        report = verify(schedule, cap=EQUIV_CAP, seed=config.seed)
        fid = report.equivalence_fidelity
        failed = not report.replay_ok or (isinstance(fid, float) and fid < FIDELITY_FLOOR)
        if failed:
            print("verification FAILED:", json.dumps(report.to_json_dict()), file=sys.stderr)

    fmap = build_fidelity_map(grid_for(dec.n_qubits), config)
    metrics = overhead_report(dec, schedule, fmap, compile_time_ms=ms)
    qasm_text, doc = emit_output(schedule)
    doc["metrics"] = metrics.to_json_dict()
    Path(args.output).write_text(json.dumps(doc, indent=1))
    if args.emit_qasm:
        Path(args.emit_qasm).write_text(qasm_text)
    print(
        f"{schedule.name}: {metrics.n_decomposed} -> {metrics.n_final} instructions "
        f"({metrics.gate_overhead_pct:.1f}% gate overhead), depth {metrics.d_dependency} -> "
        f"{metrics.d_final} ({metrics.depth_overhead_pct:.1f}%), esp {metrics.esp:.4f}, "
        f"{ms:.1f} ms"
    )
    return 2 if failed else 0


def cmd_verify(args) -> int:
    doc = json.loads(Path(args.input).read_text())
    schedule = schedule_from_doc(doc)
    report = verify(schedule)
    print(json.dumps(report.to_json_dict(), indent=1))
    return 0 if report.replay_ok else 2


def cmd_stats(args) -> int:
    doc = json.loads(Path(args.input).read_text())
    schedule = schedule_from_doc(doc)
    print(f"name: {schedule.name}")
    print(f"qubits: {schedule.n_qubits} on a {schedule.grid_n}x{schedule.grid_n} grid")
    print(f"cycles: {schedule.depth}, instructions: {schedule.n_instructions}")
    if "metrics" in doc:
        m = doc["metrics"]
        print(f"gate overhead: {m['gate_overhead_pct']:.2f}%  depth overhead: "
              f"{m['depth_overhead_pct']:.2f}%  esp: {m['esp']:.6f}")
    if schedule.circuit is not None:
        counts = counts_by_type(schedule.circuit)
        singles = counts.n_xy + counts.n_z
        print(f"decomposed counts: xy={counts.n_xy} z={counts.n_z} twoq={counts.n_twoq}")
        # both conventions, since foreign circuits may use either
        share = 100.0 * counts.n_twoq / max(counts.n_total, 1)
        ratio = 100.0 * counts.n_twoq / singles if singles else float("inf")
        print(f"two-qubit percentage: {share:.2f}% of total, {ratio:.2f}% of single-qubit count")
        qig = interaction_graph(schedule.circuit)
        print(f"qig: {len(qig.edges)} edges, total weight {qig.total_weight}")
        print("qig edges:", json.dumps(qig.to_edge_list()))
        if args.qig:
            Path(args.qig).write_text(qig.to_dot())
            print(f"qig dot written to {args.qig}")
    return 0


def cmd_benchgen(args) -> int:
    if args.bv is not None:
        secret = args.secret if args.secret is not None else "1" * (args.bv - 1)
        circuit = gen_bernstein_vazirani(args.bv, secret)
    else:
        if args.qubits is None or args.gates is None:
            raise XbarcError("benchgen needs --qubits/--gates (or --bv)")
        spec = BenchSpec(args.qubits, args.gates, args.twoq, args.seed)
        circuit = gen_random_uniform(spec)
    Path(args.output).write_text(circuit_to_qasm(circuit))
    print(f"{circuit.name}: {len(circuit.gates)} gates on {circuit.n_qubits} qubits -> {args.output}")
    return 0


@dataclass(frozen=True)
class SweepSpec:
    qubits: tuple[int, int, int]  # start, stop (inclusive), step
    gates: tuple[int, int, int]
    twoq: tuple[int, int, int]
    seeds: int
    csv_path: str

    def points(self):
        for q in range(self.qubits[0], self.qubits[1] + 1, self.qubits[2]):
            for g in range(self.gates[0], self.gates[1] + 1, self.gates[2]):
                for p in range(self.twoq[0], self.twoq[1] + 1, self.twoq[2]):
                    for rep in range(self.seeds):
                        yield q, g, p, rep


def parse_range(text: str) -> tuple[int, int, int]:
    parts = text.split(":")
    if len(parts) == 1:
        a = int(parts[0])
        return (a, a, 1)
    if len(parts) == 2:
        return (int(parts[0]), int(parts[1]), 1)
    if len(parts) == 3:
        a, b, s = (int(p) for p in parts)
        if s <= 0:
            raise ValueError("range step must be positive")
        return (a, b, s)
    raise ValueError(f"bad range {text!r}, expected start:stop[:step]")


def run_sweep(spec: SweepSpec, config: ArchConfig) -> None:
    """Generate/compile/verify every grid point and append one CSV row each.

    Rows are deterministic apart from the timing column; per-point failures
    land in the error column and the sweep continues.
    """
    fmap_cache = {}
    with open(spec.csv_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_COLUMNS)
        for q, g, p, rep in spec.points():
            point_seed = int(
                np.random.SeedSequence([config.seed, q, g, p, rep]).generate_state(1)[0]
            )
            bench = BenchSpec(q, g, float(p), point_seed)
            try:
                circuit = gen_random_uniform(bench)
                dec, schedule, ms = _compile_circuit(circuit, config)
                replay = replay_verify(schedule)
                if not replay.replay_ok:
                    raise CompileError(
                        f"replay verification failed with {len(replay.violations)} violations"
                    )
                if dec.n_qubits <= EQUIV_CAP:
                    fid = statevector_equiv(dec, schedule, seed=config.seed)
                    if isinstance(fid, float) and fid < FIDELITY_FLOOR:
                        raise CompileError(f"equivalence fidelity {fid} below threshold")
                if schedule.grid_n not in fmap_cache:
                    fmap_cache[schedule.grid_n] = build_fidelity_map(
                        grid_for(dec.n_qubits), config
                    )
                metrics = overhead_report(dec, schedule, fmap_cache[schedule.grid_n], ms)
                writer.writerow(csv_row(metrics))
            except XbarcError as e:
                row = [bench.name, q] + [""] * (len(CSV_COLUMNS) - 3) + [str(e)]
                writer.writerow(row)


def cmd_sweep(args) -> int:
    config = _load_arch(args.config)
    spec = SweepSpec(
        qubits=parse_range(args.qubits),
        gates=parse_range(args.gates),
        twoq=parse_range(args.twoq),
        seeds=args.seeds,
        csv_path=args.csv,
    )
    run_sweep(spec, config)
    n_rows = sum(1 for _ in spec.points())
    print(f"sweep complete: {n_rows} rows -> {args.csv}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="xbarc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a QASM circuit onto the crossbar")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-c", "--config", default=None)
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--emit-qasm", default=None)
    p.add_argument("--no-verify", action="store_true")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("verify", help="replay-verify a compiled schedule document")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("stats", help="report circuit/schedule statistics and the QIG")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--qig", default=None, help="write the interaction graph as DOT")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("benchgen", help="generate benchmark circuits")
    p.add_argument("--qubits", type=int, default=None)
    p.add_argument("--gates", type=int, default=None)
    p.add_argument("--twoq", type=float, default=50.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--bv", type=int, default=None, help="Bernstein-Vazirani size")
    p.add_argument("--secret", default=None)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_benchgen)

    p = sub.add_parser("sweep", help="compile a benchmark grid and emit a CSV")
    p.add_argument("--qubits", required=True, help="start:stop[:step], stop inclusive")
    p.add_argument("--gates", required=True)
    p.add_argument("--twoq", required=True)
    p.add_argument("--seeds", type=int, default=1)
    p.add_argument("--csv", required=True)
    p.add_argument("-c", "--config", default=None)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 1 if e.code not in (0, None) else 0
    try:
        return args.func(args)
    except CompileError as e:
        print(f"internal error: {e}", file=sys.stderr)
        return 3
    except (XbarcError, OSError, ValueError, json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
