"""Architecture configuration: gate fidelity model and decomposition rules.

The JSON schema:

    {
      "fidelities": {
        "single_qubit": {"mean": 0.9999, "std": 0.00005},
        "shuttle":      {"mean": 0.9999, "std": 0.00005},
        "sqswap":       {"mean": 0.9998, "std": 0.00005}
      },
      "seed": 1,
      "decompositions": {
        "<kind>": [{"kind": "...", "angle": <rad>, "operand_roles": [..]}, ...]
      }
    }

Absent fields fall back to the defaults below. Decomposition templates are
listed in program order; operand_roles index into the source gate's operands.
The shipped CNOT rule was pinned by a brute-force unitary search: it equals
CNOT up to global phase to better than 1e-12 per entry.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .circuits import GateKind, NATIVE_KINDS, ROTATION_KINDS
from .errors import ConfigError

FIDELITY_CLASSES = ("single_qubit", "shuttle", "sqswap")

DEFAULT_MEANS = {"single_qubit": 0.9999, "shuttle": 0.9999, "sqswap": 0.9998}
DEFAULT_STD = 0.00005
DEFAULT_SEED = 1

_PI = math.pi


@dataclass(frozen=True)
class DecompStep:
    kind: GateKind
    angle: float | None
    roles: tuple[int, ...]


def _step(kind: str, angle: float | None, roles) -> DecompStep:
    return DecompStep(GateKind(kind), angle, tuple(roles))


# Program-order templates onto the native set. Each is unitary-equivalent to
# its source gate up to global phase (re-verified in the test suite).
DEFAULT_DECOMPOSITIONS: dict[GateKind, tuple[DecompStep, ...]] = {
    GateKind.H: (_step("rz", _PI, [0]), _step("ry", _PI / 2, [0])),
    GateKind.X: (_step("rx", _PI, [0]),),
    GateKind.Y: (_step("ry", _PI, [0]),),
    GateKind.Z: (_step("rz", _PI, [0]),),
    GateKind.S: (_step("rz", _PI / 2, [0]),),
    GateKind.SDG: (_step("rz", -_PI / 2, [0]),),
    GateKind.T: (_step("rz", _PI / 4, [0]),),
    GateKind.TDG: (_step("rz", -_PI / 4, [0]),),
    GateKind.CNOT: (
        _step("ry", _PI / 2, [1]),
        _step("sqswap", None, [0, 1]),
        _step("rz", _PI / 2, [0]),
        _step("rz", -_PI / 2, [1]),
        _step("sqswap", None, [0, 1]),
        _step("ry", -_PI / 2, [1]),
    ),
    GateKind.CZ: (
        _step("sqswap", None, [0, 1]),
        _step("rz", _PI, [0]),
        _step("sqswap", None, [0, 1]),
        _step("rz", _PI / 2, [0]),
        _step("rz", -_PI / 2, [1]),
    ),
}


@dataclass(frozen=True)
class ArchConfig:
    means: dict[str, float] = field(default_factory=lambda: dict(DEFAULT_MEANS))
    stds: dict[str, float] = field(default_factory=lambda: {c: DEFAULT_STD for c in FIDELITY_CLASSES})
    seed: int = DEFAULT_SEED
    decompositions: dict[GateKind, tuple[DecompStep, ...]] = field(
        default_factory=lambda: dict(DEFAULT_DECOMPOSITIONS)
    )


def _check_fidelity(name: str, value) -> float:
    if not isinstance(value, (int, float)) or isinstance(value, bool):
        raise ConfigError(f"fidelities.{name} must be a number, got {value!r}")
    if not 0.0 < value <= 1.0:
        raise ConfigError(f"fidelities.{name} must be in (0, 1], got {value}")
    return float(value)


def _parse_rule(src_kind: str, steps) -> tuple[GateKind, tuple[DecompStep, ...]]:
    try:
        kind = GateKind(src_kind)
    except ValueError:
        raise ConfigError(f"decompositions: unknown gate kind {src_kind!r}") from None
    if kind in NATIVE_KINDS:
        raise ConfigError(f"decompositions: {src_kind!r} is native, no rule allowed")
    if not isinstance(steps, list) or not steps:
        raise ConfigError(f"decompositions.{src_kind} must be a nonempty list")
    out = []
    for s in steps:
        try:
            step_kind = GateKind(s["kind"])
        except (KeyError, ValueError, TypeError):
            raise ConfigError(f"decompositions.{src_kind}: bad step {s!r}") from None
        if step_kind not in NATIVE_KINDS:
            raise ConfigError(
                f"decompositions.{src_kind}: template may contain only native kinds, got {s['kind']!r}"
            )
        roles = tuple(s.get("operand_roles", [0]))
        if not roles or any(not isinstance(r, int) or r < 0 for r in roles):
            raise ConfigError(f"decompositions.{src_kind}: bad operand_roles {roles}")
        angle = s.get("angle")
        if (angle is not None) != (step_kind in ROTATION_KINDS):
            raise ConfigError(f"decompositions.{src_kind}: angle iff rotation step, got {s!r}")
        out.append(DecompStep(step_kind, angle, roles))
    return kind, tuple(out)


def load_config(text: str) -> ArchConfig:
    """Parse a JSON config, filling defaults for absent fields.

    Raises ConfigError on schema violations (fidelity outside (0,1],
    non-native decomposition steps, unknown kinds).
    """
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config is not valid JSON: {e}") from None
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    known = {"fidelities", "seed", "decompositions"}
    unknown = set(raw) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    means = dict(DEFAULT_MEANS)
    stds = {c: DEFAULT_STD for c in FIDELITY_CLASSES}
    fids = raw.get("fidelities", {})
    if not isinstance(fids, dict):
        raise ConfigError("fidelities must be an object")
    for cls, spec in fids.items():
        if cls not in FIDELITY_CLASSES:
            raise ConfigError(f"unknown fidelity class {cls!r}")
        if not isinstance(spec, dict):
            raise ConfigError(f"fidelities.{cls} must be an object")
        if "mean" in spec:
            means[cls] = _check_fidelity(f"{cls}.mean", spec["mean"])
        if "std" in spec:
            std = spec["std"]
            if not isinstance(std, (int, float)) or isinstance(std, bool) or std < 0:
                raise ConfigError(f"fidelities.{cls}.std must be a nonnegative number")
            stds[cls] = float(std)

    seed = raw.get("seed", DEFAULT_SEED)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ConfigError(f"seed must be an integer, got {seed!r}")

    rules = dict(DEFAULT_DECOMPOSITIONS)
    for src_kind, steps in raw.get("decompositions", {}).items():
        kind, rule = _parse_rule(src_kind, steps)
        rules[kind] = rule

    return ArchConfig(means=means, stds=stds, seed=seed, decompositions=rules)
