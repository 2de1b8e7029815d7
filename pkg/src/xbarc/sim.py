"""Dense statevector simulation for small-scale equivalence checks.

Little-endian convention: basis index bit q holds qubit q, so the state
vector has length 2**n and qubit q maps to tensor axis n-1-q.
"""
from __future__ import annotations

import math

import numpy as np

from .circuits import Circuit, Gate, GateKind

SQRT2 = math.sqrt(2.0)


def rx_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def ry_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz_matrix(theta: float) -> np.ndarray:
    return np.array([[np.exp(-1j * theta / 2), 0], [0, np.exp(1j * theta / 2)]], dtype=complex)


SQSWAP_MATRIX = np.array(
    [
        [1, 0, 0, 0],
        [0, (1 + 1j) / 2, (1 - 1j) / 2, 0],
        [0, (1 - 1j) / 2, (1 + 1j) / 2, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)

_FIXED_1Q = {
    GateKind.H: np.array([[1, 1], [1, -1]], dtype=complex) / SQRT2,
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.Y: np.array([[0, -1j], [1j, 0]], dtype=complex),
    GateKind.Z: np.diag([1, -1]).astype(complex),
    GateKind.S: np.diag([1, 1j]).astype(complex),
    GateKind.SDG: np.diag([1, -1j]).astype(complex),
    GateKind.T: np.diag([1, np.exp(1j * np.pi / 4)]),
    GateKind.TDG: np.diag([1, np.exp(-1j * np.pi / 4)]),
}

CNOT_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
CZ_MATRIX = np.diag([1, 1, 1, -1]).astype(complex)


def gate_matrix(g: Gate) -> np.ndarray:
    if g.kind is GateKind.RX:
        return rx_matrix(g.angle)
    if g.kind is GateKind.RY:
        return ry_matrix(g.angle)
    if g.kind is GateKind.RZ:
        return rz_matrix(g.angle)
    if g.kind is GateKind.SQSWAP:
        return SQSWAP_MATRIX
    if g.kind is GateKind.CNOT:
        return CNOT_MATRIX
    if g.kind is GateKind.CZ:
        return CZ_MATRIX
    if g.kind in _FIXED_1Q:
        return _FIXED_1Q[g.kind]
    raise ValueError(f"no matrix for {g.kind.value}")


def zero_state(n: int) -> np.ndarray:
    state = np.zeros(2**n, dtype=complex)
    state[0] = 1.0
    return state


def random_product_state(n: int, rng: np.random.Generator) -> np.ndarray:
    state = np.array([1.0], dtype=complex)
    for _ in range(n):
        theta = rng.uniform(0, math.pi)
        phi = rng.uniform(0, 2 * math.pi)
        amp = np.array([math.cos(theta / 2), np.exp(1j * phi) * math.sin(theta / 2)])
        # qubit k is bit k of the index: new qubit becomes the high bit
        state = np.kron(amp, state)
    return state


def apply_1q(state: np.ndarray, n: int, q: int, u: np.ndarray) -> np.ndarray:
    t = state.reshape([2] * n)
    axis = n - 1 - q
    t = np.tensordot(u, t, axes=[[1], [axis]])
    t = np.moveaxis(t, 0, axis)
    return np.ascontiguousarray(t).reshape(-1)


def apply_2q(state: np.ndarray, n: int, q1: int, q2: int, u4: np.ndarray) -> np.ndarray:
    """u4 acts on |q1 q2> with q1 the high bit of the 4x4 basis."""
    t = state.reshape([2] * n)
    a1, a2 = n - 1 - q1, n - 1 - q2
    u = u4.reshape(2, 2, 2, 2)
    t = np.tensordot(u, t, axes=[[2, 3], [a1, a2]])
    t = np.moveaxis(t, [0, 1], [a1, a2])
    return np.ascontiguousarray(t).reshape(-1)


def apply_gate(state: np.ndarray, n: int, g: Gate) -> np.ndarray:
    m = gate_matrix(g)
    if len(g.qubits) == 1:
        return apply_1q(state, n, g.qubits[0], m)
    return apply_2q(state, n, g.qubits[0], g.qubits[1], m)


def simulate_circuit(circuit: Circuit, state: np.ndarray) -> np.ndarray:
    for g in circuit.gates:
        state = apply_gate(state, circuit.n_qubits, g)
    return state
