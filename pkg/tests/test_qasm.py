"""QASM parsing, emission and schedule-document round trips."""
import json
import math

import pytest

from xbarc import GateKind, emit_output, parse_qasm, schedule_from_doc
from xbarc.errors import QasmError
from xbarc.instructions import Cycle, CycleType, Instruction, InstrKind, Schedule
from xbarc.qasm import MeasurementDropped, circuit_to_qasm

from conftest import compile_native


def test_minimal_cx():
    c = parse_qasm("qreg q[2]; cx q[0],q[1];")
    assert c.n_qubits == 2
    assert [(g.kind, g.qubits) for g in c.gates] == [(GateKind.CNOT, (0, 1))]


def test_zero_angle_rotation():
    c = parse_qasm("qreg q[1]; rz(0) q[0];")
    assert c.gates[0].kind is GateKind.RZ
    assert c.gates[0].angle == 0.0


def test_measure_dropped_with_warning():
    src = "qreg q[3]; h q[0]; cx q[0],q[2]; measure q -> c;"
    with pytest.warns(MeasurementDropped):
        c = parse_qasm(src)
    assert c.n_qubits == 3
    assert [(g.kind, g.qubits) for g in c.gates] == [(GateKind.H, (0,)), (GateKind.CNOT, (0, 2))]


def test_header_and_include_tolerated():
    src = 'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\nh q[0];\n'
    with pytest.warns(UserWarning):
        c = parse_qasm(src)
    assert len(c.gates) == 1


def test_pi_expressions():
    c = parse_qasm("qreg q[1]; rx(pi/2) q[0]; ry(-pi) q[0]; rz(3*pi/4) q[0];")
    assert c.gates[0].angle == pytest.approx(math.pi / 2)
    assert c.gates[1].angle == pytest.approx(-math.pi)
    assert c.gates[2].angle == pytest.approx(3 * math.pi / 4)


@pytest.mark.parametrize(
    "src,fragment",
    [
        ("qreg q[2]; qreg r[2];", "multiple qreg"),
        ("qreg q[2]; foo q[0];", "unknown gate"),
        ("qreg q[2]; h q[5];", "out of register bounds"),
        ("qreg q[2]; h r[0];", "unknown register"),
        ("h q[0];", "before qreg"),
        ("qreg q[2]; cx q[0];", "takes 2 operand"),
        ("qreg q[2]; rx q[0];", "parameter mismatch"),
        ("qreg q[2]; barrier q;", "unknown gate"),
        ("qreg q[2]; rx(bogus) q[0];", "unknown symbol"),
        ("qreg q[2]; h q[0]", "not terminated"),
    ],
)
def test_positioned_errors(src, fragment):
    with pytest.raises(QasmError) as exc:
        parse_qasm(src)
    assert fragment in str(exc.value)
    assert "line" in str(exc.value)


def test_error_line_numbers():
    with pytest.raises(QasmError) as exc:
        parse_qasm("qreg q[2];\nh q[0];\nfoo q[1];\n")
    assert exc.value.line == 3


def test_comments_ignored():
    c = parse_qasm("// top\nqreg q[1]; // reg\nh q[0]; // gate\n")
    assert len(c.gates) == 1


class TestEmit:
    def test_empty_schedule(self):
        s = Schedule("empty", 2, 2, ((0, 0), (1, 1)), (), ())
        text, doc = emit_output(s)
        assert "qreg q[2];" in text
        assert "// cycle" not in text
        assert doc["cycles"] == []

    def test_single_twoq_cycle_format(self):
        cyc = Cycle(CycleType.TWOQ, (Instruction(InstrKind.SQSWAP, (0, 1)),))
        s = Schedule("one", 2, 2, ((1, 0), (1, 1)), (cyc,), (b"\x01\x00\x01\x01",))
        text, _ = emit_output(s)
        assert "// cycle 0 [twoq]" in text
        assert "sqswap q[0],q[1];" in text

    def test_doc_round_trip_for_compiled_cnot(self):
        dec, s = compile_native(parse_qasm("qreg q[2]; cx q[0],q[1];", name="rt"))
        _, doc = emit_output(s)
        again = schedule_from_doc(json.loads(json.dumps(doc)))
        assert again == s
        assert again.cycles == s.cycles

    def test_cycle_count_matches_depth(self):
        dec, s = compile_native(parse_qasm("qreg q[2]; cx q[0],q[1];", name="d"))
        _, doc = emit_output(s)
        assert len(doc["cycles"]) == s.depth


def test_circuit_to_qasm_round_trip():
    src = "qreg q[3]; h q[0]; rx(0.25) q[1]; sqswap q[0],q[2]; cz q[1],q[2];"
    c = parse_qasm(src, name="x")
    again = parse_qasm(circuit_to_qasm(c), name="x")
    assert again.gates == c.gates
    assert again.n_qubits == c.n_qubits
