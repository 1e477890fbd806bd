"""Gate circuits and their compilation to measurement patterns.

Every single-qubit gate is rewritten as a product of J(θ) = H·Rz(θ), and each
J becomes one link of a measurement chain: a fresh node j is entangled with the
wire front i, i is measured at −θ and j receives X^{s_i}. CZ becomes a single
E between the two wire fronts. The result is standardized.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from constants import MAX_WIRES
from errors import NotUnitary, UnsupportedGate, WireOutOfRange
from matfield import Matrix, random_unitary
from mbqc_pattern import Pattern, Command, N, E, M, X, standardize
from qf_configloader import DEFAULT_TOLERANCES, Tolerances


class GateKind(str, Enum):
    RZ = "rz"
    RX = "rx"
    H = "h"
    J = "j"
    CZ = "cz"
    U2 = "u2"


SINGLE_QUBIT_KINDS = (GateKind.RZ, GateKind.RX, GateKind.H, GateKind.J, GateKind.U2)
ANGLE_KINDS = (GateKind.RZ, GateKind.RX, GateKind.J)


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    wires: tuple[int, ...]
    angle: Optional[float] = None
    matrix: Optional[Matrix] = None

    @classmethod
    def rz(cls, angle: float, wire: int) -> Gate:
        return cls(GateKind.RZ, (wire,), float(angle))

    @classmethod
    def rx(cls, angle: float, wire: int) -> Gate:
        return cls(GateKind.RX, (wire,), float(angle))

    @classmethod
    def h(cls, wire: int) -> Gate:
        return cls(GateKind.H, (wire,))

    @classmethod
    def j(cls, angle: float, wire: int) -> Gate:
        return cls(GateKind.J, (wire,), float(angle))

    @classmethod
    def cz(cls, a: int, b: int) -> Gate:
        return cls(GateKind.CZ, (a, b))

    @classmethod
    def u2(cls, matrix, wire: int) -> Gate:
        if not isinstance(matrix, Matrix):
            matrix = Matrix.complex(matrix)
        return cls(GateKind.U2, (wire,), matrix=matrix)

    def unitary(self) -> np.ndarray:
        """2×2 matrix of a single-qubit gate (4×4 diagonal for CZ)."""
        if self.kind is GateKind.RZ:
            return rz_matrix(self.angle)
        if self.kind is GateKind.RX:
            return rx_matrix(self.angle)
        if self.kind is GateKind.H:
            return HADAMARD.copy()
        if self.kind is GateKind.J:
            return j_matrix(self.angle)
        if self.kind is GateKind.U2:
            return self.matrix.to_numpy()
        if self.kind is GateKind.CZ:
            return np.diag([1.0, 1.0, 1.0, -1.0]).astype(np.complex128)
        raise UnsupportedGate(f"unknown gate kind {self.kind!r}")


@dataclass(frozen=True)
class Circuit:
    wires: int
    gates: tuple[Gate, ...] = ()

    def validate(self, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
        """Raises WireOutOfRange, NotUnitary or UnsupportedGate for the first bad gate."""
        if not 1 <= self.wires <= MAX_WIRES:
            raise WireOutOfRange(f"circuits have 1..{MAX_WIRES} wires, got {self.wires}")
        for k, gate in enumerate(self.gates):
            if not isinstance(gate.kind, GateKind):
                raise UnsupportedGate(f"gates[{k}]: unknown kind {gate.kind!r}")
            expected = 2 if gate.kind is GateKind.CZ else 1
            if len(gate.wires) != expected:
                raise WireOutOfRange(f"gates[{k}]: {gate.kind.value} acts on {expected} wire(s)")
            for w in gate.wires:
                if not 0 <= w < self.wires:
                    raise WireOutOfRange(f"gates[{k}]: wire {w} outside 0..{self.wires - 1}")
            if gate.kind is GateKind.CZ and gate.wires[0] == gate.wires[1]:
                raise WireOutOfRange(f"gates[{k}]: cz needs two distinct wires")
            if gate.kind in ANGLE_KINDS and gate.angle is None:
                raise UnsupportedGate(f"gates[{k}]: {gate.kind.value} needs an angle")
            if gate.kind is GateKind.U2:
                if gate.matrix is None or gate.matrix.shape != (2, 2):
                    raise NotUnitary(f"gates[{k}]: u2 needs a 2x2 matrix")
                if not gate.matrix.is_unitary(tol.predicate):
                    raise NotUnitary(f"gates[{k}]: matrix is not unitary")


class EulerAngles(NamedTuple):
    alpha: float
    beta: float
    gamma: float
    phase: complex


HADAMARD = np.array([[1, 1], [1, -1]], dtype=np.complex128) / math.sqrt(2.0)


def rz_matrix(theta: float) -> np.ndarray:
    return np.diag([cmath.exp(-0.5j * theta), cmath.exp(0.5j * theta)])


def rx_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=np.complex128)


def j_matrix(theta: float) -> np.ndarray:
    return HADAMARD @ rz_matrix(theta)


def wrap_angle(theta: float) -> float:
    """Map into (−π, π]."""
    wrapped = math.remainder(theta, 2.0 * math.pi)
    return math.pi if wrapped == -math.pi else wrapped


def euler_zxz(u: Matrix, tol: Tolerances = DEFAULT_TOLERANCES) -> EulerAngles:
    """Angles with phase·Rz(γ)·Rx(β)·Rz(α) = U.

    Raises:
        NotUnitary: if U is not a 2×2 unitary
    """
    if u.shape != (2, 2) or not u.is_unitary(tol.predicate):
        raise NotUnitary("euler_zxz needs a 2x2 unitary")
    a = u.to_numpy()
    w = a / cmath.sqrt(np.linalg.det(a))
    beta = 2.0 * math.atan2(abs(w[1, 0]), abs(w[0, 0]))
    total = -2.0 * cmath.phase(w[0, 0]) if abs(w[0, 0]) > 1e-12 else 0.0
    diff = 2.0 * (cmath.phase(w[1, 0]) + math.pi / 2.0) if abs(w[1, 0]) > 1e-12 else 0.0
    alpha = wrap_angle((total - diff) / 2.0)
    gamma = wrap_angle((total + diff) / 2.0)
    beta = wrap_angle(beta)
    m = rz_matrix(gamma) @ rx_matrix(beta) @ rz_matrix(alpha)
    phase = complex(np.trace(m.conj().T @ a) / 2.0)
    return EulerAngles(alpha, beta, gamma, phase / abs(phase))


def j_sequence(gate: Gate, tol: Tolerances = DEFAULT_TOLERANCES) -> list[float]:
    """J angles in time order whose product equals the gate up to global phase."""
    if gate.kind is GateKind.J:
        return [gate.angle]
    if gate.kind is GateKind.H:
        return [0.0]
    if gate.kind is GateKind.RZ:
        return [gate.angle, 0.0]
    if gate.kind is GateKind.RX:
        return [0.0, gate.angle]
    if gate.kind is GateKind.U2:
        alpha, beta, gamma, _ = euler_zxz(gate.matrix, tol)
        return [alpha, beta, gamma, 0.0]
    raise UnsupportedGate(f"{gate.kind!r} is not a single-qubit gate")


def compile_circuit(circuit: Circuit, tol: Tolerances = DEFAULT_TOLERANCES) -> Pattern:
    """Standard-form pattern with inputs 0..wires−1 and outputs the final wire fronts."""
    circuit.validate(tol)
    front = list(range(circuit.wires))
    next_node = circuit.wires
    commands: list[Command] = []

    for gate in circuit.gates:
        if gate.kind is GateKind.CZ:
            a, b = gate.wires
            commands.append(E((front[a], front[b])))
            continue
        wire = gate.wires[0]
        for theta in j_sequence(gate, tol):
            i, j = front[wire], next_node
            next_node += 1
            commands += [N(j), E((i, j)), M(i, -theta + 0.0), X(j, frozenset({i}))]
            front[wire] = j

    pattern = Pattern(tuple(range(next_node)), tuple(range(circuit.wires)), tuple(front),
                      tuple(commands))
    return standardize(pattern)


# ----- circuit utilities -----

def _embed(single: np.ndarray, wire: int, wires: int) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.complex128)
    for w in range(wires):
        out = np.kron(out, single if w == wire else np.eye(2))
    return out


def _cz_diagonal(a: int, b: int, wires: int) -> np.ndarray:
    index = np.arange(2 ** wires)
    bit_a = (index >> (wires - 1 - a)) & 1
    bit_b = (index >> (wires - 1 - b)) & 1
    return np.where(bit_a & bit_b, -1.0, 1.0).astype(np.complex128)


def circuit_unitary(circuit: Circuit) -> Matrix:
    """Full 2^n unitary; wire 0 is the most significant bit."""
    n = circuit.wires
    total = np.eye(2 ** n, dtype=np.complex128)
    for gate in circuit.gates:
        if gate.kind is GateKind.CZ:
            total = _cz_diagonal(*gate.wires, n)[:, None] * total
        else:
            total = _embed(gate.unitary(), gate.wires[0], n) @ total
    return Matrix(total)


def fuse_single_qubit_gates(circuit: Circuit) -> Circuit:
    """Merge each run of single-qubit gates on a wire into one U2 (CZ gates split runs)."""
    pending: dict[int, np.ndarray] = {}
    gates: list[Gate] = []

    def flush(wire: int) -> None:
        if wire in pending:
            gates.append(Gate.u2(Matrix(pending.pop(wire)), wire))

    for gate in circuit.gates:
        if gate.kind is GateKind.CZ:
            for w in gate.wires:
                flush(w)
            gates.append(gate)
        else:
            w = gate.wires[0]
            pending[w] = gate.unitary() @ pending.get(w, np.eye(2, dtype=np.complex128))
    for w in sorted(pending):
        flush(w)
    return Circuit(circuit.wires, tuple(gates))


def random_circuit(wires: int, n_gates: int, rng: np.random.Generator) -> Circuit:
    """Random circuit over every gate kind (CZ only when wires ≥ 2)."""
    kinds = list(SINGLE_QUBIT_KINDS) + ([GateKind.CZ] if wires >= 2 else [])
    gates = []
    for _ in range(n_gates):
        kind = kinds[rng.integers(len(kinds))]
        if kind is GateKind.CZ:
            a, b = rng.choice(wires, size=2, replace=False)
            gates.append(Gate.cz(int(a), int(b)))
            continue
        wire = int(rng.integers(wires))
        if kind is GateKind.U2:
            gates.append(Gate.u2(random_unitary(2, rng), wire))
        elif kind is GateKind.H:
            gates.append(Gate.h(wire))
        else:
            gates.append(Gate(kind, (wire,), float(rng.uniform(-math.pi, math.pi))))
    return Circuit(wires, tuple(gates))
