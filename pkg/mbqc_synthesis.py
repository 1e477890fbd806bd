"""Gate synthesis for the dilation of a single-qubit channel.

Only the action of the dilation on inputs with every ancilla in |0⟩ matters,
so the synthesizer works on the isometry V (2^n × 2): it reduces the two
columns to basis vectors by two-level rotations along a Gray code, then emits
the inverse rotations as multi-controlled single-qubit gates built from U2
and CZ.

Wire 0 carries the system and is the most significant bit; wires 1..n−1 are
the ancillas.
"""

from __future__ import annotations

import cmath
import math
from typing import NamedTuple

import numpy as np

from errors import NotIsometry
from matfield import Matrix
from mbqc_compiler import Circuit, Gate, GateKind, euler_zxz, rz_matrix, HADAMARD
from qf_configloader import DEFAULT_TOLERANCES, Tolerances

_PAULI_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_NEGLIGIBLE = 1e-14


class TwoLevelGate(NamedTuple):
    """Single-qubit unitary on target, applied when every control bit has its listed value."""
    target: int
    controls: tuple[tuple[int, int], ...]
    matrix: np.ndarray


def gray_path(n: int) -> list[int]:
    """All n-bit values, consecutive ones differing in one bit; the first step flips bit n−1 (MSB)."""
    reflected = [k ^ (k >> 1) for k in range(2 ** n)]
    return [int(format(g, f"0{n}b")[::-1], 2) for g in reflected]


def _bit(value: int, wire: int, n: int) -> int:
    return (value >> (n - 1 - wire)) & 1


def _rotation(x_p: complex, x_q: complex) -> np.ndarray:
    """2×2 unitary on (p, q) sending (x_p, x_q) to (r, 0)."""
    r = math.sqrt(abs(x_p) ** 2 + abs(x_q) ** 2)
    return np.array([[x_p.conjugate(), x_q.conjugate()], [-x_q, x_p]]) / r


def _two_level(p: int, q: int, g: np.ndarray, n: int) -> TwoLevelGate:
    """Express the rotation g on basis states (p, q) as a controlled gate on their differing bit."""
    diff = p ^ q
    target = n - 1 - diff.bit_length() + 1
    controls = tuple((w, _bit(p, w, n)) for w in range(n) if w != target)
    if _bit(p, target, n) == 1:
        g = _PAULI_X @ g @ _PAULI_X
    return TwoLevelGate(target, controls, g)


def _apply(state: np.ndarray, p: int, q: int, g: np.ndarray) -> None:
    rows = state[[p, q], :]
    state[[p, q], :] = g @ rows


def decompose_isometry(v: Matrix, tol: Tolerances = DEFAULT_TOLERANCES
                       ) -> tuple[list[TwoLevelGate], complex]:
    """Two-level gates G_k and relative phase φ with V = G_1†⋯G_r†·[e_0, φ·e_g1] up to global phase.

    e_g1 is the basis state with only the system bit set.
    """
    rows, cols = v.shape
    n = rows.bit_length() - 1
    if rows != 2 ** n or cols != 2 or not v.is_isometry(tol.predicate):
        raise NotIsometry(f"expected a 2^n x 2 isometry, got shape {v.shape}")
    path = gray_path(n)
    state = v.to_numpy()
    gates: list[TwoLevelGate] = []

    for column, start in ((0, 1), (1, 2)):
        for k in range(len(path) - 1, start - 1, -1):
            p, q = path[k - 1], path[k]
            x_p, x_q = state[p, column], state[q, column]
            if abs(x_q) < _NEGLIGIBLE:
                continue
            g = _rotation(complex(x_p), complex(x_q))
            _apply(state, p, q, g)
            gates.append(_two_level(p, q, g, n))

    top0, top1 = state[path[0], 0], state[path[1], 1]
    return gates, complex(top1 / top0) / abs(top1 / top0)


def sqrt_unitary(m: np.ndarray) -> np.ndarray:
    """A square root of a 2×2 unitary, (M + s·I)/√(tr M + 2s) with s = ±√det M."""
    root_det = cmath.sqrt(np.linalg.det(m))
    candidates = [np.trace(m) + 2 * s for s in (root_det, -root_det)]
    s, denominator = max(zip((root_det, -root_det), candidates), key=lambda c: abs(c[1]))
    return (m + s * np.eye(2)) / cmath.sqrt(denominator)


def _u2(m: np.ndarray, wire: int) -> Gate:
    return Gate.u2(Matrix(m), wire)


def _cnot(control: int, target: int) -> list[Gate]:
    return [_u2(HADAMARD, target), Gate.cz(control, target), _u2(HADAMARD, target)]


def _controlled(u: np.ndarray, control: int, target: int,
                tol: Tolerances = DEFAULT_TOLERANCES) -> list[Gate]:
    """Controlled-U from U = e^{iα}·A·X·B·X·C with A·B·C = I."""
    alpha, beta, gamma, phase = euler_zxz(Matrix(u), tol)
    # Rz(γ)Rx(β)Rz(α) = Rz(γ − π/2)·Ry(β)·Rz(α + π/2)
    z1, y, z2 = gamma - math.pi / 2.0, beta, alpha + math.pi / 2.0
    a = rz_matrix(z1) @ _ry(y / 2.0)
    b = _ry(-y / 2.0) @ rz_matrix(-(z2 + z1) / 2.0)
    c = rz_matrix((z2 - z1) / 2.0)
    return ([_u2(c, target)] + _cnot(control, target) + [_u2(b, target)]
            + _cnot(control, target)
            + [_u2(a, target), _u2(np.diag([1.0, phase]), control)])


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=np.complex128)


def _multi_controlled(gate: TwoLevelGate, tol: Tolerances) -> list[Gate]:
    flips = [_u2(_PAULI_X, w) for w, value in gate.controls if value == 0]
    wires = [w for w, _ in gate.controls]
    if len(wires) == 0:
        body = [_u2(gate.matrix, gate.target)]
    elif len(wires) == 1:
        body = _controlled(gate.matrix, wires[0], gate.target, tol)
    elif len(wires) == 2:
        c1, c2 = wires
        root = sqrt_unitary(gate.matrix)
        body = (_controlled(root, c2, gate.target, tol) + _cnot(c1, c2)
                + _controlled(root.conj().T, c2, gate.target, tol) + _cnot(c1, c2)
                + _controlled(root, c1, gate.target, tol))
    else:
        raise ValueError(f"{len(wires)} controls are not supported")
    return flips + body + flips


def synthesize_isometry(v: Matrix, tol: Tolerances = DEFAULT_TOLERANCES) -> Circuit:
    """Circuit of U2 and CZ gates acting as V on (system) ⊗ |0…0⟩ (ancillas), up to global phase."""
    two_level, relative_phase = decompose_isometry(v, tol)
    n = v.rows.bit_length() - 1
    gates = [_u2(np.diag([1.0, relative_phase]), 0)]
    for g in reversed(two_level):
        inverse = TwoLevelGate(g.target, g.controls, g.matrix.conj().T)
        gates += _multi_controlled(inverse, tol)
    return Circuit(n, tuple(gates))


def cz_count(circuit: Circuit) -> int:
    return sum(1 for g in circuit.gates if g.kind is GateKind.CZ)
