"""Channels as Choi matrices and Kraus sets; pattern equivalence and channel emulation.

Choi matrices use the unnormalized convention J = Σ_ij |i⟩⟨j| ⊗ Ɛ(|i⟩⟨j|)
with the input factor first, so a trace-preserving channel has trace d_in.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Sequence

import numpy as np

from constants import MAX_KRAUS
from errors import DimensionMismatch, NotTracePreserving, TooManyKraus, ZeroPosterior
from matfield import Matrix, hermitian_eig, trace_norm, partial_trace, unitary_completion, identity
from mbqc_compiler import Circuit, Gate, circuit_unitary, compile_circuit, fuse_single_qubit_gates
from mbqc_pattern import Pattern, prepare_inputs, measure_out
from mbqc_simulator import average_output, sampled_output
from mbqc_synthesis import synthesize_isometry
from quantum_core import DensityState, Proposition, update, compose_propositions
from qf_configloader import DEFAULT_TOLERANCES, Tolerances


@dataclass(frozen=True)
class ChoiMatrix:
    d_in: int
    d_out: int
    mat: Matrix

    def is_psd(self, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        if not self.mat.is_hermitian(tol.choi_psd):
            return False
        hermitian = (self.mat + self.mat.dagger()) / 2.0
        values, _ = hermitian_eig(hermitian, tol)
        return values[-1] >= -tol.choi_psd

    def output_partial_trace(self) -> Matrix:
        """Tr_out J, the identity on the input for trace-preserving channels."""
        return partial_trace(self.mat, [self.d_in, self.d_out], keep=[0])

    def is_trace_preserving(self, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        return self.output_partial_trace().max_abs_diff(identity(self.d_in)) <= tol.trace_preserving

    def distance(self, other: ChoiMatrix, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
        """Half the trace norm of the difference."""
        if (self.d_in, self.d_out) != (other.d_in, other.d_out):
            raise DimensionMismatch(f"channels {self.d_in}->{self.d_out} and "
                                    f"{other.d_in}->{other.d_out} differ in shape")
        diff = self.mat - other.mat
        return trace_norm((diff + diff.dagger()) / 2.0, tol) / 2.0


@dataclass(frozen=True)
class KrausSet:
    d_in: int
    d_out: int
    ops: tuple[Matrix, ...]

    @classmethod
    def from_ops(cls, ops: Sequence, tol: Tolerances = DEFAULT_TOLERANCES) -> KrausSet:
        """Build and validate a trace-preserving Kraus set.

        Raises:
            DimensionMismatch: if the operators differ in shape
            NotTracePreserving: if Σ K†K differs from the identity by more than tol.trace_preserving
        """
        mats = tuple(op if isinstance(op, Matrix) else Matrix.complex(op) for op in ops)
        if not mats:
            raise NotTracePreserving("empty Kraus set")
        d_out, d_in = mats[0].shape
        for k, op in enumerate(mats):
            if op.shape != (d_out, d_in):
                raise DimensionMismatch(f"ops[{k}] has shape {op.shape}, expected {(d_out, d_in)}")
        kraus = cls(d_in, d_out, mats)
        kraus.validate(tol)
        return kraus

    def completeness(self) -> Matrix:
        total = self.ops[0].dagger() @ self.ops[0]
        for op in self.ops[1:]:
            total = total + op.dagger() @ op
        return total

    def validate(self, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
        deviation = self.completeness().max_abs_diff(identity(self.d_in))
        if deviation > tol.trace_preserving:
            raise NotTracePreserving(f"sum of K†K deviates from the identity by {deviation:.3g}")


class EquivalenceReport(NamedTuple):
    choi_distance: float
    passed: bool


class EmulationMode(str, Enum):
    EXACT = "exact"
    MEASUREMENT_ONLY = "measurement_only"


@dataclass(frozen=True)
class EmulationResult:
    mode: EmulationMode
    ancillas: int
    dilation: Matrix
    choi: ChoiMatrix
    target: ChoiMatrix
    choi_distance: float
    passed: bool
    circuit: Optional[Circuit] = None
    pattern: Optional[Pattern] = None
    sampled_choi: Optional[ChoiMatrix] = None
    sampled_distance: Optional[float] = None
    shots: int = 0


# ----- Choi matrices -----

def choi_of_kraus(kraus: KrausSet) -> ChoiMatrix:
    dim = kraus.d_in * kraus.d_out
    total = np.zeros((dim, dim), dtype=np.complex128)
    for op in kraus.ops:
        w = op.to_numpy().T.reshape(-1)
        total += np.outer(w, w.conj())
    return ChoiMatrix(kraus.d_in, kraus.d_out, Matrix(total))


def choi_of_unitary(u: Matrix) -> ChoiMatrix:
    return choi_of_kraus(KrausSet(u.cols, u.rows, (u,)))


def choi_of_circuit(circuit: Circuit) -> ChoiMatrix:
    return choi_of_unitary(circuit_unitary(circuit))


def apply_choi(choi: ChoiMatrix, rho: Matrix) -> Matrix:
    """Ɛ(ρ) = Σ_ij ρ_ij Ɛ(|i⟩⟨j|), read off the blocks of the Choi matrix."""
    if rho.shape != (choi.d_in, choi.d_in):
        raise DimensionMismatch(f"state of shape {rho.shape} for a channel on dimension {choi.d_in}")
    j = choi.mat.to_numpy().reshape(choi.d_in, choi.d_out, choi.d_in, choi.d_out)
    return Matrix(np.einsum("ij,iojp->op", rho.to_numpy(), j))


def channel_of_pattern(pattern: Pattern, tol: Tolerances = DEFAULT_TOLERANCES) -> ChoiMatrix:
    """Choi matrix of a pattern, from its branch average on one half of Σ|ii⟩."""
    n_in = len(pattern.inputs)
    d_in, d_out = 2 ** n_in, 2 ** len(pattern.outputs)
    phi = np.eye(d_in, dtype=np.complex128).reshape(-1)
    rho = average_output(pattern, phi, n_refs=n_in, tol=tol)
    return ChoiMatrix(d_in, d_out, Matrix((rho + rho.conj().T) / 2.0))


def verify_equivalence(pattern: Pattern, circuit: Circuit,
                       tol: Tolerances = DEFAULT_TOLERANCES,
                       threshold: Optional[float] = None) -> EquivalenceReport:
    """Compare a pattern with a circuit by the trace distance of their Choi matrices."""
    threshold = tol.choi_distance if threshold is None else threshold
    if len(pattern.inputs) != circuit.wires or len(pattern.outputs) != circuit.wires:
        raise DimensionMismatch(f"pattern has {len(pattern.inputs)} inputs and "
                                f"{len(pattern.outputs)} outputs, circuit has {circuit.wires} wires")
    distance = channel_of_pattern(pattern, tol).distance(choi_of_circuit(circuit), tol)
    return EquivalenceReport(distance, distance <= threshold)


# ----- standard channels -----

def dephasing(p: float) -> KrausSet:
    """ρ ↦ (1 − p)·ρ + p·diag(ρ)."""
    return KrausSet.from_ops([math.sqrt(1.0 - p / 2.0) * np.eye(2),
                              math.sqrt(p / 2.0) * np.diag([1.0, -1.0])])


def depolarizing(p: float) -> KrausSet:
    """ρ ↦ (1 − p)·ρ + p·I/2."""
    paulis = [np.array([[0, 1], [1, 0]]), np.array([[0, -1j], [1j, 0]]), np.diag([1.0, -1.0])]
    return KrausSet.from_ops([math.sqrt(1.0 - 3.0 * p / 4.0) * np.eye(2)]
                             + [math.sqrt(p / 4.0) * s for s in paulis])


def amplitude_damping(gamma: float) -> KrausSet:
    return KrausSet.from_ops([np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - gamma)]]),
                              np.array([[0.0, math.sqrt(gamma)], [0.0, 0.0]])])


# ----- emulation -----

def ancilla_count(n_ops: int) -> int:
    return math.ceil(math.log2(n_ops)) if n_ops > 1 else 0


def stinespring_isometry(kraus: KrausSet) -> Matrix:
    """V|s⟩ = Σ_i K_i|s⟩ ⊗ |i⟩ (system most significant, unused ancilla states padded with zero)."""
    a = ancilla_count(len(kraus.ops))
    v = np.zeros((kraus.d_out * 2 ** a, kraus.d_in), dtype=np.complex128)
    for i, op in enumerate(kraus.ops):
        v[i::2 ** a, :] = op.to_numpy()
    return Matrix(v)


def dilation_unitary(kraus: KrausSet, tol: Tolerances = DEFAULT_TOLERANCES) -> Matrix:
    """Unitary on system ⊗ ancillas acting as the isometry on inputs with the ancillas in |0…0⟩."""
    v = stinespring_isometry(kraus)
    completed = unitary_completion(v, tol).to_numpy()
    dim, stride = v.rows, v.rows // kraus.d_in
    targets = [s * stride for s in range(kraus.d_in)]
    others = iter(range(kraus.d_in, dim))
    order = [targets.index(pos) if pos in targets else next(others) for pos in range(dim)]
    return Matrix(completed[:, order])


def _exact_choi(kraus: KrausSet, dilation: Matrix, ancillas: int,
                tol: Tolerances) -> ChoiMatrix:
    """Apply the dilation to one half of |Φ⟩, measure the ancillas in the computational basis, discard."""
    d = kraus.d_in
    d_anc = 2 ** ancillas
    phi = np.eye(d, dtype=np.complex128).reshape(-1) / math.sqrt(d)
    ancilla_zero = np.zeros(d_anc)
    ancilla_zero[0] = 1.0
    joint = np.kron(np.eye(d), dilation.to_numpy()) @ np.kron(phi, ancilla_zero)
    rho = DensityState.from_ket(joint)

    identity_ref_sys = Proposition.identity(d * kraus.d_out)
    total = np.zeros((d * kraus.d_out, d * kraus.d_out), dtype=np.complex128)
    for i in range(d_anc):
        outcome = compose_propositions(identity_ref_sys, Proposition.basis(d_anc, i))
        try:
            branch = update(rho, outcome, tol)
        except ZeroPosterior:
            continue
        total += partial_trace(branch.mat, [d * kraus.d_out, d_anc], keep=[0]).to_numpy()
    return ChoiMatrix(d, kraus.d_out, Matrix(total * d))


def emulation_pattern(kraus: KrausSet, tol: Tolerances = DEFAULT_TOLERANCES
                      ) -> tuple[Circuit, Pattern]:
    """Measurement-only pattern for a single-qubit channel.

    The ancilla wires start from nodes prepared in |+⟩ and turned into |0⟩ by H;
    after the synthesized isometry another H maps the computational basis onto
    the XY-plane measurement at angle 0, whose outcome is discarded.
    """
    ancillas = ancilla_count(len(kraus.ops))
    body = synthesize_isometry(stinespring_isometry(kraus), tol)
    wires = body.wires
    hadamards = tuple(Gate.h(w) for w in range(1, wires))
    circuit = fuse_single_qubit_gates(Circuit(wires, hadamards + body.gates + hadamards))
    pattern = compile_circuit(circuit, tol)
    pattern = prepare_inputs(pattern, list(range(1, 1 + ancillas)))
    pattern = measure_out(pattern, list(pattern.outputs[1:]))
    return circuit, pattern


def emulate_channel(kraus: KrausSet, mode: EmulationMode = EmulationMode.EXACT,
                    shots: int = 0, seed: int = 0,
                    tol: Tolerances = DEFAULT_TOLERANCES) -> EmulationResult:
    """Emulate a qubit channel through its Stinespring dilation.

    exact applies the dilation unitary and measures the ancillas;
    measurement_only compiles the dilation to a pattern and takes the Choi
    matrix of the pattern. With shots > 0 the measurement-only pattern is
    also sampled on |Φ⟩ to give a finite-statistics estimate.

    Raises:
        TooManyKraus: for more than four Kraus operators
        NotTracePreserving: if the Kraus set is not complete
        DimensionMismatch: unless d_in = d_out = 2
    """
    mode = EmulationMode(mode)
    if (kraus.d_in, kraus.d_out) != (2, 2):
        raise DimensionMismatch(f"only qubit channels are emulated, got {kraus.d_in}->{kraus.d_out}")
    if len(kraus.ops) > MAX_KRAUS:
        raise TooManyKraus(f"{len(kraus.ops)} Kraus operators, at most {MAX_KRAUS} supported")
    kraus.validate(tol)

    ancillas = ancilla_count(len(kraus.ops))
    dilation = dilation_unitary(kraus, tol)
    target = choi_of_kraus(kraus)

    if mode is EmulationMode.EXACT:
        choi = _exact_choi(kraus, dilation, ancillas, tol)
        distance = choi.distance(target, tol)
        return EmulationResult(mode, ancillas, dilation, choi, target, distance,
                               distance <= tol.choi_distance)

    circuit, pattern = emulation_pattern(kraus, tol)
    choi = channel_of_pattern(pattern, tol)
    distance = choi.distance(target, tol)
    sampled_choi, sampled_distance = None, None
    if shots > 0:
        phi = np.eye(2, dtype=np.complex128).reshape(-1) / math.sqrt(2.0)
        estimate = sampled_output(pattern, phi, 1, shots, seed, tol=tol) * 2.0
        sampled_choi = ChoiMatrix(2, 2, Matrix((estimate + estimate.conj().T) / 2.0))
        sampled_distance = sampled_choi.distance(target, tol)
    return EmulationResult(mode, ancillas, dilation, choi, target, distance,
                           distance <= tol.choi_distance, circuit, pattern,
                           sampled_choi, sampled_distance, shots)
