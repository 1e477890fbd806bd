"""State-vector simulation of standard-form measurement patterns.

The simulator keeps a batch of unnormalized pure states, one row per branch
or shot, over the live nodes. Commands run in a lazy order: the N and E
commands touching a node are executed just before the node is measured, so
only the wire fronts and their next chain nodes are live at any time.

Average mode expands every measurement into both outcomes. Above
average_enumeration_limit measurements, rows that agree on every outcome
bit still read by a later command are merged: their mixture is compressed
by an SVD, which keeps deterministic patterns at one row per key.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Mapping, NamedTuple, Optional, Sequence, Union

import numpy as np

from errors import DimensionMismatch, InvalidState, SimulationLimitExceeded
from matfield import Matrix
from mbqc_pattern import Pattern, Command, N, E, M, X, Z, validate
from quantum_core import DensityState
from qf_configloader import DEFAULT_TOLERANCES, Tolerances

_SQRT_HALF = 1.0 / math.sqrt(2.0)
_NEGLIGIBLE_WEIGHT = 1e-28


class SimulationMode(str, Enum):
    BRANCH = "branch"
    SAMPLED = "sampled"
    AVERAGE = "average"


class BranchResult(NamedTuple):
    state: np.ndarray          # normalized output amplitudes (zeros when probability is 0)
    probability: float
    outcomes: dict[int, int]


class SampledResult(NamedTuple):
    states: np.ndarray         # (shots, 2^outputs), rows normalized
    outcomes: np.ndarray       # (shots, m) outcome bits in measurement order
    measured: tuple[int, ...]


def lazy_schedule(pattern: Pattern) -> list[Command]:
    """Execution order of a standard pattern that delays N and E until they are needed."""
    preps = {c.node for c in pattern.commands if isinstance(c, N)}
    entangles = [c for c in pattern.commands if isinstance(c, E)]
    measures = [c for c in pattern.commands if isinstance(c, M)]
    corrections = [c for c in pattern.commands if isinstance(c, (X, Z))]

    live = set(pattern.inputs)
    done = [False] * len(entangles)
    order: list[Command] = []

    def ensure(node: int) -> None:
        if node not in live and node in preps:
            order.append(N(node))
            live.add(node)

    for m in measures:
        for k, e in enumerate(entangles):
            if not done[k] and m.node in e.nodes:
                ensure(e.nodes[0])
                ensure(e.nodes[1])
                order.append(e)
                done[k] = True
        ensure(m.node)
        order.append(m)
    for node in sorted(preps - live):
        ensure(node)
    order += [e for k, e in enumerate(entangles) if not done[k]]
    return order + corrections


def _needed_after(schedule: Sequence[Command]) -> list[frozenset[int]]:
    """For each position, the nodes read by the domains of later commands."""
    needed: list[frozenset[int]] = [frozenset()] * len(schedule)
    running: frozenset[int] = frozenset()
    for k in range(len(schedule) - 1, -1, -1):
        needed[k] = running
        cmd = schedule[k]
        if isinstance(cmd, M):
            running = running | cmd.s_domain | cmd.t_domain
        elif isinstance(cmd, (X, Z)):
            running = running | cmd.domain
    return needed


class _Batch:
    """Rows of unnormalized pure states over the live nodes, with their outcome bits."""

    def __init__(self, vectors: np.ndarray, live: Sequence[int], cap: int):
        rows = vectors.shape[0]
        self.live = list(live)
        self.cap = cap
        if len(self.live) > cap:
            raise SimulationLimitExceeded(f"{len(self.live)} live qubits exceed the cap of {cap}")
        self.psi = np.array(vectors, dtype=np.complex128).reshape((rows,) + (2,) * len(self.live))
        self.bits = np.zeros((rows, 0), dtype=np.int8)
        self.column: dict[int, int] = {}

    @property
    def rows(self) -> int:
        return self.psi.shape[0]

    def _axis(self, node: int) -> int:
        return 1 + self.live.index(node)

    @staticmethod
    def _per_row(values: np.ndarray, like: np.ndarray) -> np.ndarray:
        """values (one per row) shaped to broadcast against like."""
        return values.reshape((-1,) + (1,) * (like.ndim - 1))

    def parity(self, domain: frozenset[int]) -> np.ndarray:
        if not domain:
            return np.zeros(self.rows, dtype=np.int8)
        cols = [self.column[n] for n in sorted(domain)]
        return (self.bits[:, cols].sum(axis=1) % 2).astype(np.int8)

    def prepare(self, node: int) -> None:
        if len(self.live) >= self.cap:
            raise SimulationLimitExceeded(f"preparing node {node} exceeds {self.cap} live qubits")
        self.psi = np.stack([self.psi, self.psi], axis=-1) * _SQRT_HALF
        self.live.append(node)

    def entangle(self, i: int, j: int) -> None:
        index = [slice(None)] * self.psi.ndim
        index[self._axis(i)] = 1
        index[self._axis(j)] = 1
        self.psi[tuple(index)] *= -1.0

    def pauli_x(self, node: int, mask: np.ndarray) -> None:
        if mask.any():
            flipped = np.flip(self.psi, axis=self._axis(node))
            self.psi = np.where(self._per_row(mask.astype(bool), flipped), flipped, self.psi)

    def pauli_z(self, node: int, mask: np.ndarray) -> None:
        if mask.any():
            index = [slice(None)] * self.psi.ndim
            index[self._axis(node)] = 1
            signs = np.where(mask.astype(bool), -1.0, 1.0)
            self.psi[tuple(index)] *= self._per_row(signs, self.psi[tuple(index)])

    def _project(self, node: int, phis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Amplitudes for outcomes 0 and 1 with the node removed."""
        axis = self._axis(node)
        zero = np.take(self.psi, 0, axis=axis)
        one = np.take(self.psi, 1, axis=axis)
        phase = np.exp(-1j * phis).reshape((self.rows,) + (1,) * (zero.ndim - 1))
        self.live.remove(node)
        return (zero + phase * one) * _SQRT_HALF, (zero - phase * one) * _SQRT_HALF

    def _record(self, node: int, outcomes: np.ndarray) -> None:
        self.column[node] = self.bits.shape[1]
        self.bits = np.concatenate([self.bits, outcomes.astype(np.int8)[:, None]], axis=1)

    def measure_fixed(self, node: int, phis: np.ndarray, outcomes: np.ndarray) -> None:
        plus, minus = self._project(node, phis)
        self.psi = np.where(self._per_row(outcomes.astype(bool), plus), minus, plus)
        self._record(node, outcomes)

    def measure_sampled(self, node: int, phis: np.ndarray, rng: np.random.Generator) -> None:
        plus, minus = self._project(node, phis)
        axes = tuple(range(1, plus.ndim))
        p_plus = np.sum(np.abs(plus) ** 2, axis=axes)
        p_minus = np.sum(np.abs(minus) ** 2, axis=axes)
        outcomes = (rng.random(self.rows) * (p_plus + p_minus) < p_minus).astype(np.int8)
        chosen = np.where(self._per_row(outcomes.astype(bool), plus), minus, plus)
        norms = np.sqrt(np.where(outcomes == 1, p_minus, p_plus))
        self.psi = chosen / self._per_row(norms, chosen)
        self._record(node, outcomes)

    def measure_split(self, node: int, phis: np.ndarray) -> None:
        """Keep both outcomes: row r becomes rows r (outcome 0) and rows + r (outcome 1)."""
        plus, minus = self._project(node, phis)
        self.psi = np.concatenate([plus, minus], axis=0)
        self.bits = np.concatenate([self.bits, self.bits], axis=0)
        outcomes = np.repeat(np.array([0, 1], dtype=np.int8), plus.shape[0])
        self._record(node, outcomes)

    def merge(self, needed: frozenset[int]) -> None:
        """Sum the mixtures of rows that agree on every still-needed outcome bit."""
        flat = self.psi.reshape(self.rows, -1)
        weights = np.sum(np.abs(flat) ** 2, axis=1)
        alive = weights > _NEGLIGIBLE_WEIGHT
        flat, bits = flat[alive], self.bits[alive]
        if flat.shape[0] == 0:
            flat, bits = self.psi.reshape(self.rows, -1)[:1] * 0.0, self.bits[:1]
        cols = sorted(self.column[n] for n in needed if n in self.column)
        if cols:
            _, groups = np.unique(bits[:, cols], axis=0, return_inverse=True)
            groups = np.asarray(groups).reshape(-1)
        else:
            groups = np.zeros(flat.shape[0], dtype=np.int64)

        new_rows, new_bits = [], []
        for g in range(int(groups.max()) + 1):
            members = np.flatnonzero(groups == g)
            block = flat[members]
            if block.shape[0] > 1:
                _, s, vh = np.linalg.svd(block, full_matrices=False)
                keep = s > max(s[0] * 1e-13, 1e-300)
                block = s[keep, None] * vh[keep]
            new_rows.append(block)
            new_bits.append(np.repeat(bits[members[:1]], block.shape[0], axis=0))
        self.psi = np.concatenate(new_rows, axis=0).reshape((-1,) + (2,) * len(self.live))
        self.bits = np.concatenate(new_bits, axis=0)

    def output(self, order: Sequence[int]) -> np.ndarray:
        """Rows as flat vectors over the nodes in order (first node is the most significant bit)."""
        axes = [0] + [self._axis(n) for n in order]
        return np.transpose(self.psi, axes).reshape(self.rows, -1)


def _run(pattern: Pattern, batch: _Batch, mode: str, tol: Tolerances,
         fixed: Optional[Mapping[int, int]] = None,
         rng: Optional[np.random.Generator] = None, merge: bool = False) -> None:
    schedule = lazy_schedule(pattern)
    needed = _needed_after(schedule) if merge else None
    for k, cmd in enumerate(schedule):
        if isinstance(cmd, N):
            batch.prepare(cmd.node)
        elif isinstance(cmd, E):
            batch.entangle(*cmd.nodes)
        elif isinstance(cmd, M):
            s = batch.parity(cmd.s_domain)
            t = batch.parity(cmd.t_domain)
            phis = np.where(s == 1, -cmd.angle, cmd.angle) + t * math.pi
            if mode == "branch":
                batch.measure_fixed(cmd.node, phis, np.full(batch.rows, fixed[cmd.node], dtype=np.int8))
            elif mode == "sampled":
                batch.measure_sampled(cmd.node, phis, rng)
            else:
                batch.measure_split(cmd.node, phis)
                if merge:
                    batch.merge(needed[k])
        elif isinstance(cmd, X):
            batch.pauli_x(cmd.node, batch.parity(cmd.domain))
        elif isinstance(cmd, Z):
            batch.pauli_z(cmd.node, batch.parity(cmd.domain))


def _input_vector(pattern: Pattern, input_state, tol: Tolerances) -> np.ndarray:
    dim = 2 ** len(pattern.inputs)
    if input_state is None:
        v = np.zeros(dim, dtype=np.complex128)
        v[0] = 1.0
        return v
    v = np.asarray(input_state, dtype=np.complex128).reshape(-1)
    if v.size != dim:
        raise DimensionMismatch(f"input has {v.size} amplitudes, pattern expects {dim}")
    if abs(np.linalg.norm(v) - 1.0) > tol.predicate:
        raise InvalidState("input state is not normalized")
    return v


def _reference_nodes(count: int) -> list[int]:
    return [-(k + 1) for k in range(count)]


def average_output(pattern: Pattern, vectors: np.ndarray, n_refs: int = 0,
                   tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Branch-averaged output density over (reference qubits, outputs).

    vectors holds one or more rows over (reference qubits, inputs); their
    mixture is the input. Reference qubits are carried along untouched.
    """
    validate(pattern, require_standard=True)
    refs = _reference_nodes(n_refs)
    vectors = np.atleast_2d(np.asarray(vectors, dtype=np.complex128))
    expected = 2 ** (n_refs + len(pattern.inputs))
    if vectors.shape[1] != expected:
        raise DimensionMismatch(f"input rows have {vectors.shape[1]} amplitudes, expected {expected}")
    batch = _Batch(vectors, refs + list(pattern.inputs), tol.max_live_qubits)
    merge = pattern.n_measurements > tol.average_enumeration_limit
    _run(pattern, batch, "average", tol, merge=merge)
    rows = batch.output(refs + list(pattern.outputs))
    return rows.T @ rows.conj()


def sampled_output(pattern: Pattern, vector: np.ndarray, n_refs: int, shots: int, seed: int,
                   chunk: int = 4096, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Shot-averaged output density over (reference qubits, outputs) from Born-rule sampling.

    vector is a normalized pure input over (reference qubits, inputs). Shots
    run in chunks drawn from one seeded generator.
    """
    validate(pattern, require_standard=True)
    if shots < 1:
        raise ValueError(f"shots must be at least 1, got {shots}")
    refs = _reference_nodes(n_refs)
    vector = np.asarray(vector, dtype=np.complex128).reshape(-1)
    rng = np.random.default_rng(seed)
    total = None
    remaining = shots
    while remaining > 0:
        size = min(chunk, remaining)
        batch = _Batch(np.repeat(vector[None, :], size, axis=0),
                       refs + list(pattern.inputs), tol.max_live_qubits)
        _run(pattern, batch, "sampled", tol, rng=rng)
        rows = batch.output(refs + list(pattern.outputs))
        part = rows.T @ rows.conj()
        total = part if total is None else total + part
        remaining -= size
    return total / shots


def simulate_pattern(pattern: Pattern, input_state: Optional[Sequence[complex]] = None,
                     mode: SimulationMode = SimulationMode.AVERAGE,
                     outcomes: Union[Mapping[int, int], Sequence[int], None] = None,
                     seed: Optional[int] = None, shots: int = 1,
                     tol: Tolerances = DEFAULT_TOLERANCES
                     ) -> Union[BranchResult, SampledResult, DensityState]:
    """Run a standard pattern on an input state over its input nodes.

    Args:
        pattern: Standard-form pattern
        input_state: Normalized amplitudes over the inputs (first input most significant);
            defaults to |0…0⟩
        mode: branch (fixed outcomes), sampled (Born rule, seeded) or average
        outcomes: For branch mode, node -> bit, or bits in measurement order
        seed: For sampled mode
        shots: For sampled mode, number of independent runs

    Returns:
        BranchResult, SampledResult or the averaged DensityState

    Raises:
        InvalidPattern: if the pattern is invalid or not standard
        DimensionMismatch: if the input does not match the inputs
    """
    mode = SimulationMode(mode)
    validate(pattern, require_standard=True)
    v = _input_vector(pattern, input_state, tol)
    measured = [m.node for m in pattern.measurements]

    if mode is SimulationMode.AVERAGE:
        rho = average_output(pattern, v, 0, tol)
        return DensityState(rho.shape[0], Matrix((rho + rho.conj().T) / 2.0),
                            float(np.trace(rho).real))

    if mode is SimulationMode.BRANCH:
        fixed = _branch_outcomes(measured, outcomes)
        batch = _Batch(v[None, :], pattern.inputs, tol.max_live_qubits)
        _run(pattern, batch, "branch", tol, fixed=fixed)
        out = batch.output(pattern.outputs)[0]
        probability = float(np.vdot(out, out).real)
        state = out / math.sqrt(probability) if probability > 0.0 else out
        return BranchResult(state, probability, dict(fixed))

    if shots < 1:
        raise ValueError(f"shots must be at least 1, got {shots}")
    rng = np.random.default_rng(seed)
    batch = _Batch(np.repeat(v[None, :], shots, axis=0), pattern.inputs, tol.max_live_qubits)
    _run(pattern, batch, "sampled", tol, rng=rng)
    order = [batch.column[n] for n in measured]
    return SampledResult(batch.output(pattern.outputs), batch.bits[:, order], tuple(measured))


def _branch_outcomes(measured: Sequence[int], outcomes) -> dict[int, int]:
    if outcomes is None:
        return {n: 0 for n in measured}
    if isinstance(outcomes, Mapping):
        missing = [n for n in measured if n not in outcomes]
        if missing:
            raise ValueError(f"no outcome given for measured nodes {missing}")
        return {n: int(outcomes[n]) & 1 for n in measured}
    bits = list(outcomes)
    if len(bits) != len(measured):
        raise ValueError(f"expected {len(measured)} outcome bits, got {len(bits)}")
    return {n: int(b) & 1 for n, b in zip(measured, bits)}


def enumerate_branches(pattern: Pattern, input_state: Optional[Sequence[complex]] = None,
                       limit: int = 16, tol: Tolerances = DEFAULT_TOLERANCES) -> list[BranchResult]:
    """Every outcome branch, in order of the outcome bits read as a binary number.

    Raises:
        SimulationLimitExceeded: if the pattern has more than limit measurements
    """
    validate(pattern, require_standard=True)
    m = pattern.n_measurements
    if m > limit:
        raise SimulationLimitExceeded(f"{m} measurements give 2^{m} branches (limit {limit})")
    v = _input_vector(pattern, input_state, tol)
    batch = _Batch(v[None, :], pattern.inputs, tol.max_live_qubits)
    _run(pattern, batch, "average", tol)

    measured = [mm.node for mm in pattern.measurements]
    bits = batch.bits[:, [batch.column[n] for n in measured]]
    order = np.lexsort(bits.T[::-1]) if m else np.arange(batch.rows)
    rows = batch.output(pattern.outputs)
    results = []
    for r in order:
        out = rows[r]
        probability = float(np.vdot(out, out).real)
        state = out / math.sqrt(probability) if probability > 0.0 else out
        results.append(BranchResult(state, probability,
                                    {n: int(b) for n, b in zip(measured, bits[r])}))
    return results
