"""Propositions, (unnormalized) states and the probability / update rules.

Propositions are orthogonal projectors and states are positive matrices of
trace at most one. The from_* classmethods validate their input; the
operations in this module build their results directly, since those are
valid by construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from errors import (DimensionMismatch, InvalidProposition, InvalidState, ZeroPosterior,
                    NotMostAccurate, NotPure, NotJointlyDecidable, HypothesisViolated,
                    SamplingCapExceeded)
from matfield import Matrix, FieldTag, hermitian_eig, spectral_norm, identity, outer
from qf_configloader import DEFAULT_TOLERANCES, Tolerances


@dataclass(frozen=True)
class Proposition:
    """Orthogonal projector on a d-dimensional system."""
    dim: int
    proj: Matrix
    rank: int

    @classmethod
    def from_matrix(cls, m: Matrix, tol: Tolerances = DEFAULT_TOLERANCES) -> Proposition:
        """Validate a projector and infer its rank.

        Raises:
            InvalidProposition: if m is not a hermitian idempotent
        """
        if m.field is FieldTag.QUATERNION or not m.is_square:
            raise InvalidProposition(f"{m!r} is not a square complex matrix")
        if not m.is_projector(tol.predicate):
            raise InvalidProposition("matrix is not an orthogonal projector")
        trace = m.trace().real
        rank = int(round(trace))
        if abs(trace - rank) > 1e-8:
            raise InvalidProposition(f"projector trace {trace} is not an integer")
        return cls(m.rows, m.as_complex(), rank)

    @classmethod
    def from_ket(cls, ket: Sequence[complex]) -> Proposition:
        """Most accurate proposition onto the span of ket (need not be normalized)."""
        v = np.asarray(ket, dtype=np.complex128).reshape(-1)
        norm = np.linalg.norm(v)
        if norm == 0.0:
            raise InvalidProposition("zero vector spans no proposition")
        return cls(v.size, outer(v / norm), 1)

    @classmethod
    def identity(cls, d: int) -> Proposition:
        return cls(d, identity(d), d)

    @classmethod
    def basis(cls, d: int, index: int) -> Proposition:
        """Projector onto the computational basis vector |index⟩."""
        v = np.zeros(d, dtype=np.complex128)
        v[index] = 1.0
        return cls.from_ket(v)

    @property
    def is_most_accurate(self) -> bool:
        return self.rank == 1

    def complement(self) -> Proposition:
        """The negation I − x."""
        return Proposition(self.dim, identity(self.dim) - self.proj, self.dim - self.rank)

    def ket(self) -> np.ndarray:
        """Unit vector spanning a most accurate proposition (phase fixed by its largest entry)."""
        if not self.is_most_accurate:
            raise NotMostAccurate(f"rank-{self.rank} proposition has no single ket")
        p = self.proj.to_numpy()
        j = int(np.argmax(np.real(np.diag(p))))
        column = p[:, j]
        return column / np.linalg.norm(column)


@dataclass(frozen=True)
class DensityState:
    """Positive matrix of trace weight in (0, 1]; normalization is not required."""
    dim: int
    mat: Matrix
    weight: float

    @classmethod
    def from_matrix(cls, m: Matrix, tol: Tolerances = DEFAULT_TOLERANCES) -> DensityState:
        """Validate a density matrix.

        Raises:
            InvalidState: if m is not hermitian PSD with trace in (0, 1]
        """
        if m.field is FieldTag.QUATERNION or not m.is_square:
            raise InvalidState(f"{m!r} is not a square complex matrix")
        if not m.is_hermitian(tol.predicate):
            raise InvalidState("density matrix is not hermitian")
        values, _ = hermitian_eig(m, tol)
        if values[-1] < -tol.predicate:
            raise InvalidState(f"density matrix has negative eigenvalue {values[-1]}")
        weight = m.trace().real
        if weight <= 0.0 or weight > 1.0 + tol.predicate:
            raise InvalidState(f"trace {weight} is outside (0, 1]")
        return cls(m.rows, m.as_complex(), weight)

    @classmethod
    def from_ket(cls, ket: Sequence[complex], weight: float = 1.0) -> DensityState:
        v = np.asarray(ket, dtype=np.complex128).reshape(-1)
        v = v / np.linalg.norm(v)
        return cls(v.size, outer(v) * weight, weight)

    @classmethod
    def maximally_mixed(cls, d: int) -> DensityState:
        return cls(d, identity(d) / d, 1.0)

    def normalized(self) -> DensityState:
        return DensityState(self.dim, self.mat / self.weight, 1.0)

    def is_pure(self, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        values, _ = hermitian_eig(self.mat, tol)
        return len(values) == 1 or values[1] <= tol.purity


class ContinuityRow(NamedTuple):
    delta: float
    min_probability: float
    bound: float
    ok: bool


@dataclass(frozen=True)
class BallSpec:
    """Open metric ball of most accurate propositions around center."""
    center: Proposition
    radius: float

    def __post_init__(self):
        if not self.center.is_most_accurate:
            raise NotMostAccurate("ball center must be a rank-1 proposition")
        if not 0.0 < self.radius <= 1.0:
            raise ValueError(f"ball radius must lie in (0, 1], got {self.radius}")


def _check_dims(a: int, b: int) -> None:
    if a != b:
        raise DimensionMismatch(f"dimensions {a} and {b} differ")


def probability(x: Proposition, rho: DensityState) -> float:
    """tr(x·ρ)."""
    _check_dims(x.dim, rho.dim)
    return (x.proj @ rho.mat).trace().real


def update(rho: DensityState, x: Proposition, tol: Tolerances = DEFAULT_TOLERANCES) -> DensityState:
    """Lüders update x·ρ·x, left unnormalized so its trace is probability(x, ρ).

    Raises:
        ZeroPosterior: if x has probability below tol.zero_posterior
    """
    p = probability(x, rho)
    if p < tol.zero_posterior:
        raise ZeroPosterior(f"conditioning on a proposition of probability {p:.3g}")
    post = x.proj @ rho.mat @ x.proj
    post = (post + post.dagger()) / 2.0
    return DensityState(rho.dim, post, p)


def distance(e: Proposition, f: Proposition, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Spectral norm of e − f for most accurate propositions."""
    _check_dims(e.dim, f.dim)
    if not (e.is_most_accurate and f.is_most_accurate):
        raise NotMostAccurate("distance is defined on rank-1 propositions only")
    return spectral_norm(e.proj - f.proj, tol)


def distance_witness(e: Proposition, f: Proposition,
                     tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[DensityState, float]:
    """State maximizing |prob(e|ρ) − prob(f|ρ)|, and the attained value.

    The maximizer is the eigenvector of e − f for its largest eigenvalue.
    """
    _check_dims(e.dim, f.dim)
    if not (e.is_most_accurate and f.is_most_accurate):
        raise NotMostAccurate("distance is defined on rank-1 propositions only")
    _, vectors = hermitian_eig(e.proj - f.proj, tol)
    rho = DensityState.from_ket(vectors.column(0))
    return rho, abs(probability(e, rho) - probability(f, rho))


def jointly_decidable(x: Proposition, y: Proposition, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    _check_dims(x.dim, y.dim)
    commutator = x.proj @ y.proj - y.proj @ x.proj
    return spectral_norm(commutator, tol) <= tol.joint_decidability


def _require_joint(x: Proposition, y: Proposition, tol: Tolerances) -> None:
    if not jointly_decidable(x, y, tol):
        raise NotJointlyDecidable("propositions do not commute")


def _rank_of(m: Matrix) -> int:
    return int(round(m.trace().real))


def meet(x: Proposition, y: Proposition, tol: Tolerances = DEFAULT_TOLERANCES) -> Proposition:
    """x and y: the product x·y of commuting projectors."""
    _require_joint(x, y, tol)
    m = x.proj @ y.proj
    m = (m + m.dagger()) / 2.0
    return Proposition(x.dim, m, _rank_of(m))


def join(x: Proposition, y: Proposition, tol: Tolerances = DEFAULT_TOLERANCES) -> Proposition:
    """x or y: x + y − x·y for commuting projectors."""
    both = meet(x, y, tol)
    m = x.proj + y.proj - both.proj
    return Proposition(x.dim, m, _rank_of(m))


def compose(rho_a: DensityState, rho_b: DensityState) -> DensityState:
    """State of the composite system (tensor product)."""
    return DensityState(rho_a.dim * rho_b.dim, rho_a.mat.kron(rho_b.mat),
                        rho_a.weight * rho_b.weight)


def compose_propositions(x: Proposition, y: Proposition) -> Proposition:
    return Proposition(x.dim * y.dim, x.proj.kron(y.proj), x.rank * y.rank)


def pure_state_of(e: Proposition) -> DensityState:
    if not e.is_most_accurate:
        raise NotMostAccurate(f"rank-{e.rank} proposition has no pure state")
    return DensityState(e.dim, e.proj, 1.0)


def proposition_of(rho: DensityState, tol: Tolerances = DEFAULT_TOLERANCES) -> Proposition:
    """The most accurate proposition that is true in the pure state rho."""
    values, vectors = hermitian_eig(rho.mat, tol)
    if len(values) > 1 and values[1] > tol.purity:
        raise NotPure(f"second eigenvalue {values[1]:.3g} exceeds {tol.purity:g}")
    return Proposition.from_ket(vectors.column(0))


# ----- random sampling -----

def random_ket(d: int, rng: np.random.Generator) -> np.ndarray:
    """Unit vector uniform on the complex projective space."""
    v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    return v / np.linalg.norm(v)


def random_most_accurate(d: int, rng: np.random.Generator) -> Proposition:
    return Proposition.from_ket(random_ket(d, rng))


def random_pure_state(d: int, rng: np.random.Generator) -> DensityState:
    return DensityState.from_ket(random_ket(d, rng))


def random_density(d: int, rng: np.random.Generator, weight: float = 1.0) -> DensityState:
    """Mixed state from the Hilbert–Schmidt ensemble, scaled to the given weight."""
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    m = g @ g.conj().T
    m = m / np.trace(m).real * weight
    return DensityState(d, Matrix(m), weight)


def sample_ball(ball: BallSpec, rng: np.random.Generator,
                tol: Tolerances = DEFAULT_TOLERANCES) -> Proposition:
    """Draw a most accurate proposition uniformly from an open metric ball.

    Under the unitarily invariant measure the squared distance s² to a fixed
    point has CDF t^(d−1), so s = δ·u^(1/(2d−2)) samples the ball exactly.
    Draws that fail the strict distance check (rounding at the rim) are
    rejected, up to tol.ball_sampling_cap attempts.

    Raises:
        SamplingCapExceeded: if no accepted draw within the cap
    """
    e0 = ball.center
    d = e0.dim
    if d < 2:
        return e0
    psi0 = e0.ket()
    for _ in range(tol.ball_sampling_cap):
        s = ball.radius * rng.random() ** (1.0 / (2 * d - 2))
        direction = random_ket(d, rng)
        direction = direction - np.vdot(psi0, direction) * psi0
        norm = np.linalg.norm(direction)
        if norm < 1e-12:
            continue
        psi = math.sqrt(1.0 - s * s) * psi0 + s * direction / norm
        e = Proposition.from_ket(psi)
        if distance(e, e0, tol) < ball.radius:
            return e
    raise SamplingCapExceeded(f"no sample inside radius {ball.radius} "
                              f"after {tol.ball_sampling_cap} attempts")


def continuity_probe(e0: Proposition, x: Proposition, deltas: Sequence[float], samples: int,
                     seed: int, tol: Tolerances = DEFAULT_TOLERANCES) -> list[ContinuityRow]:
    """Minimum of prob(x|e) over sampled e near e0, for each radius.

    A radius of 0 reports prob(x|e0) itself. Each row carries the bound
    1 − δ² − 1e-9 and whether the observed minimum respects it.

    Raises:
        HypothesisViolated: if prob(x|e0) is below 1 − tol.predicate
    """
    if not e0.is_most_accurate:
        raise NotMostAccurate("continuity base point must be rank 1")
    _check_dims(e0.dim, x.dim)
    p0 = probability(x, pure_state_of(e0))
    if p0 < 1.0 - tol.predicate:
        raise HypothesisViolated(f"prob(x|e0) = {p0:.12g} is not 1")
    if samples < 1:
        raise ValueError("samples must be at least 1")

    rng = np.random.default_rng(seed)
    rows = []
    for delta in deltas:
        if delta == 0.0:
            lowest = p0
        else:
            ball = BallSpec(e0, float(delta))
            lowest = min(probability(x, pure_state_of(sample_ball(ball, rng, tol)))
                         for _ in range(samples))
        bound = 1.0 - delta * delta - 1e-9
        rows.append(ContinuityRow(float(delta), lowest, bound, lowest >= bound))
    return rows
