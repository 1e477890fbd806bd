"""Parameter counting, manifold dimensions and the Lie-family scan.

Everything except empirical_manifold_dim is exact integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from constants import FAMILY_SO, FAMILY_U, FAMILY_SU, FAMILY_SP
from errors import UnsupportedField
from matfield import (FieldTag, Matrix, hermitian_basis, gram_rank, singular_values,
                      trace_norm, pauli, kron_all)
from quantum_core import DensityState, random_ket
from qf_configloader import DEFAULT_TOLERANCES, Tolerances


# real dimension of the field: dim X(d) = (d − 1) · this
FIELD_REAL_DIM = {
    FieldTag.REAL: 1,
    FieldTag.COMPLEX: 2,
    FieldTag.QUATERNION: 4,
}


@dataclass(frozen=True)
class CountReport:
    """S(d) for one field."""
    field: FieldTag
    d: int
    s: int
    basis_size: int
    rank_certified: bool


class MultiplicativityCheck(NamedTuple):
    field: FieldTag
    da: int
    db: int
    lhs: int
    rhs: int
    passed: bool


@dataclass(frozen=True)
class ManifoldReport:
    """Manifold of most accurate propositions of a d-level system over field.

    dim_x is its real dimension, (d − 1) times the real dimension of the field.
    """
    field: FieldTag
    d: int
    dim_x: int


@dataclass(frozen=True)
class LieFamily:
    """Classical series evaluated at m = multiplier · d."""
    name: str
    multiplier: int = 1

    def __post_init__(self):
        if self.name not in _DIMENSION_FORMULAS:
            raise ValueError(f"unknown Lie family '{self.name}'")
        if self.multiplier < 1:
            raise ValueError(f"multiplier must be positive, got {self.multiplier}")

    def dim_at(self, m: int) -> int:
        return _DIMENSION_FORMULAS[self.name](m)

    def dim(self, d: int) -> int:
        return self.dim_at(self.multiplier * d)

    def __str__(self) -> str:
        return f"{self.name}({self.multiplier}d)" if self.multiplier > 1 else f"{self.name}(d)"


_DIMENSION_FORMULAS = {
    FAMILY_SO: lambda m: m * (m - 1) // 2,
    FAMILY_U: lambda m: m * m,
    FAMILY_SU: lambda m: m * m - 1,
    FAMILY_SP: lambda m: m * (2 * m + 1),
}

FAMILY_NAMES = (FAMILY_SO, FAMILY_U, FAMILY_SU, FAMILY_SP)


@dataclass(frozen=True)
class FamilyScanResult:
    x2: int
    g1: int
    dmax: int
    matches: list[LieFamily] = field(default_factory=list)


@dataclass(frozen=True)
class TomographyDemo:
    """Two real two-qubit states that no product of local real observables tells apart."""
    rho_plus: DensityState
    rho_minus: DensityState
    local_gap: float
    global_gap: float
    witness: Matrix
    trace_distance: float


# ----- parameter counting -----

def count_parameters(field_tag: FieldTag, d: int,
                     tol: Tolerances = DEFAULT_TOLERANCES) -> CountReport:
    """S(d): size of a rank-certified basis of self-adjoint d×d matrices."""
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")
    field_tag = FieldTag(field_tag)
    basis = hermitian_basis(field_tag, d)
    rank = gram_rank(basis, tol)
    return CountReport(field_tag, d, rank, len(basis), rank == len(basis))


def count_table(dmax: int, fields: Sequence[FieldTag] = tuple(FieldTag),
                tol: Tolerances = DEFAULT_TOLERANCES) -> list[CountReport]:
    return [count_parameters(f, d, tol) for f in fields for d in range(1, dmax + 1)]


def check_multiplicativity(field_tag: FieldTag, da: int, db: int,
                           tol: Tolerances = DEFAULT_TOLERANCES) -> MultiplicativityCheck:
    """Compare S(da·db) against S(da)·S(db)."""
    if da < 2 or db < 2:
        raise ValueError(f"dimensions must be at least 2, got ({da}, {db})")
    field_tag = FieldTag(field_tag)
    lhs = count_parameters(field_tag, da * db, tol).s
    rhs = count_parameters(field_tag, da, tol).s * count_parameters(field_tag, db, tol).s
    return MultiplicativityCheck(field_tag, da, db, lhs, rhs, lhs == rhs)


def multiplicativity_grid(dims: Sequence[int] = (2, 3, 4),
                          fields: Sequence[FieldTag] = tuple(FieldTag),
                          tol: Tolerances = DEFAULT_TOLERANCES) -> list[MultiplicativityCheck]:
    return [check_multiplicativity(f, da, db, tol) for f in fields for da in dims for db in dims]


def multiplicative_fields(grid: Sequence[MultiplicativityCheck]) -> list[FieldTag]:
    """Fields that pass every check in the grid."""
    return [f for f in FieldTag
            if any(c.field is f for c in grid) and all(c.passed for c in grid if c.field is f)]


# ----- manifolds -----

def manifold_dim(field_tag: FieldTag, d: int) -> ManifoldReport:
    """Real dimension of the projective space of rank-1 projectors."""
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    field_tag = FieldTag(field_tag)
    return ManifoldReport(field_tag, d, (d - 1) * FIELD_REAL_DIM[field_tag])


def check_linear_growth(field_tag: FieldTag, dmax: int) -> bool:
    """dim X(d) = dim X(2)·(d − 1) for 2 ≤ d ≤ dmax."""
    x2 = manifold_dim(field_tag, 2).dim_x
    return all(manifold_dim(field_tag, d).dim_x == x2 * (d - 1) for d in range(2, dmax + 1))


def empirical_manifold_dim(d: int, samples: int, seed: int,
                           field_tag: FieldTag = FieldTag.COMPLEX, step: float = 1e-4,
                           tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """Tangent-space dimension of the rank-1 projectors at a random base point.

    Differentiates samples random curves t ↦ |ψ + t·v⟩⟨ψ + t·v| (normalized)
    by central differences and counts singular values of the stacked tangent
    vectors above tol.tangent_rank_ratio times the largest.
    """
    if FieldTag(field_tag) is not FieldTag.COMPLEX:
        raise UnsupportedField("tangent-space estimate is implemented for the complex field only")
    if d < 2:
        raise ValueError(f"dimension must be at least 2, got {d}")
    rng = np.random.default_rng(seed)
    psi = random_ket(d, rng)

    def projector(v: np.ndarray) -> np.ndarray:
        v = v / np.linalg.norm(v)
        return np.outer(v, v.conj())

    tangents = []
    for _ in range(samples):
        direction = random_ket(d, rng)
        dp = (projector(psi + step * direction) - projector(psi - step * direction)) / (2 * step)
        tangents.append(np.concatenate([dp.real.ravel(), dp.imag.ravel()]))
    stacked = Matrix.real(np.array(tangents))
    values = singular_values(stacked, tol)
    return sum(1 for s in values if s > tol.tangent_rank_ratio * values[0])


# ----- Lie families -----

def lie_dim(family: LieFamily, d: int) -> int:
    return family.dim(d)


def check_homogeneous(family: LieFamily, x2: int, g1: int, dmax: int) -> bool:
    """dim X(d) = dim G(d) − dim G(d−1) − dim G(1) with dim X(d) = x2·(d−1), for 2 ≤ d ≤ dmax.

    Also requires dim G(1) = g1, so the stability group factor matches.
    """
    if family.dim(1) != g1:
        return False
    return all(x2 * (d - 1) == family.dim(d) - family.dim(d - 1) - g1
               for d in range(2, dmax + 1))


def quadratic_form(x2: int, g1: int, d: int) -> int:
    """dim G(d) forced by the homogeneous-space relation: x2·d(d−1)/2 + g1·d."""
    return x2 * d * (d - 1) // 2 + g1 * d


def scan_families(x2: int, g1: int, dmax: int, nmax: int) -> FamilyScanResult:
    """All (family, n ≤ nmax) whose dimensions follow the quadratic form for 1 ≤ d ≤ dmax."""
    if x2 < 1 or g1 < 0 or dmax < 4 or nmax < 1:
        raise ValueError(f"scan needs x2 >= 1, g1 >= 0, dmax >= 4, nmax >= 1; "
                         f"got ({x2}, {g1}, {dmax}, {nmax})")
    matches = []
    for name in FAMILY_NAMES:
        for n in range(1, nmax + 1):
            family = LieFamily(name, n)
            if all(family.dim(d) == quadratic_form(x2, g1, d) for d in range(1, dmax + 1)):
                matches.append(family)
    return FamilyScanResult(x2, g1, dmax, matches)


def expected_families(nmax: int) -> dict[tuple[int, int], list[LieFamily]]:
    """Closed-form (x2, g1) signature of SO(nd), U(nd) and Sp(nd)."""
    expected: dict[tuple[int, int], list[LieFamily]] = {}
    for n in range(1, nmax + 1):
        for key, name in (((n * n, n * (n - 1) // 2), FAMILY_SO),
                          ((2 * n * n, n * n), FAMILY_U),
                          ((4 * n * n, n * (2 * n + 1)), FAMILY_SP)):
            expected.setdefault(key, []).append(LieFamily(name, n))
    return expected


def exhaustive_inverse_scan(x2max: int, g1max: int, dmax: int,
                            nmax: int) -> dict[tuple[int, int], list[LieFamily]]:
    """Nonempty scan results over 1 ≤ x2 ≤ x2max, 0 ≤ g1 ≤ g1max."""
    found = {}
    for x2 in range(1, x2max + 1):
        for g1 in range(0, g1max + 1):
            result = scan_families(x2, g1, dmax, nmax)
            if result.matches:
                found[(x2, g1)] = result.matches
    return found


# ----- local tomography in real quantum theory -----

def local_tomography_demo(tol: Tolerances = DEFAULT_TOLERANCES) -> TomographyDemo:
    """ρ± = (I⊗I ± σy⊗σy)/4 agree on every real local product observable."""
    def real(m: Matrix) -> Matrix:
        return Matrix.real(np.real(m.to_numpy()))

    identity4 = kron_all([pauli("I"), pauli("I")])
    witness = real(kron_all([pauli("Y"), pauli("Y")]))
    rho_plus = DensityState(4, real((identity4 + witness) / 4.0), 1.0)
    rho_minus = DensityState(4, real((identity4 - witness) / 4.0), 1.0)
    difference = rho_plus.mat - rho_minus.mat

    local_basis = [pauli("I"), pauli("X"), pauli("Z")]
    local_gap = max(abs((difference @ a.kron(b)).trace())
                    for a in local_basis for b in local_basis)
    global_gap = abs((difference @ witness).trace())
    return TomographyDemo(rho_plus, rho_minus, local_gap, global_gap, witness,
                          trace_norm(difference, tol) / 2.0)
