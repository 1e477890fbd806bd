"""Tests for field-tagged matrices and the spectral routines."""

import math

import numpy as np
import pytest
from dataclasses import replace
from hypothesis import given, settings, strategies as st

from errors import NonHermitian, UnsupportedField, NotIsometry, ConvergenceError, DimensionMismatch
from matfield import (
    FieldTag, Scalar, Matrix, identity, diag, outer, pauli, kron_all, hermitian_eig,
    singular_values, spectral_norm, trace_norm, unitary_completion, gram_rank,
    hermitian_basis, partial_trace, random_hermitian, random_unitary,
)
from qf_configloader import DEFAULT_TOLERANCES


# ---------------------------------------------------------
# Scalars
# ---------------------------------------------------------

def test_hamilton_product_is_not_commutative():
    i, j, k = Scalar(0, 1, 0, 0), Scalar(0, 0, 1, 0), Scalar(0, 0, 0, 1)
    assert i * j == k
    assert j * i == Scalar(0, 0, 0, -1)
    assert i * i == Scalar(-1, 0, 0, 0)


def test_scalar_field_is_smallest_containing_field():
    assert Scalar(2.0).field is FieldTag.REAL
    assert Scalar.from_complex(1j).field is FieldTag.COMPLEX
    assert Scalar(0, 0, 1, 0).field is FieldTag.QUATERNION
    with pytest.raises(UnsupportedField):
        Scalar(0, 0, 1, 0).to_complex()


# ---------------------------------------------------------
# Matrix basics
# ---------------------------------------------------------

class TestMatrix:
    def test_immutable(self):
        m = identity(2)
        with pytest.raises(AttributeError):
            m.field = FieldTag.REAL
        copy = m.to_numpy()
        copy[0, 0] = 5.0
        assert m.entry(0, 0) == Scalar(1.0)

    def test_real_tag_rejects_imaginary_parts(self):
        with pytest.raises(ValueError):
            Matrix(np.array([[1j]]), FieldTag.REAL)

    def test_arithmetic_promotes_field(self):
        m = pauli("X") + pauli("Y")
        assert m.field is FieldTag.COMPLEX
        np.testing.assert_allclose(m.to_numpy(), [[0, 1 - 1j], [1 + 1j, 0]])

    def test_pauli_algebra(self):
        x, y, z = pauli("X"), pauli("Y"), pauli("Z")
        assert (x @ y).max_abs_diff(z * 1j) < 1e-15
        assert (x @ x).max_abs_diff(identity(2)) < 1e-15
        assert all(p.is_unitary() and p.is_hermitian() for p in (x, y, z))

    def test_kron_all_shape_and_values(self):
        m = kron_all([pauli("Z"), pauli("X"), identity(2)])
        assert m.shape == (8, 8)
        np.testing.assert_allclose(m.to_numpy(),
                                   np.kron(np.kron(np.diag([1, -1]), [[0, 1], [1, 0]]), np.eye(2)))

    def test_projector_predicates(self):
        plus = outer([1, 1]) / 2.0
        assert plus.is_projector()
        assert plus.is_psd()
        assert not diag([1, -1]).is_psd()
        assert not (plus * 2.0).is_projector()

    def test_quaternion_matrices_support_addition_only(self):
        basis = hermitian_basis(FieldTag.QUATERNION, 2)
        total = basis[0] + basis[3]
        assert total.field is FieldTag.QUATERNION
        with pytest.raises(UnsupportedField):
            basis[0] @ basis[1]
        with pytest.raises(UnsupportedField):
            hermitian_eig(basis[0])


# ---------------------------------------------------------
# Jacobi eigensolver
# ---------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(1, 6))
def test_hermitian_eig_reconstructs(seed, d):
    m = random_hermitian(d, np.random.default_rng(seed))
    values, vectors = hermitian_eig(m)
    assert vectors.is_unitary(1e-9)
    assert list(values) == sorted(values, reverse=True)
    rebuilt = vectors @ diag(values) @ vectors.dagger()
    assert rebuilt.max_abs_diff(m) < 1e-9
    np.testing.assert_allclose(values, np.linalg.eigvalsh(m.to_numpy())[::-1], atol=1e-9)


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_hermitian_eig_converges_on_many_matrices(d):
    """Near convergence the off-diagonal mass must not lose precision to cancellation."""
    rng = np.random.default_rng(1000 + d)
    worst = 0.0
    for _ in range(300):
        m = random_hermitian(d, rng)
        values, vectors = hermitian_eig(m)
        rebuilt = vectors @ diag(values) @ vectors.dagger()
        worst = max(worst, rebuilt.max_abs_diff(m))
    assert worst <= 1e-9


def test_hermitian_eig_of_real_matrix_stays_real():
    m = Matrix.real([[2.0, 1.0], [1.0, 2.0]])
    values, vectors = hermitian_eig(m)
    assert vectors.field is FieldTag.REAL
    assert values == pytest.approx((3.0, 1.0))


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(NonHermitian):
        hermitian_eig(Matrix.complex([[0, 1], [0, 0]]))


def test_hermitian_eig_sweep_budget():
    tol = replace(DEFAULT_TOLERANCES, jacobi_max_sweeps=0)
    with pytest.raises(ConvergenceError):
        hermitian_eig(pauli("X"), tol)
    # already diagonal: no sweep needed
    assert hermitian_eig(diag([1.0, 2.0]), tol).values == (2.0, 1.0)


# ---------------------------------------------------------
# Norms and completion
# ---------------------------------------------------------

def test_singular_values_match_numpy(fx_rng):
    g = fx_rng.standard_normal((5, 3)) + 1j * fx_rng.standard_normal((5, 3))
    expected = np.linalg.svd(g, compute_uv=False)
    np.testing.assert_allclose(singular_values(Matrix(g)), expected, atol=1e-9)
    np.testing.assert_allclose(singular_values(Matrix(g.T)), expected, atol=1e-9)


def test_norms_of_diagonal():
    m = diag([1.0, -3.0, 0.5])
    assert spectral_norm(m) == pytest.approx(3.0)
    assert trace_norm(m) == pytest.approx(4.5)
    assert trace_norm(diag([1.0, -1.0])) == pytest.approx(2.0)


def test_unitary_completion_keeps_columns(fx_rng):
    u = random_unitary(4, fx_rng).to_numpy()
    v = Matrix(u[:, :2])
    completed = unitary_completion(v)
    assert completed.is_unitary(1e-10)
    np.testing.assert_allclose(completed.to_numpy()[:, :2], u[:, :2], atol=1e-12)


def test_unitary_completion_single_column():
    completed = unitary_completion(Matrix.ket([1 / math.sqrt(2), 1 / math.sqrt(2)]))
    assert completed.is_unitary(1e-12)


def test_unitary_completion_rejects_non_isometry():
    with pytest.raises(NotIsometry):
        unitary_completion(Matrix.ket([1.0, 1.0]))


# ---------------------------------------------------------
# Parameter counting helpers
# ---------------------------------------------------------

@pytest.mark.parametrize("field_tag, count", [
    (FieldTag.REAL, lambda d: d * (d + 1) // 2),
    (FieldTag.COMPLEX, lambda d: d * d),
    (FieldTag.QUATERNION, lambda d: d * (2 * d - 1)),
])
@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_hermitian_basis_is_independent_and_self_adjoint(field_tag, count, d):
    basis = hermitian_basis(field_tag, d)
    assert len(basis) == count(d)
    assert all(b.is_hermitian() for b in basis)
    assert gram_rank(basis) == len(basis)


def test_gram_rank_detects_dependence():
    assert gram_rank([pauli("X"), pauli("Z"), pauli("X") + pauli("Z")]) == 2
    assert gram_rank([]) == 0


# ---------------------------------------------------------
# Partial trace
# ---------------------------------------------------------

def test_partial_trace_of_product(fx_rng):
    a = random_hermitian(2, fx_rng)
    b = random_hermitian(3, fx_rng)
    joint = a.kron(b)
    assert partial_trace(joint, [2, 3], keep=[0]).max_abs_diff(a * b.trace()) < 1e-12
    assert partial_trace(joint, [2, 3], keep=[1]).max_abs_diff(b * a.trace()) < 1e-12


def test_partial_trace_of_bell_state_is_mixed():
    bell = outer([1, 0, 0, 1]) / 2.0
    assert partial_trace(bell, [2, 2], keep=[1]).max_abs_diff(identity(2) / 2.0) < 1e-15


def test_partial_trace_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        partial_trace(identity(4), [2, 3], keep=[0])
