"""Field-tagged dense matrices for small dimensions.

Matrices over the reals, complex numbers or quaternions. Real and complex
matrices carry a complex128 array; quaternion matrices carry a float64
array of shape (rows, cols, 4) holding the (w, x, y, z) components. Only
hermitian_basis builds quaternion matrices, and quaternion matrices support
no more than addition, real scaling, adjoint and the self-adjointness test.

All matrices are immutable: every operation returns a new Matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Sequence

import numpy as np

from constants import FIELD_REAL, FIELD_COMPLEX, FIELD_QUATERNION
from errors import (NonHermitian, UnsupportedField, NotIsometry,
                    ConvergenceError, DimensionMismatch)
from qf_configloader import DEFAULT_TOLERANCES, Tolerances


class FieldTag(str, Enum):
    """Division ring of the matrix entries."""
    REAL = FIELD_REAL
    COMPLEX = FIELD_COMPLEX
    QUATERNION = FIELD_QUATERNION


@dataclass(frozen=True)
class Scalar:
    """A quaternion w + x·i + y·j + z·k; reals and complex numbers embed as special cases."""
    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    @classmethod
    def from_complex(cls, value: complex) -> Scalar:
        value = complex(value)
        return cls(value.real, value.imag, 0.0, 0.0)

    @property
    def field(self) -> FieldTag:
        """Smallest field containing this scalar."""
        if self.y != 0.0 or self.z != 0.0:
            return FieldTag.QUATERNION
        if self.x != 0.0:
            return FieldTag.COMPLEX
        return FieldTag.REAL

    def conjugate(self) -> Scalar:
        return Scalar(self.w, -self.x, -self.y, -self.z)

    def __add__(self, other: Scalar) -> Scalar:
        return Scalar(self.w + other.w, self.x + other.x,
                      self.y + other.y, self.z + other.z)

    def __sub__(self, other: Scalar) -> Scalar:
        return Scalar(self.w - other.w, self.x - other.x,
                      self.y - other.y, self.z - other.z)

    def __mul__(self, other: Scalar) -> Scalar:
        # Hamilton product; not commutative
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = other.w, other.x, other.y, other.z
        return Scalar(a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
                      a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
                      a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
                      a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)

    def __abs__(self) -> float:
        return math.sqrt(self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2)

    def to_complex(self) -> complex:
        if self.field is FieldTag.QUATERNION:
            raise UnsupportedField("quaternion scalar has no complex value")
        return complex(self.w, self.x)


QUATERNION_UNITS = (Scalar(0, 1, 0, 0), Scalar(0, 0, 1, 0), Scalar(0, 0, 0, 1))


def _join_field(a: FieldTag, b: FieldTag) -> FieldTag:
    if FieldTag.QUATERNION in (a, b):
        return FieldTag.QUATERNION
    if FieldTag.COMPLEX in (a, b):
        return FieldTag.COMPLEX
    return FieldTag.REAL


class Matrix:
    """Immutable dense matrix over a tagged field."""

    __slots__ = ("field", "_data")

    def __init__(self, data: np.ndarray, field: FieldTag = FieldTag.COMPLEX):
        """Wrap an array.

        Args:
            data: 2-D array (real/complex) or (rows, cols, 4) array (quaternion)
            field: Field tag; a real tag requires vanishing imaginary parts
        """
        field = FieldTag(field)
        if field is FieldTag.QUATERNION:
            arr = np.array(data, dtype=np.float64)
            if arr.ndim != 3 or arr.shape[2] != 4:
                raise ValueError(f"quaternion matrix needs shape (rows, cols, 4), got {arr.shape}")
        else:
            arr = np.array(data, dtype=np.complex128)
            if arr.ndim == 1:
                arr = arr.reshape(-1, 1)
            if arr.ndim != 2:
                raise ValueError(f"matrix needs a 2-D array, got shape {arr.shape}")
            if field is FieldTag.REAL:
                if np.any(np.abs(arr.imag) > 0.0):
                    raise ValueError("real matrix has non-zero imaginary parts")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError("matrix dimensions must be positive")
        arr.flags.writeable = False
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_data", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # ----- construction -----

    @classmethod
    def real(cls, data) -> Matrix:
        return cls(np.asarray(data, dtype=np.float64), FieldTag.REAL)

    @classmethod
    def complex(cls, data) -> Matrix:
        return cls(data, FieldTag.COMPLEX)

    @classmethod
    def ket(cls, amplitudes: Sequence[complex]) -> Matrix:
        """Column vector."""
        return cls(np.asarray(amplitudes, dtype=np.complex128).reshape(-1, 1))

    # ----- shape & access -----

    @property
    def rows(self) -> int:
        return self._data.shape[0]

    @property
    def cols(self) -> int:
        return self._data.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def entries(self) -> tuple[Scalar, ...]:
        """Row-major entries as Scalars."""
        if self.field is FieldTag.QUATERNION:
            return tuple(Scalar(*map(float, q)) for q in self._data.reshape(-1, 4))
        return tuple(Scalar.from_complex(c) for c in self._data.reshape(-1))

    def entry(self, i: int, j: int) -> Scalar:
        if self.field is FieldTag.QUATERNION:
            return Scalar(*map(float, self._data[i, j]))
        return Scalar.from_complex(self._data[i, j])

    def to_numpy(self) -> np.ndarray:
        """Writable copy of the underlying array (complex128 unless quaternion)."""
        return np.array(self._data)

    def column(self, j: int) -> np.ndarray:
        self._require_numeric("column")
        return np.array(self._data[:, j])

    def real_components(self) -> np.ndarray:
        """Flattened real coordinates: 1, 2 or 4 per entry depending on the field."""
        if self.field is FieldTag.QUATERNION:
            return self._data.reshape(-1).copy()
        if self.field is FieldTag.REAL:
            return self._data.real.reshape(-1).copy()
        return np.concatenate([self._data.real.reshape(-1), self._data.imag.reshape(-1)])

    # ----- arithmetic -----

    def _require_numeric(self, op: str) -> None:
        if self.field is FieldTag.QUATERNION:
            raise UnsupportedField(f"{op} is not supported for quaternion matrices")

    def _check_same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape} differ")

    def _promote(self, other: Matrix) -> tuple[np.ndarray, np.ndarray, FieldTag]:
        joined = _join_field(self.field, other.field)
        if joined is FieldTag.QUATERNION:
            return _as_quaternion(self), _as_quaternion(other), joined
        return self._data, other._data, joined

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        a, b, joined = self._promote(other)
        return Matrix(a + b, joined)

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        a, b, joined = self._promote(other)
        return Matrix(a - b, joined)

    def __neg__(self) -> Matrix:
        return Matrix(-self._data, self.field)

    def __mul__(self, factor: complex) -> Matrix:
        if isinstance(factor, Matrix):
            raise TypeError("use @ for matrix products")
        if self.field is FieldTag.QUATERNION:
            if complex(factor).imag != 0.0:
                raise UnsupportedField("quaternion matrices only scale by reals")
            return Matrix(self._data * complex(factor).real, self.field)
        field = self.field
        if complex(factor).imag != 0.0:
            field = FieldTag.COMPLEX
        return Matrix(self._data * factor, field)

    __rmul__ = __mul__

    def __truediv__(self, factor: complex) -> Matrix:
        return self * (1.0 / factor)

    def __matmul__(self, other: Matrix) -> Matrix:
        self._require_numeric("matrix product")
        other._require_numeric("matrix product")
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        return Matrix(self._data @ other._data, _join_field(self.field, other.field))

    def dagger(self) -> Matrix:
        """Conjugate transpose (quaternion conjugate for quaternion entries)."""
        if self.field is FieldTag.QUATERNION:
            conj = self._data * np.array([1.0, -1.0, -1.0, -1.0])
            return Matrix(np.transpose(conj, (1, 0, 2)), self.field)
        return Matrix(self._data.conj().T, self.field)

    def transpose(self) -> Matrix:
        if self.field is FieldTag.QUATERNION:
            return Matrix(np.transpose(self._data, (1, 0, 2)), self.field)
        return Matrix(self._data.T, self.field)

    def trace(self) -> complex:
        self._require_numeric("trace")
        if self.rows != self.cols:
            raise DimensionMismatch("trace of a non-square matrix")
        return complex(np.trace(self._data))

    def kron(self, other: Matrix) -> Matrix:
        self._require_numeric("kron")
        other._require_numeric("kron")
        return Matrix(np.kron(self._data, other._data), _join_field(self.field, other.field))

    def as_complex(self) -> Matrix:
        self._require_numeric("as_complex")
        return Matrix(self._data, FieldTag.COMPLEX)

    def max_abs_diff(self, other: Matrix) -> float:
        self._check_same_shape(other)
        a, b, _ = self._promote(other)
        return float(np.max(np.abs(a - b))) if a.size else 0.0

    # ----- predicates -----

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_hermitian(self, tol: float = DEFAULT_TOLERANCES.predicate) -> bool:
        return self.is_square and self.max_abs_diff(self.dagger()) <= tol

    def is_unitary(self, tol: float = DEFAULT_TOLERANCES.predicate) -> bool:
        if not self.is_square:
            return False
        return (self.dagger() @ self).max_abs_diff(identity(self.rows)) <= tol

    def is_isometry(self, tol: float = DEFAULT_TOLERANCES.predicate) -> bool:
        return (self.dagger() @ self).max_abs_diff(identity(self.cols)) <= tol

    def is_psd(self, tol: float = DEFAULT_TOLERANCES.predicate) -> bool:
        if not self.is_hermitian(tol):
            return False
        values, _ = hermitian_eig(self)
        return values[-1] >= -tol

    def is_projector(self, tol: float = DEFAULT_TOLERANCES.predicate) -> bool:
        return self.is_hermitian(tol) and (self @ self).max_abs_diff(self) <= tol

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field is other.field and np.array_equal(self._data, other._data)

    def __hash__(self) -> int:
        return hash((self.field, self._data.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix(field={self.field.value}, shape={self.shape})"


def _as_quaternion(m: Matrix) -> np.ndarray:
    if m.field is FieldTag.QUATERNION:
        return m._data
    out = np.zeros(m.shape + (4,))
    out[..., 0] = m._data.real
    out[..., 1] = m._data.imag
    return out


# ----- constructors -----

def identity(n: int, field: FieldTag = FieldTag.COMPLEX) -> Matrix:
    return Matrix(np.eye(n), field)


def zeros(rows: int, cols: int | None = None, field: FieldTag = FieldTag.COMPLEX) -> Matrix:
    return Matrix(np.zeros((rows, rows if cols is None else cols)), field)


def diag(values: Sequence[complex], field: FieldTag = FieldTag.COMPLEX) -> Matrix:
    return Matrix(np.diag(np.asarray(values, dtype=np.complex128)), field)


def outer(ket: Sequence[complex], bra: Sequence[complex] | None = None) -> Matrix:
    """|ket⟩⟨bra| (bra defaults to ket)."""
    k = np.asarray(ket, dtype=np.complex128).reshape(-1)
    b = k if bra is None else np.asarray(bra, dtype=np.complex128).reshape(-1)
    return Matrix(np.outer(k, b.conj()))


PAULI = {
    "I": Matrix.real([[1, 0], [0, 1]]),
    "X": Matrix.real([[0, 1], [1, 0]]),
    "Y": Matrix.complex([[0, -1j], [1j, 0]]),
    "Z": Matrix.real([[1, 0], [0, -1]]),
}


def pauli(name: str) -> Matrix:
    return PAULI[name.upper()]


def kron_all(matrices: Sequence[Matrix]) -> Matrix:
    out = matrices[0]
    for m in matrices[1:]:
        out = out.kron(m)
    return out


# ----- spectral routines -----

class Eigensystem(NamedTuple):
    values: tuple[float, ...]   # descending
    vectors: Matrix             # unitary, columns are eigenvectors


def _offdiag_mass(a: np.ndarray) -> float:
    """Frobenius norm of the strictly off-diagonal part, summed entry by entry."""
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def hermitian_eig(m: Matrix, tol: Tolerances = DEFAULT_TOLERANCES) -> Eigensystem:
    """Eigendecomposition of a hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of a[p, q] with a diagonal unitary,
    then applies the real symmetric Jacobi rotation to the (p, q) block.

    Raises:
        UnsupportedField: for quaternion matrices
        NonHermitian: if m is not hermitian within tol.predicate
        ConvergenceError: if tol.jacobi_max_sweeps sweeps do not suffice
    """
    if m.field is FieldTag.QUATERNION:
        raise UnsupportedField("hermitian_eig is not defined for quaternion matrices")
    if not m.is_hermitian(tol.predicate):
        raise NonHermitian(f"matrix of shape {m.shape} is not hermitian")

    n = m.rows
    a = m.to_numpy()
    a = (a + a.conj().T) / 2.0
    v = np.eye(n, dtype=np.complex128)
    threshold = tol.jacobi_offdiag * max(1.0, float(np.linalg.norm(a)))

    sweeps = 0
    while _offdiag_mass(a) > threshold:
        if sweeps >= tol.jacobi_max_sweeps:
            raise ConvergenceError(f"Jacobi did not converge in {sweeps} sweeps")
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r < 1e-300:
                    continue
                phase = apq / r
                theta = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                g = np.array([[c, s], [-s * phase.conjugate(), c * phase.conjugate()]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                v[:, idx] = v[:, idx] @ g
        sweeps += 1

    values = np.real(np.diag(a))
    order = np.argsort(-values, kind="stable")
    vectors = v[:, order]
    field = FieldTag.REAL if m.field is FieldTag.REAL else FieldTag.COMPLEX
    if field is FieldTag.REAL:
        vectors = vectors.real
    return Eigensystem(tuple(float(x) for x in values[order]), Matrix(vectors, field))


def singular_values(m: Matrix, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[float, ...]:
    """Singular values, descending (square roots of the eigenvalues of M†M)."""
    if m.field is FieldTag.QUATERNION:
        raise UnsupportedField("singular values are not defined for quaternion matrices")
    gram = m.dagger() @ m if m.cols <= m.rows else m @ m.dagger()
    values, _ = hermitian_eig(gram, tol)
    return tuple(math.sqrt(max(0.0, x)) for x in values)


def spectral_norm(m: Matrix, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Largest singular value; max |λ| for hermitian input."""
    if m.field is FieldTag.QUATERNION:
        raise UnsupportedField("spectral_norm is not defined for quaternion matrices")
    if m.is_hermitian(tol.predicate):
        values, _ = hermitian_eig(m, tol)
        return max(abs(values[0]), abs(values[-1]))
    return singular_values(m, tol)[0]


def trace_norm(m: Matrix, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Sum of singular values; sum of |λ| for hermitian input."""
    if m.field is FieldTag.QUATERNION:
        raise UnsupportedField("trace_norm is not defined for quaternion matrices")
    if m.is_hermitian(tol.predicate):
        values, _ = hermitian_eig(m, tol)
        return float(sum(abs(x) for x in values))
    return float(sum(singular_values(m, tol)))


def unitary_completion(v: Matrix, tol: Tolerances = DEFAULT_TOLERANCES) -> Matrix:
    """Extend an n×k isometry to an n×n unitary whose first k columns are v.

    Raises:
        NotIsometry: if v†v differs from the identity by more than tol.predicate
    """
    if v.field is FieldTag.QUATERNION:
        raise UnsupportedField("unitary_completion is not defined for quaternion matrices")
    n, k = v.shape
    if k > n or not v.is_isometry(tol.predicate):
        raise NotIsometry(f"columns of the {n}x{k} matrix are not orthonormal")
    cols = v.to_numpy()
    q, _ = np.linalg.qr(np.hstack([cols, np.eye(n)]), mode="complete")
    completed = np.array(q[:, :n], dtype=np.complex128)
    completed[:, :k] = cols
    field = FieldTag.REAL if v.field is FieldTag.REAL else FieldTag.COMPLEX
    if field is FieldTag.REAL:
        completed = completed.real
    return Matrix(completed, field)


# ----- parameter counting -----

def gram_rank(matrices: Sequence[Matrix], tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """Number of linearly independent matrices (over the reals), from the Gram matrix spectrum."""
    if not matrices:
        return 0
    vectors = np.array([m.real_components() for m in matrices])
    gram = Matrix.real(vectors @ vectors.T)
    values, _ = hermitian_eig(gram, tol)
    scale = max(1.0, values[0])
    return sum(1 for x in values if x > tol.gram_rank * scale)


def hermitian_basis(field: FieldTag, d: int) -> list[Matrix]:
    """Maximal independent set of self-adjoint d×d matrices over the field.

    Diagonal units, then for each i < j the symmetric unit and, over C and H,
    the skew units u·E_ij − u·E_ji for each imaginary unit u.
    """
    field = FieldTag(field)
    if d < 1:
        raise ValueError(f"dimension must be positive, got {d}")

    def unit(i: int, j: int, q: Scalar, mirror: Scalar) -> Matrix:
        data = np.zeros((d, d, 4))
        data[i, j] = (q.w, q.x, q.y, q.z)
        if i != j:
            data[j, i] = (mirror.w, mirror.x, mirror.y, mirror.z)
        return Matrix(data, FieldTag.QUATERNION)

    if field is FieldTag.REAL:
        units = ()
    elif field is FieldTag.COMPLEX:
        units = QUATERNION_UNITS[:1]
    else:
        units = QUATERNION_UNITS

    one = Scalar(1.0)
    basis = [unit(i, i, one, one) for i in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            basis.append(unit(i, j, one, one))
            basis.extend(unit(i, j, u, u.conjugate()) for u in units)

    if field is FieldTag.QUATERNION:
        return basis
    return [_quaternion_to_complex(b, field) for b in basis]


def _quaternion_to_complex(m: Matrix, field: FieldTag) -> Matrix:
    data = m._data
    values = data[..., 0] + 1j * data[..., 1]
    if field is FieldTag.REAL:
        return Matrix(values.real, FieldTag.REAL)
    return Matrix(values, FieldTag.COMPLEX)


# ----- multi-qubit helpers -----

def partial_trace(m: Matrix, dims: Sequence[int], keep: Sequence[int]) -> Matrix:
    """Trace out every subsystem not listed in keep (subsystem order preserved)."""
    m._require_numeric("partial_trace")
    dims = list(dims)
    total = int(np.prod(dims))
    if m.shape != (total, total):
        raise DimensionMismatch(f"dims {dims} do not match matrix shape {m.shape}")
    n = len(dims)
    keep = sorted(keep)
    tensor = m.to_numpy().reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    # contract the traced subsystems one by one, highest index first
    for count, i in enumerate(sorted(traced, reverse=True)):
        current = n - count
        tensor = np.trace(tensor, axis1=i, axis2=i + current)
    kept_dim = int(np.prod([dims[i] for i in keep])) if keep else 1
    return Matrix(tensor.reshape(kept_dim, kept_dim), m.field)


# ----- random matrices -----

def random_hermitian(d: int, rng: np.random.Generator) -> Matrix:
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return Matrix((g + g.conj().T) / 2.0)


def random_unitary(d: int, rng: np.random.Generator) -> Matrix:
    """Haar-random unitary (QR of a Ginibre matrix with phase fix)."""
    g = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2.0)
    q, r = np.linalg.qr(g)
    phases = np.diag(r) / np.abs(np.diag(r))
    return Matrix(q * phases)
