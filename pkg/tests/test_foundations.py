"""Tests for parameter counting, manifold dimensions, the Lie-family scan and local tomography."""

import numpy as np
import pytest

from errors import UnsupportedField
from foundations import (
    count_parameters, count_table, check_multiplicativity, multiplicativity_grid,
    multiplicative_fields, manifold_dim, check_linear_growth, empirical_manifold_dim,
    LieFamily, lie_dim, check_homogeneous, quadratic_form, scan_families, expected_families,
    exhaustive_inverse_scan, local_tomography_demo,
)
from matfield import FieldTag, pauli
from quantum_core import DensityState


# ---------------------------------------------------------
# S(d)
# ---------------------------------------------------------

@pytest.mark.parametrize("field_tag, d, expected", [
    (FieldTag.COMPLEX, 2, 4),
    (FieldTag.COMPLEX, 4, 16),
    (FieldTag.REAL, 3, 6),
    (FieldTag.QUATERNION, 2, 6),
    (FieldTag.QUATERNION, 1, 1),
])
def test_count_parameters_examples(field_tag, d, expected):
    report = count_parameters(field_tag, d)
    assert report.s == expected
    assert report.rank_certified


def test_complex_count_is_d_squared():
    for report in count_table(8, [FieldTag.COMPLEX]):
        assert report.s == report.d ** 2


def test_count_table_covers_fields_and_dimensions():
    table = count_table(3)
    assert [(r.field, r.d) for r in table][:3] == [(FieldTag.REAL, 1), (FieldTag.REAL, 2),
                                                    (FieldTag.REAL, 3)]
    assert len(table) == 9


def test_count_parameters_accepts_field_names():
    assert count_parameters("real", 2).s == 3


def test_count_parameters_rejects_zero_dimension():
    with pytest.raises(ValueError):
        count_parameters(FieldTag.COMPLEX, 0)


# ---------------------------------------------------------
# Multiplicativity
# ---------------------------------------------------------

@pytest.mark.parametrize("field_tag, lhs, rhs, passed", [
    (FieldTag.COMPLEX, 16, 16, True),
    (FieldTag.REAL, 10, 9, False),
    (FieldTag.QUATERNION, 28, 36, False),
])
def test_multiplicativity_two_by_two(field_tag, lhs, rhs, passed):
    check = check_multiplicativity(field_tag, 2, 2)
    assert (check.lhs, check.rhs, check.passed) == (lhs, rhs, passed)


def test_only_complex_field_is_multiplicative():
    grid = multiplicativity_grid((2, 3))
    assert len(grid) == 3 * 4
    assert multiplicative_fields(grid) == [FieldTag.COMPLEX]


def test_multiplicativity_needs_nontrivial_factors():
    with pytest.raises(ValueError):
        check_multiplicativity(FieldTag.COMPLEX, 1, 3)


# ---------------------------------------------------------
# Manifold dimension
# ---------------------------------------------------------

@pytest.mark.parametrize("field_tag, d, expected", [
    (FieldTag.REAL, 4, 3),
    (FieldTag.COMPLEX, 2, 2),
    (FieldTag.COMPLEX, 3, 4),
    (FieldTag.QUATERNION, 2, 4),
])
def test_manifold_dim_examples(field_tag, d, expected):
    assert manifold_dim(field_tag, d).dim_x == expected


@pytest.mark.parametrize("field_tag", list(FieldTag))
def test_manifold_dim_grows_linearly(field_tag):
    assert check_linear_growth(field_tag, 16)


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_empirical_manifold_dim_matches(d, seed):
    assert empirical_manifold_dim(d, samples=32, seed=seed) == 2 * (d - 1)


def test_empirical_manifold_dim_complex_only():
    with pytest.raises(UnsupportedField):
        empirical_manifold_dim(3, samples=8, seed=0, field_tag=FieldTag.REAL)


# ---------------------------------------------------------
# Lie families
# ---------------------------------------------------------

def test_lie_dim_examples():
    assert lie_dim(LieFamily("U"), 3) == 9
    assert lie_dim(LieFamily("SO"), 4) == 6
    assert lie_dim(LieFamily("Sp"), 2) == 10
    assert lie_dim(LieFamily("SU", 2), 2) == 15
    assert str(LieFamily("SO", 2)) == "SO(2d)"
    assert str(LieFamily("U")) == "U(d)"


def test_lie_family_validation():
    with pytest.raises(ValueError):
        LieFamily("G2")
    with pytest.raises(ValueError):
        LieFamily("U", 0)


def test_homogeneous_space_examples():
    assert check_homogeneous(LieFamily("U"), 2, 1, 16)
    assert check_homogeneous(LieFamily("SO"), 1, 0, 16)
    assert check_homogeneous(LieFamily("Sp"), 4, 3, 16)
    assert not check_homogeneous(LieFamily("SU"), 2, 0, 16)
    assert not check_homogeneous(LieFamily("U"), 2, 0, 16)


def test_quadratic_form_matches_unitary_group():
    assert [quadratic_form(2, 1, d) for d in range(1, 6)] == [1, 4, 9, 16, 25]


@pytest.mark.parametrize("x2, g1, expected", [
    (2, 1, [("U", 1)]),
    (1, 0, [("SO", 1)]),
    (4, 3, [("Sp", 1)]),
    (4, 1, [("SO", 2)]),
    (3, 1, []),
])
def test_scan_families(x2, g1, expected):
    result = scan_families(x2, g1, dmax=8, nmax=3)
    assert [(f.name, f.multiplier) for f in result.matches] == expected


def test_scan_families_rejects_short_range():
    with pytest.raises(ValueError):
        scan_families(2, 1, dmax=3, nmax=3)


def test_no_special_unitary_family_fits():
    for (x2, g1), families in exhaustive_inverse_scan(20, 30, 8, 3).items():
        assert all(f.name != "SU" for f in families)


def test_exhaustive_scan_finds_exactly_the_classical_series():
    found = exhaustive_inverse_scan(9, 10, 8, 3)
    expected = {k: v for k, v in expected_families(3).items() if k[0] <= 9 and k[1] <= 10}
    assert set(found) == {(1, 0), (2, 1), (4, 3), (4, 1), (8, 4), (9, 3)}
    for key, families in found.items():
        assert {(f.name, f.multiplier) for f in families} == \
               {(f.name, f.multiplier) for f in expected[key]}


# ---------------------------------------------------------
# Local tomography
# ---------------------------------------------------------

class TestLocalTomographyDemo:
    def test_states_are_valid_and_real(self):
        demo = local_tomography_demo()
        for rho in (demo.rho_plus, demo.rho_minus):
            DensityState.from_matrix(rho.mat)
            assert rho.mat.field is FieldTag.REAL

    def test_local_observables_agree(self):
        demo = local_tomography_demo()
        assert demo.local_gap <= 1e-12
        diff = demo.rho_plus.mat - demo.rho_minus.mat
        for a in ("I", "X", "Z"):
            for b in ("I", "X", "Z"):
                assert abs((diff @ pauli(a).kron(pauli(b))).trace()) < 1e-12

    def test_global_witness_separates(self):
        demo = local_tomography_demo()
        assert demo.global_gap == pytest.approx(2.0, abs=1e-10)
        assert demo.trace_distance == pytest.approx(1.0, abs=1e-10)
        np.testing.assert_allclose(demo.witness.to_numpy(),
                                   np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]]).real)
