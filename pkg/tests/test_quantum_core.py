"""Tests for propositions, states, the update rule and the proposition metric."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from errors import (InvalidProposition, InvalidState, ZeroPosterior, NotMostAccurate, NotPure,
                    NotJointlyDecidable, HypothesisViolated, DimensionMismatch)
from matfield import Matrix, diag, identity
from quantum_core import (
    Proposition, DensityState, BallSpec, probability, update, distance, distance_witness,
    jointly_decidable, meet, join, compose, compose_propositions, pure_state_of,
    proposition_of, random_most_accurate, random_density, random_pure_state, sample_ball,
    continuity_probe,
)

PLUS = [1 / math.sqrt(2), 1 / math.sqrt(2)]


# ---------------------------------------------------------
# Construction
# ---------------------------------------------------------

def test_from_matrix_infers_rank():
    x = Proposition.from_matrix(diag([1, 1, 0]))
    assert (x.dim, x.rank) == (3, 2)
    assert not x.is_most_accurate


def test_from_matrix_rejects_non_projector():
    with pytest.raises(InvalidProposition):
        Proposition.from_matrix(diag([1, 0.5]))
    with pytest.raises(InvalidProposition):
        Proposition.from_matrix(Matrix.complex([[0, 1], [0, 0]]))


def test_from_ket_normalizes():
    e = Proposition.from_ket([3.0, 4.0])
    assert e.rank == 1
    np.testing.assert_allclose(e.proj.to_numpy(), [[0.36, 0.48], [0.48, 0.64]], atol=1e-15)
    with pytest.raises(InvalidProposition):
        Proposition.from_ket([0.0, 0.0])


def test_density_state_validation():
    with pytest.raises(InvalidState):
        DensityState.from_matrix(diag([1.5, -0.5]))
    with pytest.raises(InvalidState):
        DensityState.from_matrix(diag([0.8, 0.7]))
    rho = DensityState.from_matrix(diag([0.3, 0.2]))
    assert rho.weight == pytest.approx(0.5)
    assert rho.normalized().weight == pytest.approx(1.0)


def test_complement_and_identity():
    x = Proposition.from_matrix(diag([1, 0, 0]))
    c = x.complement()
    assert c.rank == 2
    assert (x.proj + c.proj).max_abs_diff(Proposition.identity(3).proj) == 0.0


# ---------------------------------------------------------
# Probability and update
# ---------------------------------------------------------

def test_probability_in_maximally_mixed_state():
    rho = DensityState.maximally_mixed(4)
    for i in range(4):
        assert probability(Proposition.basis(4, i), rho) == pytest.approx(0.25)


def test_probability_of_plus_in_zero():
    assert probability(Proposition.from_ket(PLUS), DensityState.from_ket([1, 0])) == pytest.approx(0.5)


def test_update_is_lueders_and_keeps_weight(fx_rng):
    rho = random_density(3, fx_rng)
    x = Proposition.from_matrix(diag([1, 1, 0]))
    post = update(rho, x)
    assert post.weight == pytest.approx(probability(x, rho))
    assert post.mat.trace().real == pytest.approx(post.weight)
    expected = x.proj @ rho.mat @ x.proj
    assert post.mat.max_abs_diff(expected) < 1e-14
    # conditioning again changes nothing
    again = update(post.normalized(), x)
    assert again.weight == pytest.approx(1.0)


def test_update_on_orthogonal_proposition():
    with pytest.raises(ZeroPosterior):
        update(DensityState.from_ket([1, 0]), Proposition.basis(2, 1))


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        probability(Proposition.basis(3, 0), DensityState.maximally_mixed(2))


# ---------------------------------------------------------
# Metric
# ---------------------------------------------------------

def test_distance_examples():
    zero, one = Proposition.basis(2, 0), Proposition.basis(2, 1)
    assert distance(zero, one) == pytest.approx(1.0)
    assert distance(zero, Proposition.from_ket(PLUS)) == pytest.approx(0.7071067811865, abs=1e-12)
    assert distance(zero, zero) == pytest.approx(0.0, abs=1e-15)


def test_distance_needs_rank_one():
    with pytest.raises(NotMostAccurate):
        distance(Proposition.identity(2), Proposition.basis(2, 0))


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(2, 4))
def test_distance_is_a_metric(seed, d):
    rng = np.random.default_rng(seed)
    e, f, g = (random_most_accurate(d, rng) for _ in range(3))
    d_ef = distance(e, f)
    assert 0.0 <= d_ef <= 1.0 + 1e-12
    assert d_ef == pytest.approx(distance(f, e), abs=1e-12)
    assert distance(e, g) <= d_ef + distance(f, g) + 1e-9


@pytest.mark.slow
def test_distance_is_a_metric_on_many_triples():
    rng = np.random.default_rng(4242)
    for k in range(10_000):
        d = 2 + k % 3
        e, f, g = (random_most_accurate(d, rng) for _ in range(3))
        d_ef, d_eg, d_fg = distance(e, f), distance(e, g), distance(f, g)
        assert 0.0 <= d_ef <= 1.0 + 1e-9
        assert abs(d_ef - distance(f, e)) <= 1e-9
        assert d_eg <= d_ef + d_fg + 1e-9


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), d=st.integers(2, 4))
def test_distance_equals_largest_probability_gap(seed, d):
    rng = np.random.default_rng(seed)
    e, f = random_most_accurate(d, rng), random_most_accurate(d, rng)
    rho, gap = distance_witness(e, f)
    assert gap == pytest.approx(distance(e, f), abs=1e-10)
    assert rho.is_pure()
    # no other state does better
    for _ in range(20):
        sigma = random_pure_state(d, rng)
        assert abs(probability(e, sigma) - probability(f, sigma)) <= gap + 1e-10


def test_rank_one_distance_closed_form(fx_rng):
    for _ in range(20):
        e, f = random_most_accurate(3, fx_rng), random_most_accurate(3, fx_rng)
        overlap = abs(np.vdot(e.ket(), f.ket())) ** 2
        assert distance(e, f) == pytest.approx(math.sqrt(1.0 - overlap), abs=1e-10)


# ---------------------------------------------------------
# Lattice operations
# ---------------------------------------------------------

def test_meet_and_join_of_commuting_projectors():
    x = Proposition.from_matrix(diag([1, 1, 0]))
    y = Proposition.from_matrix(diag([0, 1, 1]))
    assert jointly_decidable(x, y)
    both = meet(x, y)
    either = join(x, y)
    assert both.rank == 1
    assert both.proj.max_abs_diff(diag([0, 1, 0])) < 1e-15
    assert either.rank == 3
    assert either.proj.max_abs_diff(identity(3)) < 1e-15


def test_meet_rejects_non_commuting():
    zero, plus = Proposition.basis(2, 0), Proposition.from_ket(PLUS)
    assert not jointly_decidable(zero, plus)
    with pytest.raises(NotJointlyDecidable):
        meet(zero, plus)
    with pytest.raises(NotJointlyDecidable):
        join(zero, plus)


# ---------------------------------------------------------
# Composition and pure states
# ---------------------------------------------------------

def test_composition_multiplies_dimensions_and_ranks(fx_rng):
    x = Proposition.from_matrix(diag([1, 1, 0]))
    y = Proposition.basis(2, 1)
    xy = compose_propositions(x, y)
    assert (xy.dim, xy.rank) == (6, 2)
    rho = compose(random_density(3, fx_rng), random_density(2, fx_rng))
    assert rho.dim == 6
    assert rho.mat.trace().real == pytest.approx(1.0)


def test_pure_state_round_trip(fx_rng):
    e = random_most_accurate(4, fx_rng)
    back = proposition_of(pure_state_of(e))
    assert back.proj.max_abs_diff(e.proj) < 1e-9


def test_proposition_of_mixed_state():
    with pytest.raises(NotPure):
        proposition_of(DensityState.maximally_mixed(2))
    with pytest.raises(NotMostAccurate):
        pure_state_of(Proposition.identity(2))


# ---------------------------------------------------------
# Ball sampling and continuity
# ---------------------------------------------------------

def test_ball_spec_validation():
    with pytest.raises(ValueError):
        BallSpec(Proposition.basis(2, 0), 0.0)
    with pytest.raises(ValueError):
        BallSpec(Proposition.basis(2, 0), 1.5)
    with pytest.raises(NotMostAccurate):
        BallSpec(Proposition.identity(2), 0.5)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_sample_ball_stays_inside(fx_rng, d):
    ball = BallSpec(random_most_accurate(d, fx_rng), 0.2)
    for _ in range(200):
        e = sample_ball(ball, fx_rng)
        assert e.is_most_accurate
        assert distance(e, ball.center) < 0.2


def test_sample_ball_fills_the_ball(fx_rng):
    """Squared radii of uniform qubit samples are uniform on (0, δ²)."""
    delta = 0.5
    ball = BallSpec(Proposition.basis(2, 0), delta)
    squared = np.array([distance(sample_ball(ball, fx_rng), ball.center) ** 2 for _ in range(2000)])
    assert squared.mean() == pytest.approx(delta ** 2 / 2.0, rel=0.05)


def test_continuity_probe_respects_bound():
    e0 = Proposition.basis(3, 0)
    x = Proposition.from_matrix(diag([1, 1, 0]))
    rows = continuity_probe(e0, x, [0.3, 0.1, 0.0], samples=300, seed=7)
    assert [r.delta for r in rows] == [0.3, 0.1, 0.0]
    assert all(r.ok for r in rows)
    assert rows[-1].min_probability == pytest.approx(1.0)
    assert rows[0].min_probability >= 1.0 - 0.3 ** 2 - 1e-9
    # a rank-1 x comes close to the bound
    tight = continuity_probe(e0, e0, [0.3], samples=2000, seed=7)[0]
    assert tight.min_probability < 1.0 - 0.8 * 0.3 ** 2


@pytest.mark.slow
@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("rank", [1, "d-1"])
def test_continuity_grid(d, rank):
    e0 = Proposition.basis(d, 0)
    r = d - 1 if rank == "d-1" else 1
    x = Proposition.from_matrix(diag([1] * r + [0] * (d - r)))
    rows = continuity_probe(e0, x, [0.3, 0.1, 0.03], samples=1000, seed=d)
    assert [row.delta for row in rows] == [0.3, 0.1, 0.03]
    for row in rows:
        assert row.min_probability >= 1.0 - row.delta ** 2 - 1e-9
        assert row.ok


def test_continuity_probe_is_seeded():
    e0 = Proposition.basis(2, 0)
    a = continuity_probe(e0, e0, [0.2], samples=50, seed=3)
    b = continuity_probe(e0, e0, [0.2], samples=50, seed=3)
    assert a == b


def test_continuity_probe_needs_x_true_in_e0():
    with pytest.raises(HypothesisViolated):
        continuity_probe(Proposition.basis(2, 0), Proposition.basis(2, 1), [0.1], 10, seed=0)
