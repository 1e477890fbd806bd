"""Tests for measurement-driven steering."""

import math

import numpy as np
import pytest

from errors import IdenticalEndpoints, NotMostAccurate, DimensionMismatch
from matfield import diag
from quantum_core import Proposition, probability, pure_state_of, distance
from zeno import (
    closed_form_success, zeno_bound, plan_steering, plan_for_angle, success_probability,
    pass_probabilities, trace_shot, run_sampled, steering_sweep,
)


# ---------------------------------------------------------
# Planning
# ---------------------------------------------------------

def test_plan_from_zero_to_one():
    plan = plan_steering(Proposition.basis(2, 0), Proposition.basis(2, 1), 2)
    assert plan.n_steps == 2
    assert plan.theta == pytest.approx(math.pi / 2)
    halfway = Proposition.from_ket([1.0, 1.0])
    assert plan.steps[0].proj.max_abs_diff(halfway.proj) < 1e-12
    assert plan.steps[1] == Proposition.basis(2, 1)


def test_single_step_plan_is_the_target():
    e = Proposition.from_ket([1.0, 1.0])
    plan = plan_steering(Proposition.basis(2, 0), e, 1)
    assert plan.steps == (e,)


def test_plan_in_three_dimensions_has_equal_steps():
    e0 = Proposition.basis(3, 0)
    e = Proposition.from_ket([0.5, math.sqrt(3) / 2, 0.0])
    plan = plan_steering(e0, e, 4)
    previous = e0
    for step in plan.steps:
        overlap = probability(step, pure_state_of(previous))
        assert overlap == pytest.approx(math.cos(math.pi / 12) ** 2, abs=1e-12)
        previous = step


def test_plan_stays_in_the_plane_of_its_endpoints(fx_rng):
    psi0 = np.array([1, 0, 0, 0], dtype=complex)
    psi = fx_rng.standard_normal(4) + 1j * fx_rng.standard_normal(4)
    e0, e = Proposition.from_ket(psi0), Proposition.from_ket(psi)
    plan = plan_steering(e0, e, 5)
    plane = e0.proj + Proposition.from_ket(psi - np.vdot(psi0, psi) * psi0).proj
    for step in plan.steps:
        assert (plane @ step.proj).max_abs_diff(step.proj) < 1e-10


def test_plan_endpoints_must_differ():
    with pytest.raises(IdenticalEndpoints):
        plan_steering(Proposition.basis(2, 0), Proposition.basis(2, 0), 3)
    phase = Proposition.from_ket([1j, 0.0])
    with pytest.raises(IdenticalEndpoints):
        plan_steering(Proposition.basis(2, 0), phase, 3)


def test_plan_rejects_bad_input():
    with pytest.raises(NotMostAccurate):
        plan_steering(Proposition.from_matrix(diag([1, 1, 0])), Proposition.basis(3, 0), 2)
    with pytest.raises(DimensionMismatch):
        plan_steering(Proposition.basis(2, 0), Proposition.basis(3, 1), 2)
    with pytest.raises(ValueError):
        plan_steering(Proposition.basis(2, 0), Proposition.basis(2, 1), 0)


# ---------------------------------------------------------
# Exact success
# ---------------------------------------------------------

@pytest.mark.parametrize("n_steps, expected", [(1, 0.0), (2, 0.25)])
def test_success_for_orthogonal_target(n_steps, expected):
    assert success_probability(plan_for_angle(math.pi / 2, n_steps)) == pytest.approx(expected, abs=1e-15)


def test_success_for_ten_steps():
    exact = success_probability(plan_for_angle(math.pi / 2, 10))
    assert exact == pytest.approx(math.cos(math.pi / 20) ** 20, abs=1e-12)
    assert exact == pytest.approx(0.7805460698, abs=1e-9)


@pytest.mark.parametrize("theta", np.linspace(0.1, math.pi / 2, 6))
def test_success_matches_closed_form_and_bound(theta):
    previous = 0.0
    for n in [1, 2, 3, 5, 8, 13, 21, 34, 55, 64]:
        exact = success_probability(plan_for_angle(theta, n))
        assert exact == pytest.approx(closed_form_success(theta, n), abs=1e-12)
        assert exact >= zeno_bound(theta, n) - 1e-12
        assert exact >= previous - 1e-12
        previous = exact


def test_pass_probabilities_multiply_to_success():
    plan = plan_for_angle(1.2, 7)
    chain = pass_probabilities(plan)
    assert len(chain) == 7
    assert np.prod(chain) == pytest.approx(success_probability(plan), abs=1e-12)


def test_pass_probabilities_after_impossible_step():
    assert pass_probabilities(plan_for_angle(math.pi / 2, 1)) == pytest.approx([0.0])


def test_sweep_rows():
    rows = steering_sweep(math.pi / 2, [1, 2, 4, 8, 16, 32, 64])
    assert [r.n_steps for r in rows] == [1, 2, 4, 8, 16, 32, 64]
    assert all(r.ok for r in rows)
    assert rows[-1].exact > 0.96


# ---------------------------------------------------------
# Sampling
# ---------------------------------------------------------

def test_trace_shot_states_follow_outcomes(fx_rng):
    plan = plan_for_angle(math.pi / 3, 6)
    for _ in range(20):
        trace = trace_shot(plan, fx_rng)
        assert len(trace.outcomes) == 6
        assert trace.passed == all(trace.outcomes)
        for step, passed, rho in zip(plan.steps, trace.outcomes, trace.states):
            target = step if passed else step.complement()
            assert rho.mat.max_abs_diff(target.proj) < 1e-9


def test_run_sampled_never_succeeds_for_impossible_plan():
    result = run_sampled(plan_for_angle(math.pi / 2, 1), shots=500, seed=1)
    assert result.sampled_successes == 0
    assert result.exact_success == pytest.approx(0.0, abs=1e-15)


def test_run_sampled_is_reproducible():
    plan = plan_for_angle(math.pi / 2, 4)
    assert run_sampled(plan, 300, seed=5) == run_sampled(plan, 300, seed=5)


def test_run_sampled_shots_match_sequential_traces():
    """Every shot's verdict equals a full Lüders trace driven by the same seed child."""
    e0 = Proposition.basis(3, 0)
    e = Proposition.from_ket([0.2, 0.6j, math.sqrt(0.6)])
    plan = plan_steering(e0, e, 3)
    shots = 200
    result = run_sampled(plan, shots, seed=9)
    traced = sum(trace_shot(plan, np.random.default_rng(child)).passed
                 for child in np.random.SeedSequence(9).spawn(shots))
    assert result.sampled_successes == traced
    assert 0 < traced < shots


def test_run_sampled_frequency_within_band():
    plan = plan_for_angle(math.pi / 2, 10)
    shots = 5_000
    result = run_sampled(plan, shots, seed=42)
    p = result.exact_success
    assert abs(result.frequency - p) <= 5 * math.sqrt(p * (1 - p) / shots)


@pytest.mark.slow
def test_run_sampled_frequency_many_shots():
    plan = plan_for_angle(math.pi / 2, 10)
    result = run_sampled(plan, 100_000, seed=42)
    assert abs(result.frequency - math.cos(math.pi / 20) ** 20) <= 0.0066


def test_run_sampled_needs_shots():
    with pytest.raises(ValueError):
        run_sampled(plan_for_angle(1.0, 2), shots=0, seed=0)


def test_steps_are_close_to_their_neighbours():
    plan = plan_for_angle(math.pi / 2, 10)
    assert distance(plan.start, plan.steps[0]) == pytest.approx(math.sin(math.pi / 20), abs=1e-12)
