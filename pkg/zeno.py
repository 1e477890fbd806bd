"""Loss-free steering of a pure state by a sequence of projective measurements."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from errors import DimensionMismatch, IdenticalEndpoints, NotMostAccurate, ZeroPosterior
from quantum_core import (Proposition, DensityState, probability, update, pure_state_of)
from qf_configloader import DEFAULT_TOLERANCES, Tolerances


@dataclass(frozen=True)
class SteeringPlan:
    """Geodesic measurement sequence from start to steps[-1]."""
    d: int
    start: Proposition
    steps: tuple[Proposition, ...]
    theta: float

    @property
    def n_steps(self) -> int:
        return len(self.steps)


@dataclass(frozen=True)
class SteeringResult:
    exact_success: float
    sampled_successes: int
    shots: int
    seed: int

    @property
    def frequency(self) -> float:
        return self.sampled_successes / self.shots if self.shots else float("nan")


class ShotTrace(NamedTuple):
    passed: bool
    outcomes: tuple[bool, ...]
    states: tuple[DensityState, ...]   # normalized post-measurement states, one per step


class SweepRow(NamedTuple):
    n_steps: int
    exact: float
    closed_form: float
    bound: float
    ok: bool


def closed_form_success(theta: float, n_steps: int) -> float:
    return math.cos(theta / n_steps) ** (2 * n_steps)


def zeno_bound(theta: float, n_steps: int) -> float:
    """Lower bound 1 − θ²/N on the steering success."""
    return 1.0 - theta * theta / n_steps


def plan_steering(e0: Proposition, e: Proposition, n_steps: int,
                  tol: Tolerances = DEFAULT_TOLERANCES) -> SteeringPlan:
    """Split the geodesic from e0 to e into n_steps equal rotations.

    The phase of |e⟩ is chosen so that ⟨e0|e⟩ is real and nonnegative before
    the Gram–Schmidt step.

    Raises:
        NotMostAccurate: if either endpoint is not rank 1
        IdenticalEndpoints: if |⟨e0|e⟩| > 1 − tol.identical_endpoints
    """
    if not (e0.is_most_accurate and e.is_most_accurate):
        raise NotMostAccurate("steering endpoints must be rank-1 propositions")
    if e0.dim != e.dim:
        raise DimensionMismatch(f"dimensions {e0.dim} and {e.dim} differ")
    if n_steps < 1:
        raise ValueError(f"n_steps must be at least 1, got {n_steps}")

    psi0 = e0.ket()
    psi = e.ket()
    overlap = np.vdot(psi0, psi)
    magnitude = abs(overlap)
    if magnitude > 1.0 - tol.identical_endpoints:
        raise IdenticalEndpoints(f"endpoint overlap {magnitude:.15g} is 1")
    if magnitude > 0.0:
        psi = psi * (overlap.conjugate() / magnitude)

    theta = math.acos(min(1.0, magnitude))
    perp = psi - magnitude * psi0
    perp = perp / np.linalg.norm(perp)

    steps = []
    for k in range(1, n_steps):
        angle = k * theta / n_steps
        steps.append(Proposition.from_ket(math.cos(angle) * psi0 + math.sin(angle) * perp))
    steps.append(e)
    return SteeringPlan(e0.dim, e0, tuple(steps), theta)


def plan_for_angle(theta: float, n_steps: int,
                   tol: Tolerances = DEFAULT_TOLERANCES) -> SteeringPlan:
    """Qubit plan from |0⟩ to cos θ|0⟩ + sin θ|1⟩."""
    e0 = Proposition.basis(2, 0)
    e = Proposition.from_ket([math.cos(theta), math.sin(theta)])
    return plan_steering(e0, e, n_steps, tol)


def success_probability(plan: SteeringPlan) -> float:
    """Product of consecutive overlaps |⟨ψ_{k−1}|ψ_k⟩|²."""
    success = 1.0
    previous = plan.start
    for step in plan.steps:
        success *= probability(step, pure_state_of(previous))
        previous = step
    return success


def pass_probabilities(plan: SteeringPlan, tol: Tolerances = DEFAULT_TOLERANCES) -> list[float]:
    """Conditional pass probability of each step, given all earlier steps passed."""
    rho = pure_state_of(plan.start)
    result = []
    for step in plan.steps:
        try:
            p = probability(step, rho)
            rho = update(rho, step, tol).normalized()
        except ZeroPosterior:
            result.extend([0.0] * (plan.n_steps - len(result)))
            break
        result.append(p)
    return result


def trace_shot(plan: SteeringPlan, rng: np.random.Generator,
               tol: Tolerances = DEFAULT_TOLERANCES) -> ShotTrace:
    """One sequential run of the binary measurements {P_k, I − P_k} with Lüders updates."""
    rho = pure_state_of(plan.start)
    outcomes, states = [], []
    for step in plan.steps:
        p = probability(step, rho)
        passed = rng.random() < p
        branch = step if passed else step.complement()
        rho = update(rho, branch, tol).normalized()
        outcomes.append(passed)
        states.append(rho)
    return ShotTrace(all(outcomes), tuple(outcomes), tuple(states))


def run_sampled(plan: SteeringPlan, shots: int, seed: int,
                tol: Tolerances = DEFAULT_TOLERANCES) -> SteeringResult:
    """Sample shots independent runs; shot i draws from its own child of SeedSequence(seed).

    Each step measures {P_k, I − P_k} on the current state and continues from
    the Lüders-updated state. A shot stops at its first failed step since it
    can no longer succeed.
    """
    if shots < 1:
        raise ValueError(f"shots must be at least 1, got {shots}")
    start = pure_state_of(plan.start)
    successes = 0
    for child in np.random.SeedSequence(seed).spawn(shots):
        rng = np.random.default_rng(child)
        rho = start
        for step in plan.steps:
            if rng.random() >= probability(step, rho):
                break
            rho = update(rho, step, tol).normalized()
        else:
            successes += 1
    return SteeringResult(success_probability(plan), successes, shots, seed)


def steering_sweep(theta: float, steps: Sequence[int],
                   tol: Tolerances = DEFAULT_TOLERANCES) -> list[SweepRow]:
    """Exact success against closed form and the Zeno bound for each step count."""
    rows = []
    for n in steps:
        exact = success_probability(plan_for_angle(theta, n, tol))
        bound = zeno_bound(theta, n)
        rows.append(SweepRow(n, exact, closed_form_success(theta, n), bound, exact >= bound - 1e-12))
    return rows
