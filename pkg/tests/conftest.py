"""Shared fixtures and helpers for the qf-verify tests."""

import numpy as np
import pytest


@pytest.fixture
def fx_rng():
    return np.random.default_rng(42)


def same_up_to_phase(a, b, atol=1e-9):
    """True when the arrays differ by a global phase only."""
    a = np.asarray(a, dtype=np.complex128).reshape(-1)
    b = np.asarray(b, dtype=np.complex128).reshape(-1)
    overlap = np.vdot(a, b)
    if abs(overlap) < 1e-15:
        return bool(np.allclose(a, 0.0, atol=atol) and np.allclose(b, 0.0, atol=atol))
    return bool(np.allclose(a * (overlap / abs(overlap)), b, atol=atol))


def unitary_corpus(seed=2024, one_wire=100, two_wire=50, max_gates=6):
    """Seeded regression corpus of random circuits: one-wire first, then two-wire."""
    from mbqc_compiler import random_circuit

    rng = np.random.default_rng(seed)
    corpus = []
    for wires, count in ((1, one_wire), (2, two_wire)):
        for _ in range(count):
            corpus.append(random_circuit(wires, int(rng.integers(1, max_gates + 1)), rng))
    return corpus
