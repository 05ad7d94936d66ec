"""Shared fixtures: grids, the operator corpus, and random operator factories."""
from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
import pytest

from ratbern import FamilySpec, from_nodes, make

GRID_POINTS = 1001


@pytest.fixture(scope="session")
def grid():
    return np.linspace(0.0, 1.0, GRID_POINTS)


@pytest.fixture(scope="session")
def interior_grid():
    return np.linspace(0.01, 0.99, 99)


def random_float_operator(rng: random.Random, n: int):
    """Random (W)-valid operator: sorted uniform nodes, then from_nodes."""
    interior = sorted(rng.uniform(0.02, 0.98) for _ in range(n - 1))
    # nudge ties apart; uniform draws collide with negligible probability
    for i in range(1, len(interior)):
        if interior[i] <= interior[i - 1]:
            interior[i] = interior[i - 1] + 1e-9
    return from_nodes((0.0, *interior, 1.0), 1.0)


def random_exact_operator(rng: random.Random, n: int, denom: int = 997):
    """Random (W)-valid operator over exact rationals."""
    ticks = sorted(rng.sample(range(1, denom), n - 1))
    nodes = (Fraction(0), *(Fraction(t, denom) for t in ticks), Fraction(1))
    return from_nodes(nodes, Fraction(1))


def corpus_operators():
    """The operator corpus every certificate must hold on."""
    ops = {}
    for n in (2, 8, 32):
        ops[f"classical_{n}"] = make(FamilySpec("classical", n))
    for n in (4, 8, 16):
        ops[f"one_plus_x_squared_{n}"] = make(FamilySpec("one_plus_x_squared", n))
    for n in (9, 16):
        ops[f"phi_abs_0.6_{n}"] = make(FamilySpec("phi_abs", n, a=0.6))
    for n in (16, 64):
        ops[f"sqrt_nodes_{n}"] = make(FamilySpec("sqrt_nodes", n))
    ops["random_12"] = random_float_operator(random.Random(20240811), 12)
    return ops


@pytest.fixture(scope="session")
def corpus_ops():
    return corpus_operators()
