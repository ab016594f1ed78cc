"""Shared fixtures: the hand-traceable four-goal catalog and small helpers."""
from __future__ import annotations

import numpy as np
import pytest

from goalsift.catalog import Catalog, SyntheticSpec, generate_synthetic
from goalsift.presets import demo_catalog


@pytest.fixture
def f1() -> Catalog:
    """Four goals over two attributes; every update below is checkable by hand.

    goal  A  B
    g1    x  p
    g2    x  q
    g3    y  r
    g4    y  r
    """
    return demo_catalog()


@pytest.fixture
def small_synthetic() -> Catalog:
    """A 60-goal, 4-attribute catalog for fast end-to-end runs."""
    spec = SyntheticSpec(
        num_goals=60,
        cardinalities=(2, 5, 9, 30),
        missing_rates=(0.0, 0.1, 0.0, 0.05),
        skew=1.0,
        attribute_names=("one", "two", "three", "four"),
    )
    return generate_synthetic(spec, seed=11)


def random_catalog(rng: np.random.Generator, max_goals: int = 12,
                   max_attrs: int = 4) -> Catalog:
    """A random complete-data catalog (no missing cells)."""
    n = int(rng.integers(2, max_goals + 1))
    k = int(rng.integers(1, max_attrs + 1))
    rows = []
    for _ in range(n):
        rows.append([f"v{int(rng.integers(0, 4))}" for _ in range(k)])
    return Catalog.from_rows([f"a{j}" for j in range(k)], rows)


def random_state(catalog: Catalog, rng: np.random.Generator):
    """A random non-uniform belief with full support over the catalog."""
    from goalsift.belief import DSState

    probs = rng.random(catalog.num_goals) + 1e-3
    probs /= probs.sum()
    return DSState(catalog, probs)
