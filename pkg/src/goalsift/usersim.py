"""Simulated users: the cooperative answerer and a noisy top-N channel
standing in for speech recognition / language understanding errors."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .belief import Observation
from .catalog import MISSING, Catalog


@dataclass(frozen=True)
class NoiseSpec:
    """Synthetic channel shape.

    error_rate: probability the top-1 candidate is wrong.
    top_n: candidate list length.
    inclusion_rate: probability the true value still appears at a lower rank
        when the top-1 is wrong (with top_n=1 there is no lower rank, so the
        chance of seeing the true value collapses to 1 - error_rate).
    concentration: Dirichlet parameter shaping how peaked the candidate
        confidences are (smaller = more peaked on the top candidate).
    sum_alpha/sum_beta: Beta parameters for the total confidence mass s <= 1.
    conf_floor: candidates whose confidence falls below this are pruned from
        the list (the top candidate always survives), mirroring recognizers
        that do not emit negligible hypotheses.
    """

    error_rate: float = 0.15
    top_n: int = 5
    inclusion_rate: float = 0.27
    concentration: float = 0.002
    sum_alpha: float = 100.0
    sum_beta: float = 0.6
    conf_floor: float = 0.01

    def __post_init__(self):
        if not 0.0 <= self.error_rate < 1.0:
            raise ValueError("error_rate must lie in [0, 1)")
        if self.top_n < 1:
            raise ValueError("top_n must be >= 1")
        if not 0.0 <= self.inclusion_rate <= 1.0:
            raise ValueError("inclusion_rate must lie in [0, 1]")
        if self.concentration <= 0 or self.sum_alpha <= 0 or self.sum_beta <= 0:
            raise ValueError("shape parameters must be positive")
        if not 0.0 <= self.conf_floor < 1.0:
            raise ValueError("conf_floor must lie in [0, 1)")


def cooperative_answer(catalog: Catalog, goal_id: int, attr: int) -> int | None:
    """The knowledgeable cooperative user: the goal's true value, or None
    when the goal's slot is missing."""
    value = catalog.matrix[goal_id, attr]
    return None if value == MISSING else int(value)


def _confidences(rng: np.random.Generator, n: int, noise: NoiseSpec) -> np.ndarray:
    """n positive confidences, sorted descending, summing to s <= 1."""
    weights = rng.dirichlet(np.full(n, noise.concentration))
    weights.sort()
    weights = weights[::-1]
    s = rng.beta(noise.sum_alpha, noise.sum_beta)
    return np.clip(weights * s, 1e-12, 1.0)


def corrupt(
    true_value: int | None,
    attr: int,
    catalog: Catalog,
    noise: NoiseSpec,
    rng: np.random.Generator,
) -> Observation:
    """Push a true answer through the noisy channel, yielding a ranked
    candidate list. Deterministic given the generator state.

    An unknown answer passes through as an unknown observation. Distractors
    are drawn from the catalog's prior-weighted attribute marginal (popular
    values are plausible confusions). With error_rate 0 and top_n 1 the
    channel is perfect: the true value at confidence 1.0.
    """
    if true_value is None:
        return Observation(attr, (), unknown=True)
    if noise.error_rate == 0.0 and noise.top_n == 1:
        return Observation(attr, ((true_value, 1.0),))

    col = catalog.matrix[:, attr]
    present = col != MISSING
    masses = np.bincount(col[present], weights=catalog.prior[present],
                         minlength=catalog.schema.cardinality(attr))
    masses[true_value] = 0.0
    pool = np.flatnonzero(masses)
    if pool.size == 0:
        # fewer than 2 distinct values: no distractor can exist
        conf = _confidences(rng, 1, noise)
        return Observation(attr, ((true_value, float(conf[0])),))
    pool_p = masses[pool] / masses[pool].sum()

    def draw_distractors(count: int) -> list[int]:
        count = min(count, pool.size)
        if count == 0:
            return []
        return [int(v) for v in rng.choice(pool, size=count, replace=False, p=pool_p)]

    wrong = rng.random() < noise.error_rate
    if not wrong:
        order = [true_value] + draw_distractors(noise.top_n - 1)
    else:
        include = noise.top_n > 1 and rng.random() < noise.inclusion_rate
        if include:
            # Confusion pair: the recognizer is torn between the wrong
            # leader and the truth, so both carry substantial confidence
            # (calibrated confidences correlate with correctness).
            distractors = draw_distractors(noise.top_n - 1)
            leader = distractors[0] if distractors else true_value
            if leader == true_value:
                order = [true_value]
            else:
                s = rng.beta(noise.sum_alpha, noise.sum_beta)
                u = 0.55 + 0.25 * rng.random()
                rest = _confidences(rng, max(len(distractors) - 1, 1), noise)
                pairs = [(leader, s * u), (true_value, s * (1.0 - u) * 0.9)]
                budget = s * (1.0 - u) * 0.1
                for v, w in zip(distractors[1:], rest):
                    pairs.append((v, float(budget * w)))
                pairs = [pairs[0]] + [p for p in pairs[1:] if p[1] >= noise.conf_floor]
                return Observation(attr, tuple(pairs))
        else:
            order = draw_distractors(noise.top_n)
            if not order:
                order = [true_value]
    conf = _confidences(rng, len(order), noise)
    pairs = [(v, float(c)) for v, c in zip(order, conf)]
    pairs = [pairs[0]] + [p for p in pairs[1:] if p[1] >= noise.conf_floor]
    return Observation(attr, tuple(pairs))
