"""Belief state over the goal set: entropy quantities and updates.

The state is a probability distribution over a shrinking candidate subset
of the catalog plus the set of attributes already asked. Updates never
mutate; they return new states.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .catalog import MISSING, Catalog

NORM_TOL = 1e-9
SUBSET_FLOOR = 1e-12
ENTROPY_EPS = 1e-12


class BeliefError(Exception):
    pass


class EmptyGoalSetError(BeliefError):
    """An update eliminated every candidate goal."""


class EmptyConditionError(BeliefError):
    """Conditioning on a value that carries no probability mass."""


@dataclass(frozen=True, eq=False)
class Observation:
    """One answer as seen through a noisy channel: an attribute plus a
    ranked list of (value id, confidence) candidates.

    An empty candidate list with unknown=True is an explicit "don't know".
    Value ids outside the attribute's dictionary are allowed and match no
    goal (the no-match case for unresolvable free text).
    """

    attribute: int
    candidates: tuple[tuple[int, float], ...] = ()
    unknown: bool = False

    def __post_init__(self):
        ids = [v for v, _ in self.candidates]
        if len(set(ids)) != len(ids):
            raise ValueError("observation candidates must carry distinct values")
        total = 0.0
        for _, c in self.candidates:
            if not 0.0 < c <= 1.0:
                raise ValueError(f"confidence {c} outside (0, 1]")
            total += c
        if total > 1.0 + NORM_TOL:
            raise ValueError(f"confidences sum to {total} > 1")

    @property
    def confidence_sum(self) -> float:
        return sum(c for _, c in self.candidates)


@dataclass(frozen=True, eq=False)
class DSState:
    """Distribution over the candidate goal subset at one dialog turn.

    probs is dense over all catalog goals; goals outside the subset hold
    exactly 0. asked is the set of attribute ids already queried.
    """

    catalog: Catalog
    probs: np.ndarray
    asked: frozenset[int] = field(default_factory=frozenset)
    turn: int = 0

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.shape != (self.catalog.num_goals,):
            raise BeliefError("probability vector length does not match the catalog")
        if (probs < 0).any():
            raise BeliefError("negative probability")
        total = probs.sum()
        if abs(total - 1.0) > NORM_TOL:
            raise BeliefError(f"probabilities sum to {total}, expected 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "_support", None)

    @property
    def support(self) -> np.ndarray:
        """Goal ids with nonzero probability, ascending."""
        cached = object.__getattribute__(self, "_support")
        if cached is None:
            cached = np.flatnonzero(self.probs)
            object.__setattr__(self, "_support", cached)
        return cached

    @property
    def support_size(self) -> int:
        return int(self.support.size)

    def top_goals(self, k: int = 5) -> list[tuple[int, float]]:
        """The k most probable goals as (goal id, probability), descending."""
        supp = self.support
        order = np.lexsort((supp, -self.probs[supp]))
        return [(int(supp[i]), float(self.probs[supp[i]])) for i in order[:k]]


def init_state(catalog: Catalog) -> DSState:
    """Initial state: the catalog prior. Zero-prior goals start outside the
    candidate subset."""
    return DSState(catalog, catalog.prior.copy())


def _entropy(p: np.ndarray, base: float) -> float:
    p = p[p > 0]
    if p.size == 0:
        return 0.0
    return float(-(p * (np.log(p) / math.log(base))).sum())


def state_entropy(state: DSState, base: float = 2.0) -> float:
    """Entropy of the goal distribution, in bits by default (0*log 0 := 0)."""
    return _entropy(state.probs[state.support], base)


def _marginal_arrays(state: DSState, attr: int) -> tuple[np.ndarray, float]:
    """(per-value mass array over the attribute dictionary, missing mass)."""
    supp = state.support
    col = state.catalog.matrix[supp, attr]
    w = state.probs[supp]
    present = col != MISSING
    masses = np.bincount(col[present], weights=w[present], minlength=state.catalog.schema.cardinality(attr))
    return masses, float(w[~present].sum())


def attribute_marginal(state: DSState, attr: int) -> tuple[dict[int, float], float]:
    """Probability mass per value of the attribute, plus the missing mass.

    The returned masses (including missing) sum to 1.
    """
    masses, missing = _marginal_arrays(state, attr)
    nz = np.flatnonzero(masses)
    return {int(v): float(masses[v]) for v in nz}, missing


def attribute_entropy(state: DSState, attr: int, base: float = 2.0) -> float:
    """Entropy of the attribute's known-value marginal, scaled by the known
    mass W = 1 - missing mass. Reduces to the plain marginal entropy when no
    values are missing; an all-missing attribute scores 0."""
    masses, _ = _marginal_arrays(state, attr)
    known = masses.sum()
    if known <= 0:
        return 0.0
    return known * _entropy(masses / known, base)


def conditional_entropy(state: DSState, attr: int, value: int, wildcard: bool = True) -> float:
    """Entropy of the goal distribution after learning attribute == value.

    Under the wildcard policy, goals with a missing slot are retained with
    their renormalized mass, mirroring exact_update.
    """
    masses, _ = _marginal_arrays(state, attr)
    if value < 0 or value >= masses.size or masses[value] <= 0:
        raise EmptyConditionError(f"value {value} of attribute {attr} has zero mass")
    supp = state.support
    col = state.catalog.matrix[supp, attr]
    keep = col == value
    if wildcard:
        keep |= col == MISSING
    w = state.probs[supp][keep]
    return _entropy(w / w.sum(), 2.0)


def expected_reduction_bruteforce(state: DSState, attr: int) -> float:
    """Expected entropy reduction from asking about the attribute, computed
    literally as sum_m P_m * (H - H_m) over values with nonzero mass.

    Independent oracle for the identity E[reduction] == attribute_entropy on
    complete data; kept deliberately naive.
    """
    h = state_entropy(state)
    masses, _ = _marginal_arrays(state, attr)
    total = 0.0
    for value in np.flatnonzero(masses):
        h_cond = conditional_entropy(state, attr, int(value))
        total += masses[value] * (h - h_cond)
    return float(total)


def exact_update(state: DSState, attr: int, answer: int | None, wildcard: bool = True) -> DSState:
    """Condition the state on a definite answer for the attribute.

    answer None means "don't know": the distribution is unchanged but the
    attribute is marked asked. Otherwise goals whose value equals the answer
    are retained; under the wildcard policy goals with a missing slot are
    retained too.
    """
    if not 0 <= attr < state.catalog.num_attributes:
        raise BeliefError(f"attribute {attr} outside the schema")
    asked = state.asked | {attr}
    if answer is None:
        return DSState(state.catalog, state.probs, asked, state.turn + 1)
    col = state.catalog.matrix[:, attr]
    keep = col == answer
    if wildcard:
        keep |= col == MISSING
    new = np.where(keep, state.probs, 0.0)
    total = new.sum()
    if total <= 0:
        raise EmptyGoalSetError(f"answer {answer} for attribute {attr} eliminates every goal")
    return DSState(state.catalog, new / total, asked, state.turn + 1)


def soft_update(state: DSState, obs: Observation) -> DSState:
    """Absorb a multi-candidate observation (confidence-weighted update).

    With C the sum of candidate confidences: a goal matching candidate value
    v gets raw mass 1 - (1 - p)(1 - c_v); a non-matching goal (missing slots
    match nothing) gets (1 - C) * p. The result is renormalized, and goals
    below the subset floor are dropped.

    A single candidate at confidence 1.0 is certain evidence and is applied
    as a strict exact update, preserving relative masses among the matchers.
    """
    attr = obs.attribute
    if not 0 <= attr < state.catalog.num_attributes:
        raise BeliefError(f"attribute {attr} outside the schema")
    if len(obs.candidates) == 1 and obs.candidates[0][1] >= 1.0 - NORM_TOL:
        return exact_update(state, attr, obs.candidates[0][0], wildcard=False)
    total_conf = obs.confidence_sum
    probs = state.probs
    raw = (1.0 - total_conf) * probs
    col = state.catalog.matrix[:, attr]
    in_subset = probs > 0
    for value, conf in obs.candidates:
        matches = (col == value) & in_subset
        raw[matches] = 1.0 - (1.0 - probs[matches]) * (1.0 - conf)
    total = raw.sum()
    if total <= 0:
        raise EmptyGoalSetError("observation eliminates every goal")
    raw /= total
    raw[raw < SUBSET_FLOOR] = 0.0
    total = raw.sum()
    if total <= 0:
        raise EmptyGoalSetError("observation eliminates every goal")
    return DSState(state.catalog, raw / total, state.asked | {attr}, state.turn + 1)


RECORD_VERSION = 1


def state_to_record(state: DSState) -> str:
    """Serialize to a stable one-line JSON record (goal:probability pairs,
    asked set, turn)."""
    payload = {
        "version": RECORD_VERSION,
        "turn": state.turn,
        "asked": sorted(state.asked),
        "probs": {str(int(i)): float(state.probs[i]) for i in state.support},
    }
    return json.dumps(payload, sort_keys=True)


def state_from_record(record: str, catalog: Catalog) -> DSState:
    payload = json.loads(record)
    if payload.get("version") != RECORD_VERSION:
        raise BeliefError(f"unsupported state record version {payload.get('version')!r}")
    probs = np.zeros(catalog.num_goals)
    for key, p in payload["probs"].items():
        probs[int(key)] = p
    return DSState(catalog, probs, frozenset(payload["asked"]), int(payload["turn"]))
