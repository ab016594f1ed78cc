"""Question-selection policies: sequential, random, distinct-value count
(DSDM), and maximum attribute entropy (EMDM), behind one interface."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .belief import ENTROPY_EPS, DSState, attribute_entropy
from .catalog import MISSING

STRATEGY_NAMES = ("sequential", "random", "dsdm", "emdm")


@dataclass(frozen=True)
class StrategyKind:
    """Parsed strategy choice; random carries its explicit seed."""

    kind: str
    seed: int | None = None

    def __post_init__(self):
        if self.kind not in STRATEGY_NAMES:
            raise ValueError(f"unknown strategy {self.kind!r}")

    def build(self, default_seed: int | None = None) -> "Strategy":
        if self.kind == "sequential":
            return SequentialStrategy()
        if self.kind == "dsdm":
            return DSDMStrategy()
        if self.kind == "emdm":
            return EMDMStrategy()
        seed = self.seed if self.seed is not None else default_seed
        return RandomStrategy(seed if seed is not None else 0)

    def __str__(self) -> str:
        return self.kind if self.seed is None else f"{self.kind}:{self.seed}"


def parse_strategy(text: str) -> StrategyKind:
    """Parse `sequential | random:<seed> | dsdm | emdm`."""
    text = text.strip()
    if text.startswith("random"):
        parts = text.split(":")
        if len(parts) != 2:
            raise ValueError("random strategy requires an explicit seed: random:<seed>")
        return StrategyKind("random", int(parts[1]))
    return StrategyKind(text)


class Strategy:
    """One per session; next_question never repeats an asked attribute and
    returns None when no candidate remains."""

    name = "base"

    def next_question(self, state: DSState) -> int | None:
        raise NotImplementedError

    @staticmethod
    def _candidates(state: DSState) -> list[int]:
        return [k for k in range(state.catalog.num_attributes) if k not in state.asked]


class SequentialStrategy(Strategy):
    name = "sequential"

    def next_question(self, state: DSState) -> int | None:
        candidates = self._candidates(state)
        return candidates[0] if candidates else None


class RandomStrategy(Strategy):
    name = "random"

    def __init__(self, seed: int):
        self.seed = seed
        self._rng = np.random.default_rng(seed)

    def next_question(self, state: DSState) -> int | None:
        candidates = self._candidates(state)
        if not candidates:
            return None
        return int(self._rng.choice(candidates))


class DSDMStrategy(Strategy):
    """Ask the attribute with the most distinct present values among the
    goals still in play; ties go to the lowest attribute id."""

    name = "dsdm"

    def next_question(self, state: DSState) -> int | None:
        candidates = self._candidates(state)
        if not candidates:
            return None
        supp = state.support
        best, best_count = None, -1
        for k in candidates:
            col = state.catalog.matrix[supp, k]
            count = int(np.unique(col[col != MISSING]).size)
            if count > best_count:
                best, best_count = k, count
        return best


class EMDMStrategy(Strategy):
    """Ask the unasked attribute with maximum entropy; zero-entropy
    attributes are uninformative and never selected."""

    name = "emdm"

    def next_question(self, state: DSState) -> int | None:
        best, best_h = None, ENTROPY_EPS
        for k in self._candidates(state):
            h = attribute_entropy(state, k)
            if h > best_h:
                best, best_h = k, h
        return best


def next_question(kind: StrategyKind | Strategy, state: DSState) -> int | None:
    strategy = kind.build() if isinstance(kind, StrategyKind) else kind
    return strategy.next_question(state)


def informative_attributes(state: DSState, include_asked: bool = False) -> list[tuple[int, float]]:
    """(attribute id, entropy in bits) sorted by descending entropy, ties by
    ascending id. By default only unasked attributes are listed; with
    include_asked=True every attribute is reported (asked ones typically at 0),
    which is the diagnostic view used by the service and UI."""
    entries = [
        (k, attribute_entropy(state, k))
        for k in range(state.catalog.num_attributes)
        if include_asked or k not in state.asked
    ]
    entries.sort(key=lambda e: (-e[1], e[0]))
    return entries
