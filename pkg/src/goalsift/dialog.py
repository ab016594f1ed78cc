"""Session controller: the question -> answer -> update loop, termination
rules, and transcripts."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Union

import numpy as np

from .belief import (
    ENTROPY_EPS,
    DSState,
    EmptyGoalSetError,
    Observation,
    attribute_entropy,
    exact_update,
    init_state,
    soft_update,
    state_entropy,
)
from .catalog import Catalog
from .strategy import StrategyKind


class TerminalStatus(str, Enum):
    SINGLE_CANDIDATE = "single_candidate"
    ZERO_ENTROPY_SET = "zero_entropy_set"
    ATTRIBUTES_EXHAUSTED = "attributes_exhausted"
    DOMINANT = "dominant"
    EMPTY_GOAL_SET = "empty_goal_set"


@dataclass(frozen=True)
class SessionConfig:
    strategy: StrategyKind
    mode: str = "ideal"  # "ideal" | "noisy"
    theta: float = 0.8
    wildcard: bool = True
    max_turns: int | None = None  # defaults to the attribute count

    def __post_init__(self):
        if self.mode not in ("ideal", "noisy"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0.5 < self.theta <= 1.0:
            raise ValueError("dominance threshold must lie in (0.5, 1]")
        if self.max_turns is not None and self.max_turns < 1:
            raise ValueError("max_turns must be >= 1")


Answer = Union[int, None, Observation]
AnswerSource = Callable[[int], Answer]


@dataclass(frozen=True)
class TurnRecord:
    attribute: int
    answer: Answer
    state: DSState
    entropy: float


@dataclass
class Transcript:
    """Ordered turns plus the terminal outcome of one session."""

    mode: str
    initial_entropy: float
    turns: list[TurnRecord] = field(default_factory=list)
    status: TerminalStatus | None = None
    returned_goals: tuple[int, ...] = ()

    @property
    def n_turns(self) -> int:
        return len(self.turns)

    @property
    def finished(self) -> bool:
        return self.status is not None

    @property
    def entropy_sequence(self) -> list[float]:
        return [self.initial_entropy] + [t.entropy for t in self.turns]

    def to_jsonl(self) -> str:
        """One structured record per turn, plus a terminal record."""
        lines = []
        for i, t in enumerate(self.turns):
            if isinstance(t.answer, Observation):
                answer = {"candidates": [[v, c] for v, c in t.answer.candidates],
                          "unknown": t.answer.unknown}
            else:
                answer = {"value": t.answer}
            lines.append(json.dumps({
                "turn": i + 1,
                "attribute": t.attribute,
                "answer": answer,
                "entropy": t.entropy,
                "support_size": t.state.support_size,
            }, sort_keys=True))
        lines.append(json.dumps({
            "status": self.status.value if self.status else None,
            "returned_goals": list(self.returned_goals),
        }, sort_keys=True))
        return "\n".join(lines)


def question_text(catalog: Catalog, attr: int) -> str:
    """Surface form of a question; one template per attribute."""
    return f"What is the {catalog.schema.names[attr]} of the goal?"


def check_termination(state: DSState, cfg: SessionConfig) -> TerminalStatus | None:
    """Terminal status if the session is over, else None.

    Ideal mode stops on a single candidate, on every attribute reaching zero
    entropy, or on exhausting the attributes; noisy mode stops on one goal
    dominating (probability above theta) or on exhausting the attributes.
    """
    K = state.catalog.num_attributes
    if cfg.mode == "ideal":
        if state.support_size == 1:
            return TerminalStatus.SINGLE_CANDIDATE
        # reversed: high-cardinality attributes conventionally sit at the
        # high ids, so a nonzero entropy (the common case) is found early
        if all(attribute_entropy(state, k) <= ENTROPY_EPS for k in reversed(range(K))):
            return TerminalStatus.ZERO_ENTROPY_SET
        if len(state.asked) >= K:
            return TerminalStatus.ATTRIBUTES_EXHAUSTED
        return None
    if state.probs.max() > cfg.theta:
        return TerminalStatus.DOMINANT
    if len(state.asked) >= K:
        return TerminalStatus.ATTRIBUTES_EXHAUSTED
    return None


def returned_goals(state: DSState, status: TerminalStatus, mode: str) -> tuple[int, ...]:
    """Goals the session hands back.

    Ideal sessions that stop with several indistinguishable candidates
    return the whole remaining set (all of them satisfy every answer given);
    otherwise the most probable goal, ties to the lowest id.
    """
    if status is TerminalStatus.EMPTY_GOAL_SET:
        return ()
    if status is TerminalStatus.SINGLE_CANDIDATE:
        return (int(state.support[0]),)
    if mode == "ideal":
        supp = state.support
        order = np.lexsort((supp, -state.probs[supp]))
        return tuple(int(supp[i]) for i in order)
    return (int(state.probs.argmax()),)


def run_session(
    cfg: SessionConfig,
    catalog: Catalog,
    answer_source: AnswerSource,
    seed: int = 0,
) -> Transcript:
    """Run one full session against an answer source.

    The answer source maps an attribute id to either a definite value id,
    None for "don't know", or an Observation (noisy candidates). Definite
    answers apply exact filtering; observations apply the soft update.
    """
    strategy = cfg.strategy.build(default_seed=seed)
    state = init_state(catalog)
    max_turns = cfg.max_turns if cfg.max_turns is not None else catalog.num_attributes
    transcript = Transcript(mode=cfg.mode, initial_entropy=state_entropy(state))

    status = check_termination(state, cfg)
    while status is None and len(transcript.turns) < max_turns:
        attr = strategy.next_question(state)
        if attr is None:
            status = TerminalStatus.ATTRIBUTES_EXHAUSTED
            break
        answer = answer_source(attr)
        try:
            if isinstance(answer, Observation):
                state = soft_update(state, answer)
            else:
                state = exact_update(state, attr, answer, wildcard=cfg.wildcard)
        except EmptyGoalSetError:
            transcript.turns.append(TurnRecord(attr, answer, state, state_entropy(state)))
            status = TerminalStatus.EMPTY_GOAL_SET
            break
        transcript.turns.append(TurnRecord(attr, answer, state, state_entropy(state)))
        status = check_termination(state, cfg)
    if status is None:
        status = TerminalStatus.ATTRIBUTES_EXHAUSTED

    transcript.status = status
    transcript.returned_goals = returned_goals(state, status, cfg.mode)
    return transcript


def success(transcript: Transcript, true_goal: int) -> bool:
    """Whether the session found the goal: set membership for ideal sessions,
    exact top-goal match for noisy ones."""
    if not transcript.finished:
        raise ValueError("transcript is not finished")
    if transcript.status is TerminalStatus.EMPTY_GOAL_SET:
        return False
    if transcript.mode == "ideal":
        return true_goal in transcript.returned_goals
    return bool(transcript.returned_goals) and transcript.returned_goals[0] == true_goal
