"""Question-selection strategies and their tie-breaking rules."""
from __future__ import annotations

import numpy as np
import pytest

from goalsift.belief import exact_update, init_state
from goalsift.catalog import Catalog
from goalsift.strategy import (
    StrategyKind,
    informative_attributes,
    next_question,
    parse_strategy,
)


def test_parse_strategy_tokens():
    assert parse_strategy("emdm").kind == "emdm"
    assert parse_strategy("dsdm").kind == "dsdm"
    assert parse_strategy("sequential").kind == "sequential"
    kind = parse_strategy("random:42")
    assert kind.kind == "random" and kind.seed == 42
    with pytest.raises(ValueError):
        parse_strategy("greedy")


def test_emdm_picks_max_entropy_attribute(f1):
    # H(A) = 1.0, H(B) = 1.5
    state = init_state(f1)
    assert next_question(parse_strategy("emdm"), state) == 1


def test_dsdm_picks_most_distinct_values(f1):
    # A has 2 distinct values, B has 3
    state = init_state(f1)
    assert next_question(parse_strategy("dsdm"), state) == 1


def test_sequential_walks_attribute_ids(f1):
    state = init_state(f1)
    assert next_question(parse_strategy("sequential"), state) == 0
    state = exact_update(state, 0, 0)
    assert next_question(parse_strategy("sequential"), state) == 1


def test_random_is_seeded_and_avoids_asked(f1):
    a = parse_strategy("random:5").build()
    b = parse_strategy("random:5").build()
    state = init_state(f1)
    assert a.next_question(state) == b.next_question(state)
    asked_zero = exact_update(state, 0, 0)
    for _ in range(20):
        assert parse_strategy("random:5").build().next_question(asked_zero) == 1


def test_strategies_never_repeat_and_return_none_when_done(f1):
    for token in ("emdm", "dsdm", "sequential", "random:0"):
        strategy = parse_strategy(token).build()
        state = init_state(f1)
        asked = []
        while (attr := strategy.next_question(state)) is not None:
            assert attr not in asked
            asked.append(attr)
            state = exact_update(state, attr, None)  # burn without narrowing
        assert strategy.next_question(state) is None
        assert len(asked) <= f1.num_attributes


def test_emdm_skips_zero_entropy_attributes():
    # attribute b is constant: uninformative, never asked
    cat = Catalog.from_rows(["a", "b"], [["x", "c"], ["y", "c"], ["z", "c"]])
    state = init_state(cat)
    strategy = parse_strategy("emdm").build()
    assert strategy.next_question(state) == 0
    state = exact_update(state, 0, 0)
    assert strategy.next_question(state) is None


def test_dsdm_tie_breaks_to_lowest_id():
    cat = Catalog.from_rows(["a", "b"], [["x", "p"], ["y", "q"]])
    state = init_state(cat)
    assert parse_strategy("dsdm").build().next_question(state) == 0


def test_emdm_recomputes_on_narrowed_support(f1):
    # after A=y the survivors {g3, g4} agree on B: nothing left to ask
    state = exact_update(init_state(f1), 0, 1)
    assert parse_strategy("emdm").build().next_question(state) is None


def test_random_requires_explicit_seed():
    with pytest.raises(ValueError):
        parse_strategy("random")
    assert StrategyKind("random").build(default_seed=3) is not None


def test_informative_attributes_order_and_filter(f1):
    state = init_state(f1)
    assert informative_attributes(state) == [
        (1, pytest.approx(1.5)),
        (0, pytest.approx(1.0)),
    ]
    asked = exact_update(state, 1, None)
    assert [k for k, _ in informative_attributes(asked)] == [0]
    full = informative_attributes(asked, include_asked=True)
    assert [k for k, _ in full] == [1, 0]


def test_strategy_kind_string_roundtrip():
    assert str(parse_strategy("random:9")) == "random:9"
    assert str(parse_strategy("emdm")) == "emdm"
