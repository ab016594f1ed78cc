"""Desk-scale defaults for the experiment harness."""
from __future__ import annotations

from functools import lru_cache

from .catalog import Catalog, SyntheticSpec, generate_synthetic

# Song-like attribute shapes (cardinality, missing rate, value skew),
# ordered so that a fixed sequential sweep starts with the least
# informative attributes. High-cardinality attributes are scaled down to
# keep the real database's goals-per-value geometry at desk scale (10k
# goals instead of ~38k): about 14 goals per album, so no single question
# resolves a goal and strategy ordering effects survive the shrink. The
# skews keep most of the identifying information in a handful of
# attributes, as in the real data where weak attributes are heavily
# concentrated on popular values.
DEFAULT_ATTRIBUTES: tuple[tuple[str, int, float, float], ...] = (
    ("gender", 2, 0.0, 1.3),
    ("live", 2, 0.0, 1.3),
    ("language", 10, 0.0, 1.3),
    ("region", 19, 0.0, 1.3),
    ("emotion", 15, 0.20, 1.3),
    ("style", 91, 0.53, 1.3),
    ("time", 28, 0.0, 0.8),
    ("company", 82, 0.0, 0.8),
    ("singer", 208, 0.0, 0.4),
    ("lyricist", 386, 0.0, 0.4),
    ("composer", 388, 0.50, 0.4),
    ("album", 711, 0.0, 0.2),
)

DEFAULT_NUM_GOALS = 10_000
DEFAULT_CATALOG_SEED = 7


def default_synthetic_spec(num_goals: int = DEFAULT_NUM_GOALS) -> SyntheticSpec:
    """The default 12-attribute synthetic catalog shape."""
    return SyntheticSpec(
        num_goals=num_goals,
        cardinalities=tuple(c for _, c, _, _ in DEFAULT_ATTRIBUTES),
        missing_rates=tuple(r for _, _, r, _ in DEFAULT_ATTRIBUTES),
        skew=tuple(s for _, _, _, s in DEFAULT_ATTRIBUTES),
        attribute_names=tuple(n for n, _, _, _ in DEFAULT_ATTRIBUTES),
    )


@lru_cache(maxsize=1)
def default_catalog() -> Catalog:
    """The shared default catalog instance (immutable, so caching is safe)."""
    return generate_synthetic(default_synthetic_spec(), seed=DEFAULT_CATALOG_SEED)


def demo_catalog() -> Catalog:
    """A four-goal, two-attribute catalog small enough to trace by hand.

    Attribute A partitions the goals 2/2; attribute B splits off g1 and g2
    individually and leaves g3, g4 indistinguishable.
    """
    return Catalog.from_rows(
        names=("A", "B"),
        rows=[["x", "p"], ["x", "q"], ["y", "r"], ["y", "r"]],
        labels=["g1", "g2", "g3", "g4"],
    )
