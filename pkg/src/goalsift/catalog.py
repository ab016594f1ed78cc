"""Goal catalog: attribute schema, goals with optional values, and priors.

A catalog is a table of goals (rows) by categorical attributes (columns).
Cell values are interned to dense integer ids at construction; a missing
cell is stored as -1. Every downstream computation works on the interned
integer matrix.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

MISSING = -1
NORM_TOL = 1e-9

WEIGHT_COLUMN = "__weight"
LABEL_COLUMN = "__label"


class CatalogError(Exception):
    """Base class for catalog construction failures."""


class CatalogParseError(CatalogError):
    """A data row that cannot be ingested; carries the 1-based row number."""

    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row


class EmptyCatalogError(CatalogError):
    """A catalog source with zero goals."""


class InvalidPriorError(CatalogError):
    """Prior weights that are negative, all zero, or the wrong length."""


@dataclass(frozen=True)
class AttributeSchema:
    """Ordered attributes; ids are positions. values[k][m] is the text of
    value id m of attribute k."""

    names: tuple[str, ...]
    values: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        if len(self.names) != len(self.values):
            raise CatalogError("attribute names and value tables differ in length")
        lookup = tuple({text: m for m, text in enumerate(vals)} for vals in self.values)
        object.__setattr__(self, "_lookup", lookup)

    @property
    def num_attributes(self) -> int:
        return len(self.names)

    def cardinality(self, attr: int) -> int:
        return len(self.values[attr])

    def value_id(self, attr: int, text: str) -> int | None:
        return self._lookup[attr].get(text)

    def value_text(self, attr: int, value: int) -> str:
        return self.values[attr][value]


@dataclass(frozen=True)
class Goal:
    """One catalog row; values[k] is a value id or None when missing."""

    goal_id: int
    values: tuple[int | None, ...]
    label: str


class Catalog:
    """Immutable goal database: schema, interned value matrix, prior weights.

    Safe to share across concurrent sessions; nothing mutates after
    construction.
    """

    def __init__(
        self,
        schema: AttributeSchema,
        matrix: np.ndarray,
        weights: np.ndarray | None = None,
        labels: Sequence[str] | None = None,
    ):
        matrix = np.asarray(matrix, dtype=np.int32)
        if matrix.ndim != 2 or matrix.shape[1] != schema.num_attributes:
            raise CatalogError("value matrix shape does not match the schema")
        if matrix.shape[0] == 0:
            raise EmptyCatalogError("catalog has zero goals")
        num_goals = matrix.shape[0]
        for k in range(schema.num_attributes):
            col = matrix[:, k]
            if col.min() < MISSING or col.max() >= schema.cardinality(k):
                raise CatalogError(f"attribute {k} holds a value id outside its dictionary")
        if weights is None:
            weights = np.ones(num_goals)
        weights = np.asarray(weights, dtype=np.float64)
        if weights.shape != (num_goals,):
            raise InvalidPriorError("prior weights length does not match the goal count")
        if (weights < 0).any():
            raise InvalidPriorError("prior weights must be nonnegative")
        total = weights.sum()
        if not np.isfinite(total) or total <= 0:
            raise InvalidPriorError("prior weights must sum to a positive finite number")
        if labels is None:
            labels = tuple(f"g{i}" for i in range(num_goals))
        else:
            labels = tuple(labels)
            if len(labels) != num_goals:
                raise CatalogError("label count does not match the goal count")

        self.schema = schema
        self.matrix = matrix
        self.weights = weights
        self.labels = labels
        self._prior = weights / total
        self.matrix.setflags(write=False)
        self.weights.setflags(write=False)
        self._prior.setflags(write=False)

    @property
    def num_goals(self) -> int:
        return self.matrix.shape[0]

    @property
    def num_attributes(self) -> int:
        return self.schema.num_attributes

    @property
    def prior(self) -> np.ndarray:
        """Normalized prior over goals (sums to 1)."""
        return self._prior

    def goal(self, goal_id: int) -> Goal:
        row = self.matrix[goal_id]
        values = tuple(int(v) if v != MISSING else None for v in row)
        return Goal(goal_id, values, self.labels[goal_id])

    def goals(self) -> Iterable[Goal]:
        return (self.goal(i) for i in range(self.num_goals))

    @staticmethod
    def from_rows(
        names: Sequence[str],
        rows: Sequence[Sequence[str | None]],
        weights: Sequence[float] | None = None,
        labels: Sequence[str] | None = None,
    ) -> "Catalog":
        """Build a catalog from text rows, interning values in first-seen order.

        None or "" marks a missing cell.
        """
        names = tuple(names)
        value_lists: list[list[str]] = [[] for _ in names]
        interned: list[dict[str, int]] = [{} for _ in names]
        matrix = np.full((len(rows), len(names)), MISSING, dtype=np.int32)
        for i, row in enumerate(rows):
            if len(row) != len(names):
                raise CatalogParseError(i + 1, f"expected {len(names)} cells, got {len(row)}")
            for k, cell in enumerate(row):
                if cell is None or cell == "":
                    continue
                vid = interned[k].get(cell)
                if vid is None:
                    vid = len(value_lists[k])
                    value_lists[k].append(cell)
                    interned[k][cell] = vid
                matrix[i, k] = vid
        if len(rows) == 0:
            raise EmptyCatalogError("catalog has zero goals")
        schema = AttributeSchema(names, tuple(tuple(v) for v in value_lists))
        weights_arr = None if weights is None else np.asarray(weights, dtype=np.float64)
        return Catalog(schema, matrix, weights_arr, labels)


def _detect_delimiter(header_line: str) -> str:
    return "\t" if "\t" in header_line else ","


def load_catalog(source: str | Path, delimiter: str | None = None) -> Catalog:
    """Read a delimiter-separated file with a header row into a Catalog.

    An empty cell encodes a missing value. The reserved columns __weight and
    __label supply prior weights and goal labels.
    """
    path = Path(source)
    with path.open(newline="", encoding="utf-8") as fh:
        first = fh.readline()
        if not first:
            raise EmptyCatalogError(f"{path}: empty file")
        if delimiter is None:
            delimiter = _detect_delimiter(first)
        fh.seek(0)
        reader = csv.reader(fh, delimiter=delimiter)
        header = next(reader)
        attr_cols = [c for c, name in enumerate(header) if name not in (WEIGHT_COLUMN, LABEL_COLUMN)]
        weight_col = header.index(WEIGHT_COLUMN) if WEIGHT_COLUMN in header else None
        label_col = header.index(LABEL_COLUMN) if LABEL_COLUMN in header else None
        names = [header[c] for c in attr_cols]

        rows: list[list[str]] = []
        weights: list[float] = []
        labels: list[str] = []
        for lineno, record in enumerate(reader, start=1):
            if not record:
                continue
            if len(record) != len(header):
                raise CatalogParseError(lineno, f"expected {len(header)} cells, got {len(record)}")
            rows.append([record[c] for c in attr_cols])
            if weight_col is not None:
                try:
                    weights.append(float(record[weight_col]))
                except ValueError as exc:
                    raise CatalogParseError(lineno, f"bad weight {record[weight_col]!r}") from exc
            if label_col is not None:
                labels.append(record[label_col])
    if not rows:
        raise EmptyCatalogError(f"{path}: no goal rows")
    return Catalog.from_rows(
        names,
        rows,
        weights=weights if weight_col is not None else None,
        labels=labels if label_col is not None else None,
    )


def write_catalog(catalog: Catalog, target: str | Path, delimiter: str = ",") -> None:
    """Write a catalog back to disk, including labels and prior weights."""
    path = Path(target)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, delimiter=delimiter)
        writer.writerow([LABEL_COLUMN, *catalog.schema.names, WEIGHT_COLUMN])
        for i in range(catalog.num_goals):
            row = [catalog.labels[i]]
            for k in range(catalog.num_attributes):
                v = catalog.matrix[i, k]
                row.append("" if v == MISSING else catalog.schema.value_text(k, int(v)))
            row.append(repr(float(catalog.weights[i])))
            writer.writerow(row)


@dataclass(frozen=True)
class SyntheticSpec:
    """Shape of a generated catalog.

    skew is the Zipf exponent of the per-attribute value distribution,
    either one exponent for all attributes or one per attribute.
    """

    num_goals: int
    cardinalities: tuple[int, ...]
    missing_rates: tuple[float, ...]
    skew: float | tuple[float, ...] = 1.0
    attribute_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.num_goals < 1:
            raise CatalogError("num_goals must be >= 1")
        if len(self.cardinalities) != len(self.missing_rates):
            raise CatalogError("cardinalities and missing_rates differ in length")
        if any(c < 1 for c in self.cardinalities):
            raise CatalogError("cardinalities must be >= 1")
        if any(not 0.0 <= r <= 1.0 for r in self.missing_rates):
            raise CatalogError("missing rates must lie in [0, 1]")
        if self.attribute_names is not None and len(self.attribute_names) != len(self.cardinalities):
            raise CatalogError("attribute_names length does not match cardinalities")
        if isinstance(self.skew, tuple) and len(self.skew) != len(self.cardinalities):
            raise CatalogError("per-attribute skew length does not match cardinalities")

    def skew_for(self, attr: int) -> float:
        return self.skew[attr] if isinstance(self.skew, tuple) else self.skew


def generate_synthetic(spec: SyntheticSpec, seed: int) -> Catalog:
    """Deterministically generate a catalog of the given shape.

    Values are drawn per attribute with Zipf-like skew (weight of value m
    proportional to (m+1)**-skew); missing slots are drawn independently per
    (goal, attribute) cell.
    """
    rng = np.random.default_rng(seed)
    K = len(spec.cardinalities)
    names = spec.attribute_names or tuple(f"attr{k}" for k in range(K))
    matrix = np.empty((spec.num_goals, K), dtype=np.int32)
    for k, (card, rate) in enumerate(zip(spec.cardinalities, spec.missing_rates)):
        ranks = np.arange(1, card + 1, dtype=np.float64)
        p = ranks ** -spec.skew_for(k)
        p /= p.sum()
        col = rng.choice(card, size=spec.num_goals, p=p)
        if rate > 0:
            col = np.where(rng.random(spec.num_goals) < rate, MISSING, col)
        matrix[:, k] = col
    values = tuple(tuple(f"v{m}" for m in range(card)) for card in spec.cardinalities)
    schema = AttributeSchema(tuple(names), values)
    return Catalog(schema, matrix)


PriorSpec = str | tuple | Sequence[float] | np.ndarray


def set_prior(catalog: Catalog, spec: PriorSpec) -> Catalog:
    """Return a copy of the catalog with a new prior.

    spec is "uniform", ("zipf", exponent, seed), or an explicit weight
    sequence of length num_goals.
    """
    I = catalog.num_goals
    if isinstance(spec, str):
        if spec == "uniform":
            weights = np.ones(I)
        else:
            weights = _parse_prior_string(spec, I)
    elif isinstance(spec, tuple) and len(spec) == 3 and spec[0] == "zipf":
        weights = _zipf_weights(I, float(spec[1]), int(spec[2]))
    else:
        weights = np.asarray(spec, dtype=np.float64)
        if weights.shape != (I,):
            raise InvalidPriorError(f"expected {I} weights, got shape {weights.shape}")
    return Catalog(catalog.schema, catalog.matrix, weights, catalog.labels)


def _zipf_weights(num_goals: int, exponent: float, seed: int) -> np.ndarray:
    """Zipf weights over a seeded random permutation of the goals."""
    rng = np.random.default_rng(seed)
    ranks = rng.permutation(num_goals) + 1
    return ranks.astype(np.float64) ** -exponent


def _parse_prior_string(text: str, num_goals: int) -> np.ndarray:
    parts = text.split(":")
    if parts[0] == "zipf":
        exponent = float(parts[1]) if len(parts) > 1 else 1.0
        seed = int(parts[2]) if len(parts) > 2 else 0
        return _zipf_weights(num_goals, exponent, seed)
    raise InvalidPriorError(f"unknown prior spec {text!r}")


def parse_prior_spec(text: str) -> PriorSpec:
    """Parse a prior spec from its CLI/config string form."""
    text = text.strip()
    if text == "uniform":
        return "uniform"
    if text.startswith("zipf"):
        parts = text.split(":")
        exponent = float(parts[1]) if len(parts) > 1 else 1.0
        seed = int(parts[2]) if len(parts) > 2 else 0
        return ("zipf", exponent, seed)
    raise InvalidPriorError(f"unknown prior spec {text!r}")


@dataclass(frozen=True)
class AttributeStats:
    distinct: int
    missing_fraction: float


def attribute_stats(catalog: Catalog) -> list[AttributeStats]:
    """Per-attribute distinct present-value count and missing fraction."""
    stats = []
    for k in range(catalog.num_attributes):
        col = catalog.matrix[:, k]
        present = col[col != MISSING]
        stats.append(
            AttributeStats(
                distinct=int(np.unique(present).size),
                missing_fraction=1.0 - present.size / catalog.num_goals,
            )
        )
    return stats
