"""Experiment harness: batch simulations over a catalog, per-strategy
reports, and pairwise turn-count comparisons."""
from __future__ import annotations

import json
import zlib
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .catalog import Catalog
from .dialog import SessionConfig, Transcript, run_session, success
from .strategy import StrategyKind
from .usersim import NoiseSpec, cooperative_answer, corrupt

MONOTONE_TOL = 1e-9


@dataclass(frozen=True)
class StrategyArm:
    """One tested configuration: a strategy plus an optional channel
    override (so top-5 and top-1 variants can share an experiment)."""

    label: str
    kind: StrategyKind
    noise: NoiseSpec | None = None


@dataclass(frozen=True)
class ExperimentConfig:
    arms: tuple[StrategyArm, ...]
    mode: str = "ideal"
    plan: str = "exhaustive"  # "exhaustive" | "sampled"
    sample_size: int = 0
    noise: NoiseSpec = field(default_factory=NoiseSpec)
    noise_overrides: tuple[tuple[str, NoiseSpec], ...] = ()  # by attribute name
    theta: float = 0.8
    wildcard: bool = True
    max_turns: int | None = None
    random_repeats: int = 3
    master_seed: int = 0

    def __post_init__(self):
        if self.plan not in ("exhaustive", "sampled"):
            raise ValueError(f"unknown plan {self.plan!r}")
        if self.plan == "sampled" and self.sample_size < 1:
            raise ValueError("sampled plan requires sample_size >= 1")
        if self.random_repeats < 1:
            raise ValueError("random_repeats must be >= 1")


@dataclass
class ArmResult:
    label: str
    kind: str
    n_goals: int
    n_dialogs: int
    mean_turns: float
    success_rate: float
    turn_histogram: list[int]
    question_counts: list[int]
    status_counts: dict[str, int]
    per_goal_turns: list[float]
    per_goal_success: list[float]
    monotonicity_violations: int


@dataclass
class BenchReport:
    mode: str
    plan: str
    master_seed: int
    goal_ids: list[int]
    arms: list[ArmResult]

    def arm(self, label: str) -> ArmResult:
        for arm in self.arms:
            if arm.label == label:
                return arm
        raise KeyError(f"no strategy arm labelled {label!r}")

    def to_json(self) -> str:
        payload = {
            "version": 1,
            "mode": self.mode,
            "plan": self.plan,
            "master_seed": self.master_seed,
            "goal_ids": self.goal_ids,
            "arms": [vars(a) for a in self.arms],
        }
        return json.dumps(payload, sort_keys=True)

    @staticmethod
    def from_json(text: str) -> "BenchReport":
        payload = json.loads(text)
        arms = [ArmResult(**a) for a in payload["arms"]]
        return BenchReport(payload["mode"], payload["plan"], payload["master_seed"],
                           payload["goal_ids"], arms)


def _entropy_monotone(transcript: Transcript) -> bool:
    seq = transcript.entropy_sequence
    return all(seq[i + 1] <= seq[i] + MONOTONE_TOL for i in range(len(seq) - 1))


def _strategy_token(label: str) -> int:
    return zlib.crc32(label.encode())


def run_experiment(catalog: Catalog, cfg: ExperimentConfig) -> BenchReport:
    """Run every arm over the evaluation plan.

    Deterministic given the master seed. Channel randomness is seeded per
    (master seed, dialog index, repeat) only, so arms see paired noise on the
    same goal; strategy randomness additionally hashes in the arm label.
    """
    if cfg.plan == "exhaustive":
        goals = list(range(catalog.num_goals))
    else:
        rng = np.random.default_rng(np.random.SeedSequence((cfg.master_seed, 0xA)))
        goals = [int(g) for g in rng.choice(catalog.num_goals, size=cfg.sample_size, p=catalog.prior)]

    max_turns = cfg.max_turns if cfg.max_turns is not None else catalog.num_attributes
    override_ids = {catalog.schema.names.index(name): spec for name, spec in cfg.noise_overrides}
    results = []
    for arm in cfg.arms:
        session_cfg = SessionConfig(
            strategy=arm.kind, mode=cfg.mode, theta=cfg.theta,
            wildcard=cfg.wildcard, max_turns=cfg.max_turns,
        )
        arm_noise = arm.noise if arm.noise is not None else cfg.noise
        reps = cfg.random_repeats if arm.kind.kind == "random" else 1
        token = _strategy_token(arm.label)

        histogram = [0] * (max_turns + 1)
        question_counts = [0] * catalog.num_attributes
        status_counts: dict[str, int] = {}
        per_goal_turns: list[float] = []
        per_goal_success: list[float] = []
        total_turns = 0
        total_success = 0
        violations = 0
        n_dialogs = 0

        for idx, goal in enumerate(goals):
            rep_turns = 0.0
            rep_success = 0.0
            for rep in range(reps):
                if cfg.mode == "ideal":
                    def source(attr: int, _g=goal) -> int | None:
                        return cooperative_answer(catalog, _g, attr)
                else:
                    noise_rng = np.random.default_rng(
                        np.random.SeedSequence((cfg.master_seed, 0xB, idx, rep)))

                    def source(attr: int, _g=goal, _rng=noise_rng):
                        spec = override_ids.get(attr, arm_noise)
                        return corrupt(cooperative_answer(catalog, _g, attr),
                                       attr, catalog, spec, _rng)

                strat_seed = (cfg.master_seed * 1000003 + token) % (2**31) + idx * 131 + rep
                transcript = run_session(session_cfg, catalog, source, seed=strat_seed)
                ok = success(transcript, goal)
                histogram[min(transcript.n_turns, max_turns)] += 1
                for t in transcript.turns:
                    question_counts[t.attribute] += 1
                key = transcript.status.value
                status_counts[key] = status_counts.get(key, 0) + 1
                if cfg.mode == "ideal" and not _entropy_monotone(transcript):
                    violations += 1
                rep_turns += transcript.n_turns
                rep_success += 1.0 if ok else 0.0
                total_turns += transcript.n_turns
                total_success += 1 if ok else 0
                n_dialogs += 1
            per_goal_turns.append(rep_turns / reps)
            per_goal_success.append(rep_success / reps)

        results.append(ArmResult(
            label=arm.label,
            kind=str(arm.kind),
            n_goals=len(goals),
            n_dialogs=n_dialogs,
            mean_turns=total_turns / n_dialogs,
            success_rate=total_success / n_dialogs,
            turn_histogram=histogram,
            question_counts=question_counts,
            status_counts=dict(sorted(status_counts.items())),
            per_goal_turns=per_goal_turns,
            per_goal_success=per_goal_success,
            monotonicity_violations=violations,
        ))
    return BenchReport(cfg.mode, cfg.plan, cfg.master_seed, goals, results)


@dataclass(frozen=True)
class PairwiseComparison:
    frac_less: float
    frac_equal: float
    frac_greater: float


def compare_pairwise(
    report: BenchReport,
    a_label: str,
    b_label: str,
    report_b: BenchReport | None = None,
) -> PairwiseComparison:
    """Per-goal turn-count comparison: fractions of goals where strategy a
    took fewer / the same / more turns than strategy b."""
    arm_a = report.arm(a_label)
    other = report_b if report_b is not None else report
    arm_b = other.arm(b_label)
    if report.goal_ids != other.goal_ids:
        raise ValueError("strategies were evaluated on different goal lists")
    ta = np.asarray(arm_a.per_goal_turns)
    tb = np.asarray(arm_b.per_goal_turns)
    n = ta.size
    return PairwiseComparison(
        frac_less=float((ta < tb).sum()) / n,
        frac_equal=float((ta == tb).sum()) / n,
        frac_greater=float((ta > tb).sum()) / n,
    )


def format_table(report: BenchReport) -> str:
    """Human-readable per-strategy summary."""
    header = f"{'strategy':<16} {'dialogs':>8} {'mean turns':>11} {'success':>9}  statuses"
    lines = [header, "-" * len(header)]
    for arm in report.arms:
        statuses = ", ".join(f"{k}={v}" for k, v in arm.status_counts.items())
        lines.append(
            f"{arm.label:<16} {arm.n_dialogs:>8} {arm.mean_turns:>11.3f} "
            f"{arm.success_rate:>8.1%}  {statuses}"
        )
    return "\n".join(lines)


def emit_report(report: BenchReport, fmt: str, out_dir: str | Path) -> list[Path]:
    """Write report files; fmt is table, delimited, or plot-data."""
    if not report.arms or report.arms[0].n_dialogs == 0:
        raise ValueError("refusing to emit an empty report")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    if fmt == "table":
        path = out / "report.txt"
        path.write_text(format_table(report) + "\n", encoding="utf-8")
        written.append(path)
    elif fmt in ("delimited", "plot-data"):
        if fmt == "delimited":
            path = out / "summary.csv"
            rows = ["strategy,dialogs,mean_turns,success_rate"]
            rows += [f"{a.label},{a.n_dialogs},{a.mean_turns!r},{a.success_rate!r}"
                     for a in report.arms]
            path.write_text("\n".join(rows) + "\n", encoding="utf-8")
            written.append(path)
        for arm in report.arms:
            hist = out / f"histogram_{arm.label}.csv"
            rows = ["turns,count"] + [f"{i},{c}" for i, c in enumerate(arm.turn_histogram)]
            hist.write_text("\n".join(rows) + "\n", encoding="utf-8")
            written.append(hist)
            qs = out / f"questions_{arm.label}.csv"
            rows = ["attribute,count"] + [f"{k},{c}" for k, c in enumerate(arm.question_counts)]
            qs.write_text("\n".join(rows) + "\n", encoding="utf-8")
            written.append(qs)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    return written
