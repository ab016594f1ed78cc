"""Simulated answerers: the cooperative user and the noisy channel."""
from __future__ import annotations

import numpy as np
import pytest

from goalsift.catalog import Catalog, SyntheticSpec, generate_synthetic, set_prior
from goalsift.usersim import NoiseSpec, cooperative_answer, corrupt


@pytest.fixture(scope="module")
def wide_catalog() -> Catalog:
    spec = SyntheticSpec(num_goals=2000, cardinalities=(40,), missing_rates=(0.0,), skew=1.0)
    return generate_synthetic(spec, seed=9)


def test_cooperative_answer_reports_truth_or_unknown():
    cat = Catalog.from_rows(["a"], [["x"], [None]])
    assert cooperative_answer(cat, 0, 0) == 0
    assert cooperative_answer(cat, 1, 0) is None


def test_noise_spec_validation():
    with pytest.raises(ValueError):
        NoiseSpec(error_rate=1.0)
    with pytest.raises(ValueError):
        NoiseSpec(top_n=0)
    with pytest.raises(ValueError):
        NoiseSpec(inclusion_rate=1.5)
    with pytest.raises(ValueError):
        NoiseSpec(concentration=0.0)
    with pytest.raises(ValueError):
        NoiseSpec(conf_floor=1.0)


def test_perfect_channel_passes_truth_through(wide_catalog):
    rng = np.random.default_rng(0)
    noise = NoiseSpec(error_rate=0.0, top_n=1)
    obs = corrupt(3, 0, wide_catalog, noise, rng)
    assert obs.candidates == ((3, 1.0),)


def test_unknown_passes_through(wide_catalog):
    rng = np.random.default_rng(0)
    obs = corrupt(None, 0, wide_catalog, NoiseSpec(), rng)
    assert obs.unknown and obs.candidates == ()


def test_corrupt_is_deterministic_given_generator_state(wide_catalog):
    a = corrupt(5, 0, wide_catalog, NoiseSpec(), np.random.default_rng(42))
    b = corrupt(5, 0, wide_catalog, NoiseSpec(), np.random.default_rng(42))
    assert a.candidates == b.candidates


def test_candidate_lists_are_well_formed(wide_catalog):
    rng = np.random.default_rng(1)
    noise = NoiseSpec()
    for _ in range(500):
        obs = corrupt(int(rng.integers(40)), 0, wide_catalog, noise, rng)
        confs = [c for _, c in obs.candidates]
        values = [v for v, _ in obs.candidates]
        assert 1 <= len(obs.candidates) <= noise.top_n
        assert sum(confs) <= 1.0 + 1e-9
        assert len(set(values)) == len(values)
        assert all(c > 0 for c in confs)
        # below rank 1 the floor is enforced
        assert all(c >= noise.conf_floor for c in confs[1:])


def test_single_value_attribute_degenerates_to_truth():
    cat = Catalog.from_rows(["a"], [["only"], ["only"]])
    rng = np.random.default_rng(3)
    obs = corrupt(0, 0, cat, NoiseSpec(error_rate=0.5), rng)
    assert [v for v, _ in obs.candidates] == [0]


def test_top1_error_rate_calibration(wide_catalog):
    rng = np.random.default_rng(11)
    noise = NoiseSpec()
    n, hits = 4000, 0
    for _ in range(n):
        true = int(rng.integers(40))
        obs = corrupt(true, 0, wide_catalog, noise, rng)
        hits += obs.candidates[0][0] == true
    assert hits / n == pytest.approx(1.0 - noise.error_rate, abs=0.02)


def test_top5_inclusion_calibration(wide_catalog):
    # net inclusion = (1 - e) + e * (p_inc discounted by floor survival);
    # the default channel is calibrated to the high-80s regime
    rng = np.random.default_rng(12)
    noise = NoiseSpec()
    n, included = 4000, 0
    for _ in range(n):
        true = int(rng.integers(40))
        obs = corrupt(true, 0, wide_catalog, noise, rng)
        included += true in {v for v, _ in obs.candidates}
    assert included / n == pytest.approx(0.89, abs=0.025)


def test_top1_spec_never_lists_extra_candidates(wide_catalog):
    rng = np.random.default_rng(13)
    noise = NoiseSpec(top_n=1)
    for _ in range(200):
        obs = corrupt(7, 0, wide_catalog, noise, rng)
        assert len(obs.candidates) == 1


def test_distractors_follow_the_prior_weighted_marginal():
    # one dominant value: distractors should hit it far more often than a
    # rare value of the same attribute
    rows = [["big"]] * 90 + [["mid"]] * 9 + [["rare"]]
    cat = Catalog.from_rows(["a"], rows)
    rng = np.random.default_rng(14)
    noise = NoiseSpec(error_rate=0.6, inclusion_rate=0.0, top_n=1, conf_floor=0.0)
    big = cat.schema.value_id(0, "big")
    rare = cat.schema.value_id(0, "rare")
    truth = cat.schema.value_id(0, "mid")
    counts = {big: 0, rare: 0}
    for _ in range(3000):
        obs = corrupt(truth, 0, cat, noise, rng)
        top = obs.candidates[0][0]
        if top in counts:
            counts[top] += 1
    assert counts[big] > 20 * max(counts[rare], 1)


def test_distractor_draws_respect_reweighted_prior():
    rows = [["big"], ["mid"], ["rare"]]
    cat = set_prior(Catalog.from_rows(["a"], rows), [100.0, 10.0, 1.0])
    rng = np.random.default_rng(15)
    noise = NoiseSpec(error_rate=0.9, inclusion_rate=0.0, top_n=1, conf_floor=0.0)
    counts = np.zeros(3)
    for _ in range(2000):
        obs = corrupt(2, 0, cat, noise, rng)  # truth = rare
        counts[obs.candidates[0][0]] += 1
    wrong = counts[:2]
    assert wrong[0] > 5 * wrong[1]  # big ~10x mid among distractors


def test_confidences_sorted_descending_on_clean_reads(wide_catalog):
    rng = np.random.default_rng(16)
    noise = NoiseSpec(error_rate=0.0, top_n=5)
    for _ in range(200):
        obs = corrupt(4, 0, wide_catalog, noise, rng)
        confs = [c for _, c in obs.candidates]
        assert confs == sorted(confs, reverse=True)
        assert obs.candidates[0][0] == 4


def test_conf_floor_prunes_tail(wide_catalog):
    rng_hi = np.random.default_rng(17)
    rng_lo = np.random.default_rng(17)
    big_floor = NoiseSpec(conf_floor=0.5)
    no_floor = NoiseSpec(conf_floor=0.0)
    pruned = sum(len(corrupt(1, 0, wide_catalog, big_floor, rng_hi).candidates)
                 for _ in range(200))
    kept = sum(len(corrupt(1, 0, wide_catalog, no_floor, rng_lo).candidates)
               for _ in range(200))
    assert pruned < kept
