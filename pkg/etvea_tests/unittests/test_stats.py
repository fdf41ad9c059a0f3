import itertools

import numpy as np
import pandas as pd
import pytest
from scipy.stats import rankdata

from etvea.custom_exceptions import ContractViolation, IncompleteMatrix
from etvea.design import FACTORIAL_DESIGNS, get_design
from etvea.stats import (
    confidence_scores,
    design_codes,
    factorial_effects,
    mann_whitney_confidence,
    mann_whitney_exact_confidence,
    mean_final_measures,
)


def probability_of_observed_u(a, b):
    ranks = rankdata(np.concatenate((a, b)))
    n_a = len(a)
    observed = ranks[:n_a].sum()
    splits = list(itertools.combinations(range(len(ranks)), n_a))
    hits = sum(
        abs(ranks[list(split)].sum() - observed) < 1e-9 for split in splits
    )
    return hits / len(splits)


def test_complete_separation():
    assert mann_whitney_confidence([3, 4, 5], [0, 1, 2]) == pytest.approx(
        0.95
    )
    assert mann_whitney_confidence([0, 1, 2], [3, 4, 5]) == 0.0


def test_identical_samples_give_no_preference():
    assert mann_whitney_confidence([7.0] * 10, [7.0] * 10) == 0.5
    assert mann_whitney_confidence([1.0], [1.0]) == 0.5


@pytest.mark.parametrize(
    "a, b",
    [
        ([1.0, 2.0], [1.5, 3.0]),
        ([0.0, 0.0, 1.0], [0.0, 2.0]),
        ([5.0, 1.0, 3.0, 3.0], [3.0, 2.0, 4.0, 0.0]),
        ([-1.0, -2.0, -3.0], [-2.0, -2.0, -2.0, -2.0]),
    ],
)
def test_exact_confidences_of_both_directions(a, b):
    forward = mann_whitney_exact_confidence(a, b)
    backward = mann_whitney_exact_confidence(b, a)
    assert forward + backward + probability_of_observed_u(
        np.asarray(a), np.asarray(b)
    ) == pytest.approx(1.0)


def exhaustive_confidence(a, b):
    """1 - P(U >= u) by splitting the pooled values every possible way,
    with U counted pairwise (ties count one half)."""

    def pairwise_u(first, second):
        return sum(
            1.0 if x > y else 0.5 if x == y else 0.0
            for x in first
            for y in second
        )

    pooled = list(a) + list(b)
    observed = pairwise_u(a, b)
    splits = list(itertools.combinations(range(len(pooled)), len(a)))
    at_least = 0
    for split in splits:
        first = [pooled[i] for i in split]
        second = [pooled[i] for i in range(len(pooled)) if i not in split]
        if pairwise_u(first, second) >= observed:
            at_least += 1
    return 1.0 - at_least / len(splits)


VALUE_GRID = (-1.5, 0.0, 0.0, 0.25, 1.0, 1.0, 1.0, 3.0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_small_samples_match_exhaustive_enumeration(n):
    compared = 0
    for picks in itertools.combinations(range(len(VALUE_GRID)), 2 * n):
        values = [VALUE_GRID[i] for i in picks]
        for split in itertools.combinations(range(2 * n), n):
            a = [values[i] for i in split]
            b = [values[i] for i in range(2 * n) if i not in split]
            if len(set(a + b)) == 1:
                continue
            assert mann_whitney_confidence(a, b) == pytest.approx(
                exhaustive_confidence(a, b), abs=1e-12
            )
            compared += 1
    assert compared > 0


@pytest.mark.parametrize(
    "transform",
    [np.exp, lambda x: x**3, lambda x: 2.5 * x - 7.0],
    ids=["exp", "cube", "affine"],
)
@pytest.mark.parametrize("size", [4, 12])
def test_confidence_is_invariant_under_monotone_transforms(transform, size):
    rng = np.random.default_rng(size)
    a = np.round(rng.normal(0.4, 1.0, size=size), 1)
    b = np.round(rng.normal(0.0, 1.0, size=size), 1)
    assert mann_whitney_confidence(
        transform(a), transform(b)
    ) == pytest.approx(mann_whitney_confidence(a, b), abs=1e-12)


def test_identical_samples_with_spread_are_symmetric():
    # each direction keeps half of the mass left after P(U = u)
    sample = [1.0, 2.0, 3.0]
    confidence = mann_whitney_confidence(sample, sample)
    tie_mass = probability_of_observed_u(np.asarray(sample), sample)
    assert confidence == pytest.approx((1.0 - tie_mass) / 2.0)
    assert confidence == pytest.approx(0.3)

    samples = {name: list(range(10)) for name in ("EA1", "EA2", "EA3")}
    scores = confidence_scores(samples)
    assert len(set(scores.values())) == 1
    assert 45.0 < scores["EA1"] < 50.0


def test_large_samples_use_the_normal_approximation():
    better = np.arange(10, 20, dtype=float)
    worse = np.arange(0, 10, dtype=float)
    assert mann_whitney_confidence(better, worse) > 0.99
    assert mann_whitney_confidence(worse, better) < 0.01


def test_normal_approximation_is_close_to_exact():
    rng = np.random.default_rng(8)
    a = rng.normal(0.3, 1.0, size=9)
    b = rng.normal(0.0, 1.0, size=9)
    assert mann_whitney_confidence(a, b) == pytest.approx(
        mann_whitney_exact_confidence(a, b), abs=0.03
    )


def test_empty_sample():
    with pytest.raises(ContractViolation):
        mann_whitney_confidence([], [1.0])


def test_confidence_scores_of_equal_designs():
    samples = {name: [0.0] * 10 for name in ("EA1", "EA2", "EA3")}
    assert confidence_scores(samples) == {
        "EA1": 50.0,
        "EA2": 50.0,
        "EA3": 50.0,
    }


def test_confidence_scores_rank_dominant_design_first():
    samples = {
        "EA5": [-0.1, -0.2, -0.05, -0.15, -0.12],
        "EA1": [-1.0, -2.0, -1.5, -1.2, -1.8],
        "SGA": [-5.0, -4.0, -3.0, -6.0, -4.5],
    }
    scores = confidence_scores(samples)
    assert scores["EA5"] > scores["EA1"] > scores["SGA"]
    assert scores["EA5"] == pytest.approx(100.0 * (1 - 1 / 252.0))


def test_missing_designs_are_excluded(caplog):
    samples = {"EA1": [1.0, 2.0], "EA2": [0.0, 1.0]}
    scores = confidence_scores(samples, designs=["EA1", "EA2", "EA3"])
    assert set(scores) == {"EA1", "EA2"}
    assert "EA3" in caplog.text


def test_one_design_cannot_be_scored():
    with pytest.raises(ContractViolation):
        confidence_scores({"EA1": [1.0, 2.0]})


def test_mean_and_final():
    scores = {100 * (i + 1): float(i) for i in range(20)}
    mean, final = mean_final_measures(scores)
    assert mean == pytest.approx(9.5)
    assert final == 19.0


def test_mean_and_final_need_every_stopping_point():
    with pytest.raises(ContractViolation):
        mean_final_measures({100: 50.0, 200: 50.0})
    assert mean_final_measures({1: 10.0, 2: 30.0}, expected_points=2) == (
        20.0,
        30.0,
    )


def test_design_codes_table():
    codes = design_codes()
    assert list(codes.index) == FACTORIAL_DESIGNS
    assert codes.loc["EA8", "I:3*Div"] == 1
    assert codes.loc["EA2", "I:3*Div"] == -1
    assert codes.loc["EA5", "Div*ETV"] == -1


def responses(value_of, problems=("F1", "F2")):
    rows = []
    for problem in problems:
        for name in FACTORIAL_DESIGNS:
            value = value_of(get_design(name).codes(), problem)
            rows.append(
                {
                    "design": name,
                    "problem": problem,
                    "mean": value,
                    "final": value,
                }
            )
    rows.append({"design": "SGA", "problem": "F1", "mean": 99, "final": 99})
    return pd.DataFrame(rows)


def test_pure_etv_response():
    effects = factorial_effects(
        responses(lambda codes, _: float(codes["ETV"]))
    ).set_index("factor")
    assert effects.loc["ETV", "mean_effect"] == pytest.approx(2.0)
    assert effects.loc["ETV", "final_effect"] == pytest.approx(2.0)
    for factor in ("I:3", "Div", "I:3*Div", "I:3*ETV", "Div*ETV"):
        assert effects.loc[factor, "mean_effect"] == pytest.approx(0.0)


def test_problem_offsets_are_blocked_out():
    offset = {"F1": 0.0, "F2": 40.0}
    effects = factorial_effects(
        responses(
            lambda codes, p: offset[p] + 5.0 * codes["I:3"] * codes["Div"]
        )
    ).set_index("factor")
    assert effects.loc["I:3*Div", "final_effect"] == pytest.approx(10.0)
    assert effects.loc["I:3", "final_effect"] == pytest.approx(0.0)


def test_effects_need_the_whole_factorial():
    frame = responses(lambda codes, _: 0.0)
    frame = frame[~((frame["design"] == "EA3") & (frame["problem"] == "F2"))]
    with pytest.raises(IncompleteMatrix):
        factorial_effects(frame)
