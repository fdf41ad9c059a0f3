"""
Nonparametric comparison of EA designs and factorial effect estimation.

A design's performance on a problem at a stopping point is its average
one-sided Mann-Whitney confidence (1 - p) of beating each competitor,
reported on a 0-100 scale. Mean and Final measures summarise those scores
over all stopping points; main effects and two-way interactions of the
three design factors are estimated from the factorial designs.
"""

from __future__ import annotations

import itertools
import logging
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from scipy.special import comb
from scipy.stats import norm, rankdata, tiecorrect

from etvea.constants import INTERACTIONS, MAIN_FACTORS
from etvea.custom_exceptions import ContractViolation, IncompleteMatrix
from etvea.design import FACTORIAL_DESIGNS, get_design

log: logging.Logger = logging.getLogger(__name__)

# below this sample size the exact distribution of U is enumerated
EXACT_BELOW = 8
MAX_EXACT_SPLITS = 200000
STOPPING_POINTS = 20
TOLERANCE = 1e-9


def _u_statistic(ranks: np.ndarray, n_a: int) -> float:
    return float(ranks[:n_a].sum()) - n_a * (n_a + 1) / 2.0


def mann_whitney_exact_confidence(
    a: Sequence[float], b: Sequence[float]
) -> float:
    """
    1 - P(U >= u_obs) for "a stochastically greater than b", with P taken
    over every split of the pooled midranks into groups of len(a) and
    len(b).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if len(a) == 0 or len(b) == 0:
        raise ContractViolation("Mann-Whitney needs two non-empty samples")
    n_a = len(a)
    ranks = rankdata(np.concatenate((a, b)))
    u_obs = _u_statistic(ranks, n_a)
    offset = n_a * (n_a + 1) / 2.0

    at_least = 0
    total = 0
    for chosen in itertools.combinations(range(len(ranks)), n_a):
        u = float(ranks[list(chosen)].sum()) - offset
        if u >= u_obs - TOLERANCE:
            at_least += 1
        total += 1
    return 1.0 - at_least / total


def _normal_confidence(a: np.ndarray, b: np.ndarray) -> float:
    n_a, n_b = len(a), len(b)
    ranks = rankdata(np.concatenate((a, b)))
    u_obs = _u_statistic(ranks, n_a)
    variance = tiecorrect(ranks) * n_a * n_b * (n_a + n_b + 1) / 12.0
    if variance <= 0:
        return 0.5
    z = (u_obs - n_a * n_b / 2.0 - 0.5) / np.sqrt(variance)
    return 1.0 - float(norm.sf(z))


def mann_whitney_confidence(a: Sequence[float], b: Sequence[float]) -> float:
    """
    Confidence that sample a is stochastically greater than sample b.

    Midranks handle ties. Samples with fewer than 8 values are compared by
    exact enumeration, larger ones by the tie-corrected normal
    approximation with continuity correction. If every pooled value is
    equal the answer is 0.5.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if len(a) == 0 or len(b) == 0:
        raise ContractViolation("Mann-Whitney needs two non-empty samples")
    pooled = np.concatenate((a, b))
    if np.all(pooled == pooled[0]):
        return 0.5
    exact = (
        min(len(a), len(b)) < EXACT_BELOW
        and comb(len(pooled), len(a), exact=True) <= MAX_EXACT_SPLITS
    )
    if exact:
        return mann_whitney_exact_confidence(a, b)
    return _normal_confidence(a, b)


def confidence_scores(
    samples: Mapping[str, Sequence[float]],
    designs: Optional[Iterable[str]] = None,
) -> Dict[str, float]:
    """
    Average confidence of every design against each other design, x100.

    :param samples: best fitness values per design, one per run
    :param designs: designs expected; those without samples are reported
        and left out of every comparison
    """
    if designs is None:
        designs = list(samples)
    present = []
    for design in designs:
        if design in samples and len(samples[design]):
            present.append(design)
        else:
            log.warning("No samples for design %s, excluded", design)
    if len(present) < 2:
        raise ContractViolation(
            "Need at least two designs to compare, got %s" % present
        )
    scores = {}
    for design in present:
        confidences = [
            mann_whitney_confidence(samples[design], samples[other])
            for other in present
            if other != design
        ]
        scores[design] = 100.0 * float(np.mean(confidences))
    return scores


def mean_final_measures(
    scores: Mapping[int, float], expected_points: int = STOPPING_POINTS
) -> Tuple[float, float]:
    """
    (Mean, Final) of a design's scores keyed by stopping point: the average
    over all stopping points and the score at the last one.
    """
    if len(scores) != expected_points:
        raise ContractViolation(
            "Expected %d stopping points, got %d"
            % (expected_points, len(scores))
        )
    ordered = sorted(scores.items())
    values = [score for _, score in ordered]
    return float(np.mean(values)), float(ordered[-1][1])


def design_codes() -> pd.DataFrame:
    """
    +1/-1 codes of the factorial designs, one row per design, with a
    column per main factor and per two-way interaction.
    """
    rows = []
    for name in FACTORIAL_DESIGNS:
        codes = get_design(name).codes()
        for first, second in INTERACTIONS:
            codes["%s*%s" % (first, second)] = codes[first] * codes[second]
        codes["design"] = name
        rows.append(codes)
    return pd.DataFrame(rows).set_index("design")


def factorial_effects(
    responses: pd.DataFrame, measures: Sequence[str] = ("mean", "final")
) -> pd.DataFrame:
    """
    Main effects and two-way interactions of the design factors.

    Responses of the non-factorial designs are ignored. Each problem is a
    block: responses are centred within their problem before pooling, and
    an effect is mean(response | code = +1) - mean(response | code = -1).

    :param responses: one row per (design, problem) with the measures
    :return: one row per effect, a ``<measure>_effect`` column per measure
    """
    frame = responses[responses["design"].isin(FACTORIAL_DESIGNS)]
    problems = sorted(responses["problem"].unique())
    have = set(zip(frame["design"], frame["problem"]))
    missing = [
        (design, problem)
        for problem in problems
        for design in FACTORIAL_DESIGNS
        if (design, problem) not in have
    ]
    if missing or not problems:
        raise IncompleteMatrix(missing or ["(no problems)"])

    codes = design_codes()
    frame = frame.join(codes, on="design")
    effects = list(MAIN_FACTORS) + [
        "%s*%s" % pair for pair in INTERACTIONS
    ]
    result = pd.DataFrame({"factor": effects})
    for measure in measures:
        centred = frame[measure] - frame.groupby("problem")[
            measure
        ].transform("mean")
        column = []
        for effect in effects:
            high = centred[frame[effect] == 1].mean()
            low = centred[frame[effect] == -1].mean()
            column.append(float(high - low))
        result["%s_effect" % measure] = column
    log.debug("Factorial effects over %d problems", len(problems))
    return result
