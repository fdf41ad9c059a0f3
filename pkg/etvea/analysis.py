"""
Turn a results table into the comparison tables.

``analyze`` reads ``results.csv`` from an experiment directory and writes
the per-stopping-point confidence scores, the Mean/Final summary, the
factorial effects and the boxplot inputs. Rewrites are idempotent.
"""

from __future__ import annotations

import json
import logging
import os
from typing import Dict, Optional

import pandas as pd

from etvea.constants import (
    BOXPLOT_FILE,
    BOXPLOT_HEADER,
    CONFIG_FILE,
    EFFECTS_FILE,
    EFFECTS_HEADER,
    MEASURE_FINAL,
    MEASURE_MEAN,
    RESULTS_FILE,
    SCORES_FILE,
    SCORES_HEADER,
    SUMMARY_FILE,
    SUMMARY_HEADER,
)
from etvea.custom_exceptions import IncompleteMatrix, NoResults
from etvea.design import DESIGN_NAMES, FACTORIAL_DESIGNS
from etvea.stats import (
    confidence_scores,
    factorial_effects,
    mean_final_measures,
)

log: logging.Logger = logging.getLogger(__name__)

PLOT_FILES = {
    MEASURE_MEAN: "boxplot_mean.png",
    MEASURE_FINAL: "boxplot_final.png",
}


def load_results(in_dir: str) -> pd.DataFrame:
    path = os.path.join(in_dir, RESULTS_FILE)
    if not os.path.isfile(path):
        raise NoResults("no results found in %s" % in_dir)
    try:
        results = pd.read_csv(path)
    except pd.errors.EmptyDataError:
        raise NoResults("no results found in %s" % in_dir)
    if results.empty:
        raise NoResults("no results found in %s" % in_dir)
    return results


def _expected_stopping_points(in_dir: str, results: pd.DataFrame) -> int:
    path = os.path.join(in_dir, CONFIG_FILE)
    if os.path.isfile(path):
        with open(path, encoding="utf-8") as handle:
            cfg = json.load(handle)
        return int(cfg["generations"]) // int(cfg["checkpoint_interval"])
    return results["checkpoint"].nunique()


def _ordered(names, order):
    def position(name):
        return (order.index(name) if name in order else len(order), name)

    return sorted(names, key=position)


def check_complete(results: pd.DataFrame) -> None:
    """
    Every (design, problem, run, checkpoint) combination seen anywhere in
    the table must be present.
    """
    have = set(
        zip(
            results["design"],
            results["problem"],
            results["run"],
            results["checkpoint"],
        )
    )
    missing = [
        (design, problem, run, checkpoint)
        for design in results["design"].unique()
        for problem in results["problem"].unique()
        for run in sorted(results["run"].unique())
        for checkpoint in sorted(results["checkpoint"].unique())
        if (design, problem, run, checkpoint) not in have
    ]
    if missing:
        raise IncompleteMatrix(missing)


def score_table(results: pd.DataFrame) -> pd.DataFrame:
    designs = _ordered(results["design"].unique(), DESIGN_NAMES)
    rows = []
    for (problem, checkpoint), group in results.groupby(
        ["problem", "checkpoint"], sort=True
    ):
        samples = {
            design: list(sample["best_fitness"])
            for design, sample in group.groupby("design")
        }
        scores = confidence_scores(samples, designs)
        for design in designs:
            rows.append([design, problem, int(checkpoint), scores[design]])
    return pd.DataFrame(rows, columns=SCORES_HEADER)


def summary_table(scores: pd.DataFrame, expected_points: int) -> pd.DataFrame:
    rows = []
    for (design, problem), group in scores.groupby(
        ["design", "problem"], sort=False
    ):
        mean, final = mean_final_measures(
            dict(zip(group["checkpoint"], group["score"])), expected_points
        )
        rows.append([design, problem, mean, final])
    return pd.DataFrame(rows, columns=SUMMARY_HEADER)


def effects_table(summary: pd.DataFrame) -> Optional[pd.DataFrame]:
    present = set(summary["design"])
    if not set(FACTORIAL_DESIGNS) <= present:
        log.warning(
            "Skipping factorial effects, missing designs: %s",
            sorted(set(FACTORIAL_DESIGNS) - present),
        )
        return None
    effects = factorial_effects(summary, measures=("mean", "final"))
    return effects[EFFECTS_HEADER]


def boxplot_table(summary: pd.DataFrame) -> pd.DataFrame:
    rows = []
    for measure, column in ((MEASURE_MEAN, "mean"), (MEASURE_FINAL, "final")):
        for _, row in summary.iterrows():
            rows.append([row["design"], measure, row["problem"], row[column]])
    return pd.DataFrame(rows, columns=BOXPLOT_HEADER)


def plot_boxplots(boxplot: pd.DataFrame, out_dir: str) -> Dict[str, str]:
    """
    One boxplot figure per measure: a box per design over all problems.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = {}
    designs = _ordered(boxplot["design"].unique(), DESIGN_NAMES)
    for measure, filename in PLOT_FILES.items():
        data = boxplot[boxplot["measure"] == measure]
        fig, ax = plt.subplots(figsize=(8, 4.5))
        ax.boxplot(
            [data[data["design"] == d]["score"].values for d in designs]
        )
        ax.set_xticks(range(1, len(designs) + 1))
        ax.set_xticklabels(designs)
        ax.set_ylim(0, 100)
        ax.set_xlabel("EA design")
        ax.set_ylabel("%s performance (confidence x100)" % measure)
        ax.set_title("%s performance over all problems" % measure)
        path = os.path.join(out_dir, filename)
        fig.savefig(path, bbox_inches="tight")
        plt.close(fig)
        written[measure] = path
    return written


def analyze(
    in_dir: str, out_dir: Optional[str] = None, plot: bool = False
) -> Dict[str, pd.DataFrame]:
    """
    Analyse the experiment in in_dir, writing tables to out_dir (in_dir by
    default).

    :return: the tables written, keyed by file name
    """
    out_dir = out_dir or in_dir
    results = load_results(in_dir)
    check_complete(results)
    os.makedirs(out_dir, exist_ok=True)

    scores = score_table(results)
    summary = summary_table(
        scores, _expected_stopping_points(in_dir, results)
    )
    boxplot = boxplot_table(summary)
    tables = {
        SCORES_FILE: scores,
        SUMMARY_FILE: summary,
        BOXPLOT_FILE: boxplot,
    }
    effects = effects_table(summary)
    if effects is not None:
        tables[EFFECTS_FILE] = effects

    for filename, table in tables.items():
        table.to_csv(os.path.join(out_dir, filename), index=False)
        log.info("Wrote %s", os.path.join(out_dir, filename))
    if plot:
        plot_boxplots(boxplot, out_dir)
    return tables
