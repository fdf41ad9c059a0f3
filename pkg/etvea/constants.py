"""
Constants for etvea
"""

CREDIT_DIRECT = "direct"
CREDIT_ETV = "ETV"
CREDIT_NONE = "none"

INTERPRETATION_AVERAGE = "I:1"
INTERPRETATION_OUTLIER = "I:3"
INTERPRETATION_NONE = "none"

FACTOR_OUTLIER = "I:3"
FACTOR_DIVERSITY = "Div"
FACTOR_ETV = "ETV"
MAIN_FACTORS = (FACTOR_OUTLIER, FACTOR_DIVERSITY, FACTOR_ETV)
INTERACTIONS = (
    (FACTOR_OUTLIER, FACTOR_DIVERSITY),
    (FACTOR_OUTLIER, FACTOR_ETV),
    (FACTOR_DIVERSITY, FACTOR_ETV),
)

MEASURE_MEAN = "Mean"
MEASURE_FINAL = "Final"

# Frozen CSV header rows, see doc/file_formats.rst
RESULTS_HEADER = ["design", "problem", "run", "checkpoint", "best_fitness"]
SCORES_HEADER = ["design", "problem", "checkpoint", "score"]
SUMMARY_HEADER = ["design", "problem", "mean", "final"]
EFFECTS_HEADER = ["factor", "mean_effect", "final_effect"]
BOXPLOT_HEADER = ["design", "measure", "problem", "score"]
FAILED_HEADER = ["design", "problem", "run", "error"]

RESULTS_FILE = "results.csv"
SCORES_FILE = "scores.csv"
SUMMARY_FILE = "summary.csv"
EFFECTS_FILE = "effects.csv"
BOXPLOT_FILE = "boxplot.csv"
FAILED_FILE = "failed_cells.csv"
CONFIG_FILE = "config.json"
RUNS_DIR = "runs"
EVENTS_DIR = "events"
