"""
About this library
==================

etvea is a real-coded evolutionary algorithm whose search operator
probabilities adapt while it runs. How useful an operator is can be
measured directly, by whether its offspring survive, or by its Event
Takeover Value: the credit an operator application (an event) earns from
every surviving solution that descends from it, decayed with genealogical
distance.

This library can help you:

 * Optimise any of ten bounded real-valued benchmark problems
 * Compare direct and genealogical credit assignment
 * Compare average and outlier based interpretation of measurements
 * Run the nine-design experiment matrix with seeded, reproducible runs
 * Score designs against each other with one-sided Mann-Whitney tests
 * Estimate factorial main effects and interactions of the design choices

Installing etvea
================

pip install etvea

Project Authors
===============

 * The etvea developers

"""

from importlib.metadata import version

from etvea import (
    adaptation,
    analysis,
    config,
    constants,
    credit,
    custom_exceptions,
    design,
    ea,
    experiment,
    functions,
    genealogy,
    individual,
    operators,
    problem,
    problems,
    run_record,
    stats,
)

__all__ = [
    "command_line",
    "utils",
    "adaptation",
    "analysis",
    "config",
    "constants",
    "credit",
    "custom_exceptions",
    "design",
    "ea",
    "experiment",
    "functions",
    "genealogy",
    "individual",
    "operators",
    "problem",
    "problems",
    "run_record",
    "stats",
]
__docformat__ = "epytext"
__version__ = version("etvea")
