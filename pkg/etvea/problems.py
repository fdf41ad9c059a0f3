"""
This module implements the Problems class, a container-like interface to the
ten benchmark problems shipped in ``etvea/data``.

The problem table is plain CSV so that other implementations can load
identical instances; see doc/file_formats.rst for the column contract.
"""

from __future__ import annotations

import os
import logging
from functools import lru_cache
from typing import Callable, Dict, Iterator, Optional, Tuple

import numpy as np
import pandas as pd
from scipy.optimize import least_squares, minimize

from etvea.custom_exceptions import BadConfig, UnknownProblem
from etvea.functions import RawFunction, build_function, watson_residuals
from etvea.problem import Bounds, ProblemSpec, make_spec

log: logging.Logger = logging.getLogger(__name__)

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")
PROBLEM_TABLE = os.path.join(DATA_DIR, "problems.csv")

SHIFT_AT_OPTIMIZER = "at_optimizer"
OPTIMIZER_SOLVE = "solve"

FOXHOLES_START = -32.0


def _watson_point(raw: RawFunction, bounds: Bounds) -> np.ndarray:
    start = np.clip(np.zeros(len(bounds)), bounds.lower, bounds.upper)
    fit = least_squares(
        watson_residuals,
        start,
        bounds=(bounds.lower, bounds.upper),
        xtol=1e-15,
        ftol=1e-15,
        gtol=1e-15,
        max_nfev=10000,
    )
    return fit.x


def _foxholes_point(raw: RawFunction, bounds: Bounds) -> np.ndarray:
    # the first hole's minimum sits just inside (-32, -32)
    start = np.full(len(bounds), FOXHOLES_START)
    fit = minimize(
        raw,
        start,
        method="Nelder-Mead",
        bounds=list(zip(bounds.lower, bounds.upper)),
        options={"xatol": 1e-12, "fatol": 1e-16, "maxiter": 20000},
    )
    if raw(fit.x) > raw(start):
        return start
    return fit.x


# Reference points that have no closed form are refined numerically
SOLVERS: Dict[str, Callable[[RawFunction, Bounds], np.ndarray]] = {
    "watson": _watson_point,
    "foxholes": _foxholes_point,
}


def _parse_vector(text: str, dims: int) -> np.ndarray:
    values = np.array([float(v) for v in str(text).split(";")])
    if len(values) == 1:
        return np.full(dims, values[0])
    if len(values) != dims:
        raise BadConfig(
            "Vector %r does not have %d components" % (text, dims)
        )
    return values


def _load_data(text: str) -> Optional[np.ndarray]:
    if not text:
        return None
    if text.endswith(".csv"):
        return np.loadtxt(os.path.join(DATA_DIR, text), delimiter=",")
    return np.array([float(v) for v in text.split(";")])


def _solve_optimizer(
    function: str, raw: RawFunction, bounds: Bounds
) -> np.ndarray:
    try:
        solver = SOLVERS[function]
    except KeyError:
        raise BadConfig("No reference point solver for %r" % function)
    point = np.asarray(solver(raw, bounds), dtype=float)
    log.debug("Refined %s reference point: %s", function, point)
    return point


def _spec_from_row(row: pd.Series) -> ProblemSpec:
    dims = int(row["dims"])
    bounds = Bounds(
        _parse_vector(row["lower"], dims), _parse_vector(row["upper"], dims)
    )
    raw = build_function(row["function"], _load_data(row["data"]))
    if row["optimizer"] == OPTIMIZER_SOLVE:
        optimizer = _solve_optimizer(row["function"], raw, bounds)
    else:
        optimizer = _parse_vector(row["optimizer"], dims)
    if row["optimum_shift"] == SHIFT_AT_OPTIMIZER:
        shift = None
    else:
        shift = float(row["optimum_shift"])
    return make_spec(
        row["id"],
        row["name"],
        bounds,
        raw,
        optimizer,
        shift,
        float(row["success_threshold"]),
    )


class Problems(object):
    """
    This class provides a container-like API which gives
    access to all benchmark problems, keyed by id (F1..F10).
    """

    def __init__(self, table_path: str = PROBLEM_TABLE) -> None:
        self.table_path: str = table_path
        table = pd.read_csv(table_path, dtype=str, keep_default_na=False)
        self._specs = {}
        for _, row in table.iterrows():
            spec = _spec_from_row(row)
            self._specs[spec.problem_id] = spec
        log.debug("Loaded %d problems from %s", len(self), table_path)

    def __str__(self) -> str:
        return "Problems @ %s" % self.table_path

    def __repr__(self) -> str:
        return "<%s.%s %s>" % (
            self.__class__.__module__,
            self.__class__.__name__,
            str(self),
        )

    def __len__(self) -> int:
        return len(self._specs)

    def __contains__(self, problem_id: str) -> bool:
        return problem_id in self._specs

    def __getitem__(self, problem_id: str) -> ProblemSpec:
        try:
            return self._specs[problem_id]
        except KeyError:
            raise UnknownProblem(problem_id)

    def __iter__(self) -> Iterator[ProblemSpec]:
        return iter(self._specs.values())

    def keys(self) -> list[str]:
        return list(self._specs.keys())

    def values(self) -> list[ProblemSpec]:
        return list(self._specs.values())

    def iteritems(self) -> Iterator[Tuple[str, ProblemSpec]]:
        for problem_id, spec in self._specs.items():
            yield problem_id, spec

    def index(self, problem_id: str) -> int:
        """
        Position of a problem in the suite; stable across subsets.
        """
        if problem_id not in self:
            raise UnknownProblem(problem_id)
        return self.keys().index(problem_id)


@lru_cache(maxsize=None)
def get_problems() -> Problems:
    return Problems()


def get_problem(problem_id: str) -> ProblemSpec:
    return get_problems()[problem_id]
