"""
Raw objective functions of the benchmark suite.

Every function here is written as a minimisation and built by a factory so
that per-problem constants (the linear system, Ackley's parameters, the
power-sum targets) are bound once when the suite is loaded. Terms are
arranged so that analytic minima evaluate to exactly 0.0 in floating point,
e.g. Rastrigin is summed as ``x**2 + 10 * (1 - cos(2 pi x))``.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from etvea.custom_exceptions import UnknownProblem

RawFunction = Callable[[np.ndarray], float]

_FOXHOLE_GRID = np.array([-32.0, -16.0, 0.0, 16.0, 32.0])
FOXHOLE_CENTRES = np.array(
    [np.tile(_FOXHOLE_GRID, 5), np.repeat(_FOXHOLE_GRID, 5)]
)
FOXHOLE_WEIGHTS = np.arange(1, 26, dtype=float)

WATSON_POINTS = np.arange(1, 30, dtype=float) / 29.0


def make_foxholes(data: Optional[np.ndarray] = None) -> RawFunction:
    def foxholes(x):
        diff = x[:, np.newaxis] - FOXHOLE_CENTRES
        inner = FOXHOLE_WEIGHTS + np.sum(diff**6, axis=0)
        return float(1.0 / (0.002 + np.sum(1.0 / inner)))

    return foxholes


def make_rastrigin(data: Optional[np.ndarray] = None) -> RawFunction:
    def rastrigin(x):
        return float(np.sum(x**2 + 10.0 * (1.0 - np.cos(2.0 * np.pi * x))))

    return rastrigin


def make_schwefel(data: Optional[np.ndarray] = None) -> RawFunction:
    def schwefel(x):
        return float(-np.sum(x * np.sin(np.sqrt(np.abs(x)))))

    return schwefel


def make_griewank(data: Optional[np.ndarray] = None) -> RawFunction:
    def griewank(x):
        index = np.arange(1, len(x) + 1, dtype=float)
        product = np.prod(np.cos(x / np.sqrt(index)))
        return float(np.sum(x**2) / 4000.0 + (1.0 - product))

    return griewank


def make_bohachevsky(data: Optional[np.ndarray] = None) -> RawFunction:
    def bohachevsky(x):
        x1, x2 = x
        return float(
            x1**2
            + 2.0 * x2**2
            + 0.3 * (1.0 - np.cos(3.0 * np.pi * x1))
            + 0.4 * (1.0 - np.cos(4.0 * np.pi * x2))
        )

    return bohachevsky


def watson_residuals(x: np.ndarray) -> np.ndarray:
    """
    The 31 residuals of Watson's function for any number of variables:
    29 polynomial-fit residuals at t = i/29 plus the two anchoring terms.
    """
    n = len(x)
    powers = WATSON_POINTS[:, np.newaxis] ** np.arange(n)
    derivative = powers[:, : n - 1] @ (np.arange(1, n) * x[1:])
    value = powers @ x
    fitted = derivative - value**2 - 1.0
    return np.concatenate([fitted, [x[0], x[1] - x[0] ** 2 - 1.0]])


def make_watson(data: Optional[np.ndarray] = None) -> RawFunction:
    def watson(x):
        return float(np.sum(watson_residuals(x) ** 2))

    return watson


def make_colville(data: Optional[np.ndarray] = None) -> RawFunction:
    def colville(x):
        x1, x2, x3, x4 = x
        return float(
            100.0 * (x1**2 - x2) ** 2
            + (x1 - 1.0) ** 2
            + (x3 - 1.0) ** 2
            + 90.0 * (x3**2 - x4) ** 2
            + 10.1 * ((x2 - 1.0) ** 2 + (x4 - 1.0) ** 2)
            + 19.8 * (x2 - 1.0) * (x4 - 1.0)
        )

    return colville


def make_linear_system(data: np.ndarray) -> RawFunction:
    matrix = np.asarray(data, dtype=float)
    # b = A . 1, so the all-ones vector solves the system
    rhs = matrix @ np.ones(matrix.shape[1])

    def linear_system(x):
        return float(np.sum(np.abs(matrix @ x - rhs)))

    return linear_system


def make_ackley(data: np.ndarray) -> RawFunction:
    a, b = float(data[0]), float(data[1])
    c = 2.0 * np.pi

    def ackley(x):
        spread = np.sqrt(np.mean(x**2))
        ripple = np.mean(np.cos(c * x))
        return float((a - a * np.exp(-b * spread)) + (np.e - np.exp(ripple)))

    return ackley


def make_neumaier2(data: np.ndarray) -> RawFunction:
    targets = np.asarray(data, dtype=float)
    exponents = np.arange(1, len(targets) + 1, dtype=float)

    def neumaier2(x):
        sums = np.sum(x[np.newaxis, :] ** exponents[:, np.newaxis], axis=1)
        return float(np.sum((targets - sums) ** 2))

    return neumaier2


FACTORIES = {
    "foxholes": make_foxholes,
    "rastrigin": make_rastrigin,
    "schwefel": make_schwefel,
    "griewank": make_griewank,
    "bohachevsky": make_bohachevsky,
    "watson": make_watson,
    "colville": make_colville,
    "linear_system": make_linear_system,
    "ackley": make_ackley,
    "neumaier2": make_neumaier2,
}


def build_function(name: str, data: Optional[np.ndarray]) -> RawFunction:
    try:
        factory = FACTORIES[name]
    except KeyError:
        raise UnknownProblem("No objective function named %s" % name)
    return factory(data)
