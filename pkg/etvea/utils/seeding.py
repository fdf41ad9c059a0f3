"""
Per-run seed derivation.

Every run of the matrix gets its own stream, derived from the base seed and
the run's (design, problem, run) coordinates only, so adding or removing
cells never shifts the stream of another run.
"""

import numpy as np


def derive_run_seed(
    base_seed: int, design_index: int, problem_index: int, run_index: int
) -> int:
    """
    A stable 64-bit seed for one run of the matrix.
    """
    sequence = np.random.SeedSequence(
        base_seed, spawn_key=(design_index, problem_index, run_index)
    )
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)
