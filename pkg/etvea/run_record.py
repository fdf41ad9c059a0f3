"""
Module for etvea RunRecord
"""

from __future__ import annotations

import datetime
import json
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import pytz


def utc_timestamp(seconds: Optional[float] = None) -> datetime.datetime:
    """
    A timezone-aware UTC datetime for ``seconds`` since the epoch (now by
    default).
    """
    if seconds is None:
        seconds = time.time()
    naive_timestamp = datetime.datetime(*time.gmtime(seconds)[:6])
    return pytz.utc.localize(naive_timestamp)


@dataclass
class RunRecord:
    """
    The outcome of one seeded run of one design on one problem.
    """

    design: str
    problem: str
    run: int
    seed: int
    generations: int = 0
    checkpoints: List[Tuple[int, float]] = field(default_factory=list)
    portfolio_history: List[Tuple[int, Dict[int, float]]] = field(
        default_factory=list
    )
    best_fitness: float = float("-inf")
    best_genome: Optional[List[float]] = None
    solved_at: Optional[int] = None
    initial_best: float = float("-inf")
    started_at: datetime.datetime = field(default_factory=utc_timestamp)
    parameters: Dict[str, Any] = field(default_factory=dict)

    def __str__(self) -> str:
        return "%s on %s run %d: best %.6g" % (
            self.design,
            self.problem,
            self.run,
            self.best_fitness,
        )

    def best_at(self, generation: int) -> float:
        for checkpoint, fitness in self.checkpoints:
            if checkpoint == generation:
                return fitness
        raise KeyError(generation)

    def result_rows(self) -> List[List[Any]]:
        """
        Rows of the matrix-level results table contributed by this run.
        """
        return [
            [self.design, self.problem, self.run, generation, fitness]
            for generation, fitness in self.checkpoints
        ]

    def to_jsonl_lines(self) -> List[str]:
        lines = [
            {
                "kind": "header",
                "design": self.design,
                "problem": self.problem,
                "run": self.run,
                "seed": self.seed,
                "started_at": self.started_at.isoformat(),
                "parameters": self.parameters,
            }
        ]
        timeline = [
            (generation, 0, {"kind": "checkpoint", "best_fitness": best})
            for generation, best in self.checkpoints
        ] + [
            (
                generation,
                1,
                {
                    "kind": "portfolio",
                    "probabilities": {
                        str(op): p for op, p in sorted(probabilities.items())
                    },
                },
            )
            for generation, probabilities in self.portfolio_history
        ]
        for generation, _, record in sorted(
            timeline, key=lambda item: item[:2]
        ):
            lines.append(dict(generation=generation, **record))
        lines.append(
            {
                "kind": "final",
                "generations": self.generations,
                "best_fitness": self.best_fitness,
                "best_genome": self.best_genome,
                "solved_at": self.solved_at,
            }
        )
        return [json.dumps(line) for line in lines]

    def write_jsonl(self, path: str) -> None:
        with open(path, "w", encoding="utf-8") as handle:
            for line in self.to_jsonl_lines():
                handle.write(line + "\n")
