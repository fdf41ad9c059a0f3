"""
Experiment orchestration: the design x problem x run matrix.

Every cell (design, problem, run) is an independent seeded run. Runs may
execute in a pool of worker processes; the parent process alone writes the
per-run logs and the matrix-level tables.
"""

from __future__ import annotations

import dataclasses
import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import pandas as pd

from etvea import config
from etvea.constants import (
    CONFIG_FILE,
    EVENTS_DIR,
    FAILED_FILE,
    FAILED_HEADER,
    RESULTS_FILE,
    RESULTS_HEADER,
    RUNS_DIR,
)
from etvea.custom_exceptions import (
    BadConfig,
    OutputNotWritable,
    RunFailed,
)
from etvea.design import DESIGN_NAMES, design_index, get_design
from etvea.ea import EAParameters, EvolutionaryAlgorithm
from etvea.problems import get_problem, get_problems
from etvea.run_record import RunRecord
from etvea.utils.event_log import EventLog
from etvea.utils.seeding import derive_run_seed

log: logging.Logger = logging.getLogger(__name__)

PARAMETER_FIELDS = [f.name for f in dataclasses.fields(EAParameters)]


@dataclass(frozen=True)
class ExperimentConfig:
    """
    Everything needed to reproduce an experiment.

    Loaded from flat JSON whose keys are the field names below; any field
    of EAParameters may be given at the top level as well.
    """

    problems: Tuple[str, ...] = field(
        default_factory=lambda: tuple(get_problems().keys())
    )
    designs: Tuple[str, ...] = tuple(DESIGN_NAMES)
    runs: int = config.RUNS
    generations: int = config.GENERATIONS
    checkpoint_interval: int = config.CHECKPOINT_INTERVAL
    seed: int = config.BASE_SEED
    out: str = "results"
    threads: int = config.THREADS
    event_log: bool = False
    parameters: EAParameters = field(default_factory=EAParameters)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ExperimentConfig":
        own = {f.name for f in dataclasses.fields(cls)} - {"parameters"}
        unknown = sorted(set(data) - own - set(PARAMETER_FIELDS))
        if unknown:
            raise BadConfig("Unknown configuration keys: %s" % unknown)
        kwargs = {k: v for k, v in data.items() if k in own}
        for key in ("problems", "designs"):
            if key in kwargs:
                kwargs[key] = tuple(kwargs[key])
        parameters = {k: v for k, v in data.items() if k in PARAMETER_FIELDS}
        return cls(parameters=EAParameters(**parameters), **kwargs)

    @classmethod
    def from_file(cls, path: str) -> "ExperimentConfig":
        try:
            with open(path, encoding="utf-8") as handle:
                data = json.load(handle)
        except (OSError, ValueError) as err:
            raise BadConfig("Cannot read config %s: %s" % (path, err))
        if not isinstance(data, dict):
            raise BadConfig("Config %s is not a JSON object" % path)
        return cls.from_dict(data)

    @property
    def adaptation_interval(self) -> int:
        return self.parameters.adaptation_interval

    @property
    def stopping_points(self) -> int:
        return self.generations // self.checkpoint_interval

    def with_overrides(self, **overrides) -> "ExperimentConfig":
        """
        A copy with every override that is not None applied.
        """
        given = {k: v for k, v in overrides.items() if v is not None}
        parameters = {
            k: given.pop(k) for k in list(given) if k in PARAMETER_FIELDS
        }
        unknown = set(given) - {f.name for f in dataclasses.fields(self)}
        if unknown:
            raise BadConfig(
                "Unknown configuration keys: %s" % sorted(unknown)
            )
        for key in ("problems", "designs"):
            if key in given:
                given[key] = tuple(given[key])
        if parameters:
            given["parameters"] = dataclasses.replace(
                self.parameters, **parameters
            )
        return dataclasses.replace(self, **given)

    def validate(self) -> "ExperimentConfig":
        for name in self.designs:
            get_design(name)
        for problem_id in self.problems:
            get_problem(problem_id)
        if not self.designs or not self.problems:
            raise BadConfig("At least one design and one problem are needed")
        if self.runs < 1 or self.generations < 1 or self.threads < 1:
            raise BadConfig("runs, generations and threads must be >= 1")
        if self.checkpoint_interval < 1 or self.adaptation_interval < 1:
            raise BadConfig("Intervals must be >= 1")
        if self.generations % self.checkpoint_interval:
            raise BadConfig(
                "generations (%d) not divisible by checkpoint_interval (%d)"
                % (self.generations, self.checkpoint_interval)
            )
        if self.checkpoint_interval % self.adaptation_interval:
            raise BadConfig(
                "checkpoint_interval (%d) not divisible by "
                "adaptation_interval (%d)"
                % (self.checkpoint_interval, self.adaptation_interval)
            )
        if self.parameters.population_size < 3:
            raise BadConfig("population_size must be at least 3")
        return self

    def to_dict(self) -> Dict[str, Any]:
        data = {
            f.name: getattr(self, f.name)
            for f in dataclasses.fields(self)
            if f.name != "parameters"
        }
        data["problems"] = list(self.problems)
        data["designs"] = list(self.designs)
        data.update(self.parameters.as_dict())
        return data

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


@dataclass(frozen=True)
class Cell:
    design: str
    problem: str
    run: int
    seed: int

    def __str__(self) -> str:
        return "%s/%s/run%02d" % (self.design, self.problem, self.run)

    @property
    def stem(self) -> str:
        return "%s_%s_run%02d" % (self.design, self.problem, self.run)


@dataclass
class ExperimentOutcome:
    out: str
    records: List[RunRecord] = field(default_factory=list)
    failures: List[Tuple[Cell, str]] = field(default_factory=list)

    @property
    def results_path(self) -> str:
        return os.path.join(self.out, RESULTS_FILE)


def matrix_cells(cfg: ExperimentConfig) -> List[Cell]:
    problems = get_problems()
    cells = []
    for design in cfg.designs:
        for problem_id in cfg.problems:
            for run in range(cfg.runs):
                seed = derive_run_seed(
                    cfg.seed,
                    design_index(design),
                    problems.index(problem_id),
                    run,
                )
                cells.append(Cell(design, problem_id, run, seed))
    return cells


def prepare_output(cfg: ExperimentConfig) -> None:
    """
    Create the output tree and make sure it can be written to.
    """
    directories = [cfg.out, os.path.join(cfg.out, RUNS_DIR)]
    if cfg.event_log:
        directories.append(os.path.join(cfg.out, EVENTS_DIR))
    try:
        for directory in directories:
            os.makedirs(directory, exist_ok=True)
        with open(os.path.join(cfg.out, CONFIG_FILE), "w") as handle:
            handle.write(cfg.to_json() + "\n")
    except OSError as err:
        raise OutputNotWritable(
            "Output directory %s is not writable: %s" % (cfg.out, err)
        )


def execute_run(
    cell: Cell,
    parameters: EAParameters,
    generations: int,
    checkpoint_interval: int,
    event_path: Optional[str] = None,
) -> RunRecord:
    """
    Run one cell of the matrix. Executed in worker processes.
    """
    event_log = EventLog(event_path) if event_path else None
    try:
        ea = EvolutionaryAlgorithm(
            get_problem(cell.problem),
            get_design(cell.design),
            parameters,
            seed=cell.seed,
            event_log=event_log,
            run_index=cell.run,
        )
        return ea.run(generations, checkpoint_interval)
    finally:
        if event_log is not None:
            event_log.close()


def _submit_all(cfg: ExperimentConfig, cells: List[Cell]):
    """
    Yield (cell, record or exception) in matrix order.
    """

    def arguments(cell):
        event_path = None
        if cfg.event_log:
            event_path = os.path.join(
                cfg.out, EVENTS_DIR, cell.stem + ".events.jsonl"
            )
        return (
            cell,
            cfg.parameters,
            cfg.generations,
            cfg.checkpoint_interval,
            event_path,
        )

    if cfg.threads == 1:
        for cell in cells:
            try:
                yield cell, execute_run(*arguments(cell))
            except Exception as err:
                yield cell, err
        return

    with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
        futures = [
            (cell, pool.submit(execute_run, *arguments(cell)))
            for cell in cells
        ]
        for cell, future in futures:
            try:
                yield cell, future.result()
            except Exception as err:
                yield cell, err


def run_experiment(cfg: ExperimentConfig) -> ExperimentOutcome:
    """
    Run every cell of the matrix described by cfg and write its results.
    """
    cfg.validate()
    prepare_output(cfg)
    cells = matrix_cells(cfg)
    log.info(
        "Running %d cells (%d designs x %d problems x %d runs) into %s",
        len(cells),
        len(cfg.designs),
        len(cfg.problems),
        cfg.runs,
        cfg.out,
    )
    outcome = ExperimentOutcome(cfg.out)
    for cell, result in _submit_all(cfg, cells):
        if isinstance(result, Exception):
            failure = RunFailed("%s failed: %r" % (cell, result))
            log.error("%s", failure)
            outcome.failures.append((cell, repr(result)))
            continue
        result.write_jsonl(
            os.path.join(cfg.out, RUNS_DIR, cell.stem + ".jsonl")
        )
        outcome.records.append(result)

    write_results(outcome)
    log.info(
        "Wrote %d runs to %s, %d failed",
        len(outcome.records),
        outcome.results_path,
        len(outcome.failures),
    )
    return outcome


def write_results(outcome: ExperimentOutcome) -> None:
    rows = [row for record in outcome.records for row in record.result_rows()]
    pd.DataFrame(rows, columns=RESULTS_HEADER).to_csv(
        outcome.results_path, index=False
    )
    failed_path = os.path.join(outcome.out, FAILED_FILE)
    if outcome.failures:
        pd.DataFrame(
            [
                [cell.design, cell.problem, cell.run, error]
                for cell, error in outcome.failures
            ],
            columns=FAILED_HEADER,
        ).to_csv(failed_path, index=False)
    elif os.path.exists(failed_path):
        os.remove(failed_path)
