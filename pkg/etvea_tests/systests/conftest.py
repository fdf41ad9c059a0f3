import logging
import os

import pytest

from etvea.experiment import ExperimentConfig, run_experiment

log = logging.getLogger(__name__)

FULL_MATRIX = "ETVEA_FULL_MATRIX"


def pytest_collection_modifyitems(config, items):
    if os.environ.get(FULL_MATRIX):
        return
    skip = pytest.mark.skip(reason="set %s=1 to run" % FULL_MATRIX)
    for item in items:
        if "full_matrix" in item.keywords:
            item.add_marker(skip)


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "full_matrix: runs the complete 9 x 10 x 10 experiment"
    )


@pytest.fixture(scope="session")
def small_experiment(tmp_path_factory):
    out = tmp_path_factory.mktemp("experiment")
    cfg = ExperimentConfig(
        problems=("F5", "F7"),
        runs=3,
        generations=200,
        checkpoint_interval=100,
        out=str(out),
        threads=2,
    )
    log.info("Running small experiment into %s", out)
    run_experiment(cfg)
    return cfg
