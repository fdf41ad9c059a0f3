import logging

import numpy as np
import pytest

from etvea.custom_exceptions import ContractViolation
from etvea.design import get_design
from etvea.ea import (
    EAParameters,
    EvolutionaryAlgorithm,
    cull,
    initialize_population,
    make_portfolio,
    mutation_probability,
    run_generation,
    tournament_pick,
)
from etvea.individual import Individual
from etvea.operators import RANDOM_MUTATION, Differential, WrightHeuristic
from etvea.problems import get_problem
from etvea.utils.event_log import EventLog

SMALL = EAParameters(population_size=10, adaptation_interval=4)


def ind(fitness, genome=None):
    if genome is None:
        genome = [fitness]
    return Individual(np.asarray(genome, dtype=float), fitness)


@pytest.fixture()
def rng():
    return np.random.default_rng(2024)


@pytest.fixture()
def bohachevsky():
    return get_problem("F5")


def test_initial_population_is_unique_and_in_bounds(bohachevsky, rng):
    population = initialize_population(bohachevsky, rng, 30)
    assert len(population) == 30
    assert len({p.key for p in population}) == 30
    for individual in population:
        assert bohachevsky.bounds.contains(individual.genome)
        assert individual.event_id == 0
        assert individual.fitness == bohachevsky.evaluate(individual.genome)


def test_tournament_frequencies(rng):
    pool = [ind(-3.0), ind(-1.0), ind(-2.0)]
    wins = {-3.0: 0, -2.0: 0, -1.0: 0}
    draws = 9000
    for _ in range(draws):
        wins[tournament_pick(pool, rng).fitness] += 1
    assert wins[-1.0] / draws == pytest.approx(5 / 9, abs=0.02)
    assert wins[-2.0] / draws == pytest.approx(3 / 9, abs=0.02)
    assert wins[-3.0] / draws == pytest.approx(1 / 9, abs=0.02)


def test_tournament_ties_are_random(rng):
    pool = [ind(0.0, [1.0]), ind(0.0, [2.0])]
    first = sum(tournament_pick(pool, rng) is pool[0] for _ in range(4000))
    assert first / 4000 == pytest.approx(0.5, abs=0.03)


def test_tournament_on_empty_pool(rng):
    with pytest.raises(ContractViolation):
        tournament_pick([], rng)


def test_cull_returns_distinct_pool_members(rng):
    pool = [ind(float(-i)) for i in range(20)]
    survivors = cull(pool, 10, rng)
    assert len(survivors) == 10
    assert len({id(s) for s in survivors}) == 10
    assert all(any(s is p for p in pool) for s in survivors)


def test_cull_is_not_elitist(rng):
    # the best is lost when neither tournament draws it: (3/4)^2 * (2/3)^2
    best = ind(0.0)
    pool = [best, ind(-1.0), ind(-2.0), ind(-3.0)]
    trials = 4000
    kept = sum(
        any(s is best for s in cull(pool, 2, rng)) for _ in range(trials)
    )
    assert kept / trials == pytest.approx(0.75, abs=0.03)


def test_cull_to_the_same_size_keeps_everyone(rng):
    pool = [ind(-1.0), ind(-2.0)]
    assert cull(pool, 2, rng) == pool


def test_cull_needs_enough_candidates(rng):
    with pytest.raises(ContractViolation):
        cull([ind(0.0)], 2, rng)


def test_mutation_probability_examples():
    assert mutation_probability(0.0) == 1.0
    assert mutation_probability(0.001) == pytest.approx(0.52)
    assert mutation_probability(0.01) == pytest.approx(0.0209766, abs=1e-7)
    assert mutation_probability(10.0) == pytest.approx(0.02)


def test_mutation_probability_never_grows_with_distance(rng):
    distances = np.sort(rng.random(200) * 0.05)
    values = [mutation_probability(d) for d in distances]
    assert all(a >= b for a, b in zip(values, values[1:]))


def test_mutation_probability_arguments():
    with pytest.raises(ContractViolation):
        mutation_probability(-0.1)
    with pytest.raises(ContractViolation):
        mutation_probability(0.1, delta=0.0)


def test_portfolio_operators_depend_on_diversity_control():
    params = EAParameters()
    assert make_portfolio(get_design("EA1"), params).operator_ids == list(
        range(1, 11)
    )
    assert make_portfolio(get_design("EA3"), params).operator_ids == list(
        range(1, 10)
    )
    sga = make_portfolio(get_design("SGA"), params)
    assert sga.fixed
    assert sga.operator_ids == [4]


def test_generation_invariants(bohachevsky):
    ea = EvolutionaryAlgorithm(bohachevsky, get_design("EA8"), SMALL, seed=7)
    before = ea.state.best_fitness
    state = run_generation(ea)
    assert state.generation == 1
    assert len(state.population) == 10
    assert len({p.key for p in state.population}) == 10
    for individual in state.population:
        assert bohachevsky.bounds.contains(individual.genome)
    assert state.best_fitness >= before
    assert max(ea.recorder.operators) == 10


def test_same_seed_same_run(bohachevsky):
    first = EvolutionaryAlgorithm(
        bohachevsky, get_design("EA6"), SMALL, seed=11
    )
    second = EvolutionaryAlgorithm(
        bohachevsky, get_design("EA6"), SMALL, seed=11
    )
    a = first.run(generations=8, checkpoint_interval=4)
    b = second.run(generations=8, checkpoint_interval=4)
    assert a.checkpoints == b.checkpoints
    assert a.best_genome == b.best_genome
    assert a.portfolio_history == b.portfolio_history


def test_run_record_checkpoints(bohachevsky):
    ea = EvolutionaryAlgorithm(bohachevsky, get_design("EA1"), SMALL, seed=3)
    record = ea.run(generations=12, checkpoint_interval=4)
    assert [g for g, _ in record.checkpoints] == [4, 8, 12]
    values = [f for _, f in record.checkpoints]
    assert values == sorted(values)
    assert record.best_fitness == values[-1]
    assert record.generations == 12
    assert len(record.best_genome) == 2
    assert record.parameters["population_size"] == 10


def test_adaptation_history(bohachevsky):
    ea = EvolutionaryAlgorithm(bohachevsky, get_design("EA1"), SMALL, seed=5)
    record = ea.run(generations=12, checkpoint_interval=4)
    assert [g for g, _ in record.portfolio_history] == [4, 8, 12]
    for _, probabilities in record.portfolio_history:
        assert sum(probabilities.values()) == pytest.approx(1.0)
    # the store is purged with every update
    assert ea.credit.measurements() == []


def test_sga_uses_crossover_and_reset_only(bohachevsky):
    ea = EvolutionaryAlgorithm(bohachevsky, get_design("SGA"), SMALL, seed=9)
    ea.run(generations=8, checkpoint_interval=4)
    assert set(ea.recorder.operators.values()) <= {4, RANDOM_MUTATION}
    assert ea.portfolio[4] == 0.98
    assert ea.state.portfolio_history == []


def test_diversity_control_removes_random_mutation_from_adaptation(
    bohachevsky,
):
    ea = EvolutionaryAlgorithm(bohachevsky, get_design("EA7"), SMALL, seed=1)
    ea.run(generations=8, checkpoint_interval=4)
    assert RANDOM_MUTATION not in ea.portfolio
    for _, probabilities in ea.state.portfolio_history:
        assert RANDOM_MUTATION not in probabilities


def test_duplicate_offspring_fall_back_to_random_mutation(
    bohachevsky, mocker, caplog
):
    params = EAParameters(population_size=4, uniqueness_retries=2)
    ea = EvolutionaryAlgorithm(bohachevsky, get_design("EA1"), params)
    parents = ea.population[:2]
    variation = mocker.patch.object(
        ea,
        "_variation",
        return_value=(1, parents, parents[0].genome.copy()),
    )
    seen = {p.key for p in ea.population}
    with caplog.at_level(logging.WARNING, logger="etvea.ea"):
        child = ea._reproduce(seen)
    assert variation.call_count == 3
    assert child.operator_id == RANDOM_MUTATION
    assert child.key not in seen
    assert "no unique offspring" in caplog.text


def test_event_log_receives_every_generation(bohachevsky):
    log = EventLog()
    ea = EvolutionaryAlgorithm(
        bohachevsky, get_design("EA5"), SMALL, seed=2, event_log=log
    )
    ea.run(generations=4, checkpoint_interval=4)
    kinds = [r["kind"] for r in log.records]
    assert kinds.count("event") == 40
    assert kinds.count("survivors") == 4
    assert kinds.count("adapt") == 1
    assert log.records[0]["generation"] == 1


def test_parameters_as_dict():
    params = EAParameters(beta=0.25)
    assert params.as_dict()["beta"] == 0.25
    assert params.as_dict()["population_size"] == 30


@pytest.mark.parametrize("operator_class", [Differential, WrightHeuristic])
def test_multi_parent_operators_get_distinct_parents(mocker, operator_class):
    spy = mocker.spy(operator_class, "apply")
    ea = EvolutionaryAlgorithm(
        get_problem("F2"), get_design("EA5"), SMALL, seed=4
    )
    for _ in range(100):
        ea.run_generation()
    assert spy.call_count > 0
    for call in spy.call_args_list:
        parents = call.args[1]
        assert len({id(p) for p in parents}) == len(parents)


def test_operator_map_is_pruned_at_adaptation(bohachevsky):
    ea = EvolutionaryAlgorithm(bohachevsky, get_design("EA5"), SMALL, seed=6)
    ea.run(generations=12, checkpoint_interval=4)
    live = {
        event_id
        for individual in ea.population
        for event_id in individual.lineage.event_ids
    }
    assert set(ea.recorder.operators) <= live
    assert len(ea.recorder.operators) < ea.recorder.next_id - 1
