"""Deterministic random generation of formulas, instances, and valuations."""

import random

from mmv import core
from mmv.randgen import metavariables, random_formula, random_instance, random_valuation
from mmv.syntax import is_modalized, match_schema, parse, schema, variables


def test_same_seed_same_stream():
    first = [random_formula(random.Random(42), max_depth=4) for _ in range(5)]
    second = [random_formula(random.Random(42), max_depth=4) for _ in range(5)]
    assert first == second


def test_variables_come_from_the_requested_pool():
    rng = random.Random(0)
    for _ in range(100):
        formula = random_formula(rng, names=("x", "y"), max_depth=3)
        assert set(variables(formula)) <= {"x", "y"}


def test_modalized_formulas_are_world_independent():
    rng = random.Random(1)
    for _ in range(200):
        formula = random_formula(rng, max_depth=3, modalized=True)
        assert is_modalized(formula)


def test_metavariables_in_first_occurrence_order():
    pattern = schema("phi -> (psi -> phi)")
    assert [mv.name for mv in metavariables(pattern)] == ["phi", "psi"]


def test_random_instance_matches_its_schema():
    k_box = schema("[](nu -> phi) -> (nu -> []phi)", modalized=("nu",))
    rng = random.Random(2)
    for _ in range(100):
        instance = random_instance(rng, k_box, names=("p", "q"), max_depth=2)
        binding = match_schema(k_box, instance)
        assert binding is not None
        assert is_modalized(binding["nu"])


def test_random_valuation_lands_in_the_power():
    rng = random.Random(3)
    valuation = random_valuation(rng, ("p", "q"), m=3, n=2)
    assert set(valuation) == {"p", "q"}
    for value in valuation.values():
        assert core.in_power(value, 3, 2)


def test_instances_of_plain_schema_need_no_side_conditions():
    luk2 = schema("(phi -> psi) -> ((psi -> chi) -> (phi -> chi))")
    rng = random.Random(4)
    instance = random_instance(rng, luk2, names=("p", "q", "r"), max_depth=2)
    assert match_schema(luk2, instance) is not None
