import numpy as np
import pytest

from rfid_sampler import TagState, generate_population, run_random_select
from rfid_sampler.baselines import naive_threshold_bits, naive_threshold_commands
from rfid_sampler.selgen import SELECT_FIXED_BITS, commands_bit_cost, selgen_commands


def test_random_select_counts_and_cost():
    pop = generate_population([(20, 5), (30, 7)], rng_seed=2)
    reports = run_random_select(pop, np.random.default_rng(1))
    assert [r.commands for r in reports] == [5, 7]
    assert [r.bits for r in reports] == [5 * (SELECT_FIXED_BITS + 96), 7 * (SELECT_FIXED_BITS + 96)]
    for spec, report in zip(pop.categories, reports):
        assert sorted(o for _, o in report.ready) == list(range(1, spec.c + 1))
    ready = [t for t in pop.tags if t.state is TagState.READY]
    assert len(ready) == 12


def test_random_select_distinct_picks():
    pop = generate_population([(10, 10)], rng_seed=8)
    (report,) = run_random_select(pop, np.random.default_rng(0))
    assert len({tid for tid, _ in report.ready}) == 10


def test_naive_enumeration_matches_same_range():
    cmds = naive_threshold_commands(5, 3)
    assert [c.mask for c in cmds] == ["000", "001", "010", "011", "100", "101"]
    assert naive_threshold_bits(5, 3) == 6 * (SELECT_FIXED_BITS + 3)


def test_prefix_merging_always_at_most_naive():
    for width in range(1, 10):
        for tau in range(1 << width):
            merged = commands_bit_cost(selgen_commands(tau, width, pointer=0))
            assert merged <= naive_threshold_bits(tau, width)


def test_naive_validation():
    with pytest.raises(ValueError):
        naive_threshold_commands(8, 3)
