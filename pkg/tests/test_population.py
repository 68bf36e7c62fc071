import numpy as np
import pytest

from rfid_sampler import (
    ConfigurationError,
    TagState,
    category_tags,
    generate_population,
    mark_missing,
)


def test_sizes_and_partition():
    pop = generate_population([(10, 3), (25, 5)], rng_seed=1)
    assert pop.size == 35
    assert [s.n for s in pop.categories] == [10, 25]
    assert [s.c for s in pop.categories] == [3, 5]
    assert len(category_tags(pop, 1)) == 10
    assert len(category_tags(pop, 2)) == 25


def test_ids_unique_and_96_bit():
    pop = generate_population([(500, 1)], rng_seed=3)
    ids = [t.id for t in pop.tags]
    assert len(set(ids)) == len(ids)
    assert all(0 <= i < (1 << 96) for i in ids)


def test_deterministic_in_seed():
    a = generate_population([(50, 2), (50, 2)], rng_seed=42)
    b = generate_population([(50, 2), (50, 2)], rng_seed=42)
    c = generate_population([(50, 2), (50, 2)], rng_seed=43)
    assert [t.id for t in a.tags] == [t.id for t in b.tags]
    assert [t.id for t in a.tags] != [t.id for t in c.tags]


def test_category_tags_sorted_by_id():
    pop = generate_population([(30, 1)], rng_seed=9)
    ids = [t.id for t in category_tags(pop, 1)]
    assert ids == sorted(ids)


def test_unknown_category_raises():
    pop = generate_population([(5, 1)], rng_seed=0)
    with pytest.raises(KeyError):
        category_tags(pop, 7)


@pytest.mark.parametrize("sizes", [[(3, 4)], [(0, 0)], []])
def test_invalid_specs_rejected(sizes):
    with pytest.raises(ConfigurationError):
        generate_population(sizes, rng_seed=0)


def test_states_start_unacknowledged_and_reset():
    pop = generate_population([(8, 2)], rng_seed=5)
    assert all(t.state is TagState.UNACKNOWLEDGED for t in pop.tags)
    pop.tags[0].state = TagState.READY
    pop.tags[0].cnt = 3
    pop.reset_states()
    assert pop.tags[0].state is TagState.UNACKNOWLEDGED
    assert pop.tags[0].cnt == 0


def test_mark_missing_rates():
    pop = generate_population([(2000, 1)], rng_seed=11)
    mark_missing(pop, [0.25], rng_seed=12)
    frac = sum(t.missing for t in pop.tags) / pop.size
    assert abs(frac - 0.25) < 0.05  # 4 sigma is ~0.039 at n=2000


def test_mark_missing_validation():
    pop = generate_population([(4, 1), (4, 1)], rng_seed=2)
    with pytest.raises(ConfigurationError):
        mark_missing(pop, [0.5], rng_seed=0)
    with pytest.raises(ConfigurationError):
        mark_missing(pop, [0.5, 1.0], rng_seed=0)
