"""Synthetic tag populations partitioned into categories.

Tags carry 96-bit IDs whose bits are drawn independently and uniformly at
random, so any substring window is usable as a hash source.  IDs are unique
within a population (collisions are resolved by redraw).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigurationError

ID_BITS = 96
_HALF_BITS = 48
_MAX_POPULATION = 1 << 20


class TagState(enum.Enum):
    UNACKNOWLEDGED = "unacknowledged"
    UNSELECTED = "unselected"
    SELECTED = "selected"
    READY = "ready"


@dataclass(slots=True)
class Tag:
    """One tag: 96-bit ID, category membership and protocol state."""

    id: int
    category_id: int
    state: TagState = TagState.UNACKNOWLEDGED
    cnt: int = 0
    missing: bool = False

    def reset(self):
        self.state = TagState.UNACKNOWLEDGED
        self.cnt = 0


@dataclass(frozen=True)
class CategorySpec:
    """Category index k, size n and reliability number c (tags to sample)."""

    k: int
    n: int
    c: int

    def __post_init__(self):
        if self.n < 1:
            raise ConfigurationError(f"category {self.k}: size must be >= 1, got {self.n}")
        if not 1 <= self.c <= self.n:
            raise ConfigurationError(
                f"category {self.k}: need 1 <= c <= n, got c={self.c}, n={self.n}"
            )


@dataclass
class Population:
    tags: list[Tag]
    categories: list[CategorySpec]
    rng_seed: int
    _by_category: dict[int, list[Tag]] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self._by_category:
            for spec in self.categories:
                self._by_category[spec.k] = sorted(
                    (t for t in self.tags if t.category_id == spec.k),
                    key=lambda t: t.id,
                )

    @property
    def size(self) -> int:
        return len(self.tags)

    def spec(self, k: int) -> CategorySpec:
        for s in self.categories:
            if s.k == k:
                return s
        raise KeyError(f"no category {k}")

    def reset_states(self):
        for t in self.tags:
            t.reset()


def _random_ids(n: int, rng: np.random.Generator) -> list[int]:
    """n distinct 96-bit IDs, every bit independently uniform."""
    ids: list[int] = []
    seen: set[int] = set()
    while len(ids) < n:
        need = n - len(ids)
        halves = rng.integers(0, 1 << _HALF_BITS, size=(need, 2), dtype=np.uint64)
        for hi, lo in halves:
            v = (int(hi) << _HALF_BITS) | int(lo)
            if v not in seen:
                seen.add(v)
                ids.append(v)
    return ids


def generate_population(
    category_sizes: list[tuple[int, int]], rng_seed: int
) -> Population:
    """Build a population from (n_k, c_k) pairs; deterministic in rng_seed."""
    if not category_sizes:
        raise ConfigurationError("need at least one category")
    specs = [CategorySpec(k, n, c) for k, (n, c) in enumerate(category_sizes, start=1)]
    total = sum(s.n for s in specs)
    if total > _MAX_POPULATION:
        raise ConfigurationError(f"population of {total} exceeds desk scale 2^20")

    rng = np.random.default_rng(np.random.SeedSequence(rng_seed))
    ids = _random_ids(total, rng)
    tags = []
    pos = 0
    for s in specs:
        tags.extend(Tag(id=ids[pos + i], category_id=s.k) for i in range(s.n))
        pos += s.n
    return Population(tags=tags, categories=specs, rng_seed=rng_seed)


def mark_missing(
    population: Population, rates: list[float], rng_seed: int
) -> Population:
    """Flag tags missing, independently with per-category probability rates[k-1].

    Flags only affect post-hoc success accounting, never protocol execution.
    """
    if len(rates) != len(population.categories):
        raise ConfigurationError(
            f"need one rate per category: got {len(rates)} rates, "
            f"{len(population.categories)} categories"
        )
    for a in rates:
        if not 0.0 <= a < 1.0:
            raise ConfigurationError(f"missing rate must be in [0, 1), got {a}")

    rng = np.random.default_rng(np.random.SeedSequence(rng_seed))
    for spec in population.categories:
        alpha = rates[spec.k - 1]
        members = population._by_category[spec.k]
        draws = rng.random(len(members))
        for tag, u in zip(members, draws):
            tag.missing = bool(u < alpha)
    return population


def category_tags(population: Population, k: int) -> list[Tag]:
    """All tags of category k, ordered by ascending ID."""
    try:
        return list(population._by_category[k])
    except KeyError:
        raise KeyError(f"no category {k}") from None
