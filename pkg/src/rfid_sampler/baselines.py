"""Reference strategies the Select-command realization is compared against."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .population import Population, TagState, category_tags
from .selgen import SELECT_FIXED_BITS, SelectCommand

ID_MASK_BITS = 96


@dataclass
class BaselineReport:
    name: str
    commands: int
    bits: int
    ready: list[tuple[int, int]]


def run_random_select(
    population: Population, rng: np.random.Generator
) -> list[BaselineReport]:
    """Pick each sample with its own Select command matching the full 96-bit
    ID: c_k commands of 96-bit masks per category, no hashing involved."""
    reports = []
    for spec in population.categories:
        tags = category_tags(population, spec.k)
        picks = rng.choice(len(tags), size=spec.c, replace=False)
        ready = []
        for order, i in enumerate(picks.tolist(), start=1):
            tags[i].state = TagState.READY
            tags[i].cnt = order
            ready.append((tags[i].id, order))
        bits = spec.c * (SELECT_FIXED_BITS + ID_MASK_BITS)
        reports.append(
            BaselineReport(
                name="random-select", commands=spec.c, bits=bits, ready=ready
            )
        )
    return reports


def naive_threshold_commands(tau: int, width: int, pointer: int = 0) -> list[SelectCommand]:
    """One exact-match command per value in [0, tau]: the cost that prefix
    merging is meant to remove."""
    if width < 1:
        raise ValueError(f"width must be >= 1, got {width}")
    if not 0 <= tau < (1 << width):
        raise ValueError(f"tau={tau} does not fit in {width} bits")
    return [
        SelectCommand(pointer=pointer, mask=format(v, f"0{width}b"))
        for v in range(tau + 1)
    ]


def naive_threshold_bits(tau: int, width: int) -> int:
    return (tau + 1) * (SELECT_FIXED_BITS + width)
