"""The two-stage sampling protocol: coarse Bernoulli stage, then the
frame-vector refinement that promotes exactly c tags to Ready with unique
reporting orders.

Cost accounting keeps two views per round:

* ``bits_sent``    -- the explicit ledger: per-iteration seed+size header
  (3*ceil(log2 |Ps|) bits), the |Ps|-bit frame, and a 1-bit stop broadcast.
* ``payload_bits`` -- the frame bits alone, i.e. the accounting under which
  the refinement stage's expected cost is e*c (the headers are the
  logarithmic terms the closed-form analysis approximates away).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ProtocolError
from .hashing import (
    SeedSpec,
    WINDOW_FULL,
    find_suitable_seed,
    ids_to_halves,
    mod_hash_width,
    seed_pool,
    selection_threshold,
    substring_values,
    suitable_from_count,
)
from .population import Population, Tag, TagState


@dataclass
class FrameVector:
    """Broadcast bit vector marking the singleton slots chosen this round."""

    bits: np.ndarray  # uint8 array of 0/1

    def __len__(self):
        return len(self.bits)

    def popcount(self) -> int:
        return int(self.bits.sum())

    def prefix_popcount(self, i: int) -> int:
        """Number of ones in bits[0..i] inclusive."""
        return int(self.bits[: i + 1].sum())


@dataclass
class RoundOutcome:
    selected: list[int]                 # IDs that entered the Selected state
    ready: list[tuple[int, int]]        # (ID, reporting order)
    iterations: int = 0
    bits_sent: int = 0
    payload_bits: int = 0
    seed_tests: int = 0


@dataclass
class CostLedger:
    bits_reader_to_tag: int = 0
    select_commands: int = 0
    frames: int = 0
    payload_bits: int = 0

    def add(self, other: "CostLedger"):
        self.bits_reader_to_tag += other.bits_reader_to_tag
        self.select_commands += other.select_commands
        self.frames += other.frames
        self.payload_bits += other.payload_bits

    def seconds(self, timing) -> float:
        return timing.transmission_time(self.bits_reader_to_tag)


def optc1_header_bits(n: int, c: int) -> int:
    """Cost of broadcasting the seed description and c for one category."""
    log_n = max(1.0, math.log2(n))
    return math.ceil(math.log2(96.0 / log_n)) + math.ceil(math.log2(c))


def apply_selection_threshold(tags: list[Tag], hashes, c: int) -> list[Tag]:
    """Move Unacknowledged tags to Selected/Unselected by the threshold rule."""
    thr = selection_threshold(c)
    chosen = []
    for tag, h in zip(tags, hashes):
        if h <= thr:
            tag.state = TagState.SELECTED
            chosen.append(tag)
        else:
            tag.state = TagState.UNSELECTED
    return chosen


def optc1_round(
    tags: list[Tag],
    c: int,
    rng: np.random.Generator,
    window: str = WINDOW_FULL,
    seed_spec: SeedSpec | None = None,
) -> RoundOutcome:
    """Coarse stage for one category: broadcast a suitable seed, tags flip a
    Bernoulli coin via the threshold rule.  `seed_spec` forces a seed
    (testing hook); otherwise a suitable one is searched for.
    """
    n = len(tags)
    if not 1 <= c <= n:
        raise ValueError(f"need 1 <= c <= n, got c={c}, n={n}")
    for t in tags:
        if t.state is not TagState.UNACKNOWLEDGED:
            raise ProtocolError(f"tag {t.id:#x} not in the unacknowledged state")

    tests = 0
    if seed_spec is None:
        seed_spec, stats = find_suitable_seed(tags, c, rng=rng, window=window)
        tests = stats.tests
        if seed_spec is None:
            raise ProtocolError(
                f"no suitable seed for n={n}, c={c} after {stats.tests} tests"
            )

    hi, lo = ids_to_halves([t.id for t in tags])
    hashes = substring_values(hi, lo, seed_spec) % np.uint64(n)
    chosen = apply_selection_threshold(tags, hashes.tolist(), c)
    if seed_spec is not None and not suitable_from_count(len(chosen), c):
        raise ProtocolError(f"seed selected {len(chosen)} tags, outside bounds")

    return RoundOutcome(
        selected=[t.id for t in chosen],
        ready=[],
        iterations=1,
        bits_sent=optc1_header_bits(n, c),
        payload_bits=0,
        seed_tests=tests,
    )


def build_frame(slot_occupancy, needed: int) -> FrameVector:
    """Left-to-right scan: set a slot's bit iff it holds exactly one tag and
    fewer than `needed` ones have been placed so far."""
    if needed < 1:
        raise ValueError("needed must be >= 1")
    slots = np.asarray(slot_occupancy, dtype=np.int64)
    m = len(slots)
    if m and (slots.min() < 0 or slots.max() >= m):
        raise ValueError("slots must lie in [0, len(slots))")
    counts = np.bincount(slots, minlength=m)
    bits = np.zeros(m, dtype=np.uint8)
    placed = 0
    for i in np.flatnonzero(counts == 1):
        if placed >= needed:
            break
        bits[i] = 1
        placed += 1
    return FrameVector(bits=bits)


def tag_apply_frame(tag: Tag, frame: FrameVector, slot: int) -> Tag:
    """Tag-side frame handling: promote to Ready with order cnt+prefix-ones,
    or accumulate the frame's popcount and stay Selected."""
    if tag.state is not TagState.SELECTED:
        raise ProtocolError(f"tag {tag.id:#x} is not in the selected state")
    if frame.bits[slot]:
        tag.cnt += frame.prefix_popcount(slot)
        tag.state = TagState.READY
    else:
        tag.cnt += frame.popcount()
    return tag


def default_iteration_cap(c: int) -> int:
    return 64 * (1 + math.ceil(math.log2(c))) if c > 1 else 64


def optc2_round(
    selected: list[Tag],
    c: int,
    rng: np.random.Generator,
    iteration_cap: int | None = None,
    window: str = WINDOW_FULL,
) -> RoundOutcome:
    """Refinement stage: iterate seed -> hash -> frame -> promote until
    exactly c tags are Ready, then demote the remainder to Unselected."""
    if len(selected) < c:
        raise ValueError(f"selected set of {len(selected)} cannot yield c={c}")
    for t in selected:
        if t.state is not TagState.SELECTED:
            raise ProtocolError(f"tag {t.id:#x} is not in the selected state")
    cap = iteration_cap if iteration_cap is not None else default_iteration_cap(c)

    pool = list(selected)
    ready: list[tuple[int, int]] = []
    bits_sent = 0
    payload = 0
    iterations = 0
    while len(ready) < c:
        if iterations >= cap:
            raise ProtocolError(
                f"refinement did not converge within {cap} iterations "
                f"(|ready|={len(ready)}, c={c})"
            )
        iterations += 1
        m = len(pool)
        L = mod_hash_width(m)
        starts = seed_pool(L, window) or seed_pool(L, WINDOW_FULL)
        seed = SeedSpec(start=int(rng.choice(starts)), length=L)

        hi, lo = ids_to_halves([t.id for t in pool])
        slots = (substring_values(hi, lo, seed) % np.uint64(m)).astype(np.int64)
        frame = build_frame(slots, needed=c - len(ready))
        bits_sent += 3 * max(1, math.ceil(math.log2(m))) + m
        payload += m

        # Reader-side prediction of who gets promoted, used to cross-check
        # the tag-side counters below.
        promoted_idx = [i for i in np.argsort(slots, kind="stable") if frame.bits[slots[i]]]
        promoted_idx.sort(key=lambda i: slots[i])
        predicted = {
            pool[i].id: len(ready) + rank + 1 for rank, i in enumerate(promoted_idx)
        }

        remaining = []
        for tag, slot in zip(pool, slots.tolist()):
            tag_apply_frame(tag, frame, slot)
            if tag.state is TagState.READY:
                if tag.cnt != predicted[tag.id]:
                    raise ProtocolError(
                        f"counter mismatch on tag {tag.id:#x}: "
                        f"cnt={tag.cnt}, reader predicts {predicted[tag.id]}"
                    )
                ready.append((tag.id, tag.cnt))
            else:
                remaining.append(tag)
        pool = remaining

    for tag in pool:
        tag.state = TagState.UNSELECTED
    bits_sent += 1  # stop broadcast

    orders = sorted(o for _, o in ready)
    if orders != list(range(1, c + 1)):
        raise ProtocolError(f"reporting orders are not a permutation of 1..{c}")
    return RoundOutcome(
        selected=[t.id for t in selected],
        ready=sorted(ready, key=lambda x: x[1]),
        iterations=iterations,
        bits_sent=bits_sent,
        payload_bits=payload,
    )


def run_optc(
    population: Population,
    timing,
    rng: np.random.Generator,
    window: str = WINDOW_FULL,
) -> tuple[list[RoundOutcome], CostLedger]:
    """Full protocol: K coarse rounds, then K refinement rounds."""
    from .population import category_tags

    ledger = CostLedger()
    coarse: dict[int, RoundOutcome] = {}
    for spec in population.categories:
        tags = category_tags(population, spec.k)
        out = optc1_round(tags, spec.c, rng, window=window)
        coarse[spec.k] = out
        ledger.bits_reader_to_tag += out.bits_sent

    outcomes = []
    for spec in population.categories:
        tags = category_tags(population, spec.k)
        chosen = [t for t in tags if t.state is TagState.SELECTED]
        out = optc2_round(chosen, spec.c, rng, window=window)
        out.seed_tests = coarse[spec.k].seed_tests
        out.bits_sent += coarse[spec.k].bits_sent
        outcomes.append(out)
        ledger.bits_reader_to_tag += out.bits_sent - coarse[spec.k].bits_sent
        ledger.payload_bits += out.payload_bits
        ledger.frames += out.iterations
    return outcomes, ledger
