"""Select-command generation and the COTS realization of the protocol.

A threshold tau over L-bit hash values is turned into a short list of
prefix filters (strings over {0, 1, *}) that jointly match exactly the
values in [0, tau].  Each filter becomes one Select command; commands are
costed at the C1G2 wire format: Target(3) + Action(3) + MemBank(2) +
Pointer(16) + Length(8) + Mask(mask length) bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ProtocolError
from .hashing import (
    SeedSpec,
    WINDOW_COTS,
    WINDOW_FULL,
    ids_to_halves,
    seed_pool,
    selection_threshold,
    substring_values,
    suitable_from_count,
)
from .population import Population, TagState, category_tags

SELECT_FIXED_BITS = 3 + 3 + 2 + 16 + 8  # everything except the mask
_TARGET_SL = "100"  # session flag SL
_ACTION_ASSERT = "000"
_MEMBANK_EPC = "01"


@dataclass(frozen=True)
class SelectCommand:
    """One C1G2 Select command matching an exact bit pattern of the EPC."""

    pointer: int    # 0-based first bit of the compared EPC region
    mask: str       # bit pattern the tag compares against, MSB first

    @property
    def length(self) -> int:
        return len(self.mask)

    @property
    def bit_cost(self) -> int:
        return SELECT_FIXED_BITS + self.length

    def encode(self) -> str:
        """Wire image as a bit string, fields MSB first."""
        return (
            _TARGET_SL
            + _ACTION_ASSERT
            + _MEMBANK_EPC
            + format(self.pointer, "016b")
            + format(self.length, "08b")
            + self.mask
        )


def selgen_filters(tau: int, width: int) -> list[str]:
    """Prefix filters over {0,1,*} jointly matching the values 0..tau.

    Scans tau's bits from the most significant end: every 1-bit at
    position i yields the filter "prefix 0 ***" covering all values that
    first fall below tau there; a closing filter covering tau itself is
    emitted when the remaining low bits are all ones (or are exhausted).
    """
    if width < 1:
        raise ValueError(f"width must be >= 1, got {width}")
    if not 0 <= tau < (1 << width):
        raise ValueError(f"tau={tau} does not fit in {width} bits")
    bits = format(tau, f"0{width}b")
    filters = []
    for pos, b in enumerate(bits):  # pos 0 is the MSB, i = width - pos
        i = width - pos
        if b == "1":
            filters.append(bits[:pos] + "0" + "*" * (i - 1))
        if i == 1 or all(x == "1" for x in bits[pos + 1:]):
            filters.append(bits[: pos + 1] + "*" * (i - 1))
            break
    return filters


def filter_matches(filt: str, value: int) -> bool:
    bits = format(value, f"0{len(filt)}b")
    return all(f in ("*", b) for f, b in zip(filt, bits))


def select_matches(filters: list[str], value: int) -> bool:
    """True iff any filter in the set matches the value (tags OR them)."""
    return any(filter_matches(f, value) for f in filters)


def command_count(tau: int, width: int) -> int:
    """Closed form for len(selgen_filters(tau, width)).

    With t trailing ones in tau, the closer absorbs those positions, so
    the count is popcount(tau >> (t+1)) + 1; an all-ones tau still pays
    its leading step-(3) filter, giving 2.
    """
    if tau == (1 << width) - 1:
        return 2
    t = 0
    while (tau >> t) & 1:
        t += 1
    return bin(tau >> (t + 1)).count("1") + 1


def selgen_commands(tau: int, width: int, pointer: int) -> list[SelectCommand]:
    """Select commands for the filters; stars become a shorter compare length."""
    cmds = []
    for filt in selgen_filters(tau, width):
        mask = filt.rstrip("*")
        cmds.append(SelectCommand(pointer=pointer, mask=mask))
    return cmds


def commands_bit_cost(cmds: list[SelectCommand]) -> int:
    return sum(c.bit_cost for c in cmds)


def best_threshold(sorted_values: list[int], c: int, width: int) -> int:
    """Cheapest tau that selects exactly the c smallest hash values.

    Any tau in [v_c, v_{c+1} - 1] selects the same set, so pick the one
    needing the fewest Select commands (ties: smallest tau).
    """
    lo = sorted_values[c - 1]
    hi = sorted_values[c] - 1 if c < len(sorted_values) else (1 << width) - 1
    best, best_cost = lo, command_count(lo, width)
    for tau in range(lo + 1, hi + 1):
        cost = command_count(tau, width)
        if cost < best_cost:
            best, best_cost = tau, cost
    return best


@dataclass
class ImplRoundResult:
    """Per-category record of one full run on the Select-command realization."""

    k: int
    coarse_seed: SeedSpec
    coarse_redraws: int
    coarse_selected: int
    refine_seed: SeedSpec
    refine_redraws: int
    tau_coarse: int
    tau_refine: int
    commands: list[SelectCommand]
    ready: list[tuple[int, int]]  # (tag ID, reporting order)

    @property
    def command_count(self) -> int:
        return len(self.commands)

    @property
    def bits(self) -> int:
        return commands_bit_cost(self.commands)


def scaled_coarse_threshold(n: int, c: int, width: int) -> int:
    """Map the mod-n threshold c + 3*sqrt(c) onto the raw L-bit hash range."""
    tau = math.ceil(selection_threshold(c) * (1 << width) / n)
    return min(tau, (1 << width) - 1)


def _draw_windows(length: int, rng: np.random.Generator, window: str) -> list[SeedSpec]:
    starts = seed_pool(length, window)
    if window == WINDOW_COTS:
        extra = set(starts)
        starts = starts + [s for s in seed_pool(length, WINDOW_FULL) if s not in extra]
    if not starts:
        raise ProtocolError(f"no {length}-bit substring window available")
    return [SeedSpec(start=int(s), length=length) for s in np.array(starts)[rng.permutation(len(starts))]]


def run_impl_category(
    tags,
    c: int,
    rng: np.random.Generator,
    window: str = WINDOW_COTS,
    scaled: bool = True,
    optimize_tau: bool = True,
) -> ImplRoundResult:
    """Both stages for one category, returning the full command transcript.

    Stage one redraws the hash window until the number of tags under the
    coarse threshold is in [c, c + 6*sqrt(c)].  Stage two redraws a wider
    window until the c smallest raw hashes are distinct and separated
    from the (c+1)-th, then selects them with a threshold filter set.
    """
    n = len(tags)
    if not 1 <= c <= n:
        raise ValueError(f"need 1 <= c <= n, got c={c}, n={n}")
    ids = [t.id for t in tags]
    hi, lo = ids_to_halves(ids)

    # stage one: coarse selection by threshold on an L1-bit raw hash
    L1 = max(1, math.ceil(math.log2(n)))
    if scaled:
        tau1 = scaled_coarse_threshold(n, c, L1)
    else:
        tau1 = min(math.ceil(selection_threshold(c)), (1 << L1) - 1)
    coarse_seed = None
    coarse_vals = None
    redraws1 = 0
    for seed in _draw_windows(L1, rng, window):
        vals = substring_values(hi, lo, seed).astype(np.int64)
        count = int((vals <= tau1).sum())
        redraws1 += 1
        if suitable_from_count(count, c):
            coarse_seed, coarse_vals = seed, vals
            break
    if coarse_seed is None:
        raise ProtocolError(f"no coarse hash window suits n={n}, c={c}")
    sel_idx = np.flatnonzero(coarse_vals <= tau1)
    selected = [tags[i] for i in sel_idx]
    for i, t in enumerate(tags):
        t.state = TagState.SELECTED if coarse_vals[i] <= tau1 else TagState.UNSELECTED
    cmds = selgen_commands(tau1, L1, pointer=coarse_seed.start - 1)

    # stage two: exact selection among the l survivors
    l = len(selected)
    L2 = max(1, math.ceil(math.log2(l * l))) if l > 1 else 1
    s_hi, s_lo = ids_to_halves([t.id for t in selected])
    refine_seed = None
    refine_vals = None
    redraws2 = 0
    for seed in _draw_windows(L2, rng, window):
        vals = substring_values(s_hi, s_lo, seed).astype(np.int64)
        redraws2 += 1
        order = np.sort(vals)
        distinct = len(set(order[:c].tolist())) == c
        separated = c == l or order[c - 1] < order[c]
        if distinct and separated:
            refine_seed, refine_vals = seed, vals
            break
    if refine_seed is None:
        raise ProtocolError(f"no refine hash window separates c={c} of l={l} tags")

    order = np.sort(refine_vals)
    if optimize_tau:
        tau2 = best_threshold(order.tolist(), c, L2)
    else:
        tau2 = int(order[c - 1])
    cmds += selgen_commands(tau2, L2, pointer=refine_seed.start - 1)

    ready = []
    ranked = sorted(
        (int(v), t) for v, t in zip(refine_vals, selected) if v <= tau2
    )
    if len(ranked) != c:
        raise ProtocolError(f"threshold {tau2} picked {len(ranked)} tags, want {c}")
    for rank, (_, tag) in enumerate(ranked, start=1):
        tag.state = TagState.READY
        tag.cnt = rank
        ready.append((tag.id, rank))
    for _, tag in ((v, t) for v, t in zip(refine_vals, selected) if v > tau2):
        tag.state = TagState.UNSELECTED

    return ImplRoundResult(
        k=tags[0].category_id if tags else -1,
        coarse_seed=coarse_seed,
        coarse_redraws=redraws1,
        coarse_selected=l,
        refine_seed=refine_seed,
        refine_redraws=redraws2,
        tau_coarse=tau1,
        tau_refine=tau2,
        commands=cmds,
        ready=ready,
    )


def run_optc_impl(
    population: Population,
    rng: np.random.Generator,
    window: str = WINDOW_COTS,
    scaled: bool = True,
    optimize_tau: bool = True,
) -> list[ImplRoundResult]:
    """The Select-command realization over every category in turn."""
    results = []
    for spec in population.categories:
        tags = category_tags(population, spec.k)
        results.append(
            run_impl_category(
                tags, spec.c, rng, window=window, scaled=scaled, optimize_tau=optimize_tau
            )
        )
    return results


def command_budget(c: int) -> int:
    """Per-category bound on Select commands: both stages pay at most
    ceil(log2 tau) + 1 each, with tau of order c."""
    return 3 * math.ceil(math.log2(c)) + 3
