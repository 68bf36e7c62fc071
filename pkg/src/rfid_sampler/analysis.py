"""Closed-form quantities: timing model, communication lower bound,
expected protocol cost, seed-search probability bounds and reliability
sizing under missing tags.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

LOG2_E = math.log2(math.e)

# 96 bits at 26.7 kbps plus one 302 us inter-transmission gap; the
# per-96-bit value is conventionally quoted to 0.1 us and treated as exact.
READER_RATE_BPS = 26_700.0
GAP_SECONDS = 302e-6
T96_SECONDS = 3897.5e-6


@dataclass(frozen=True)
class TimingModel:
    """Reader-to-tag air interface; cost is linear in broadcast bits."""

    t96: float = T96_SECONDS  # seconds per 96-bit unit, gap included

    @classmethod
    def from_rate(cls, rate_bps: float = READER_RATE_BPS, gap_seconds: float = GAP_SECONDS):
        return cls(t96=96.0 / rate_bps + gap_seconds)

    def transmission_time(self, bits: float) -> float:
        """Seconds to broadcast the given number of bits, prorated on t96."""
        if bits < 0:
            raise ValueError(f"bits must be >= 0, got {bits}")
        return bits * self.t96 / 96.0


def lower_bound_bits(cs) -> float:
    """Information-theoretic floor: any protocol solving the sampling
    problem must broadcast at least sum_k log2(e) * c_k bits."""
    _check_counts(cs)
    return LOG2_E * float(sum(cs))


def lower_bound_seconds(cs, timing: TimingModel | None = None) -> float:
    timing = timing or TimingModel()
    return timing.transmission_time(lower_bound_bits(cs))


def expected_protocol_bits(ns, cs) -> float:
    """Expected broadcast cost of the two-stage protocol:
    e*c_k frame bits plus the seed and count headers, summed over categories."""
    if len(ns) != len(cs):
        raise ValueError(f"got {len(ns)} sizes but {len(cs)} sample counts")
    _check_counts(cs)
    total = 0.0
    for n, c in zip(ns, cs):
        if not 1 <= c <= n:
            raise ValueError(f"need 1 <= c <= n, got c={c}, n={n}")
        log_n = max(1.0, math.log2(n))
        total += math.e * c + math.log2(96.0 / log_n) + math.log2(c)
    return total


def cost_ratio_limit() -> float:
    """Ratio of expected protocol bits to the lower bound as c grows:
    e*c / (log2(e)*c) = e / log2(e), about 1.8842."""
    return math.e / LOG2_E


def mu(c: int) -> float:
    """Upper bound on the probability that a random seed over-selects,
    i.e. picks more than c + 6*sqrt(c) of the expected c + 3*sqrt(c) tags.
    Strictly decreasing in c; mu(1) is about 0.3996."""
    _check_c(c)
    r = 3.0 * math.sqrt(c)
    return math.exp(r) * (1.0 + r / (c + r)) ** (-(c + 2.0 * r))


def rho(c: int) -> float:
    """Upper bound on the probability that a random seed under-selects,
    i.e. picks fewer than c tags.  Strictly decreasing in c; rho(1) is
    about 0.1991."""
    _check_c(c)
    r = 3.0 * math.sqrt(c)
    return math.exp(-r) * (1.0 - r / (c + r)) ** (-c)


def seed_success_lower_bound(c: int) -> float:
    """A random seed is suitable with probability at least 1 - mu(c) - rho(c),
    which exceeds 0.4 for every c >= 1."""
    return 1.0 - mu(c) - rho(c)


def reliability_number(alpha: float, epsilon: float) -> int:
    """Smallest c with alpha^c <= epsilon: sampling c tags from a category
    with missing rate alpha succeeds except with probability epsilon."""
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    if not 0.0 < epsilon < 1.0:
        raise ValueError(f"epsilon must be in (0, 1), got {epsilon}")
    return math.ceil(math.log(1.0 / epsilon) / math.log(1.0 / alpha))


def success_probability(n: int, missing: int, c: int) -> float:
    """Exact chance that at least one of c tags sampled without replacement
    from a category of n (with `missing` of them gone) is present."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= missing <= n:
        raise ValueError(f"missing must be in [0, n], got {missing}")
    if not 1 <= c <= n:
        raise ValueError(f"need 1 <= c <= n, got c={c}")
    if c > missing:
        return 1.0
    p_all_missing = 1.0
    for i in range(c):
        p_all_missing *= (missing - i) / (n - i)
    return 1.0 - p_all_missing


def success_probability_approx(alpha: float, c: int) -> float:
    """With-replacement approximation 1 - alpha^c; a lower bound on the
    exact without-replacement probability."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must be in [0, 1), got {alpha}")
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    return 1.0 - alpha**c


def _check_c(c: int):
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")


def _check_counts(cs):
    if not len(cs):
        raise ValueError("need at least one category")
    for c in cs:
        _check_c(c)
