"""Scenario configuration, Monte-Carlo drivers and CSV/JSON emission.

A config file is INI-style: each section is one scenario point, with a
category count K, size and sample schedules (single value or comma list,
cycled to length K), a trial count and a root seed.  Each (point,
protocol, trial) triple gets its own deterministic rng stream, so output
files are byte-identical across runs and robust to trial parallelism.
"""

from __future__ import annotations

import configparser
import csv
import json
import statistics
from dataclasses import dataclass, field

import numpy as np

from .analysis import TimingModel, lower_bound_bits
from .baselines import run_random_select
from .errors import ConfigurationError
from .population import generate_population
from .protocol import run_optc
from .selgen import run_optc_impl

CSV_COLUMNS = [
    "scenario", "protocol", "trial", "K", "sum_n", "sum_c",
    "bits", "seconds", "lb_seconds", "ratio",
]
PROTOCOLS = ("optc", "optc-impl", "random-select")


@dataclass
class ScenarioConfig:
    """One scenario point: K categories with expanded size/sample vectors."""

    scenario_id: str
    K: int
    ns: list[int]
    cs: list[int]
    trials: int = 10
    rng_seed: int = 0
    protocols: tuple[str, ...] = ("optc",)
    timing: TimingModel = field(default_factory=TimingModel)

    def __post_init__(self):
        if self.K < 1:
            raise ConfigurationError(f"{self.scenario_id}: K must be >= 1")
        if self.trials < 1:
            raise ConfigurationError(f"{self.scenario_id}: trials must be >= 1")
        if len(self.ns) != self.K or len(self.cs) != self.K:
            raise ConfigurationError(
                f"{self.scenario_id}: schedules must expand to length K={self.K}"
            )
        for k, (n, c) in enumerate(zip(self.ns, self.cs), start=1):
            if not 1 <= c <= n:
                raise ConfigurationError(
                    f"{self.scenario_id}: category {k} needs 1 <= c <= n, "
                    f"got c={c}, n={n}"
                )
        for p in self.protocols:
            if p not in PROTOCOLS:
                raise ConfigurationError(
                    f"{self.scenario_id}: unknown protocol {p!r}"
                )


def _expand_schedule(raw: str, K: int, key: str, section: str) -> list[int]:
    """A single value repeats; a comma list cycles to length K."""
    try:
        values = [int(x) for x in str(raw).split(",") if x.strip() != ""]
    except ValueError:
        raise ConfigurationError(f"[{section}] {key}: not an integer list: {raw!r}")
    if not values:
        raise ConfigurationError(f"[{section}] {key}: empty schedule")
    return [values[i % len(values)] for i in range(K)]


def load_config(path: str, seed_override: int | None = None) -> list[ScenarioConfig]:
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ConfigurationError(f"cannot read config file {path}")
    points = []
    for section in parser.sections():
        sec = parser[section]
        try:
            K = sec.getint("K")
        except (ValueError, TypeError):
            raise ConfigurationError(f"[{section}] K: not an integer")
        if K is None:
            raise ConfigurationError(f"[{section}]: missing key K")
        for key in ("n", "c"):
            if key not in sec:
                raise ConfigurationError(f"[{section}]: missing key {key}")
        protocols = tuple(
            p.strip() for p in sec.get("protocols", "optc").split(",") if p.strip()
        )
        points.append(
            ScenarioConfig(
                scenario_id=section,
                K=K,
                ns=_expand_schedule(sec["n"], K, "n", section),
                cs=_expand_schedule(sec["c"], K, "c", section),
                trials=sec.getint("trials", fallback=10),
                rng_seed=seed_override if seed_override is not None else sec.getint("seed", fallback=0),
                protocols=protocols,
            )
        )
    if not points:
        raise ConfigurationError(f"config file {path} defines no scenarios")
    return points


@dataclass
class ResultRow:
    scenario: str
    protocol: str
    trial: int
    K: int
    sum_n: int
    sum_c: int
    bits: int
    seconds: float
    lb_seconds: float

    @property
    def ratio(self) -> float:
        return self.seconds / self.lb_seconds

    def as_record(self) -> dict:
        return {
            "scenario": self.scenario,
            "protocol": self.protocol,
            "trial": self.trial,
            "K": self.K,
            "sum_n": self.sum_n,
            "sum_c": self.sum_c,
            "bits": self.bits,
            "seconds": f"{self.seconds:.9f}",
            "lb_seconds": f"{self.lb_seconds:.9f}",
            "ratio": f"{self.ratio:.6f}",
        }


def _trial_rng(root_seed: int, point_index: int, protocol: str, trial: int):
    key = (point_index, PROTOCOLS.index(protocol), trial)
    return np.random.default_rng(np.random.SeedSequence(root_seed, spawn_key=key))


def run_trial(
    point: ScenarioConfig, point_index: int, protocol: str, trial: int
) -> ResultRow:
    """One independent simulation of one protocol at one scenario point."""
    rng = _trial_rng(point.rng_seed, point_index, protocol, trial)
    pop_seed = int(rng.integers(0, 2**63))
    population = generate_population(list(zip(point.ns, point.cs)), pop_seed)

    if protocol == "optc":
        _, ledger = run_optc(population, point.timing, rng)
        bits = ledger.bits_reader_to_tag
    elif protocol == "optc-impl":
        results = run_optc_impl(population, rng)
        bits = sum(r.bits for r in results)
    elif protocol == "random-select":
        reports = run_random_select(population, rng)
        bits = sum(r.bits for r in reports)
    else:
        raise ConfigurationError(f"unknown protocol {protocol!r}")

    lb_bits = lower_bound_bits(point.cs)
    return ResultRow(
        scenario=point.scenario_id,
        protocol=protocol,
        trial=trial,
        K=point.K,
        sum_n=sum(point.ns),
        sum_c=sum(point.cs),
        bits=bits,
        seconds=point.timing.transmission_time(bits),
        lb_seconds=point.timing.transmission_time(lb_bits),
    )


def run_points(points: list[ScenarioConfig]) -> list[ResultRow]:
    rows = []
    for i, point in enumerate(points):
        for protocol in point.protocols:
            for trial in range(point.trials):
                rows.append(run_trial(point, i, protocol, trial))
    return rows


def aggregate(rows: list[ResultRow]) -> list[dict]:
    """Per (scenario, protocol) mean and stddev of bits, seconds and ratio."""
    groups: dict[tuple[str, str], list[ResultRow]] = {}
    for row in rows:
        groups.setdefault((row.scenario, row.protocol), []).append(row)
    out = []
    for (scenario, protocol), members in groups.items():
        ratios = [r.ratio for r in members]
        seconds = [r.seconds for r in members]
        out.append(
            {
                "scenario": scenario,
                "protocol": protocol,
                "trials": len(members),
                "mean_bits": statistics.fmean(r.bits for r in members),
                "mean_seconds": statistics.fmean(seconds),
                "stddev_seconds": statistics.stdev(seconds) if len(seconds) > 1 else 0.0,
                "mean_ratio": statistics.fmean(ratios),
                "stddev_ratio": statistics.stdev(ratios) if len(ratios) > 1 else 0.0,
            }
        )
    return out


def write_results(rows: list[ResultRow], out_path: str, json_mirror: bool = True):
    rows = sorted(rows, key=lambda r: (r.scenario, r.protocol, r.trial))
    with open(out_path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow(row.as_record())
    if json_mirror:
        with open(out_path + ".json", "w") as fh:
            json.dump(
                {"rows": [r.as_record() for r in rows], "aggregates": aggregate(rows)},
                fh,
                indent=2,
                sort_keys=True,
            )
            fh.write("\n")


def run_scenarios(config_path: str, out_path: str, seed_override: int | None = None) -> list[ResultRow]:
    points = load_config(config_path, seed_override=seed_override)
    rows = run_points(points)
    write_results(rows, out_path)
    return rows


# Named sweeps standing in for the simulation scenarios whose absolute
# parameters are unspecified; the quantity of record is the ratio to
# the lower bound, not wall-clock seconds.
def preset_vary_k(c: int = 10, n: int = 100, trials: int = 10, seed: int = 7) -> list[ScenarioConfig]:
    return [
        ScenarioConfig(
            scenario_id=f"vary-K-c{c}-K{K}",
            K=K, ns=[n] * K, cs=[c] * K, trials=trials, rng_seed=seed,
        )
        for K in range(20, 101, 20)
    ]


def preset_vary_n(K: int = 50, c: int = 10, trials: int = 10, seed: int = 7) -> list[ScenarioConfig]:
    return [
        ScenarioConfig(
            scenario_id=f"vary-n-n{n}-K{K}",
            K=K, ns=[n] * K, cs=[c] * K, trials=trials, rng_seed=seed,
        )
        for n in (50, 100, 200, 400, 800)
    ]


def preset_vary_c(K: int = 50, n: int = 200, trials: int = 10, seed: int = 7) -> list[ScenarioConfig]:
    return [
        ScenarioConfig(
            scenario_id=f"vary-c-c{c}-K{K}",
            K=K, ns=[n] * K, cs=[c] * K, trials=trials, rng_seed=seed,
        )
        for c in (5, 10, 20, 50, 100)
    ]


def preset_deployment_1(trials: int = 10, seed: int = 7) -> list[ScenarioConfig]:
    """Small-testbed shape: growing category count, n=20, c=5."""
    return [
        ScenarioConfig(
            scenario_id=f"deploy-1-K{K}",
            K=K, ns=[20] * K, cs=[5] * K, trials=trials, rng_seed=seed,
            protocols=("optc-impl", "random-select"),
        )
        for K in (2, 4, 6, 8, 10)
    ]


def preset_deployment_2(trials: int = 10, seed: int = 7) -> list[ScenarioConfig]:
    """Small-testbed shape: K=8, growing category size, c=4."""
    return [
        ScenarioConfig(
            scenario_id=f"deploy-2-n{n}",
            K=8, ns=[n] * 8, cs=[4] * 8, trials=trials, rng_seed=seed,
            protocols=("optc-impl", "random-select"),
        )
        for n in (10, 15, 20, 25)
    ]


def preset_deployment_3(trials: int = 10, seed: int = 7) -> list[ScenarioConfig]:
    """Small-testbed shape: K=8, sizes alternating 20/30, growing c."""
    ns = [20 if k % 2 == 1 else 30 for k in range(1, 9)]
    return [
        ScenarioConfig(
            scenario_id=f"deploy-3-c{c}",
            K=8, ns=list(ns), cs=[c] * 8, trials=trials, rng_seed=seed,
            protocols=("optc-impl", "random-select"),
        )
        for c in (2, 4, 6, 8, 10)
    ]


def bounds_report(K: int, cs, ns=None, timing: TimingModel | None = None) -> list[dict]:
    """Per-configuration table of the lower bound and the expected protocol
    cost; `cs`/`ns` may be single ints (replicated) or K-length lists."""
    from .analysis import expected_protocol_bits

    timing = timing or TimingModel()
    cs = [cs] * K if isinstance(cs, int) else list(cs)
    if len(cs) != K:
        raise ConfigurationError(f"need K={K} sample counts, got {len(cs)}")
    if ns is None:
        ns = [max(c * 10, 2) for c in cs]
    ns = [ns] * K if isinstance(ns, int) else list(ns)
    if len(ns) != K:
        raise ConfigurationError(f"need K={K} sizes, got {len(ns)}")
    gamma = lower_bound_bits(cs)
    expected = expected_protocol_bits(ns, cs)
    return [
        {
            "K": K,
            "sum_c": sum(cs),
            "lower_bound_bits": gamma,
            "lower_bound_seconds": timing.transmission_time(gamma),
            "expected_bits": expected,
            "expected_seconds": timing.transmission_time(expected),
            "ratio": expected / gamma,
        }
    ]


def reliability_report(alphas, epsilon: float) -> list[dict]:
    from .analysis import reliability_number

    if isinstance(alphas, float):
        alphas = [alphas]
    return [
        {"alpha": a, "epsilon": epsilon, "c": reliability_number(a, epsilon)}
        for a in alphas
    ]
