"""Sequence generators and the seeded Monte Carlo harness.

Trial ``t`` of an experiment with base seed ``s`` uses the seed
``trial_seed(s, t)``: the first 8 bytes (little endian) of
``blake2b(f"{s}:{t}")``. Trials are therefore independent of each other and
of the order in which they are executed.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import math
import random
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Sequence

from .allocation import BoxAllocation
from .baseline import config_model_sample
from .bounds import (
    BoundValue,
    bound_theorem1,
    bound_theorem2,
    bound_theorem3,
    config_model_loop_lower_bound,
)
from .core import DegreeSequence, check_uniformity, validate_sequence
from .errors import AllocationError, InfeasibleRepair, SequenceError
from .sampler import (
    allocation_alg3,
    allocation_alg4,
    compute_m,
    sample_edges,
    sample_hypergraph,
    sample_hypergraph_2,
)

ALGORITHMS = ("alg3", "alg4", "baseline")
SE_MARGIN = 3.0


def trial_seed(base_seed: int, trial: int) -> int:
    digest = hashlib.blake2b(f"{base_seed}:{trial}".encode(), digest_size=8).digest()
    return int.from_bytes(digest, "little")


# -- sequence generators ------------------------------------------------------


def repair_divisibility(degrees: Sequence[int], k: int) -> list[int]:
    """Increment tail entries until ``k`` divides the sum.

    Each step bumps the leftmost entry of the final run of equal values, which
    is the rightmost entry that can grow without breaking the ordering.
    """
    out = list(degrees)
    while sum(out) % k:
        j = len(out) - 1
        while j > 0 and out[j - 1] == out[j]:
            j -= 1
        out[j] += 1
    return out


def generate_eq9_sequence(n: int, k: int) -> DegreeSequence:
    """``ceil(ln n)`` hubs of degree ``floor(n / ln(n)^3)``, the rest ``floor(sqrt(n) / ln n)``.

    Hub degrees are raised to the tail degree when the floor makes them
    smaller, then the tail is bumped until ``k`` divides ``sigma``.
    """
    check_uniformity(k)
    if n < 2:
        raise InfeasibleRepair(f"n = {n} is too small")
    log_n = math.log(n)
    heads = math.ceil(log_n)
    head = math.floor(n / log_n**3)
    tail = math.floor(math.sqrt(n) / log_n)
    if tail < 1 or heads >= n:
        raise InfeasibleRepair(f"n = {n} is too small: tail degree rounds to {tail}")
    head = max(head, tail)
    degrees = repair_divisibility([head] * heads + [tail] * (n - heads), k)
    try:
        return validate_sequence(degrees, k)
    except SequenceError as exc:
        raise InfeasibleRepair(f"n = {n}: repaired sequence is not admissible ({exc})") from None


def generate_regular(n: int, d: int, k: int) -> DegreeSequence:
    check_uniformity(k)
    if n < 1 or d < 1:
        raise InfeasibleRepair("n and d must be positive")
    if (n * d) % k or k * d > n * d:
        raise InfeasibleRepair(f"no {k}-uniform regular sequence with n={n}, d={d}")
    return validate_sequence([d] * n, k)


def generate_random_valid(n_max: int, d_max: int, k: int, rng: random.Random | int,
                          n_min: int | None = None, max_tries: int = 10_000) -> DegreeSequence:
    """Rejection-sample an admissible sequence with ``n <= n_max`` and ``d_1 <= d_max``."""
    check_uniformity(k)
    rng = rng if isinstance(rng, random.Random) else random.Random(rng)
    lo = max(k, n_min or 1)
    if n_max < lo:
        raise InfeasibleRepair(f"n_max = {n_max} < {lo}")
    for _ in range(max_tries):
        n = rng.randint(lo, n_max)
        degrees = sorted((rng.randint(1, d_max) for _ in range(n)), reverse=True)
        degrees = repair_divisibility(degrees, k)
        try:
            return validate_sequence(degrees, k)
        except SequenceError:
            continue
    raise InfeasibleRepair("random generator exhausted its retries")


def smallest_positive_theorem2_n(grid: Sequence[int], k: int = 4,
                                 require_preconditions: bool = True) -> int | None:
    """First ``n`` in ``grid`` where the split-sampler bound on the eq9 family is positive."""
    for n in grid:
        try:
            pi = generate_eq9_sequence(n, k)
        except InfeasibleRepair:
            continue
        b = bound_theorem2(pi, k, compute_m(pi, k))
        if b.value > 0 and (b.precondition_ok or not require_preconditions):
            return n
    return None


# -- Monte Carlo ----------------------------------------------------------------


def simple_frequency(pi: DegreeSequence, alloc: BoxAllocation, trials: int,
                     seed: int) -> tuple[int, dict[tuple, int]]:
    """Run ``sample_edges`` ``trials`` times on one stream.

    Returns the number of simple outcomes and the counts per canonical outcome.
    """
    from .core import Hypergraph, simplicity_report

    rng = random.Random(seed)
    k = len(alloc) - 1
    counts: dict[tuple, int] = {}
    simple = 0
    for _ in range(trials):
        edges = sample_edges(pi, alloc, rng, check=False)
        key = tuple(sorted(edges))
        counts[key] = counts.get(key, 0) + 1
    for key, c in counts.items():
        if simplicity_report(Hypergraph(pi.n, k, key)).is_simple:
            simple += c
    return simple, counts


@dataclass
class ExperimentConfig:
    """One Monte Carlo configuration.

    ``sequence`` is either ``{"explicit": [...]}`` or
    ``{"generator": "regular" | "eq9" | "random", ...params}``.
    """

    sequence: dict
    k: int
    algorithm: str = "alg3"
    trials: int = 1000
    seed: int = 0
    m: int | str = "auto"
    output: str | None = None
    csv: str | None = None
    workers: int = 1

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.m != "auto" and not isinstance(self.m, int):
            raise ValueError("m must be 'auto' or an integer")

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentConfig:
        unknown = set(data) - set(cls.__dataclass_fields__)
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def build_sequence(self) -> DegreeSequence:
        seq_cfg = dict(self.sequence)
        if "explicit" in seq_cfg:
            return validate_sequence(seq_cfg["explicit"], self.k)
        gen = seq_cfg.pop("generator", None)
        if gen == "regular":
            return generate_regular(seq_cfg["n"], seq_cfg["d"], self.k)
        if gen == "eq9":
            return generate_eq9_sequence(seq_cfg["n"], self.k)
        if gen == "random":
            return generate_random_valid(seq_cfg["n_max"], seq_cfg["d_max"], self.k, seq_cfg.get("seed", 0))
        raise ValueError(f"unknown sequence generator {gen!r}")


@dataclass
class ExperimentReport:
    config: dict
    n: int
    sigma: int
    trials: int
    completed: int
    allocation_errors: int
    simple_count: int
    p_hat: float | None
    stderr: float | None
    mean_loops: float
    loops_stderr: float
    bounds: dict = field(default_factory=dict)
    preconditions: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    verdict: str = "FAIL"
    mean_trial_seconds: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        out = asdict(self)
        if not timing:
            del out["mean_trial_seconds"]
        return out

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2) + "\n"

    CSV_FIELDS = ("algorithm", "k", "n", "sigma", "trials", "completed", "allocation_errors",
                  "p_hat", "stderr", "mean_loops", "verdict")

    def csv_row(self) -> dict:
        row = {f: getattr(self, f, None) for f in self.CSV_FIELDS}
        row["algorithm"] = self.config["algorithm"]
        row["k"] = self.config["k"]
        for name, b in self.bounds.items():
            row[f"bound_{name}"] = b["value"]
        return row

    def to_csv(self) -> str:
        row = self.csv_row()
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\n")
        writer.writeheader()
        writer.writerow(row)
        return buf.getvalue()


def _one_trial(args: tuple) -> tuple[str, int, int]:
    """Returns (status, loop_count, parallel_pair_count) for one seeded trial."""
    algorithm, pi, k, m, seed = args
    try:
        if algorithm == "alg3":
            out = sample_hypergraph(pi, k, seed)
        elif algorithm == "alg4":
            out = sample_hypergraph_2(pi, k, m, seed)
        else:
            out = config_model_sample(pi, k, seed)
    except AllocationError:
        return "allocation_error", 0, 0
    return "ok", out.report.loop_count, out.report.parallel_pair_count


def _run_chunk(args: tuple) -> list[tuple[str, int, int]]:
    algorithm, pi, k, m, seeds = args
    return [_one_trial((algorithm, pi, k, m, s)) for s in seeds]


def _bound_check(p_hat: float, stderr: float, bound: BoundValue) -> dict:
    return {
        "bound": bound.value,
        "threshold": bound.value - SE_MARGIN * stderr,
        "vacuous": bound.vacuous,
        "pass": p_hat >= bound.value - SE_MARGIN * stderr,
    }


def run_experiment(config: ExperimentConfig) -> ExperimentReport:
    """Run the configured trials and compare the simple-frequency to the bounds.

    The verdict is PASS when every applicable bound satisfies
    ``p_hat >= bound - 3 * stderr`` and no allocation error occurred while the
    bound's admissibility preconditions hold.
    """
    pi = config.build_sequence()
    k = config.k
    m = None
    if config.algorithm == "alg4":
        m = compute_m(pi, k) if config.m == "auto" else config.m

    bounds: dict[str, BoundValue] = {}
    alloc = None
    if config.algorithm == "alg3":
        bounds["theorem1"] = bound_theorem1(pi, k)
        alloc = allocation_alg3(pi, k)
    elif config.algorithm == "alg4":
        bounds["theorem2"] = bound_theorem2(pi, k, m)
        alloc = allocation_alg4(pi, k, m)
    if alloc is not None and len(alloc) == k + 1:
        from .allocation import is_valid_allocation

        if is_valid_allocation(alloc, pi, k):
            bounds["theorem3"] = bound_theorem3(alloc, pi)
    preconditions = {name: b.precondition_ok for name, b in bounds.items()
                     if b.precondition_ok is not None}

    seeds = [trial_seed(config.seed, t) for t in range(config.trials)]
    start = time.perf_counter()
    if config.workers > 1:
        size = -(-len(seeds) // config.workers)
        chunks = [(config.algorithm, pi, k, m, seeds[i:i + size])
                  for i in range(0, len(seeds), size)]
        with ProcessPoolExecutor(config.workers) as pool:
            results = [r for part in pool.map(_run_chunk, chunks) for r in part]
    else:
        results = _run_chunk((config.algorithm, pi, k, m, seeds))
    elapsed = time.perf_counter() - start

    ok = [(loops, par) for status, loops, par in results if status == "ok"]
    errors = len(results) - len(ok)
    simple = sum(1 for loops, par in ok if loops == 0 and par == 0)
    loops = [lp for lp, _ in ok]
    n_ok = len(ok)
    p_hat = simple / n_ok if n_ok else None
    stderr = math.sqrt(p_hat * (1 - p_hat) / n_ok) if n_ok else None
    mean_loops = statistics.fmean(loops) if loops else 0.0
    loops_se = statistics.stdev(loops) / math.sqrt(n_ok) if n_ok > 1 else 0.0

    checks: dict[str, dict] = {}
    if p_hat is not None:
        for name, b in bounds.items():
            checks[name] = _bound_check(p_hat, stderr, b)
    if config.algorithm == "baseline" and pi.sigma >= 2:
        eq1 = config_model_loop_lower_bound(pi, k)
        bounds["eq1_loops"] = BoundValue("eq1_loops", eq1)
        checks["eq1_loops"] = {
            "bound": eq1,
            "threshold": eq1 - SE_MARGIN * loops_se,
            "pass": mean_loops >= eq1 - SE_MARGIN * loops_se,
        }
    guaranteed = any(preconditions.values())
    checks["allocation"] = {
        "errors": errors,
        "guaranteed_admissible": guaranteed,
        "pass": not (guaranteed and errors),
    }
    if n_ok == 0:
        verdict = "INCONCLUSIVE"
    else:
        verdict = "PASS" if all(c["pass"] for c in checks.values()) else "FAIL"

    return ExperimentReport(
        config=asdict(config),
        n=pi.n,
        sigma=pi.sigma,
        trials=config.trials,
        completed=n_ok,
        allocation_errors=errors,
        simple_count=simple,
        p_hat=p_hat,
        stderr=stderr,
        mean_loops=mean_loops,
        loops_stderr=loops_se,
        bounds={name: b.to_dict() for name, b in bounds.items()},
        preconditions=preconditions,
        checks=checks,
        verdict=verdict,
        mean_trial_seconds=elapsed / len(results),
    )


def write_report(report: ExperimentReport, config: ExperimentConfig) -> None:
    if config.output:
        Path(config.output).write_text(report.to_json(timing=False))
    if config.csv:
        Path(config.csv).write_text(report.to_csv())


# -- runtime scaling ------------------------------------------------------------


def _time_sampler(pi: DegreeSequence, k: int, repeats: int, seed: int) -> float:
    best = math.inf
    for r in range(repeats):
        t0 = time.perf_counter()
        sample_hypergraph(pi, k, seed + r)
        best = min(best, time.perf_counter() - t0)
    return best


def _regular_near(sigma: int, d: int, k: int) -> DegreeSequence:
    n = max(sigma // d, k)
    while (n * d) % k:
        n -= 1
    return generate_regular(n, d, k)


def _loglog_slope(xs: Sequence[float], ys: Sequence[float]) -> float:
    slope, _ = statistics.linear_regression([math.log(x) for x in xs], [math.log(y) for y in ys])
    return slope


def runtime_scaling_probe(k: int, sizes: Sequence[int], d: int = 10, repeats: int = 3,
                          seed: int = 0, max_slope: float = 1.3) -> dict:
    """Time the greedy sampler on regular sequences of (about) the given ``sigma``.

    ``n`` is ``sigma // d`` rounded down until ``k`` divides ``n * d``. The
    verdict compares the least-squares log-log slope with ``max_slope``.
    """
    if list(sizes) != sorted(sizes):
        raise ValueError("sizes must be ascending")
    points = []
    for target in sizes:
        pi = _regular_near(target, d, k)
        points.append({"target": target, "n": pi.n, "sigma": pi.sigma,
                       "seconds": _time_sampler(pi, k, repeats, seed)})
    report = {"k": k, "d": d, "points": points, "max_slope": max_slope}
    if len(points) < 2:
        report.update(slope=None, verdict="INSUFFICIENT_POINTS",
                      note="need at least two sizes to fit a slope")
        return report
    slope = _loglog_slope([p["sigma"] for p in points], [p["seconds"] for p in points])
    report.update(slope=slope, verdict="PASS" if slope <= max_slope else "FAIL")
    return report


def k_scaling_probe(ks: Sequence[int], n: int, d: int, repeats: int = 3, seed: int = 0) -> dict:
    """Time the greedy sampler for several ``k`` at fixed ``n`` and ``d``."""
    points = []
    for k in ks:
        pi = generate_regular(n, d, k)
        points.append({"k": k, "seconds": _time_sampler(pi, k, repeats, seed)})
    return {"n": n, "d": d, "points": points}
