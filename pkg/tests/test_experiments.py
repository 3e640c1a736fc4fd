import csv
import io
import json
import math

import pytest
from hypothesis import given, settings, strategies as st

from hyperbox.core import validate_sequence
from hyperbox.errors import InfeasibleRepair
from hyperbox.experiments import (
    ExperimentConfig,
    generate_eq9_sequence,
    generate_random_valid,
    generate_regular,
    k_scaling_probe,
    repair_divisibility,
    run_experiment,
    runtime_scaling_probe,
    smallest_positive_theorem2_n,
    trial_seed,
    write_report,
)
from hyperbox.sampler import compute_m


def test_repair_bumps_rightmost_incrementable_entry():
    assert repair_divisibility([5, 5, 3, 3, 3], 3) == [5, 5, 4, 4, 3]
    assert repair_divisibility([2, 2, 2, 2], 3) == [3, 2, 2, 2]
    assert repair_divisibility([4, 2, 1], 4) == [4, 2, 2]
    assert repair_divisibility([4, 2, 2], 3) == [4, 3, 2]


@pytest.mark.parametrize("n", [64, 100, 500, 1000, 4096, 10_000])
@pytest.mark.parametrize("k", [3, 4, 5])
def test_eq9_is_admissible_and_deterministic(n, k):
    pi = generate_eq9_sequence(n, k)
    assert validate_sequence(pi.degrees, k) == pi
    assert generate_eq9_sequence(n, k) == pi
    assert pi.n == n


def test_eq9_shape_at_ten_thousand():
    pi = generate_eq9_sequence(10_000, 4)
    heads = math.ceil(math.log(10_000))
    assert pi.degrees[0] == math.floor(10_000 / math.log(10_000) ** 3)
    assert pi.degrees[heads] <= math.floor(100 / math.log(10_000)) + 1
    m = compute_m(pi, 4)
    assert pi.d(m) ** 3 < pi.sigma


def test_eq9_too_small():
    with pytest.raises(InfeasibleRepair):
        generate_eq9_sequence(2, 3)  # [6, 2]: the hub is too large


def test_regular():
    assert generate_regular(300, 3, 3).sigma == 900
    assert generate_regular(4, 3, 3).degrees == (3, 3, 3, 3)
    with pytest.raises(InfeasibleRepair):
        generate_regular(5, 1, 3)
    with pytest.raises(InfeasibleRepair):
        generate_regular(2, 3, 3)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32), st.integers(3, 10))
def test_random_valid_is_admissible(seed, k):
    pi = generate_random_valid(100, 20, k, seed)
    assert validate_sequence(pi.degrees, k) == pi
    assert generate_random_valid(100, 20, k, seed) == pi


def test_trial_seed_scheme():
    seeds = {trial_seed(7, t) for t in range(1000)}
    assert len(seeds) == 1000
    assert all(0 <= s < 2**64 for s in seeds)
    assert trial_seed(7, 3) == trial_seed(7, 3) != trial_seed(8, 3)


def test_smallest_positive_theorem2_n():
    grid = [2**e for e in range(6, 15)]
    n = smallest_positive_theorem2_n(grid, 4)
    assert n in grid
    pi = generate_eq9_sequence(n, 4)
    from hyperbox.bounds import bound_theorem2

    b = bound_theorem2(pi, 4, compute_m(pi, 4))
    assert b.value > 0 and b.precondition_ok


def test_all_ones_is_always_simple():
    cfg = ExperimentConfig({"explicit": [1, 1, 1, 1]}, 4, "alg3", trials=100, seed=1)
    rep = run_experiment(cfg)
    assert rep.p_hat == 1 and rep.stderr == 0
    assert rep.verdict == "PASS"


def test_report_invariants_and_determinism():
    cfg = ExperimentConfig({"generator": "regular", "n": 30, "d": 3}, 3, "alg3", trials=300, seed=5)
    a, b = run_experiment(cfg), run_experiment(cfg)
    assert a.to_json(timing=False) == b.to_json(timing=False)
    assert 0 <= a.p_hat <= 1
    assert a.stderr == pytest.approx(math.sqrt(a.p_hat * (1 - a.p_hat) / a.completed))
    assert "theorem1" in a.bounds and "theorem3" in a.bounds
    assert a.verdict == "PASS"
    assert a.mean_trial_seconds > 0


def test_parallel_workers_give_identical_report():
    base = dict(sequence={"generator": "regular", "n": 24, "d": 2}, k=3, trials=200, seed=11)
    serial = run_experiment(ExperimentConfig(**base))
    parallel = run_experiment(ExperimentConfig(**base, workers=2))
    assert serial.to_dict(timing=False)["checks"] == parallel.to_dict(timing=False)["checks"]
    assert serial.simple_count == parallel.simple_count


def test_alg4_and_baseline():
    rep = run_experiment(ExperimentConfig({"generator": "eq9", "n": 256}, 4, "alg4", trials=200))
    assert rep.preconditions["theorem2"] is True
    assert rep.allocation_errors == 0 and rep.verdict == "PASS"
    rep = run_experiment(ExperimentConfig({"explicit": [3, 3, 3, 3]}, 3, "baseline", trials=2000))
    assert "eq1_loops" in rep.checks and rep.verdict == "PASS"


def test_allocation_errors_are_counted():
    rep = run_experiment(ExperimentConfig({"explicit": [5, 5, 5, 5, 4]}, 3, "alg3", trials=10))
    assert rep.allocation_errors == 10
    assert rep.preconditions == {"theorem1": False}
    assert rep.verdict == "INCONCLUSIVE"


def test_bad_config():
    with pytest.raises(ValueError):
        ExperimentConfig({"explicit": [1, 1, 1]}, 3, "alg5")
    with pytest.raises(ValueError):
        ExperimentConfig.from_dict({"sequence": {"explicit": [1, 1, 1]}, "k": 3, "bogus": 1})
    with pytest.raises(ValueError):
        ExperimentConfig({"explicit": [1, 1, 1]}, 3, trials=0)


def test_write_report(tmp_path):
    cfg = ExperimentConfig({"explicit": [2, 2, 1, 1]}, 3, trials=50,
                           output=str(tmp_path / "r.json"), csv=str(tmp_path / "r.csv"))
    rep = run_experiment(cfg)
    write_report(rep, cfg)
    data = json.loads((tmp_path / "r.json").read_text())
    assert data["simple_count"] == rep.simple_count and "mean_trial_seconds" not in data
    rows = list(csv.DictReader(io.StringIO((tmp_path / "r.csv").read_text())))
    assert len(rows) == 1 and rows[0]["verdict"] == rep.verdict


def test_config_schema_accepts_examples():
    jsonschema = pytest.importorskip("jsonschema")
    from hyperbox.cli import CONFIG_SCHEMA_PATH

    schema = json.loads(CONFIG_SCHEMA_PATH.read_text())
    for cfg in (
        {"sequence": {"explicit": [3, 3, 3, 3]}, "k": 3},
        {"sequence": {"generator": "eq9", "n": 64}, "k": 4, "algorithm": "alg4", "m": "auto"},
        {"sequence": {"generator": "regular", "n": 300, "d": 3}, "k": 3, "trials": 10, "seed": 1},
    ):
        jsonschema.validate(cfg, schema)
        ExperimentConfig.from_dict(cfg)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({"sequence": {"explicit": [1]}, "k": 3, "bogus": 1}, schema)


def test_scaling_single_point():
    rep = runtime_scaling_probe(3, [3000])
    assert rep["slope"] is None and rep["verdict"] == "INSUFFICIENT_POINTS"
    with pytest.raises(ValueError):
        runtime_scaling_probe(3, [10**5, 10**4])


@pytest.mark.slow
def test_time_grows_at_most_linearly_in_k():
    # n*d = 120000 is divisible by 3, 6 and 12
    rep = k_scaling_probe([3, 6, 12], n=12_000, d=10)
    t = {p["k"]: p["seconds"] for p in rep["points"]}
    assert t[6] <= 2 * t[3] * 1.25
    assert t[12] <= 2 * t[6] * 1.25
