"""Command-line interface.

Exit codes: 0 success, 1 inadmissible sequence or parameter, 2 allocation
error, 3 internal invariant violation, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .allocation import is_valid_allocation
from .baseline import config_model_sample
from .bounds import (
    BoundValue,
    bound_theorem1,
    bound_theorem2,
    bound_theorem3,
    config_model_loop_lower_bound,
    corollary_conditions,
)
from .core import format_edges, read_sequence, simplicity_report, validate_sequence
from .errors import AllocationError, InternalInvariantError, SequenceError, TooLarge
from .experiments import (
    ExperimentConfig,
    run_experiment,
    runtime_scaling_probe,
    simple_frequency,
    write_report,
)
from .oracle import DEFAULT_MAX_SIGMA, exact_distribution
from .sampler import (
    allocation_alg3,
    allocation_alg4,
    compute_m,
    sample_hypergraph,
    sample_hypergraph_2,
)

EXIT_OK, EXIT_INVALID, EXIT_ALLOCATION, EXIT_INTERNAL, EXIT_USAGE = 0, 1, 2, 3, 64

CONFIG_SCHEMA_PATH = Path(__file__).with_name("experiment_config.schema.json")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage()}")


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2) + "\n")


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _m_arg(text: str):
    return "auto" if text == "auto" else int(text)


def _sizes(text: str) -> list[int]:
    return [int(float(s)) for s in text.replace(",", " ").split()]


def _load(args) -> tuple:
    pi = validate_sequence(read_sequence(args.seqfile), args.k)
    return pi, args.k


def _resolve_m(pi, k, m):
    return compute_m(pi, k) if m == "auto" else m


def _allocation(args, pi, k):
    if args.alg == 4:
        return allocation_alg4(pi, k, _resolve_m(pi, k, args.m))
    return allocation_alg3(pi, k)


def _write_edges(text: str, out: str, summary: dict) -> None:
    if out == "-":
        sys.stdout.write(text)
        sys.stderr.write(json.dumps(summary, indent=2) + "\n")
    else:
        Path(out).write_text(text)
        _emit(summary)


def cmd_validate(args) -> int:
    pi, k = _load(args)
    _emit({"valid": True, "k": k, "n": pi.n, "sigma": pi.sigma, "edges": pi.sigma // k})
    return EXIT_OK


def cmd_sample(args) -> int:
    pi, k = _load(args)
    if args.alg == 4:
        m = _resolve_m(pi, k, args.m)
        out = sample_hypergraph_2(pi, k, m, args.seed)
    else:
        m = None
        out = sample_hypergraph(pi, k, args.seed)
    summary = {"algorithm": f"alg{args.alg}", "seed": args.seed, **out.to_dict()}
    if m is not None:
        summary["m"] = m
    if args.dump_allocation:
        summary["allocation"] = _allocation(args, pi, k).to_json()
    _write_edges(format_edges(out.hypergraph), args.out, summary)
    return EXIT_OK


def cmd_baseline(args) -> int:
    pi, k = _load(args)
    out = config_model_sample(pi, k, args.seed)
    summary = {"algorithm": "configuration_model", "seed": args.seed, **out.to_dict()}
    del summary["allocation_sizes"]
    _write_edges(format_edges(out.hypergraph), args.out, summary)
    return EXIT_OK


def cmd_bounds(args) -> int:
    pi, k = _load(args)
    result: dict[str, dict] = {"theorem1": bound_theorem1(pi, k).to_dict()}
    alloc = allocation_alg3(pi, k)
    if is_valid_allocation(alloc, pi, k):
        result["theorem3_alg3"] = bound_theorem3(alloc, pi).to_dict()
    if k >= 4:
        m = _resolve_m(pi, k, args.m)
        result["theorem2"] = bound_theorem2(pi, k, m).to_dict()
        alloc4 = allocation_alg4(pi, k, m)
        if is_valid_allocation(alloc4, pi, k):
            result["theorem3_alg4"] = bound_theorem3(alloc4, pi).to_dict()
    if pi.sigma >= 2:
        eq1 = config_model_loop_lower_bound(pi, k)
        result["eq1_loops"] = BoundValue("eq1_loops", eq1).to_dict()
        result["eq1_loops"]["clamped"] = eq1  # an expectation, not a probability
    result["corollaries"] = corollary_conditions(pi, k, args.C, args.alpha)
    _emit(result)
    return EXIT_OK


def cmd_oracle(args) -> int:
    pi, k = _load(args)
    alloc = _allocation(args, pi, k)
    if not is_valid_allocation(alloc, pi, k):
        raise AllocationError(f"allocation sizes {list(alloc.sizes)} exceed sigma/k")
    dist = exact_distribution(pi, alloc, args.max_sigma)
    outcomes = []
    simple_p = 0
    for h, p in sorted(dist.items(), key=lambda item: item[0].edges):
        simple = simplicity_report(h).is_simple
        simple_p += p if simple else 0
        outcomes.append({"edges": [list(e) for e in h.edges], "probability": str(p),
                         "float": float(p), "simple": simple})
    result = {
        "k": k,
        "sigma": pi.sigma,
        "allocation": alloc.to_json(),
        "outcomes": outcomes,
        "simple_probability": str(simple_p),
        "simple_probability_float": float(simple_p),
        "theorem3": bound_theorem3(alloc, pi).to_dict(),
    }
    if args.seed is not None:
        hits, _ = simple_frequency(pi, alloc, args.trials, args.seed)
        result["monte_carlo"] = {"seed": args.seed, "trials": args.trials,
                                 "simple_frequency": hits / args.trials}
    _emit(result)
    return EXIT_OK


def cmd_experiment(args) -> int:
    try:
        data = json.loads(Path(args.configfile).read_text())
        config = ExperimentConfig.from_dict(data)
        config.build_sequence()
    except SequenceError:
        raise
    except (OSError, ValueError, TypeError, KeyError) as exc:
        raise UsageError(f"invalid experiment config: {exc}\nschema:\n"
                         + CONFIG_SCHEMA_PATH.read_text()) from None
    report = run_experiment(config)
    write_report(report, config)
    sys.stdout.write(report.to_json(timing=False))
    sys.stderr.write(json.dumps({"mean_trial_seconds": report.mean_trial_seconds}) + "\n")
    return EXIT_OK


def cmd_scaling(args) -> int:
    _emit(runtime_scaling_probe(args.k, args.sizes, d=args.d, repeats=args.repeats,
                                seed=args.seed))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hyperbox", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def seq_command(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("seqfile")
        p.add_argument("--k", type=int, required=True)
        p.set_defaults(func=func)
        return p

    seq_command("validate", cmd_validate, "check sequence admissibility")

    p = seq_command("sample", cmd_sample, "sample a hypergraph")
    p.add_argument("--alg", type=int, choices=(3, 4), default=3)
    p.add_argument("--m", type=_m_arg, default="auto")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--out", required=True, help="edge-list file, or - for stdout")
    p.add_argument("--dump-allocation", action="store_true")

    p = seq_command("bounds", cmd_bounds, "evaluate probability bounds")
    p.add_argument("--m", type=_m_arg, default="auto")
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--alpha", type=float, default=0.0)

    p = seq_command("oracle", cmd_oracle, "exact outcome distribution on tiny instances")
    p.add_argument("--alg", type=int, choices=(3, 4), default=3)
    p.add_argument("--m", type=_m_arg, default="auto")
    p.add_argument("--seed", type=_seed, default=None,
                   help="also run a seeded Monte Carlo comparison")
    p.add_argument("--trials", type=int, default=10_000)
    p.add_argument("--max-sigma", type=int, default=DEFAULT_MAX_SIGMA)

    p = seq_command("baseline", cmd_baseline, "configuration-model sample")
    p.add_argument("--seed", type=_seed, required=True)
    p.add_argument("--out", required=True)

    p = sub.add_parser("experiment", help="run a Monte Carlo experiment from JSON config")
    p.add_argument("configfile")
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("scaling", help="runtime vs sigma probe")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--sizes", type=_sizes, required=True, help="e.g. 1e4,1e5,1e6")
    p.add_argument("--d", type=int, default=10)
    p.add_argument("--repeats", type=int, default=3)
    p.add_argument("--seed", type=_seed, default=0)
    p.set_defaults(func=cmd_scaling)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE
    except (SequenceError, TooLarge) as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_INVALID
    except AllocationError as exc:
        sys.stderr.write(f"AllocationError: {exc}\n")
        return EXIT_ALLOCATION
    except InternalInvariantError as exc:
        sys.stderr.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_INTERNAL
    except OSError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
