"""Command-line front end: reproducible sampling, search, and sweep experiments.

Exit codes: 0 success, 1 domain error (divisibility, capacity, bad values),
2 usage error.  Every randomized subcommand requires an explicit --seed, and
every run echoes its resolved configuration (seed included) so results can be
reproduced from the output alone.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .core import (
    HyperHamError,
    hypergraph_from_text,
    hypergraph_to_text,
    validate_params,
)
from .harness import (
    PRESET_NAMES,
    pancyclicity_records_to_csv,
    pancyclicity_records_to_json,
    pancyclicity_sweep,
    preset,
    sweep,
    sweep_result_to_csv,
    sweep_result_to_json,
    write_text_atomic,
)
from .model import ModelSpec, sample, sample_sparse
from .oracle import NBA_REPORT_HEADER, brute_force_nba, nba_report_rows
from .search import count_distinct_cycles, count_hamperms, find_hamilton, is_pancyclic


def _echo(msg: str) -> None:
    print(f"# {msg}", file=sys.stderr)


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        write_text_atomic(path, text)


def _read_hypergraph(path: str):
    with open(path, "r") as fh:
        return hypergraph_from_text(fh.read())


def _parse_grid(text: str) -> tuple[float, ...]:
    return tuple(float(tok) for tok in text.split(",") if tok.strip())


# ---------------------------------------------------------------------------
# subcommand handlers


def _cmd_sample(args) -> int:
    spec = ModelSpec(n=args.n, k=args.k, p=args.p, seed=args.seed)
    H = sample_sparse(spec) if args.sparse else sample(spec)
    _echo(f"sample n={args.n} k={args.k} p={args.p!r} seed={args.seed} "
          f"sparse={args.sparse} edges={len(H.edges)}")
    _write_output(hypergraph_to_text(H), args.output)
    return 0


def _cmd_check(args) -> int:
    H = _read_hypergraph(args.input)
    result = find_hamilton(H, args.ell)
    _echo(f"check input={args.input} n={H.n} k={H.k} ell={args.ell} "
          f"nodes_explored={result.nodes_explored}")
    lines = [f"hamiltonian: {'true' if result.found else 'false'}"]
    if result.witness is not None:
        lines.append(" ".join(str(v) for v in result.witness.pi))
        for e in result.witness.induced_edges:
            lines.append(" ".join(str(v) for v in e))
    _write_output("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_count(args) -> int:
    H = _read_hypergraph(args.input)
    hamperms = count_hamperms(H, args.ell)
    cycles = count_distinct_cycles(H, args.ell)
    _echo(f"count input={args.input} n={H.n} k={H.k} ell={args.ell}")
    _write_output(f"hamperms: {hamperms}\ndistinct_cycles: {cycles}\n", args.output)
    return 0


def _cmd_oracle(args) -> int:
    params = validate_params(args.n, args.k, args.ell)
    table = brute_force_nba(params)
    lines = [
        f"# oracle n={params.n} k={params.k} ell={params.ell} m={params.m} "
        f"zero_count={table.zero_count}",
        NBA_REPORT_HEADER,
    ]
    for b, a, count, basic, refined, slack in nba_report_rows(table):
        refined_s = "" if refined is None else repr(refined)
        lines.append(f"{b},{a},{count},{basic!r},{refined_s},{slack!r}")
    _write_output("\n".join(lines) + "\n", args.output)
    return 0


def _cmd_sweep(args) -> int:
    c_grid = _parse_grid(args.c) if args.c else None
    spec = preset(args.preset, k=args.k, n=args.n, seed=args.seed, ell=args.ell,
                  trials=args.trials, c_grid=c_grid, jobs=args.jobs,
                  coupled=not args.independent)
    result = sweep(spec)
    # jobs is echoed to stderr only: output bytes must not depend on parallelism
    _echo(f"sweep jobs={spec.jobs}")
    config = {
        "command": "sweep", "preset": args.preset, "n": spec.n, "k": spec.k,
        "ell": spec.ell, "scaling_exponent": spec.scaling_exponent,
        "log_factor": spec.log_factor, "trials": spec.trials,
        "seed": spec.base_seed, "coupled": spec.coupled,
        "c_grid": ",".join(repr(c) for c in spec.c_grid),
    }
    if args.format == "json":
        text = sweep_result_to_json(result, config)
    else:
        text = sweep_result_to_csv(result, config)
    _write_output(text, args.output)
    return 0


def _cmd_pancyclic(args) -> int:
    if args.input is not None:
        H = _read_hypergraph(args.input)
        ok, missing = is_pancyclic(H)
        _echo(f"pancyclic input={args.input} n={H.n} k={H.k}")
        lines = [f"pancyclic: {'true' if ok else 'false'}"]
        if missing is not None:
            lines.append(f"first_missing: {missing}")
        _write_output("\n".join(lines) + "\n", args.output)
        return 0
    missing_flags = [flag for flag, val in
                     (("--n", args.n), ("--k", args.k), ("--p", args.p),
                      ("--seed", args.seed)) if val is None]
    if missing_flags:
        print(f"error: pancyclic sweep requires {' '.join(missing_flags)} "
              f"(or --input for a single instance)", file=sys.stderr)
        return 2
    p_grid = _parse_grid(args.p)
    records = pancyclicity_sweep(args.n, args.k, p_grid, args.trials, args.seed,
                                 jobs=args.jobs, coupled=not args.independent)
    _echo(f"pancyclic jobs={args.jobs}")
    config = {
        "command": "pancyclic", "n": args.n, "k": args.k,
        "p_grid": ",".join(repr(p) for p in p_grid), "trials": args.trials,
        "seed": args.seed, "coupled": not args.independent,
    }
    if args.format == "json":
        text = pancyclicity_records_to_json(records, config)
    else:
        text = pancyclicity_records_to_csv(records, config)
    _write_output(text, args.output)
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hyperham",
        description="Overlap Hamilton cycles in random k-uniform hypergraphs")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sample = sub.add_parser("sample", help="draw one H(n,p,k) instance")
    p_sample.add_argument("--n", type=int, required=True)
    p_sample.add_argument("--k", type=int, required=True)
    p_sample.add_argument("--p", type=float, required=True)
    p_sample.add_argument("--seed", type=int, required=True)
    p_sample.add_argument("--sparse", action="store_true",
                          help="use the binomial-count sampler")
    p_sample.add_argument("--output")
    p_sample.set_defaults(func=_cmd_sample)

    p_check = sub.add_parser("check", help="decide overlap-ell Hamiltonicity")
    p_check.add_argument("--ell", type=int, required=True)
    p_check.add_argument("--input", required=True)
    p_check.add_argument("--output")
    p_check.set_defaults(func=_cmd_check)

    p_count = sub.add_parser("count", help="count hamperms and distinct cycles")
    p_count.add_argument("--ell", type=int, required=True)
    p_count.add_argument("--input", required=True)
    p_count.add_argument("--output")
    p_count.set_defaults(func=_cmd_count)

    p_oracle = sub.add_parser(
        "oracle", help="brute-force profile table with bound comparison")
    p_oracle.add_argument("--n", type=int, required=True)
    p_oracle.add_argument("--k", type=int, required=True)
    p_oracle.add_argument("--ell", type=int, required=True)
    p_oracle.add_argument("--output")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_sweep = sub.add_parser("sweep", help="Monte Carlo threshold sweep")
    p_sweep.add_argument("--preset", required=True, choices=PRESET_NAMES)
    p_sweep.add_argument("--n", type=int, required=True)
    p_sweep.add_argument("--k", type=int, required=True)
    p_sweep.add_argument("--ell", type=int, help="required for preset mid-ell")
    p_sweep.add_argument("--c", help="comma-separated c grid override")
    p_sweep.add_argument("--trials", type=int, default=200)
    p_sweep.add_argument("--seed", type=int, required=True)
    p_sweep.add_argument("--jobs", type=int, default=1)
    p_sweep.add_argument("--independent", action="store_true",
                         help="sample each grid point independently "
                              "instead of the coupled-uniform default")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument("--output")
    p_sweep.set_defaults(func=_cmd_sweep)

    p_pan = sub.add_parser(
        "pancyclic", help="check one instance (--input) or sweep a p grid")
    p_pan.add_argument("--input")
    p_pan.add_argument("--n", type=int)
    p_pan.add_argument("--k", type=int)
    p_pan.add_argument("--p", help="comma-separated p grid")
    p_pan.add_argument("--trials", type=int, default=200)
    p_pan.add_argument("--seed", type=int)
    p_pan.add_argument("--jobs", type=int, default=1)
    p_pan.add_argument("--independent", action="store_true")
    p_pan.add_argument("--format", choices=("csv", "json"), default="csv")
    p_pan.add_argument("--output")
    p_pan.set_defaults(func=_cmd_pancyclic)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except HyperHamError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))
