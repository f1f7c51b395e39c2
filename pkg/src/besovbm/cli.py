"""Command-line front end.

Subcommands: ``rho`` (Luxemburg sequence norms), ``besov-norm`` (path norms
from a CSV or an internally sampled path), and the experiment drivers
``bm-limit``, ``divergence``, ``maximal``, ``moments``, ``tau``,
``increment-variance``.  Shared flags: ``--config`` (flat key = value file),
``--seed``, ``--samples``, ``--depth``, ``--out``, ``--format``.  The exit
code is 0 iff every verdict passes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import replace

import numpy as np

from . import besov, harness, orlicz
from .simulate import PathSample, RngSeed, sample_bm
from .spaces import finite_lq, truncated_lp

EXPERIMENT_COMMANDS = {
    "bm-limit": "scaled dyadic increment norms against the moment of |W(1)|",
    "divergence": "growth of partial q-sums of the smoothness seminorm",
    "maximal": "expected-supremum sandwich for Gaussian ensembles",
    "moments": "first moments of Besov and Orlicz-Besov path norms",
    "tau": "empirical minimum of the Besov norm (small-ball probe)",
    "increment-variance": "weak variance of lag-c increments in L^p",
}


def _parse_exponent(text: str) -> float:
    if text.lower() in ("inf", "infinity", "oo"):
        return math.inf
    return float(text)


def _build_space(kind: str, exponent: float, dim: int):
    if kind == "finite_lq":
        return finite_lq(dim, exponent)
    if kind == "truncated_lp":
        return truncated_lp(exponent, dim)
    raise SystemExit(f"error: unknown space kind {kind!r}")


def _read_sequence(args) -> np.ndarray:
    if args.sequence is not None:
        return np.array([float(t) for t in args.sequence.split(",") if t.strip()])
    if args.sequence_file is not None:
        with open(args.sequence_file, "r", encoding="utf-8") as handle:
            return np.array([float(line) for line in handle if line.strip()])
    raise SystemExit("error: provide --sequence or --sequence-file")


def _cmd_rho(args) -> int:
    phi = orlicz.theta() if args.function == "theta" else orlicz.phi_beta(args.beta)
    value = orlicz.luxemburg_norm(phi, _read_sequence(args))
    print(format(value, ".12g"))
    return 0


def write_path_csv(path: PathSample, out) -> None:
    """Dump a sampled path as CSV with columns k, t, coord_1..coord_d."""
    d = path.space.dim
    header = "k,t," + ",".join(f"coord_{i + 1}" for i in range(d))
    times = path.times()
    with open(out, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(header + "\n")
        for k in range(path.grid_size + 1):
            coords = ",".join(format(v, ".17g") for v in path.values[k])
            handle.write(f"{k},{format(times[k], '.12g')},{coords}\n")


def read_path_csv(source, space=None) -> PathSample:
    """Rebuild a PathSample from the k,t,coord_1..coord_d CSV format."""
    with open(source, "r", encoding="utf-8") as handle:
        header = handle.readline().strip().split(",")
        if header[:2] != ["k", "t"]:
            raise ValueError("path CSV must start with columns k,t")
        dim = len(header) - 2
        rows = [line.strip().split(",") for line in handle if line.strip()]
    values = np.array([[float(c) for c in row[2:]] for row in rows])
    depth = int(round(math.log2(len(rows) - 1)))
    if (1 << depth) + 1 != len(rows):
        raise ValueError("path CSV must contain 2^depth + 1 grid rows")
    if space is None:
        space = finite_lq(dim, 2.0)
    return PathSample(space, depth, values)


def _cmd_besov_norm(args) -> int:
    if args.path_csv:
        space = None
        if args.space_kind:
            space = _build_space(args.space_kind, _parse_exponent(args.space_p), args.space_dim)
        path = read_path_csv(args.path_csv, space)
    else:
        space = _build_space(args.space_kind or "finite_lq",
                             _parse_exponent(args.space_p), args.space_dim)
        sigma = [float(t) for t in args.sigma.split(",") if t.strip()]
        path = sample_bm(space, sigma, args.depth, RngSeed(args.seed, args.stream))
        if args.dump_path:
            write_path_csv(path, args.dump_path)
    n_max = args.n_max or besov.default_n_max(path.depth)
    params = besov.BesovParams(args.alpha, args.p, _parse_exponent(args.q), n_max)
    report = besov.besov_norm(path, params)
    payload = {
        "alpha": args.alpha,
        "p": args.p,
        "q": "inf" if math.isinf(params.q) else params.q,
        "n_max": n_max,
        "lp_part": report.lp_part,
        "seminorm_part": report.seminorm_part,
        "total": report.total,
    }
    print(json.dumps(payload, indent=2, sort_keys=True))
    if args.per_scale_csv:
        with open(args.per_scale_csv, "w", encoding="utf-8", newline="\n") as handle:
            handle.write("n,weighted_increment_norm\n")
            for n, term in report.per_scale:
                handle.write(f"{n},{format(term, '.12g')}\n")
    return 0


def _experiment_config(args) -> harness.ExperimentConfig:
    mapping = harness.parse_config_file(args.config) if args.config else {}
    cfg = harness.config_from_mapping(args.experiment, mapping)
    if args.seed is not None:
        cfg = replace(cfg, seed=RngSeed(args.seed, cfg.seed.stream))
    if args.samples is not None:
        cfg = replace(cfg, mc_samples=args.samples)
    if args.paths is not None:
        cfg = replace(cfg, paths=args.paths)
    if args.depth is not None:
        cfg = replace(cfg, depth=args.depth)
    if args.out is not None:
        cfg = replace(cfg, out_path=args.out)
    if args.format is not None:
        cfg = replace(cfg, formats=tuple(t.strip() for t in args.format.split(",") if t.strip()))
    return cfg


def _cmd_experiment(args) -> int:
    cfg = _experiment_config(args)
    mapping = harness.parse_config_file(args.config) if args.config else {}
    ensembles = harness.ensembles_from_mapping(mapping) or None
    if cfg.experiment == "maximal":
        pairs = harness.run_maximal_experiment(cfg, ensembles)
        result = harness._maximal_result(pairs)
        if cfg.out_path:
            harness.emit_maximal_csv(pairs, cfg.out_path + ".csv")
            extra = tuple(f for f in cfg.formats if f != "csv")
            if extra:
                harness.emit_report(result, cfg.out_path, extra)
    else:
        result = harness.run(cfg)
        if cfg.out_path:
            harness.emit_report(result, cfg.out_path, cfg.formats)
    for row in result.rows:
        status = "PASS" if row.verdict else "FAIL"
        label = " ".join(row.params)
        ref = "" if row.reference is None else f" ref={harness._fmt(row.reference)}"
        print(f"{status} {result.experiment} {label}: estimate={harness._fmt(row.estimate)}{ref}")
    print(f"{result.experiment}: {'all verdicts pass' if result.all_pass() else 'verdict failures present'}")
    return 0 if result.all_pass() else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="besovbm", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    rho = sub.add_parser("rho", help="Luxemburg norm of a weight sequence")
    rho.add_argument("--function", choices=("theta", "phi-beta"), default="theta")
    rho.add_argument("--beta", type=float, default=2.0)
    rho.add_argument("--sequence", help="comma-separated weights")
    rho.add_argument("--sequence-file", help="file with one real per line")
    rho.set_defaults(func=_cmd_rho)

    bn = sub.add_parser("besov-norm", help="Besov norm of a path (CSV or sampled)")
    bn.add_argument("--path-csv", help="read the path from a k,t,coord CSV")
    bn.add_argument("--alpha", type=float, default=0.5)
    bn.add_argument("--p", type=float, default=2.0)
    bn.add_argument("--q", default="inf")
    bn.add_argument("--n-max", type=int, default=None)
    bn.add_argument("--depth", type=int, default=16)
    bn.add_argument("--seed", type=int, default=harness.DEFAULT_SEED)
    bn.add_argument("--stream", type=int, default=1)
    bn.add_argument("--sigma", default="1.0")
    bn.add_argument("--space-kind", choices=("finite_lq", "truncated_lp"), default=None)
    bn.add_argument("--space-p", default="2")
    bn.add_argument("--space-dim", type=int, default=1)
    bn.add_argument("--per-scale-csv", help="write the per-scale weighted terms")
    bn.add_argument("--dump-path", help="dump the sampled path as CSV")
    bn.set_defaults(func=_cmd_besov_norm)

    for name, help_text in EXPERIMENT_COMMANDS.items():
        exp = sub.add_parser(name, help=help_text)
        exp.add_argument("--config", help="flat key = value config file")
        exp.add_argument("--seed", type=int, default=None)
        exp.add_argument("--samples", type=int, default=None)
        exp.add_argument("--paths", type=int, default=None)
        exp.add_argument("--depth", type=int, default=None)
        exp.add_argument("--out", default=None, help="report base path (no extension)")
        exp.add_argument("--format", default=None, help="comma list of csv,json-text,svg")
        exp.set_defaults(func=_cmd_experiment, experiment=name)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
