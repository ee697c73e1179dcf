"""Command-line experiment runner.

Subcommands::

    ergokit run --preset E3 --output report.json
    ergokit probe power --symbol phi_alpha --alpha 0.25 --dim 2048 --horizon 512
    ergokit gap --symbol sigma --n 10 --m 2 --dim 256
    ergokit symbolcheck --spec symbol.txt --m 2
    ergokit norm --poly diag:m=2:c=1,2,3 --p 2 --dim 8

Exit codes: 0 success (and, for ``run``, all expected checks hold),
1 expected checks failed, 2 invalid configuration, 3 support overflow
(the truncation is too small; raise --dim), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import sys

import ergokit
from ergokit import kernels
from ergokit.errors import ConfigError, SupportOverflowError
from ergokit.ergodics import (
    ergodic_gap,
    mean_ergodic_probe,
    orbit_profile,
    power_bounded_probe,
    cesaro_bounded_probe,
    stable_orbit_probe,
)
from ergokit.polyspace import coordinate_power_sum, diagonal, functional_power, poly_norm
from ergokit.presets import load_config_file, make_config, run_experiment
from ergokit.report import emit_report
from ergokit.seqspace import SpaceSpec, basis, from_coords, random_unit
from ergokit.shift_ops import operator_from_name
from ergokit.symbol_check import linearity_check, parse_symbol_block, well_defined_check

EXIT_CHECKS_FAILED = 1
EXIT_CONFIG = 2
EXIT_OVERFLOW = 3
EXIT_IO = 4


def _add_space_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--kind", choices=("lp", "c0"), default="lp")
    p.add_argument("--p", type=float, default=2.0, help="l_p exponent")
    p.add_argument("--dim", type=int, default=4096, help="truncation dimension")


def _add_symbol_args(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--symbol",
        default="sigma",
        help="sigma|backward|phi_alpha|psi_alpha|forward|identity|scale",
    )
    p.add_argument("--alpha", type=float, default=None, help="shift weight exponent")
    p.add_argument("--factor", type=complex, default=None, help="scale factor")


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--output", default=None, help="file (json) or directory (csv)")
    p.add_argument("--no-timing", action="store_true",
                   help="omit the wall-clock field for byte-stable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ergokit",
        description="composition-operator dynamics probes on truncated sequence spaces",
    )
    parser.add_argument("--version", action="version", version=ergokit.__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a preset experiment battery")
    run.add_argument("--preset", default=None,
                     help="E1|E2|E3|E4|E5|custom (default E4)")
    run.add_argument("--config", default=None, help="key=value config file")
    run.add_argument("--m", type=int, default=None)
    run.add_argument("--alpha", type=float, default=None)
    run.add_argument("--horizon", type=int, default=None)
    run.add_argument("--cesaro-start", dest="cesaro_start", type=int, default=None)
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--jobs", type=int, default=None)
    run.add_argument("--kind", choices=("lp", "c0"), default=None)
    run.add_argument("--p", type=float, default=None)
    run.add_argument("--dim", type=int, default=None)
    run.add_argument("--symbol", default=None, help="custom preset symbol")
    run.add_argument("--factor", type=complex, default=None)
    run.add_argument("--format", choices=("json", "csv"), default=None)
    run.add_argument("--output", default=None)
    run.add_argument("--no-timing", action="store_true")

    probe = sub.add_parser("probe", help="run a single generic probe")
    probe.add_argument("what", choices=("power", "cesaro", "ergodic", "orbit", "stable"))
    _add_symbol_args(probe)
    _add_space_args(probe)
    probe.add_argument("--horizon", type=int, default=512)
    probe.add_argument("--m", type=int, default=2)
    probe.add_argument("--start", type=int, default=1, choices=(0, 1))
    probe.add_argument("--tol", type=float, default=1e-2)
    probe.add_argument("--cap", type=float, default=4.0)
    probe.add_argument("--witness-index", type=int, default=1,
                       help="basis index for orbit/ergodic vector targets")
    probe.add_argument("--target", choices=("poly", "vector"), default="poly")
    probe.add_argument("--samples-basis", type=int, default=64)
    probe.add_argument("--samples-random", type=int, default=4)
    probe.add_argument("--seed", type=int, default=1)
    _add_output_args(probe)

    gap = sub.add_parser("gap", help="one Cesàro divergence gap certificate")
    _add_symbol_args(gap)
    _add_space_args(gap)
    gap.add_argument("--n", type=int, required=True)
    gap.add_argument("--m", type=int, default=2)
    gap.add_argument("--ratio", type=int, default=3)
    gap.add_argument("--start", type=int, default=1, choices=(0, 1))
    gap.add_argument("--witness-index", type=int, default=None,
                     help="basis witness index (default n+1)")
    _add_output_args(gap)

    sc = sub.add_parser("symbolcheck", help="well-definedness detector")
    sc.add_argument("--spec", required=True, help="symbol description file")
    sc.add_argument("--m", type=int, default=2)
    sc.add_argument("--trials", type=int, default=64)
    sc.add_argument("--seed", type=int, default=1)
    _add_space_args(sc)
    _add_output_args(sc)

    nm = sub.add_parser("norm", help="polynomial norm (exact or estimate)")
    nm.add_argument("--poly", required=True,
                    help="sumpowers:m=K | diag:m=K:c=1,2,3 | functional:m=K:gamma=e_J")
    nm.add_argument("--mode", choices=("auto", "exact", "estimate"), default="auto")
    nm.add_argument("--seed", type=int, default=1)
    _add_space_args(nm)
    _add_output_args(nm)

    return parser


def _space_from_args(args) -> SpaceSpec:
    if args.kind == "c0":
        return SpaceSpec.c0(args.dim)
    return SpaceSpec.lp(args.p, args.dim)


def _emit_doc(doc: dict, args) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_poly(spec: str, space: SpaceSpec):
    head, _, rest = spec.partition(":")
    fields = {}
    for tok in rest.split(":"):
        if tok:
            k, _, v = tok.partition("=")
            fields[k] = v
    m = int(fields.get("m", 2))
    if head == "sumpowers":
        return coordinate_power_sum(space, m)
    if head == "diag":
        coeffs = [complex(v) for v in fields.get("c", "1").split(",")]
        return diagonal(space, m, coeffs)
    if head == "functional":
        g = fields.get("gamma", "e_1")
        dual = space.dual()
        if g.startswith("e_"):
            gamma = basis(dual, int(g[2:]))
        else:
            gamma = from_coords(dual, [complex(v) for v in g.split(",")])
        return functional_power(gamma, m, space)
    raise ConfigError(f"unknown polynomial spec {spec!r}")


def _cmd_run(args) -> int:
    file_values = load_config_file(args.config) if args.config else None
    flags = {
        k: getattr(args, k)
        for k in ("preset", "kind", "p", "m", "alpha", "dim", "horizon",
                  "cesaro_start", "seed", "format", "output", "jobs",
                  "symbol", "factor")
    }
    cfg = make_config(file_values, **flags)
    report = run_experiment(cfg)
    out = emit_report(report, cfg.format, cfg.output,
                      include_timing=not args.no_timing)
    if cfg.format == "json" and (cfg.output in (None, "-")):
        sys.stdout.write(out)
    elif cfg.output:
        sys.stdout.write(f"report written to {cfg.output}\n")
    return 0 if report.ok else EXIT_CHECKS_FAILED


def _cmd_probe(args) -> int:
    space = _space_from_args(args)
    op = operator_from_name(args.symbol, space, args.alpha, args.factor)
    p = coordinate_power_sum(space, args.m)
    doc = {"probe": args.what, "symbol": args.symbol, "space": str(space),
           "kernel_backend": kernels.BACKEND}
    if args.what == "power":
        doc["verdict"] = power_bounded_probe(op, args.horizon).to_dict()
    elif args.what == "cesaro":
        samples = [basis(space, j) for j in
                   range(1, min(args.samples_basis, space.dim - 1) + 1)]
        samples += [random_unit(space, args.seed + i)
                    for i in range(args.samples_random)]
        doc["verdict"] = cesaro_bounded_probe(op, p, args.horizon, samples,
                                              args.start).to_dict()
    elif args.what == "ergodic":
        target = (p if args.target == "poly"
                  else basis(space, args.witness_index))
        doc["verdict"] = mean_ergodic_probe(op, target, args.horizon,
                                            tol=args.tol,
                                            start=args.start).to_dict()
    elif args.what == "orbit":
        prof = orbit_profile(op, basis(space, args.witness_index), args.horizon)
        doc["trace"] = [[int(n), float(v)] for n, v in enumerate(prof)]
    elif args.what == "stable":
        samples = [basis(space, j) for j in
                   range(1, min(args.samples_basis, space.dim - 1) + 1)]
        samples += [random_unit(space, args.seed + i)
                    for i in range(args.samples_random)]
        labels = [f"e_{j}" for j in
                  range(1, min(args.samples_basis, space.dim - 1) + 1)]
        labels += [f"random_{i}" for i in range(args.samples_random)]
        doc["verdict"] = stable_orbit_probe(op, samples, args.horizon,
                                            args.cap, labels).to_dict()
    _emit_doc(doc, args)
    return 0


def _cmd_gap(args) -> int:
    space = _space_from_args(args)
    op = operator_from_name(args.symbol, space, args.alpha, args.factor)
    p = coordinate_power_sum(space, args.m)
    witness = basis(space, args.witness_index) if args.witness_index else None
    cert = ergodic_gap(op, p, args.n, witness=witness, ratio=args.ratio,
                       start=args.start)
    _emit_doc({"gap_certificate": cert.to_dict()}, args)
    return 0


def _cmd_symbolcheck(args) -> int:
    space = _space_from_args(args)
    try:
        with open(args.spec, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read symbol spec: {exc}") from exc
    try:
        sym = parse_symbol_block(text, space)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    verdict = well_defined_check(sym, args.m, trials=args.trials, seed=args.seed)
    lin_samples = [basis(space, j) for j in range(1, min(space.dim, 8) + 1)]
    lin_samples.append(random_unit(space, args.seed))
    doc = {
        "well_defined_check": verdict.to_dict(),
        "linearity_check": linearity_check(sym, lin_samples),
        "degrees": list(sym.degrees()),
    }
    _emit_doc(doc, args)
    return 0


def _cmd_norm(args) -> int:
    space = _space_from_args(args)
    p = _parse_poly(args.poly, space)
    res = poly_norm(p, mode=args.mode, seed=args.seed)
    _emit_doc({
        "poly": args.poly,
        "space": str(space),
        "value": res.value,
        "mode": res.mode,
        "converged": res.converged,
    }, args)
    return 0


_COMMANDS = {
    "run": _cmd_run,
    "probe": _cmd_probe,
    "gap": _cmd_gap,
    "symbolcheck": _cmd_symbolcheck,
    "norm": _cmd_norm,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SupportOverflowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        print("hint: raise --dim so forward orbits stay inside the truncation",
              file=sys.stderr)
        return EXIT_OVERFLOW
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
