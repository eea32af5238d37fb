"""Command-line interface: ``gqnet {check,witness,generate,symmetric,scan-symmetric,paper-verify}``."""
from __future__ import annotations

import argparse
import json
import os
import sys
import warnings

import numpy as np

from .casestudies import parse_sizes, run_verification, scan_symmetric
from .core import ModePartition, validate
from .errors import GaussianError, SeparableSourceWarning, UnphysicalError, UnphysicalStateWarning
from .io import dumps_state, read_document, read_state, write_scan_csv
from .measures import PartitionedState
from .networks import (
    NetworkTopology,
    SymmetricFamilyParams,
    TwoModeSource,
    assemble,
    pure_symmetric_params,
    random_locals,
    symmetric_cm,
)
from .witnesses import MI_TOL, MONOGAMY_TOL, witness_report

EXIT_OK = 0
EXIT_EXCLUDED = 1
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_UNPHYSICAL = 3


def _default_tol(fallback: float) -> float:
    env = os.environ.get("GQN_DEFAULT_TOL")
    if env:
        try:
            return float(env)
        except ValueError:
            print(f"warning: ignoring GQN_DEFAULT_TOL={env!r}", file=sys.stderr)
    return fallback


def _fmt(x) -> str:
    return format(float(x), ".12g")


def _emit(text: str, path) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _fail(msg: str, code: int) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def cmd_check(args) -> int:
    try:
        doc = read_document(args.file)
        v = validate(doc.matrix, args.tol)
    except (OSError, GaussianError) as exc:
        return _fail(str(exc), EXIT_INVALID)
    print(f"file: {args.file}")
    print(f"modes: {doc.modes}")
    print(f"symmetric: {'yes' if v.symmetric else 'no'}")
    if v.spectrum is None:
        print("spectrum: undefined (matrix not positive definite)")
    else:
        print("spectrum: " + " ".join(_fmt(x) for x in v.spectrum))
    print(f"det: {_fmt(v.det)}")
    if not v.physical:
        print(f"unphysical (min symplectic eigenvalue {_fmt(v.min_nu)} < 1)")
        return EXIT_UNPHYSICAL
    if v.pure:
        print("pure, spectrum all 1")
    else:
        distinct = sorted({float(_fmt(x)) for x in v.spectrum}, reverse=True)
        print("mixed, " + ", ".join(f"ν={_fmt(x)}" for x in distinct))
    return EXIT_OK


def cmd_witness(args) -> int:
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", UnphysicalStateWarning)
            state = read_state(args.file, strict=args.strict)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        topology = NetworkTopology.for_parties(args.topology, state.partition.n_parties)
        report = witness_report(state, topology, args.tol, args.m_tol)
    except UnphysicalError as exc:
        return _fail(str(exc), EXIT_UNPHYSICAL)
    except (OSError, GaussianError, ValueError) as exc:
        return _fail(str(exc), EXIT_INVALID)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(f"topology: {topology}")
        print(f"parties: {', '.join(state.labels)}")
        for c in report.criteria:
            status = "VIOLATED" if c.violated else "ok"
            print(f"{c.name}: {_fmt(c.value)} (threshold {_fmt(c.threshold)}) {status}")
        for k, v in report.diagnostics.items():
            print(f"diagnostic {k}: {_fmt(v)}")
        print(f"verdict: {report.verdict}")
        if report.verdict == "consistent":
            print("(necessary conditions only: consistent does not certify preparability)")
    return EXIT_EXCLUDED if report.verdict == "excluded" else EXIT_OK


def cmd_generate(args) -> int:
    try:
        n = 3 if args.topology == "triangle" else args.n
        if args.topology == "triangle" and args.n not in (None, 3):
            raise ValueError("a triangle network has exactly 3 sources")
        if n is None:
            raise ValueError("--parties/-n is required for star and chain networks")
        topology = NetworkTopology(args.topology, n)
        if args.squeeze_list is not None:
            rs = [float(x) for x in args.squeeze_list.split(",") if x.strip()]
        else:
            rs = [args.squeeze] * topology.n_sources
        if len(rs) != topology.n_sources:
            raise ValueError(f"{topology} needs {topology.n_sources} squeezing values, got {len(rs)}")
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", SeparableSourceWarning)
            sources = [TwoModeSource(r, args.noise) for r in rs]
            partition = topology.partition()
            locals_ = random_locals(partition, args.rmax, args.seed) if args.rmax is not None else None
            state = assemble(topology, sources, locals_)
    except (GaussianError, ValueError) as exc:
        return _fail(str(exc), EXIT_INVALID)
    meta = {"generator": "gqnet generate", "seed": args.seed, "rmax": args.rmax,
            "noise": args.noise, "squeeze": rs}
    _emit(dumps_state(state, meta), args.output)
    return EXIT_OK


def cmd_symmetric(args) -> int:
    try:
        if args.pure:
            e1, e2 = pure_symmetric_params(args.modes, args.b)
        elif args.e1 is not None and args.e2 is not None:
            e1, e2 = args.e1, args.e2
        else:
            raise ValueError("give either --pure or both --e1 and --e2")
        sizes = parse_sizes(args.partition) if args.partition else [1] * args.modes
        if sum(sizes) != args.modes:
            raise ValueError(f"partition {sizes} does not cover {args.modes} modes")
        V = symmetric_cm(SymmetricFamilyParams(args.modes, args.b, e1, e2))
    except UnphysicalError as exc:
        return _fail(str(exc), EXIT_UNPHYSICAL)
    except (GaussianError, ValueError) as exc:
        return _fail(str(exc), EXIT_INVALID)
    state = PartitionedState(V, ModePartition.from_sizes(sizes))
    meta = {"family": "symmetric", "n": args.modes, "b": args.b, "e1": e1, "e2": e2,
            "pure": bool(args.pure), "partition_sizes": sizes}
    _emit(dumps_state(state, meta), args.output)
    return EXIT_OK


def cmd_scan_symmetric(args) -> int:
    try:
        sizes = parse_sizes(args.partition)
        rows = scan_symmetric(args.modes, sizes, args.b_from, args.b_to, args.steps)
    except (GaussianError, ValueError) as exc:
        return _fail(str(exc), EXIT_INVALID)
    if args.out in (None, "-"):
        write_scan_csv(rows, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            write_scan_csv(rows, fh)
    return EXIT_OK


def cmd_paper_verify(args) -> int:
    failed = 0
    for check in run_verification():
        if check.passed is None:
            tag = "INFO"
        else:
            tag = "PASS" if check.passed else "FAIL"
            failed += not check.passed
        print(f"[{tag}] {check.name}")
        for line in check.detail.splitlines():
            print(f"       {line}")
    print("all checks passed" if not failed else f"{failed} check(s) failed")
    return EXIT_FAILED if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gqnet", description="Gaussian quantum network state witnesses")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="validate a state document")
    c.add_argument("file")
    c.add_argument("--tol", type=float, default=_default_tol(1e-9))
    c.set_defaults(func=cmd_check)

    w = sub.add_parser("witness", help="test a state against a network topology")
    w.add_argument("file")
    w.add_argument("--topology", required=True, choices=["triangle", "star", "chain"])
    w.add_argument("--tol", type=float, default=_default_tol(MI_TOL),
                   help="zero tolerance for the mutual information")
    w.add_argument("--m-tol", type=float, default=MONOGAMY_TOL,
                   help="slack for the monogamy residuals")
    w.add_argument("--json", action="store_true")
    w.add_argument("--strict", action="store_true", help="reject unphysical states (exit 3)")
    w.set_defaults(func=cmd_witness)

    g = sub.add_parser("generate", help="assemble a random network state")
    g.add_argument("--topology", required=True, choices=["triangle", "star", "chain"])
    g.add_argument("-n", "--parties", dest="n", type=int, default=None, help="number of sources")
    sq = g.add_mutually_exclusive_group()
    sq.add_argument("--squeeze", type=float, default=0.5)
    sq.add_argument("--squeeze-list", default=None, help="comma-separated squeezing per source")
    g.add_argument("--noise", type=float, default=1.0, help="thermal noise mu >= 1")
    g.add_argument("--rmax", type=float, default=None,
                   help="apply random local symplectics with squeezing up to rmax")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--output", default=None)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("symmetric", help="fully symmetric state document")
    s.add_argument("--modes", type=int, required=True)
    s.add_argument("--b", type=float, required=True)
    s.add_argument("--pure", action="store_true")
    s.add_argument("--e1", type=float, default=None)
    s.add_argument("--e2", type=float, default=None)
    s.add_argument("--partition", default=None, help="party sizes, e.g. 3,1,1,1")
    s.add_argument("-o", "--output", default=None)
    s.set_defaults(func=cmd_symmetric)

    sc = sub.add_parser("scan-symmetric", help="scan the pure symmetric family over b")
    sc.add_argument("--modes", type=int, required=True)
    sc.add_argument("--partition", required=True)
    sc.add_argument("--b-from", type=float, required=True)
    sc.add_argument("--b-to", type=float, required=True)
    sc.add_argument("--steps", type=int, default=81)
    sc.add_argument("--out", default=None)
    sc.set_defaults(func=cmd_scan_symmetric)

    v = sub.add_parser("paper-verify", help="run the built-in analytic reproduction checks")
    v.set_defaults(func=cmd_paper_verify)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
