"""Command line front end.

    annulus-mcluster enumerate --p 2 --q 2 --m 1
    annulus-mcluster mutate --p 3 --q 2 --m 2 --position 0 --times 3
    annulus-mcluster quiver --input angulation.json --format dot
    annulus-mcluster verify --p 2 --q 2 --m 1 --samples 100 --seed 7
    annulus-mcluster arquiver --p 3 --q 2 --m 2 --window 6 --format dot
    annulus-mcluster formula --p 3 --q 3

Exit status: 0 when every check passes, 1 when a check fails or the input
is rejected, 2 when the class count exceeds ``--max-classes``.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .angulation import Angulation, AngulationError, check, delta0, mutate, quiver_of
from .checks import run_all
from .diagcat import build_ar_quiver
from .geometry import AnnulusConfig
from .mutclass import (
    DEFAULT_MAX_CLASSES,
    FormulaError,
    ResourceLimitExceeded,
    closed_form_count,
    enumerate_angulation_classes,
    enumerate_quiver_classes,
    summary_report,
)
from .quiver import mutate_quiver

EXIT_OK, EXIT_FAIL, EXIT_RESOURCE = 0, 1, 2


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _config(args) -> AnnulusConfig:
    return AnnulusConfig(args.p, args.q, args.m)


def _load_angulation(args) -> Angulation:
    if args.input:
        return Angulation.from_json(json.loads(Path(args.input).read_text()))
    if args.p is None or args.q is None:
        raise SystemExit("give --input or --p/--q/--m")
    return delta0(_config(args))


def cmd_enumerate(args) -> int:
    cfg = _config(args)
    use_flip = not args.no_flip
    db = enumerate_angulation_classes(cfg, use_flip, args.max_classes)
    qdb = enumerate_quiver_classes(cfg, args.max_classes)
    report = summary_report(
        cfg, use_flip, args.samples, args.seed, args.max_classes, angulations=db, quivers=qdb
    )
    if args.database:
        base = Path(args.database)
        base.mkdir(parents=True, exist_ok=True)
        db.save_jsonl(base / "angulations.jsonl")
        qdb.save_jsonl(base / "quivers.jsonl")
    if args.figure:
        from .plotting import draw_angulations

        keys = sorted(db.witnesses)[: args.figure_limit]
        draw_angulations([(db.witnesses[k], f"class {t}") for t, k in enumerate(keys)], args.figure)
    ok = True
    if not args.no_flip:
        ok = report["counts"]["angulation"] == report["counts"]["quiver"]
        ok = ok and report["bijection"]["result"] == "pass"
    if report["formula"]["matches"] is False:
        ok = False
    report["result"] = "pass" if ok else "fail"
    _emit(_dump(report), args.output)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_mutate(args) -> int:
    a = _load_angulation(args)
    b = a
    for _ in range(args.times):
        b = mutate(b, args.position)
    rep = check(b.diagonals, b.cfg, b.strict)
    if not rep.ok:
        sys.stderr.write(f"mutation produced an invalid angulation: {rep.summary()}\n")
        return EXIT_FAIL
    out = b.to_json()
    if args.emit_quiver:
        Q = quiver_of(a)
        for _ in range(args.times):
            Q = mutate_quiver(Q, args.position)
        if Q != quiver_of(b):
            sys.stderr.write("quiver of the mutated angulation differs from the mutated quiver\n")
            return EXIT_FAIL
        out = {"angulation": out, "quiver": Q.to_json()}
    if args.figure:
        from .plotting import draw_angulation

        draw_angulation(b, args.figure, f"position {args.position}, {args.times} step(s)")
    _emit(json.dumps(out) + "\n", args.output)
    return EXIT_OK


def cmd_quiver(args) -> int:
    a = _load_angulation(args)
    Q = quiver_of(a)
    text = Q.to_dot(full=args.full) if args.format == "dot" else _dump(Q.to_json())
    _emit(text, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg = _config(args)
    results = run_all(cfg, args.samples, args.seed, args.window)
    ok = all(r.ok for r in results)
    report = {
        "p": cfg.p,
        "q": cfg.q,
        "m": cfg.m,
        "samples": args.samples,
        "seed": args.seed,
        "checks": [r.to_json() for r in results],
        "result": "pass" if ok else "fail",
    }
    _emit(_dump(report), args.output)
    for r in results:
        if not r.ok:
            sys.stderr.write(f"FAIL {r.name}: {r.total_violations} violation(s)\n")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_arquiver(args) -> int:
    cfg = _config(args)
    ar = build_ar_quiver(cfg, args.window, args.quasi_length)
    summary = ar.summary()
    if args.format == "dot":
        _emit(ar.to_dot(), args.output)
        sys.stderr.write(_dump(summary))
    else:
        _emit(ar.dumps() + "\n", args.output)
    return EXIT_OK if summary["components"] == 3 * cfg.m else EXIT_FAIL


def cmd_formula(args) -> int:
    try:
        value = closed_form_count(args.p, args.q, not args.no_flip)
    except FormulaError as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_FAIL
    _emit(_dump({"p": args.p, "q": args.q, "with_flip": not args.no_flip, "value": value}), args.output)
    return EXIT_OK


def _annulus_args(p, required: bool = True) -> None:
    p.add_argument("--p", type=int, required=required, help="outer vertices divided by m")
    p.add_argument("--q", type=int, required=required, help="inner vertices divided by m")
    p.add_argument("--m", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="annulus-mcluster",
        description="Angulations of the annulus, coloured quivers and their mutation classes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="count mutation classes on both sides")
    _annulus_args(p)
    p.add_argument("--no-flip", action="store_true", help="identify up to rotation only")
    p.add_argument("--samples", type=int, default=10, help="random symmetries per class")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-classes", type=int, default=DEFAULT_MAX_CLASSES)
    p.add_argument("--database", help="directory for the JSON lines class databases")
    p.add_argument("--figure", help="draw class representatives to this image file")
    p.add_argument("--figure-limit", type=int, default=16)
    p.add_argument("--output")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("mutate", help="mutate an angulation at one position")
    _annulus_args(p, required=False)
    p.add_argument("--input", help="angulation JSON; defaults to the distinguished one")
    p.add_argument("--position", type=int, required=True)
    p.add_argument("--times", type=int, default=1)
    p.add_argument("--emit-quiver", action="store_true")
    p.add_argument("--figure")
    p.add_argument("--output")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("quiver", help="coloured quiver of an angulation")
    _annulus_args(p, required=False)
    p.add_argument("--input")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--full", action="store_true", help="draw every colour in DOT output")
    p.add_argument("--output")
    p.set_defaults(func=cmd_quiver)

    p = sub.add_parser("verify", help="run the property suites")
    _annulus_args(p)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--window", type=int, default=3)
    p.add_argument("--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("arquiver", help="windowed quiver of m-diagonals")
    _annulus_args(p)
    p.add_argument("--window", type=int, default=6, help="largest absolute twist")
    p.add_argument("--quasi-length", type=int, default=6)
    p.add_argument("--format", choices=["json", "dot"], default="json")
    p.add_argument("--output")
    p.set_defaults(func=cmd_arquiver)

    p = sub.add_parser("formula", help="closed-form class count for m = 1")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--no-flip", action="store_true")
    p.add_argument("--output")
    p.set_defaults(func=cmd_formula)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimitExceeded as exc:
        sys.stderr.write(f"{exc}\n")
        return EXIT_RESOURCE
    except (AngulationError, ValueError, OSError, json.JSONDecodeError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
