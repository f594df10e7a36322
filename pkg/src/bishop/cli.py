"""Command-line interface: analyze, example, linking, perturb."""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .locus import LocusParams
from .parsing import ParseError
from .report import AnalysisReport
from .shell import EPS_EXAMPLES, EXAMPLES, export_geometry, run_analyze, run_example, run_linking, run_perturb

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_EMPTY = 3


def _add_params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--samples", type=int, default=LocusParams.sample_count, help="number of sphere samples")
    p.add_argument("--seed", type=int, default=LocusParams.rng_seed, help="sampling seed")
    p.add_argument("--step", type=float, default=LocusParams.trace_step, help="curve tracing step (arc length)")
    p.add_argument("--tol", type=float, default=LocusParams.tau_zero, help="relative zero threshold for B and the gamma norms")


def _params(args) -> LocusParams:
    return LocusParams(sample_count=args.samples, rng_seed=args.seed, trace_step=args.step, tau_zero=args.tol)


def _eps_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad epsilon list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bishop", description=__doc__)
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyze an expression in z, w, zb, wb")
    a.add_argument("--expr", required=True)
    _add_params(a)
    a.add_argument("--json", required=True, help="output report path")
    a.add_argument("--geometry", help="optional CSV of stereographic coordinates")

    e = sub.add_parser("example", help="run a built-in example")
    e.add_argument("name", choices=EXAMPLES)
    e.add_argument("--alpha", type=float)
    e.add_argument("--p", type=int)
    e.add_argument("--q", type=int)
    e.add_argument("--eps", type=float)
    _add_params(e)
    e.add_argument("--json", required=True)
    e.add_argument("--geometry")

    k = sub.add_parser("linking", help="linking number of two closed components of a report")
    k.add_argument("--json", required=True, help="report to read")
    k.add_argument("--pair", type=int, nargs=2, required=True, metavar=("I", "J"))

    p = sub.add_parser("perturb", help="compare an example with its epsilon-shifted versions")
    p.add_argument("name", choices=EPS_EXAMPLES)
    p.add_argument("--eps", type=_eps_list, required=True, help="comma-separated epsilons")
    _add_params(p)
    p.add_argument("--json", required=True)
    return ap


def _finish(report: AnalysisReport, args) -> None:
    report.save(args.json)
    if getattr(args, "geometry", None):
        export_geometry(report, args.geometry)
    counts = ", ".join(f"{v} {k}" for k, v in report.counts().items() if v)
    print(f"{len(report.components)} component(s){': ' + counts if counts else ''} -> {args.json}")
    for note in report.notes:
        print(f"note: {note}")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            _finish(run_analyze(args.expr, _params(args)), args)
        elif args.command == "example":
            report = run_example(args.name, _params(args), alpha=args.alpha, p=args.p, q=args.q, eps=args.eps)
            _finish(report, args)
            if not report.components:
                print("error: example produced no components", file=sys.stderr)
                return EXIT_EMPTY
        elif args.command == "linking":
            report = AnalysisReport.load(args.json)
            i, j = args.pair
            lk = run_linking(report, i, j)
            print(json.dumps({"pair": [i, j], "linking_number": lk}))
        elif args.command == "perturb":
            diffs = run_perturb(args.name, args.eps, _params(args))
            out = [dict(eps=e, **d.to_dict()) for e, d in zip(args.eps, diffs)]
            with open(args.json, "w", encoding="utf-8") as fh:
                json.dump(out, fh, indent=1)
                fh.write("\n")
            for row in out:
                print(
                    f"eps={row['eps']}: degeneracy_removed={row['degeneracy_removed']} "
                    f"locus_unchanged={row['locus_unchanged']} hausdorff={row['hausdorff_distance']}"
                )
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ValueError, ArithmeticError, RuntimeError, OSError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
