"""Command-line entry point ``epx``.

Exit status: 0 when everything checked passes, 1 when a check fails,
2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import sys

from .adjunction import partial_realize, realize, singular_at, singular_system
from .ep_metric import EpMetricError, format_dist, parse_dist
from .homology import CapTooLow, homology
from .io import IoError, ParseError, emit_report, load_space
from .systems import FilteredSSet, degree_rips_system, pi0_barcode, vr_stage, vr_system
from .verify import SUITES, UnknownSuite, run_compare, run_suite


class UsageError(Exception):
    pass


def _t_values(args) -> list[float] | None:
    if not args.t:
        return None
    vals = []
    for chunk in args.t:
        for part in chunk.split(","):
            if part.strip():
                try:
                    vals.append(parse_dist(part))
                except ValueError as exc:
                    raise UsageError(f"bad --t value {part!r}") from exc
    return sorted(set(vals))


def _space(args):
    if not args.input:
        raise UsageError("--input is required")
    return load_space(args.input, args.format)


def _summary(F: FilteredSSet, ts) -> list[dict]:
    if ts is None:
        pairs = zip(F.values, F.stages)
    else:
        pairs = ((t, F.at(t)) for t in ts)
    return [{"t": format_dist(t), **{f"dim{n}": c for n, c in enumerate(st.counts())}}
            for t, st in pairs]


def _filtration(args, X):
    if args.degree is not None:
        return degree_rips_system(X, args.degree, args.dim)
    return vr_system(X, args.dim)


def cmd_vr(args) -> int:
    X = _space(args)
    emit_report(_summary(_filtration(args, X), _t_values(args)), args.out, args.out_format)
    return 0


def cmd_singular(args) -> int:
    X = _space(args)
    ts = _t_values(args)
    if ts is None:
        rows = _summary(singular_system(X, args.dim), None)
    else:
        rows = [{"t": format_dist(t), **{f"dim{n}": c for n, c in enumerate(singular_at(X, t, args.dim).counts())}}
                for t in ts]
    emit_report(rows, args.out, args.out_format)
    return 0


def _space_rows(R) -> list[dict]:
    return [{"from": a, "to": b, "d": format_dist(R.d[i, j])}
            for i, a in enumerate(R.labels) for j, b in enumerate(R.labels)]


def cmd_realize(args) -> int:
    R = realize(_filtration(args, _space(args)))
    emit_report(R.to_json() if args.out_format == "json" else _space_rows(R), args.out, args.out_format)
    return 0


def cmd_partial(args) -> int:
    ts = _t_values(args)
    if not ts:
        raise UsageError("partial-realize needs --t")
    F = _filtration(args, _space(args))
    out = []
    for t in ts:
        R = partial_realize(F, t)
        if args.out_format == "json":
            out.append({"t": format_dist(t), **R.to_json()})
        else:
            out += [{"t": format_dist(t), **row} for row in _space_rows(R)]
    emit_report(out, args.out, args.out_format)
    return 0


def cmd_betti(args) -> int:
    X = _space(args)
    if args.kmax > args.dim - 1:
        raise CapTooLow(f"--kmax {args.kmax} needs --dim >= {args.kmax + 1}")
    ts = _t_values(args) or list(vr_system(X, args.dim).values)
    rows = []
    for t in ts:
        Z = singular_at(X, t, args.dim) if args.complex == "singular" else vr_stage(X, t, args.dim)
        for rec in homology(Z, args.kmax).to_json():
            rows.append({"t": format_dist(t), **rec})
    emit_report(rows, args.out, args.out_format)
    return 0


def cmd_barcode(args) -> int:
    bars = pi0_barcode(_filtration(args, _space(args)))
    emit_report([b.to_json() for b in bars], args.out, args.out_format)
    return 0


def cmd_compare(args) -> int:
    rep = run_compare(_space(args), args.dim, args.kmax, _t_values(args),
                      deep=args.deep or None, posets=args.deep or None)
    emit_report(rep, args.out, args.out_format)
    return 0 if rep.passed else 1


def cmd_suite(args) -> int:
    if not args.suite:
        raise UsageError("--suite is required")
    sizes = {"count": args.count, "points": args.points, "stages": args.stages}
    if args.dim_given:
        sizes["dim"] = args.dim
    rep = run_suite(args.suite, args.seed, **sizes)
    emit_report(rep, args.out, args.out_format)
    for c in rep.failures():
        print(f"FAIL {c.id}: {c.anchor} {c.witness}", file=sys.stderr)
    return 0 if rep.passed else 1


COMMANDS = {
    "vr": (cmd_vr, "Vietoris-Rips filtration summary"),
    "singular": (cmd_singular, "singular complex summary"),
    "realize": (cmd_realize, "realize the Rips (or degree-Rips) diagram"),
    "partial-realize": (cmd_partial, "partial realizations at the --t values"),
    "betti": (cmd_betti, "integral homology per scale"),
    "barcode": (cmd_barcode, "path-component barcode"),
    "compare": (cmd_compare, "compare Rips and singular homology"),
    "suite": (cmd_suite, "run a named verification suite"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="space file ('-' for stdin)")
    common.add_argument("--format", choices=("json-matrix", "json-points", "csv"),
                        help="input format (guessed when omitted)")
    common.add_argument("--dim", type=int, default=None, help="truncation cap D (default 3)")
    common.add_argument("--kmax", type=int, default=2, help="top homology degree (default 2)")
    common.add_argument("--t", action="append", help="scale(s), comma separated; 'inf' allowed")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--suite", choices=sorted(SUITES))
    common.add_argument("--out", default="-", help="output path (default stdout)")
    common.add_argument("--out-format", choices=("json", "tsv"), default="json")
    common.add_argument("--degree", type=int, help="use the degree-Rips diagram with this k")
    common.add_argument("--complex", choices=("vr", "singular"), default="vr")
    common.add_argument("--deep", action="store_true", help="compare: also posets and subdivisions")
    common.add_argument("--count", type=int, help="suite: corpus size")
    common.add_argument("--points", type=int, help="suite: max points per space")
    common.add_argument("--stages", type=int, help="suite: chain length for bad-colimit")
    parser = _Parser(prog="epx", description="ep-metric spaces and filtered simplicial sets")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.dim_given = args.dim is not None
    if args.dim is None:
        args.dim = 3
    if args.dim < 1:
        print("epx: error: --dim must be at least 1", file=sys.stderr)
        return 2
    try:
        return COMMANDS[args.command][0](args)
    except (UsageError, ParseError, EpMetricError, IoError, UnknownSuite, CapTooLow, ValueError) as exc:
        print(f"epx: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
