"""Command-line front end.

Nielsen words are strings over T, T', P, R, I and act on group elements left
to right.  Words in the generators are written like ``A B^-1 C^2``.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import autos, ideal, numerics
from .poly import PolyParseError, format_poly
from .trace import TraceCache, default_cache, trace_poly
from .words import MAX_RANK, RankError, WordParseError, basic_words, parse_nielsen, parse_word


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _cache(args):
    return TraceCache(args.n, enabled=False) if args.no_cache else default_cache(args.n)


def cmd_basic_words(args, out):
    for b in basic_words(args.n):
        out.write(f"{b.ordinal}\t{b.name}\t{b.word()}\n")
    return 0


def cmd_trace(args, out):
    w = parse_word(args.word, args.n)
    out.write(format_poly(trace_poly(w, cache=_cache(args))) + "\n")
    return 0


def cmd_ideal(args, out):
    gens = ideal.ideal_generators(args.n, cache=_cache(args))
    if args.json:
        out.write(_dump(gens.to_json()) + "\n")
    else:
        for spec, p in gens.generators:
            out.write(f"{spec.target.name}: {format_poly(p)}\n")
    return 0


def cmd_map(args, out):
    gens = parse_nielsen(args.word)
    m = autos.induced_map(gens, args.n, cache=_cache(args))
    if args.json:
        out.write(_dump({"n": args.n, "word": "".join(gens), "components": m.named()}) + "\n")
    else:
        for name, comp in m.named().items():
            out.write(f"{name} -> {comp}\n")
    return 0


def cmd_jacdet(args, out):
    m = autos.induced_map(parse_nielsen(args.word), args.n, cache=_cache(args))
    out.write(format_poly(autos.jac_det(m)) + "\n")
    return 0


def cmd_abelianize(args, out):
    M = autos.abelianization(parse_nielsen(args.word), args.n)
    for row in M:
        out.write(" ".join(f"{int(v):3d}" for v in row) + "\n")
    out.write(f"det {autos.int_det(M)}\n")
    return 0


def cmd_verify(args, out):
    report = numerics.verify(args.kind, args.n, args.samples, args.tol, args.seed)
    out.write(_dump(report.to_json()) + "\n")
    return 0 if report.passed else 1


def cmd_witness(args, out):
    rep = numerics.witness_report(args.seed)
    out.write(_dump(rep) + "\n")
    ok = rep["commutator_ok"] and rep["discriminant_ok"] and rep["n4_rank"] == 6
    return 0 if ok else 1


def cmd_gama_control(args, out):
    d = autos.gama_phi1_det()
    out.write(f"det {format_poly(d)}\n")
    out.write(f"integral {str(d.is_integral()).lower()}\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fricke", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--no-cache", action="store_true", help="disable the trace memo table")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def ranked(name, help, low=1):
        s = sub.add_parser(name, help=help)
        s.add_argument("-n", type=int, required=True, help=f"rank, {low}..{MAX_RANK}")
        s.set_defaults(low=low)
        return s

    ranked("basic-words", "list the basic words in Horowitz order").set_defaults(func=cmd_basic_words)
    s = ranked("trace", "trace polynomial of a word")
    s.add_argument("word")
    s.set_defaults(func=cmd_trace)
    s = ranked("ideal", "generators of the relation ideal", low=2)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_ideal)
    s = ranked("map", "induced polynomial map of a Nielsen word", low=2)
    s.add_argument("word")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_map)
    s = ranked("jacdet", "Jacobian determinant of an induced map", low=2)
    s.add_argument("word")
    s.set_defaults(func=cmd_jacdet)
    s = ranked("abelianize", "integer action on the abelianization", low=1)
    s.add_argument("word")
    s.set_defaults(func=cmd_abelianize)
    s = ranked("verify", "numerical verification report", low=2)
    s.add_argument("--kind", required=True, choices=numerics.REPORT_KINDS)
    s.add_argument("--samples", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=None)
    s.set_defaults(func=cmd_verify)
    s = sub.add_parser("witness", help="witness values and the rank-4 Jacobian check")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_witness, n=None)
    s = sub.add_parser("gama-control", help="Jacobian of the reduced twist map (non-integral control)")
    s.set_defaults(func=cmd_gama_control, n=None)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.n is not None and not args.low <= args.n <= MAX_RANK:
            raise UsageError(f"rank must be in {args.low}..{MAX_RANK}, got {args.n}")
        if getattr(args, "samples", 1) < 1:
            raise UsageError("--samples must be >= 1")
        return args.func(args, out)
    except (UsageError, WordParseError, PolyParseError, RankError, ideal.FoundationError) as e:
        err.write(f"fricke: error: {e}\n")
        return 2
    except SystemExit as e:
        # --help
        return int(e.code or 0)


if __name__ == "__main__":
    sys.exit(main())
