"""Command-line frontend."""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from itertools import product

from . import fourreg, interlace, poly
from .caps import QLAMBDA_CAP, CapExceeded, check_cap
from .graph import CLASSES, LabeledGraph, labeled_local_complement, partition_local_complement, simplify
from .gf2 import nullity
from .graph import partition_subgraph
from .io import ParseError, parse_edgelist, parse_graph_json, parse_label_file
from .poly import MPoly

EXIT_PARSE = 2
EXIT_CAP = 3
EXIT_VERIFY = 4

GRAPH_KINDS = ("qlambda", "q2", "qn", "q", "Qahv", "courcelle")
DOW_KINDS = ("pi", "pi-directed")


class VerificationFailed(Exception):
    pass


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qlambda", description="Labeled interlace polynomials of graphs and Euler systems.")
    p.add_argument("--input", "-i", default="-", help="input file (default: stdin)")
    p.add_argument("--format", "-f", choices=("edgelist", "json", "dow"), default="edgelist")
    p.add_argument("--kind", "-k", choices=GRAPH_KINDS + DOW_KINDS, default="qlambda")
    p.add_argument("--method", "-m", choices=("bruteforce", "recursive", "reduce"), default="recursive")
    p.add_argument("--bind", "-b", action="append", default=[], metavar="VAR=VALUE",
                   help="bind a variable to a rational, e.g. y=2 or phi_a=1/2 (repeatable)")
    p.add_argument("--labels", "-l", help="JSON label file overriding vertex labels")
    p.add_argument("--s-max", type=int, default=4, help="largest split side for --method reduce")
    p.add_argument("--output", "-o", choices=("text", "json"), default="text")
    p.add_argument("--verify", action="store_true", help="cross-check identities on this instance")
    return p


def parse_bindings(items):
    out = {}
    for item in items:
        if "=" not in item:
            raise ParseError(f"binding {item!r} is not VAR=VALUE")
        name, value = (s.strip() for s in item.split("=", 1))
        try:
            var = poly.var_from_name(name)
            val = Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad binding {item!r}: {exc}") from None
        out[var] = int(val) if val.denominator == 1 else val
    return out


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _apply_labels(g: LabeledGraph, labels) -> LabeledGraph:
    for v, triple in labels.items():
        if v not in g.vertices:
            raise ParseError(f"label file names unknown vertex {v!r}")
        g = g.set_label(v, triple)
    return g


def _finish(value, bindings):
    if bindings and isinstance(value, MPoly):
        value = poly.substitute(value, {k: v for k, v in bindings.items() if k in value.variables()})
    if isinstance(value, Fraction) and value.denominator == 1:
        value = int(value)
    return poly.as_poly(value)


# -- verification --------------------------------------------------------

def _verify_graph(g: LabeledGraph):
    results = []
    check_cap("verify", g.n, QLAMBDA_CAP)
    s = simplify(g)
    brute = interlace.qlambda_bruteforce(s)
    rec = interlace.qlambda_recursive(s)
    results.append(("oracle equivalence", brute == rec, "" if brute == rec else f"{rec} != {brute}"))

    bad = next((v for v in s.vertices if interlace.qlambda_bruteforce(labeled_local_complement(s, v)) != brute), None)
    results.append(("local complement invariance", bad is None, f"vertex {bad}"))

    witness = None
    if s.n <= 8:
        for v in s.vertices:
            h = labeled_local_complement(s, v)
            for choice in product(CLASSES, repeat=s.n):
                part = dict(zip(s.vertices, choice))
                q = partition_local_complement(part, s, v)
                if nullity(partition_subgraph(s, part)) != nullity(partition_subgraph(h, q)):
                    witness = f"vertex {v}, partition {part}"
                    break
            if witness:
                break
        results.append(("per-partition nullity invariance", witness is None, witness or ""))
    return results


def _verify_dow(c: fourreg.EulerSystem):
    results = []
    g = fourreg.interlacement(c)
    pi = fourreg.pi_generating_function(c)
    q = interlace.qlambda_bruteforce(g)
    results.append(("circuit partition interpretation", pi == q, "" if pi == q else f"{pi} != {q}"))

    witness = None
    comps = len(c.words)
    for t in fourreg.transition_choices(c):
        part = dict(t)
        if fourreg.trace_partition(c, t) - comps != nullity(partition_subgraph(g, part)):
            witness = f"transitions {part}"
            break
    results.append(("circuit-nullity formula", witness is None, witness or ""))

    bad = None
    for v in c.vertices:
        k = fourreg.kappa_transform(c, v)
        if fourreg.interlacement(k) != labeled_local_complement(g, v) or fourreg.pi_generating_function(k) != pi:
            bad = v
            break
    results.append(("kappa-transform compatibility", bad is None, f"vertex {bad}"))
    return results


def _report(results, err) -> bool:
    ok = True
    for name, passed, witness in results:
        if passed:
            print(f"verify: PASS {name}", file=err)
        else:
            ok = False
            print(f"verify: FAIL {name}: witness {witness}", file=err)
    return ok


# -- main ------------------------------------------------------------------

def run(args, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        bindings = parse_bindings(args.bind)
        text = _read(args.input)
        if args.kind in DOW_KINDS and args.format != "dow":
            raise ParseError(f"--kind {args.kind} needs --format dow")
        if args.format == "dow" and args.kind not in DOW_KINDS:
            raise ParseError("DOW input supports --kind pi or pi-directed")
        if args.format == "dow":
            words, flags = fourreg.parse_dow(text)
            labels = parse_label_file(_read(args.labels)) if args.labels else None
            try:
                obj = fourreg.from_dow(words, labels, flags)
            except ValueError as exc:
                raise ParseError(str(exc)) from None
        else:
            obj = parse_edgelist(text) if args.format == "edgelist" else parse_graph_json(text)
            if args.labels:
                obj = _apply_labels(obj, parse_label_file(_read(args.labels)))
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return EXIT_PARSE
    except OSError as exc:
        print(f"cannot read input: {exc}", file=err)
        return EXIT_PARSE

    start = time.perf_counter()
    try:
        if args.kind == "pi":
            value = fourreg.pi_generating_function(obj)
        elif args.kind == "pi-directed":
            value = fourreg.pi_directed(obj)
        elif args.method == "reduce":
            from .reduce import evaluate_fpt
            value = evaluate_fpt(obj, args.kind, bindings, s_max=args.s_max)
        else:
            value = interlace.compute(obj, args.kind, args.method)
        result = _finish(value, bindings)
        verdicts = None
        if args.verify:
            verdicts = _verify_dow(obj) if args.format == "dow" else _verify_graph(obj)
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=err)
        if exc.residual is not None:
            print(f"residual vertices: {' '.join(exc.residual.vertices)}", file=err)
        return EXIT_CAP
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    elapsed = time.perf_counter() - start

    if args.output == "json":
        doc = {"kind": args.kind, "method": args.method, "n": obj.n,
               "text": result.canonical_text(), "polynomial": result.to_json()}
        print(json.dumps(doc, sort_keys=True), file=out)
    else:
        print(result.canonical_text(), file=out)
    print(f"n={obj.n} kind={args.kind} method={args.method} time={elapsed:.3f}s", file=err)

    if verdicts is not None and not _report(verdicts, err):
        return EXIT_VERIFY
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
