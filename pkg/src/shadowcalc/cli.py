"""Command-line interface. Every command prints one JSON document."""

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction

from . import analysis
from .algebra.fox import (abelianization_vectors, alexander_matrix,
                          fundamental_identity_holds)
from .algebra.groups import abelianization, h1_from_presentation, parse_presentation
from .cw import homology, pi1_presentation
from .enumeration import (EnumerationBounds, enumerate as enumerate_census, load_census,
                          save_census, verify_entry)
from .graph import CocycleClass, parse_graph, validate
from .polyhedron import PolyhedronSummary, extract_regions, weighted_complexity


class UsageError(Exception):
    pass


class DomainError(Exception):
    def __init__(self, kind, message, **extra):
        super().__init__(message)
        self.kind = kind
        self.extra = extra


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def rational(text):
    try:
        r = Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational p/q: {text!r}")
    if "." in text or "e" in text.lower():
        raise argparse.ArgumentTypeError("rationals must be written as p/q")
    return r


def _read(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DomainError("IOError", str(exc))


def _load_graph(args):
    try:
        g = parse_graph(_read(args.graph))
    except ValueError as exc:
        raise DomainError("GraphSyntaxError", str(exc))
    diags = validate(g)
    if diags:
        raise DomainError("InvalidGraph", "; ".join(diags), diagnostics=diags)
    if getattr(args, "cocycle", None):
        bits = [ch for ch in args.cocycle if ch in "01"]
        if len(bits) != len(g.edges) or set(args.cocycle) - set("01, "):
            raise DomainError("BadCocycle", f"expected {len(g.edges)} labels of 0/1")
        g = g.with_labels([int(b) for b in bits])
    return g


def _load_summary(args):
    if getattr(args, "summary", None):
        try:
            return PolyhedronSummary.from_json(_read(args.summary))
        except (ValueError, KeyError, TypeError) as exc:
            raise DomainError("BadSummary", str(exc))
    if not getattr(args, "graph", None):
        raise UsageError("one of --graph or --summary is required")
    return extract_regions(_load_graph(args))[1]


def cmd_validate(args):
    try:
        g = parse_graph(_read(args.graph))
    except ValueError as exc:
        raise DomainError("GraphSyntaxError", str(exc))
    diags = validate(g)
    if diags:
        raise DomainError("InvalidGraph", "; ".join(diags), diagnostics=diags)
    return {"valid": True, "diagnostics": [], "vertices": len(g.vertices),
            "edges": len(g.edges), "cocycle_classes": 2 ** g.first_betti()}


def cmd_regions(args):
    g = _load_graph(args)
    regions, summary = extract_regions(g)
    return {"regions": [r.to_json() for r in regions], "summary": summary.to_json()}


def cmd_complexity(args):
    s = _load_summary(args)
    try:
        wc = weighted_complexity(s)
    except ValueError as exc:
        raise DomainError("UndefinedComplexity", str(exc))
    return {"m": wc.m, "n": wc.n, "value": str(wc.value(args.r))}


def cmd_homology(args):
    g = _load_graph(args)
    h = homology(g)
    p = pi1_presentation(g)
    return {"H0": str(h[0]), "H1": str(h[1]), "H2": str(h[2]),
            "groups": [x.to_json() for x in h], "pi1": str(p),
            "abelianization": str(abelianization(p))}


def cmd_enumerate(args):
    try:
        bounds = EnumerationBounds(args.max_vertices, args.r, args.cmax, args.max_n)
    except ValueError as exc:
        raise UsageError(str(exc))
    try:
        entries = enumerate_census(bounds, workers=args.workers)
    except RuntimeError as exc:
        raise DomainError("EnumerationOverflow", str(exc))
    by_value = Counter()
    classes = {}
    no_cr = 0
    for e in entries:
        if e.complexity is None:
            no_cr += 1
            continue
        v = str(e.value(args.r))
        by_value[v] += 1
        classes.setdefault(v, set()).add(e.graph_class)
    out = {"total": len(entries), "by_value": dict(sorted(by_value.items())),
           "graph_classes_by_value": {k: len(v) for k, v in sorted(classes.items())},
           "no_cr": no_cr}
    if args.out:
        try:
            save_census(entries, args.out)
        except OSError as exc:
            raise DomainError("IOError", str(exc))
        out["out"] = args.out
        if args.verify:
            bad = [i for i, e in enumerate(load_census(args.out)) if verify_entry(e)]
            out["verified"] = not bad
    return out


def _entry_report(e):
    label = analysis.census_label(e.canonical)
    return {"label": label, "graph": e.graph.to_dsl(), "status": analysis.overall_status(e.verdicts),
            "verdicts": e.verdicts}


def cmd_classify(args):
    if args.table is not None:
        try:
            return analysis.classification_table_data(args.table)
        except ValueError as exc:
            raise DomainError("NoTable", str(exc))
    if args.census:
        try:
            entries = load_census(args.census)
        except (OSError, ValueError) as exc:
            raise DomainError("CensusError", str(exc))
        out = {"entries": [_entry_report(e) for e in entries]}
        if args.verify:
            failures = {}
            for i, e in enumerate(entries):
                bad = verify_entry(e)
                if bad:
                    failures[str(i)] = bad
            out["verified"] = not failures
            out["failures"] = failures
            if failures:
                raise DomainError("VerifyFailed", "stored fields do not match", failures=failures)
        return out
    if not args.graph:
        raise UsageError("one of --graph, --census or --table is required")
    from .enumeration import make_entry
    g = _load_graph(args)
    return _entry_report(make_entry(g, CocycleClass.of(g)))


def cmd_bounds(args):
    s = _load_summary(args)
    try:
        bound = analysis.genus_bound(s)
    except ValueError as exc:
        raise DomainError("UndefinedComplexity", str(exc))
    sigma = analysis.cut_system_stats(s).sigma_genus if s.has_singular_set else None
    return {"sigma_genus": sigma, "genus_upper_bound": bound}


def _parse_ab(text):
    ab = {}
    for item in text.split(";"):
        if not item.strip():
            continue
        name, _, vec = item.partition("=")
        ab[name.strip()] = tuple(int(x) for x in vec.split(","))
    return ab


def cmd_fox(args):
    try:
        p = parse_presentation(args.presentation)
        ab = _parse_ab(args.ab) if args.ab else None
        M = alexander_matrix(p, ab)
        vectors = abelianization_vectors(p, ab)
    except ValueError as exc:
        raise DomainError("PresentationError", str(exc))
    h1 = h1_from_presentation(p)
    return {"presentation": str(p), "matrix": [[str(x) for x in row] for row in M.rows],
            "variables": list(M.variables),
            "fundamental_identity": fundamental_identity_holds(p, vectors, M.variables),
            "H1": str(h1.group), "H1_generators": str(h1)}


def build_parser():
    parser = _Parser(prog="shadowcalc", description=__doc__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def common(p, graph_required=True, summary=False):
        p.add_argument("--graph", required=graph_required and not summary)
        p.add_argument("--cocycle")
        p.add_argument("--format", choices=["json"], default="json")
        if summary:
            p.add_argument("--summary")

    p = sub.add_parser("validate")
    common(p)
    p.set_defaults(func=cmd_validate)
    p = sub.add_parser("regions")
    common(p)
    p.set_defaults(func=cmd_regions)
    p = sub.add_parser("complexity")
    common(p, summary=True)
    p.add_argument("--r", type=rational, default=Fraction(1, 2))
    p.set_defaults(func=cmd_complexity)
    p = sub.add_parser("homology")
    common(p)
    p.set_defaults(func=cmd_homology)
    p = sub.add_parser("enumerate")
    p.add_argument("--max-vertices", type=int, required=True)
    p.add_argument("--r", type=rational, required=True)
    p.add_argument("--cmax", type=rational, required=True)
    p.add_argument("--max-n", type=int)
    p.add_argument("--out")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_enumerate)
    p = sub.add_parser("classify")
    common(p, graph_required=False)
    p.add_argument("--census")
    p.add_argument("--table")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_classify)
    p = sub.add_parser("bounds")
    common(p, summary=True)
    p.set_defaults(func=cmd_bounds)
    p = sub.add_parser("fox")
    p.add_argument("--presentation", required=True)
    p.add_argument("--ab", help="images such as 'x=0,1;y=1,0'")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(func=cmd_fox)
    return parser


def run(argv=None, stdout=None):
    """Execute a command; return the exit code after printing JSON."""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("a command is required")
        result = args.func(args)
        code = 0
    except UsageError as exc:
        result, code = {"error": "UsageError", "message": str(exc)}, 2
    except DomainError as exc:
        result = {"error": exc.kind, "message": str(exc)}
        result.update(exc.extra)
        code = 1
    except SystemExit as exc:
        # --help and similar
        if exc.code in (0, None):
            return 0
        result, code = {"error": "UsageError", "message": str(exc)}, 2
    stdout.write(json.dumps(result, sort_keys=True) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
