"""Exhaustive generation of encoding graphs and census files."""

import builtins
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .algebra.groups import AbelianGroup, abelianization
from .cw import homology, pi1_presentation
from .graph import (KIND_ORDER, CanonicalForm, CocycleClass, Edge, EncodingGraph,
                    VertexKind, canonical_form, cocycle_classes, graph_canonical_form,
                    parse_graph, require_valid, validate)
from .polyhedron import (PolyhedronSummary, WeightedComplexity, as_fraction, extract_regions,
                         weighted_complexity)


_enumerate = builtins.enumerate


class EnumerationOverflow(RuntimeError):
    """The configured work limit was exceeded."""


class CensusFormatError(ValueError):
    """A census file line could not be read back."""


# ------------------------------------------------------------------ reduction

def _is_reduced_p(g, vid, inc, kinds):
    """Return the reduction applicable at pants vertex `vid`, or None."""
    d_ports = []
    others = []
    for p in range(3):
        ei, end = inc[(vid, p)]
        nb = g.other_end(ei, end)
        if kinds[nb[0]] is VertexKind.D:
            d_ports.append(p)
        else:
            others.append(p)
    if len(d_ports) >= 2:
        return "R1", d_ports
    if len(d_ports) == 1:
        e1, _ = inc[(vid, others[0])]
        e2, _ = inc[(vid, others[1])]
        if e1 == e2:
            return None
        return "R2", d_ports
    return None


def is_reduced(g):
    inc = g.incidence()
    kinds = g._kinds()
    return all(_is_reduced_p(g, v, inc, kinds) is None
               for v, k in g.vertices if k is VertexKind.P)


def reduce(g, c=None):
    """Normal form under the pants reductions.

    R1: pants with two disk caps plus the caps become one disk.
    R2: pants with one disk cap, whose other circles lie on different edges,
    become a single edge joining what those circles were glued to.
    A pants with a cap and a self-loop (torus or Klein bottle) is kept.
    Returns the reduced graph and its cocycle class.
    """
    require_valid(g)
    if c is not None:
        g = g.with_labels(c.representative_labels)
    while True:
        inc = g.incidence()
        kinds = g._kinds()
        step = None
        for v, k in g.vertices:
            if k is VertexKind.P:
                r = _is_reduced_p(g, v, inc, kinds)
                if r is not None:
                    step = (v, r)
                    break
        if step is None:
            return g, CocycleClass.of(g)
        vid, (rule, d_ports) = step
        if rule == "R1":
            g = _apply_r1(g, vid, d_ports, inc)
        else:
            g = _apply_r2(g, vid, d_ports[0], inc, kinds)


def _apply_r1(g, vid, d_ports, inc):
    caps = [g.other_end(*inc[(vid, p)])[0] for p in d_ports[:2]]
    keep = caps[0]
    drop = {vid, caps[1]}
    rest = [p for p in range(3) if p not in d_ports[:2]][0]
    ei_rest, end_rest = inc[(vid, rest)]
    target = g.other_end(ei_rest, end_rest)
    removed = {inc[(vid, p)][0] for p in range(3)}
    edges = [e for i, e in _enumerate(g.edges) if i not in removed]
    if target[0] == caps[1]:
        # all three circles were capped: the result is a sphere
        edges.append(Edge((keep, 0), (target[0], 0), 0))
        drop = {vid}
    else:
        edges.append(Edge((keep, 0), target, g.edges[ei_rest].label))
    verts = tuple((v, k) for v, k in g.vertices if v not in drop)
    return EncodingGraph(verts, tuple(edges))


def _apply_r2(g, vid, d_port, inc, kinds):
    cap = g.other_end(*inc[(vid, d_port)])[0]
    p1, p2 = [p for p in range(3) if p != d_port]
    e1, end1 = inc[(vid, p1)]
    e2, end2 = inc[(vid, p2)]
    x = g.other_end(e1, end1)
    y = g.other_end(e2, end2)
    l1, l2 = g.edges[e1].label, g.edges[e2].label
    both_wings = kinds[x[0]].is_y and kinds[y[0]].is_y
    label = (l1 + l2 + (1 if both_wings else 0)) % 2
    removed = {inc[(vid, p)][0] for p in range(3)}
    edges = [e for i, e in _enumerate(g.edges) if i not in removed]
    edges.append(Edge(x, y, label))
    verts = tuple((v, k) for v, k in g.vertices if v not in (vid, cap))
    return EncodingGraph(verts, tuple(edges))


# ---------------------------------------------------------------- enumeration

@dataclass(frozen=True)
class EnumerationBounds:
    max_vertices: int
    r: Fraction
    c_max: Fraction
    max_n: object = None  # optional cap on sum(1 - chi)
    work_limit: int = 20_000_000

    def __post_init__(self):
        object.__setattr__(self, "r", as_fraction(self.r))
        object.__setattr__(self, "c_max", as_fraction(self.c_max))
        if self.max_vertices < 1 or self.r < 0 or self.c_max < 0:
            raise ValueError("bounds must be non-negative and max_vertices positive")
        if self.max_n is not None and self.max_n < 0:
            raise ValueError("max_n must be non-negative")
        if self.r == 0 and self.max_n is None:
            raise ValueError("with r = 0 a cap max_n is required")

    @property
    def n_cap(self):
        caps = []
        if self.max_n is not None:
            caps.append(int(self.max_n))
        if self.r > 0:
            caps.append(int(self.c_max / self.r))
        return min(caps)


@dataclass
class CensusEntry:
    canonical: CanonicalForm
    graph: EncodingGraph
    cocycle: CocycleClass
    summary: PolyhedronSummary
    complexity: object  # WeightedComplexity or None for closed surfaces of positive genus
    homology: tuple
    abelianization: AbelianGroup
    verdicts: list = field(default_factory=list)
    graph_class: CanonicalForm = None

    @property
    def no_cr(self):
        return self.complexity is None

    def value(self, r):
        return None if self.complexity is None else self.complexity.value(r)

    def to_json(self):
        return {
            "canonical": self.canonical.hex(),
            "graph_class": self.graph_class.hex() if self.graph_class else None,
            "graph": self.graph.to_dsl(),
            "labels": list(self.cocycle.representative_labels),
            "summary": self.summary.to_json(),
            "complexity": None if self.complexity is None else
            {"m": self.complexity.m, "n": self.complexity.n},
            "no_cr": self.no_cr,
            "homology": [h.to_json() for h in self.homology],
            "abelianization": self.abelianization.to_json(),
            "verdicts": list(self.verdicts),
        }


def make_entry(g, c=None, with_verdicts=True):
    """Compute every stored field of a census entry from a graph and class."""
    if c is None:
        c = CocycleClass.of(g)
    lg = g.with_labels(c.representative_labels)
    _, summary = extract_regions(lg)
    wc = None if summary.is_closed_surface_positive_genus else weighted_complexity(summary)
    h = homology(lg)
    ab = abelianization(pi1_presentation(lg))
    entry = CensusEntry(canonical_form(lg), lg, CocycleClass.of(lg), summary, wc, h, ab,
                        graph_class=graph_canonical_form(lg))
    if with_verdicts:
        from .analysis import verdicts_for
        entry.verdicts = [v.to_json() for v in verdicts_for(entry)]
    return entry


def _n0(counts):
    deg = {k: k.required_degree for k in KIND_ORDER}
    y = sum(counts[k] * deg[k] for k in KIND_ORDER if k.is_y)
    s = y + counts[VertexKind.Y2] + counts[VertexKind.B] + counts[VertexKind.P] \
        - counts[VertexKind.D]
    return s // 2


def kind_multisets(max_vertices, n_cap):
    """Vertex-kind count vectors with an even number of circles and n0 <= n_cap."""
    out = []
    kinds = KIND_ORDER
    for total in range(1, max_vertices + 1):
        for counts in _compositions(total, len(kinds)):
            c = dict(zip(kinds, counts))
            if sum(c[k] * k.required_degree for k in kinds) % 2:
                continue
            if _n0(c) > n_cap:
                continue
            out.append(c)
    return out


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


class _Matcher:
    """Perfect matchings of the circles of a fixed multiset of pieces."""

    def __init__(self, counts, limit):
        self.kinds = []
        for k in KIND_ORDER:
            self.kinds += [k] * counts[k]
        self.ports = [(v, p) for v, k in _enumerate(self.kinds) for p in range(k.required_degree)]
        self.limit = limit
        self.work = 0

    def run(self):
        mate = {}
        yield from self._extend(mate)

    def _extend(self, mate):
        self.work += 1
        if self.work > self.limit:
            raise EnumerationOverflow("work limit exceeded")
        free = [pt for pt in self.ports if pt not in mate]
        if not free:
            yield dict(mate)
            return
        p = free[0]
        touched = {v for v, _ in mate} | {p[0]}
        seen_fresh = set()
        seen_port = set()
        for q in free[1:]:
            v, port = q
            k = self.kinds[v]
            if v not in touched:
                # untouched vertices of one kind are interchangeable
                if (k, port if k is VertexKind.Y12 else 0) in seen_fresh:
                    continue
                seen_fresh.add((k, port if k is VertexKind.Y12 else 0))
            elif k.interchangeable:
                if v in seen_port:
                    continue
                seen_port.add(v)
            if not self._allowed(p, q):
                continue
            mate[p] = q
            mate[q] = p
            yield from self._extend(mate)
            del mate[p]
            del mate[q]

    def _allowed(self, p, q):
        kp, kq = self.kinds[p[0]], self.kinds[q[0]]
        if kp is VertexKind.D and kq is VertexKind.D:
            return len(self.kinds) == 2
        return True


def _graph_from_matching(kinds, mate):
    names = []
    counter = {}
    for k in kinds:
        counter[k] = counter.get(k, 0) + 1
        names.append(f"{k.tag.lower()}{counter[k]}")
    verts = tuple((names[i], k) for i, k in _enumerate(kinds))
    edges = []
    done = set()
    for p in sorted(mate):
        q = mate[p]
        if p in done:
            continue
        done.update((p, q))
        edges.append(Edge((names[p[0]], p[1]), (names[q[0]], q[1]), 0))
    return EncodingGraph(verts, tuple(edges))


def _enumerate_multiset(args):
    counts, bounds = args
    counts = {KIND_ORDER[i]: c for i, c in _enumerate(counts)}
    matcher = _Matcher(counts, bounds.work_limit)
    n_cap = bounds.n_cap
    found = {}
    for mate in matcher.run():
        g = _graph_from_matching(matcher.kinds, mate)
        if validate(g) or not is_reduced(g):
            continue
        _, s = extract_regions(g)
        if not s.is_sphere and s.raw_n > n_cap:
            continue
        for c in cocycle_classes(g):
            lg = g.with_labels(c.representative_labels)
            cf = canonical_form(lg)
            if cf in found:
                continue
            _, s = extract_regions(lg)
            if s.is_closed_surface_positive_genus:
                found[cf] = lg
                continue
            if weighted_complexity(s).value(bounds.r) <= bounds.c_max:
                found[cf] = lg
    return found


def enumerate_graphs(bounds, workers=1):
    """Map canonical form -> labelled graph for all reduced pairs within bounds."""
    tasks = [(tuple(c[k] for k in KIND_ORDER), bounds)
             for c in kind_multisets(bounds.max_vertices, bounds.n_cap)]
    found = {}
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_enumerate_multiset, tasks))
    else:
        results = [_enumerate_multiset(t) for t in tasks]
    for res in results:
        for cf, g in res.items():
            found.setdefault(cf, g)
    return found


def enumerate(bounds, workers=1, with_verdicts=True):
    """All valid, connected, reduced (graph, class) pairs within the bounds.

    Closed surfaces of positive genus have no complexity; they are included
    (with ``complexity = None``) when the formal count Σ(1 - chi) is within
    the bounds. Entries are sorted by canonical form.
    """
    found = enumerate_graphs(bounds, workers)
    out = []
    for cf in sorted(found):
        out.append(make_entry(found[cf], with_verdicts=with_verdicts))
    return out


# --------------------------------------------------------------------- files

def entry_from_json(data):
    g = parse_graph(data["graph"])
    labels = tuple(data["labels"])
    g = g.with_labels(labels)
    comp = data.get("complexity")
    entry = CensusEntry(
        canonical=CanonicalForm.fromhex(data["canonical"]),
        graph=g,
        cocycle=CocycleClass.of(g),
        summary=PolyhedronSummary.from_json(data["summary"]),
        complexity=None if comp is None else WeightedComplexity(comp["m"], comp["n"]),
        homology=tuple(AbelianGroup.from_json(h) for h in data["homology"]),
        abelianization=AbelianGroup.from_json(data["abelianization"]),
        verdicts=list(data.get("verdicts", [])),
        graph_class=CanonicalForm.fromhex(data["graph_class"]) if data.get("graph_class")
        else None,
    )
    return entry


def save_census(entries, path, append=False):
    with open(path, "a" if append else "w", encoding="utf-8") as fh:
        for e in entries:
            fh.write(json.dumps(e.to_json(), sort_keys=True) + "\n")


def load_census(path):
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in _enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                data = json.loads(line)
                entry = entry_from_json(data)
            except Exception as exc:
                raise CensusFormatError(f"line {lineno}: {exc}") from exc
            if canonical_form(entry.graph) != entry.canonical:
                raise CensusFormatError(f"line {lineno}: canonical form does not match graph")
            out.append(entry)
    return out


def verify_entry(entry):
    """Recompute every stored field; return the names of mismatching fields."""
    fresh = make_entry(entry.graph, entry.cocycle, with_verdicts=bool(entry.verdicts))
    bad = []
    for name in ("canonical", "summary", "complexity", "homology", "abelianization",
                 "graph_class"):
        if getattr(fresh, name) != getattr(entry, name):
            bad.append(name)
    if entry.verdicts and fresh.verdicts != entry.verdicts:
        bad.append("verdicts")
    return bad


def all_labelings(g):
    """Every labelling of the edges of g (used by brute-force checks)."""
    return [g.with_labels(bits) for bits in product((0, 1), repeat=len(g.edges))]
