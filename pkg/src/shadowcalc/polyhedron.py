"""Regions, Euler characteristics, Z/2-gleams and weighted complexity."""

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .graph import (CocycleClass, Edge, EncodingGraph, VertexKind,
                    require_valid)


class UndefinedComplexityError(ValueError):
    """c_r is not defined for closed surfaces of positive genus."""


def as_fraction(r):
    if isinstance(r, str):
        return Fraction(r.strip())
    return Fraction(r)


@dataclass(frozen=True)
class Wing:
    owner: str
    slot: int
    winding: int
    moebius_collar: int


def wing_of(vid, kind, port):
    # only the circle of the fixed arm of Y12 carries a Moebius collar
    collar = 1 if (kind is VertexKind.Y12 and port == 0) else 0
    return Wing(vid, port, kind.winding(port), collar)


@dataclass(frozen=True)
class Region:
    pieces: tuple
    wings: tuple
    chi: int
    gl2: object  # 0, 1, or None for boundary regions
    is_boundary: bool
    orientable: bool = True

    @property
    def arcs(self):
        return 1 - self.chi

    @property
    def boundary_circles(self):
        return len(self.wings) + sum(1 for p in self.pieces if p[1] is VertexKind.B)

    def key(self):
        """Isomorphism-invariant description used in comparisons."""
        return (self.chi, self.gl2 if self.gl2 is not None else -1, self.is_boundary,
                tuple(sorted(w.winding for w in self.wings)))

    def to_json(self):
        return {
            "pieces": [v for v, _ in self.pieces],
            "wings": [{"owner": w.owner, "slot": w.slot, "winding": w.winding,
                       "moebius_collar": w.moebius_collar} for w in self.wings],
            "chi": self.chi, "gl2": self.gl2, "is_boundary": self.is_boundary,
            "orientable": self.orientable,
        }


@dataclass(frozen=True)
class RegionData:
    chi: int
    is_boundary: bool = False
    gl2: object = None


@dataclass(frozen=True)
class PolyhedronSummary:
    true_vertices: int
    regions: tuple  # of RegionData
    singular_circles: int
    boundary_components: int
    is_sphere: bool = False
    is_closed_surface_positive_genus: bool = False

    def __post_init__(self):
        regs = tuple(r if isinstance(r, RegionData) else RegionData(*r) for r in self.regions)
        object.__setattr__(self, "regions", regs)
        if self.true_vertices < 0:
            raise ValueError("true_vertices must be non-negative")

    @property
    def has_singular_set(self):
        return self.singular_circles > 0 or self.true_vertices > 0

    @property
    def raw_n(self):
        return sum(1 - r.chi for r in self.regions)

    def to_json(self):
        return {
            "true_vertices": self.true_vertices,
            "regions": [{"chi": r.chi, "is_boundary": r.is_boundary, "gl2": r.gl2}
                        for r in self.regions],
            "singular_circles": self.singular_circles,
            "boundary_components": self.boundary_components,
            "is_sphere": self.is_sphere,
            "is_closed_surface_positive_genus": self.is_closed_surface_positive_genus,
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        regs = tuple(RegionData(int(r["chi"]), bool(r.get("is_boundary", False)), r.get("gl2"))
                     for r in data["regions"])
        return cls(int(data.get("true_vertices", 0)), regs, int(data.get("singular_circles", 0)),
                   int(data.get("boundary_components", 0)), bool(data.get("is_sphere", False)),
                   bool(data.get("is_closed_surface_positive_genus", False)))


@dataclass(frozen=True)
class WeightedComplexity:
    """The pair (m, n) standing for m + r*n."""
    m: int
    n: int

    def value(self, r):
        return self.m + as_fraction(r) * self.n

    def to_json(self, r=None):
        out = {"m": self.m, "n": self.n}
        if r is not None:
            out["value"] = str(self.value(r))
        return out


def _node_graph(g):
    """Nodes are Y-piece circles and non-Y pieces; edges join what they glue."""
    kinds = g._kinds()

    def node(end):
        vid, port = end
        return ("w", vid, port) if kinds[vid].is_y else ("p", vid)

    nodes = []
    for vid, k in g.vertices:
        if k.is_y:
            nodes += [("w", vid, p) for p in range(k.required_degree)]
        else:
            nodes.append(("p", vid))
    links = []
    for e, l in zip(g.edges, g.labels):
        both_wings = kinds[e.a[0]].is_y and kinds[e.b[0]].is_y
        # parity 1 means the local orientations disagree across the edge
        links.append((node(e.a), node(e.b), l ^ int(both_wings)))
    return nodes, links


def extract_regions(g, c=None):
    """Regions of the polyhedron of (g, c) and its numeric summary."""
    require_valid(g)
    if c is not None:
        g = g.with_labels(c.representative_labels)
    kinds = g._kinds()
    nodes, links = _node_graph(g)
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, _ in links:
        parent[find(a)] = find(b)
    comps = {}
    for n in nodes:
        comps.setdefault(find(n), []).append(n)

    # two-colour each component to decide orientability
    side = {}
    adj = {n: [] for n in nodes}
    for a, b, par in links:
        adj[a].append((b, par))
        adj[b].append((a, par))
    bad = set()
    for n in nodes:
        if n in side:
            continue
        side[n] = 0
        stack = [n]
        while stack:
            x = stack.pop()
            for y, par in adj[x]:
                if y not in side:
                    side[y] = side[x] ^ par
                    stack.append(y)
                elif side[y] != side[x] ^ par:
                    bad.add(find(n))

    regions = []
    order = {n: i for i, n in enumerate(nodes)}
    for root, members in sorted(comps.items(), key=lambda kv: min(order[m] for m in kv[1])):
        pieces = tuple((m[1], kinds[m[1]]) for m in members if m[0] == "p")
        wings = tuple(wing_of(m[1], kinds[m[1]], m[2]) for m in members if m[0] == "w")
        chi = sum(1 for _, k in pieces if k is VertexKind.D) - \
            sum(1 for _, k in pieces if k is VertexKind.P)
        is_boundary = any(k is VertexKind.B for _, k in pieces)
        gl2 = None if is_boundary else sum(w.moebius_collar for w in wings) % 2
        orientable = root not in bad and not any(k is VertexKind.Y2 for _, k in pieces)
        regions.append(Region(pieces, wings, chi, gl2, is_boundary, orientable))

    n_y = sum(1 for _, k in g.vertices if k.is_y)
    n_b = g.count(VertexKind.B)
    is_sphere = n_y == 0 and n_b == 0 and len(regions) == 1 and regions[0].chi == 2
    closed_surface = n_y == 0 and n_b == 0 and not is_sphere
    summary = PolyhedronSummary(
        true_vertices=0,
        regions=tuple(RegionData(r.chi, r.is_boundary, r.gl2) for r in regions),
        singular_circles=n_y,
        boundary_components=n_b,
        is_sphere=is_sphere,
        is_closed_surface_positive_genus=closed_surface,
    )
    return regions, summary


def summarize(g, c=None):
    return extract_regions(g, c)[1]


def weighted_complexity(s):
    if s.is_closed_surface_positive_genus:
        raise UndefinedComplexityError("c_r is not defined for closed surfaces other than S^2")
    if s.is_sphere:
        return WeightedComplexity(0, 0)
    return WeightedComplexity(s.true_vertices, s.raw_n)


def compare_at(a, b, r):
    """Return -1, 0 or 1 comparing m + r n exactly."""
    r = as_fraction(r)
    if r < 0:
        raise ValueError("r must be non-negative")
    x, y = a.value(r), b.value(r)
    return (x > y) - (x < y)


def connected_sum(s1, i, s2, j):
    """Summary of the polyhedron obtained by tubing region i of s1 to region j of s2.

    A disk is removed from each region and the two circles are identified
    with the boundary of a new disk, which makes one new singular circle.
    """
    for s, k in ((s1, i), (s2, j)):
        if not 0 <= k < len(s.regions):
            raise IndexError("region index out of range")
    ri, rj = s1.regions[i], s2.regions[j]

    def punctured(r):
        gl2 = None if r.is_boundary else r.gl2
        return RegionData(r.chi - 1, r.is_boundary, gl2)

    regions = [r for k, r in enumerate(s1.regions) if k != i] + \
              [r for k, r in enumerate(s2.regions) if k != j] + \
              [punctured(ri), punctured(rj), RegionData(1, False, 0)]
    return PolyhedronSummary(
        true_vertices=s1.true_vertices + s2.true_vertices,
        regions=tuple(regions),
        singular_circles=s1.singular_circles + s2.singular_circles + 1,
        boundary_components=s1.boundary_components + s2.boundary_components,
    )


def specialize(s):
    """Summary after turning every region into a disk by moves on the cut arcs.

    Each arc of a cut system costs two true vertices, so m grows by 2n.
    """
    if not s.has_singular_set:
        raise ValueError("specialization needs a nonempty singular set")
    n = s.raw_n
    regions = []
    for r in s.regions:
        # a region carrying k arcs is cut into disks; the count of regions
        # is not tracked beyond keeping one disk per original region
        regions.append(RegionData(1, r.is_boundary, None if r.is_boundary else r.gl2))
    return replace(s, true_vertices=s.true_vertices + 2 * n, regions=tuple(regions),
                   is_sphere=False, is_closed_surface_positive_genus=False)


def build_xk(k):
    """Encoding graph of X_k: a sphere split into k - 1 strips with a disk on each."""
    if k < 1:
        raise ValueError("k must be positive")
    if k == 1:
        g = EncodingGraph((("d1", VertexKind.D), ("d2", VertexKind.D)),
                          (Edge(("d1", 0), ("d2", 0), 0),))
        return g, CocycleClass.of(g)
    verts = []
    edges = []
    for i in range(1, k):
        verts.append((f"y{i}", VertexKind.Y111))
        verts.append((f"c{i}", VertexKind.D))
        edges.append(Edge((f"y{i}", 2), (f"c{i}", 0), 0))
    for i in range(1, k - 1):
        edges.append(Edge((f"y{i}", 1), (f"y{i + 1}", 0), 0))
    verts += [("e0", VertexKind.D), ("e1", VertexKind.D)]
    edges.append(Edge(("y1", 0), ("e0", 0), 0))
    edges.append(Edge((f"y{k - 1}", 1), ("e1", 0), 0))
    g = EncodingGraph(tuple(verts), tuple(edges))
    return g, CocycleClass.of(g)


@dataclass(frozen=True)
class GleamAssignment:
    """Gleams stored as integer numbers of halves, keyed by region index."""
    halves: dict = field(default_factory=dict)

    @classmethod
    def from_values(cls, values):
        out = {}
        for key, v in (values.items() if isinstance(values, dict) else enumerate(values)):
            h = as_fraction(v) * 2
            if h.denominator != 1:
                raise ValueError(f"gleam {v} is not a half-integer")
            out[key] = int(h)
        return cls(out)


def gleam_admissible(regions, gl):
    """True iff gl(R) + gl2(R)/2 is an integer on every internal region."""
    for i, r in enumerate(regions):
        if r.is_boundary:
            continue
        if i not in gl.halves:
            raise KeyError(f"no gleam for region {i}")
        if (gl.halves[i] + r.gl2) % 2:
            return False
    return True
