"""Encoding graphs of simple polyhedra without true vertices.

A polyhedron without true vertices decomposes into pieces glued along
circles. Each vertex of an encoding graph is one piece and each port is
one of its boundary circles:

    B     collar of a boundary component of X          1 circle
    Y111  mapping torus of the tripod, trivial monodromy   3 circles
    Y12   mapping torus, monodromy swapping two arms      2 circles
    Y3    mapping torus, cyclic monodromy               1 circle
    D     disk                                           1 circle
    P     pair of pants                                  3 circles
    Y2    Moebius band                                   1 circle

Port 0 of a Y12 vertex is the circle of the fixed arm and port 1 the
circle of the two swapped arms. The circles of Y111 and of P are
interchangeable.

Edge labels are a Z/2 cochain. Every circle carries a reference
orientation: the direction of the singular circle for a Y-piece circle and
the induced boundary orientation for the circles of D, P, Y2 and B. When
both ends of an edge are Y-piece circles, label 0 means the gluing
preserves the directions of the two singular circles. Otherwise label 0
means the gluing is compatible with the orientations of the surface pieces.
Label 1 is the reversing gluing in both cases. Only the cohomology class
of the labels matters.
"""

import json
import re
from dataclasses import dataclass
from enum import Enum
from itertools import permutations, product


class GraphSyntaxError(ValueError):
    """Malformed graph text."""


class InvalidGraphError(ValueError):
    """A graph that violates the encoding-graph invariants."""


class VertexKind(Enum):
    B = ("B", 1)
    Y111 = ("Y111", 3)
    Y12 = ("Y12", 2)
    Y3 = ("Y3", 1)
    D = ("D", 1)
    P = ("P", 3)
    Y2 = ("Y2", 1)

    def __init__(self, tag, degree):
        self.tag = tag
        self.required_degree = degree

    @property
    def is_y(self):
        return self in (VertexKind.Y111, VertexKind.Y12, VertexKind.Y3)

    @property
    def interchangeable(self):
        """True when all circles of the piece are interchangeable."""
        return self is not VertexKind.Y12

    def winding(self, port):
        """Number of times the circle at `port` winds around the singular circle."""
        if self is VertexKind.Y111:
            return 1
        if self is VertexKind.Y12:
            return 1 if port == 0 else 2
        if self is VertexKind.Y3:
            return 3
        raise ValueError(f"{self.tag} is not a Y piece")

    @classmethod
    def from_tag(cls, tag):
        for kind in cls:
            if kind.tag == tag:
                return kind
        raise GraphSyntaxError(f"unknown vertex kind {tag!r}")


# fixed order used by canonical forms and by the enumerator
KIND_ORDER = (VertexKind.Y111, VertexKind.Y12, VertexKind.Y3, VertexKind.P,
              VertexKind.Y2, VertexKind.B, VertexKind.D)
KIND_RANK = {k: i for i, k in enumerate(KIND_ORDER)}


def port_role(kind, port):
    """Port index up to the symmetries of the piece."""
    return port if kind is VertexKind.Y12 else 0


@dataclass(frozen=True)
class Edge:
    a: tuple  # (vertex id, port)
    b: tuple
    label: int = 0


@dataclass(frozen=True)
class EncodingGraph:
    vertices: tuple  # of (id, VertexKind)
    edges: tuple  # of Edge

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple((str(v), k) for v, k in self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))

    @property
    def ids(self):
        return [v for v, _ in self.vertices]

    def kind(self, vid):
        return self._kinds()[vid]

    def _kinds(self):
        try:
            return self.__dict__["_kind_cache"]
        except KeyError:
            d = dict(self.vertices)
            object.__setattr__(self, "_kind_cache", d)
            return d

    def index(self, vid):
        return self.ids.index(vid)

    def incidence(self):
        """Map (vertex id, port) -> (edge index, end 0 or 1)."""
        inc = {}
        for i, e in enumerate(self.edges):
            inc.setdefault(e.a, (i, 0))
            if e.b != e.a:
                inc.setdefault(e.b, (i, 1))
        return inc

    def other_end(self, edge_index, end):
        e = self.edges[edge_index]
        return e.b if end == 0 else e.a

    def count(self, kind):
        return sum(1 for _, k in self.vertices if k is kind)

    @property
    def labels(self):
        return tuple(e.label for e in self.edges)

    def with_labels(self, labels):
        labels = tuple(int(x) % 2 for x in labels)
        if len(labels) != len(self.edges):
            raise ValueError("one label per edge is required")
        return EncodingGraph(self.vertices,
                             tuple(Edge(e.a, e.b, l) for e, l in zip(self.edges, labels)))

    def first_betti(self):
        comps = len(_components(self))
        return len(self.edges) - len(self.vertices) + comps

    def to_dsl(self):
        lines = [f"v {v} {k.tag}" for v, k in self.vertices]
        lines += [f"e {e.a[0]}.{e.a[1]} {e.b[0]}.{e.b[1]} {e.label}" for e in self.edges]
        return "\n".join(lines) + "\n"

    def to_json(self):
        return {
            "vertices": [{"id": v, "kind": k.tag} for v, k in self.vertices],
            "edges": [{"a": list(e.a), "b": list(e.b), "label": e.label} for e in self.edges],
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        verts = tuple((d["id"], VertexKind.from_tag(d["kind"])) for d in data["vertices"])
        edges = tuple(Edge((str(d["a"][0]), int(d["a"][1])), (str(d["b"][0]), int(d["b"][1])),
                           int(d.get("label", 0))) for d in data["edges"])
        return cls(verts, edges)

    def __str__(self):
        return self.to_dsl().strip().replace("\n", "; ")


_VLINE = re.compile(r"^v\s+(\S+)\s+(\S+)$")
_ELINE = re.compile(r"^e\s+([^\s.]+)\.(-?\d+)\s+([^\s.]+)\.(-?\d+)\s+(\S+)$")


def parse_graph(text):
    """Parse the line-oriented graph language.

    Statements are ``v <id> <kind>`` and ``e <id>.<port> <id>.<port> <0|1>``,
    separated by newlines or semicolons; ``#`` starts a comment.
    """
    vertices = []
    kinds = {}
    edges = []
    used = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0]
        for stmt in line.split(";"):
            stmt = stmt.strip()
            if not stmt:
                continue
            m = _VLINE.match(stmt)
            if m:
                vid, tag = m.groups()
                if "." in vid:
                    raise GraphSyntaxError(f"line {lineno}: vertex id may not contain '.'")
                if vid in kinds:
                    raise GraphSyntaxError(f"line {lineno}: duplicate vertex {vid!r}")
                kinds[vid] = VertexKind.from_tag(tag)
                vertices.append((vid, kinds[vid]))
                continue
            m = _ELINE.match(stmt)
            if not m:
                raise GraphSyntaxError(f"line {lineno}: cannot parse {stmt!r}")
            u, pu, v, pv, lab = m.groups()
            if lab not in ("0", "1"):
                raise GraphSyntaxError(f"line {lineno}: label must be 0 or 1")
            ends = []
            for vid, port in ((u, int(pu)), (v, int(pv))):
                if vid not in kinds:
                    raise GraphSyntaxError(f"line {lineno}: unknown vertex {vid!r}")
                if not 0 <= port < kinds[vid].required_degree:
                    raise GraphSyntaxError(f"line {lineno}: port out of range: {vid}.{port}")
                if (vid, port) in used or (ends and ends[0] == (vid, port)):
                    raise GraphSyntaxError(f"line {lineno}: port used twice: {vid}.{port}")
                ends.append((vid, port))
            used.update(ends)
            edges.append(Edge(ends[0], ends[1], int(lab)))
    return EncodingGraph(tuple(vertices), tuple(edges))


def _components(g):
    parent = {v: v for v in g.ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in g.edges:
        if e.a[0] in parent and e.b[0] in parent:
            parent[find(e.a[0])] = find(e.b[0])
    comps = {}
    for v in g.ids:
        comps.setdefault(find(v), []).append(v)
    return list(comps.values())


def validate(g):
    """Return a list of diagnostics; an empty list means the graph is valid."""
    diags = []
    kinds = {}
    for v, k in g.vertices:
        if v in kinds:
            diags.append(f"duplicate vertex {v}")
        kinds[v] = k
    uses = {}
    for e in g.edges:
        if e.label not in (0, 1):
            diags.append("label not in {0,1}")
        for vid, port in (e.a, e.b):
            if vid not in kinds:
                diags.append(f"unknown vertex {vid}")
                continue
            if not 0 <= port < kinds[vid].required_degree:
                diags.append(f"port out of range {vid}.{port}")
                continue
            uses[(vid, port)] = uses.get((vid, port), 0) + 1
    if any(n > 1 for n in uses.values()):
        diags.append("port used twice")
    if any((v, p) not in uses for v, k in kinds.items() for p in range(k.required_degree)):
        diags.append("unused port")
    if not g.vertices:
        diags.append("empty graph")
    elif len(_components(g)) > 1:
        diags.append("disconnected")
    return diags


def require_valid(g):
    diags = validate(g)
    if diags:
        raise InvalidGraphError("; ".join(diags))


@dataclass(frozen=True)
class CocycleClass:
    """A Z/2 cocycle on the edges of a graph, up to coboundaries."""
    graph: EncodingGraph
    representative_labels: tuple

    def __post_init__(self):
        labels = tuple(int(x) % 2 for x in self.representative_labels)
        if len(labels) != len(self.graph.edges):
            raise ValueError("one label per edge is required")
        object.__setattr__(self, "representative_labels", labels)

    @classmethod
    def of(cls, g):
        """The class carried by the edge labels of `g`."""
        return cls(g, g.labels)

    def labelled_graph(self):
        return self.graph.with_labels(self.representative_labels)

    def equivalent(self, other):
        if self.graph.edges and [(e.a, e.b) for e in self.graph.edges] != \
                [(e.a, e.b) for e in other.graph.edges]:
            raise ValueError("classes live on different graphs")
        diff = [x ^ y for x, y in zip(self.representative_labels, other.representative_labels)]
        return _is_coboundary(self.graph, diff)

    def flip(self, vertex_ids):
        """Add the coboundary of the indicator function of `vertex_ids`."""
        return CocycleClass(self.graph, coboundary_flip(self.graph, self.representative_labels,
                                                        vertex_ids))


def coboundary_flip(g, labels, vertex_ids):
    s = set(vertex_ids)
    out = []
    for e, l in zip(g.edges, labels):
        out.append(l ^ ((e.a[0] in s) ^ (e.b[0] in s)))
    return tuple(out)


def _spanning_forest(g):
    """Indices of tree edges of a spanning forest, found by depth-first search."""
    adj = {v: [] for v in g.ids}
    for i, e in enumerate(g.edges):
        adj[e.a[0]].append((i, e.b[0]))
        adj[e.b[0]].append((i, e.a[0]))
    seen = set()
    tree = []
    for root in g.ids:
        if root in seen:
            continue
        seen.add(root)
        stack = [root]
        while stack:
            v = stack.pop()
            for i, w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    tree.append(i)
                    stack.append(w)
    return tree


def _tree_potential(g, labels):
    """Vertex potentials f with f(a) + f(b) = label on every tree edge."""
    tree = _spanning_forest(g)
    f = {}
    adj = {v: [] for v in g.ids}
    for i in tree:
        e = g.edges[i]
        adj[e.a[0]].append((e.b[0], labels[i]))
        adj[e.b[0]].append((e.a[0], labels[i]))
    for root in g.ids:
        if root in f:
            continue
        f[root] = 0
        stack = [root]
        while stack:
            v = stack.pop()
            for w, l in adj[v]:
                if w not in f:
                    f[w] = f[v] ^ l
                    stack.append(w)
    return f


def _is_coboundary(g, labels):
    f = _tree_potential(g, labels)
    return all(l == f[e.a[0]] ^ f[e.b[0]] for e, l in zip(g.edges, labels))


def cocycle_classes(g):
    """One representative per class in H^1(g; Z/2); the first is the zero class.

    Representatives are zero on a spanning forest and range over all values
    on the remaining edges.
    """
    require_valid(g)
    tree = set(_spanning_forest(g))
    free = [i for i in range(len(g.edges)) if i not in tree]
    out = []
    for bits in product((0, 1), repeat=len(free)):
        labels = [0] * len(g.edges)
        for i, b in zip(free, bits):
            labels[i] = b
        out.append(CocycleClass(g, tuple(labels)))
    return out


def normalize_labels(g, labels):
    """Representative of the class of `labels` that vanishes on the spanning forest."""
    f = _tree_potential(g, labels)
    return tuple(l ^ f[e.a[0]] ^ f[e.b[0]] for e, l in zip(g.edges, labels))


# ---------------------------------------------------------------- canonical form

@dataclass(frozen=True, order=True)
class CanonicalForm:
    bytes: bytes

    def hex(self):
        return self.bytes.hex()

    @classmethod
    def fromhex(cls, s):
        return cls(bytes.fromhex(s))

    def __str__(self):
        return self.hex()


def _adjacency(g):
    idx = {v: i for i, v in enumerate(g.ids)}
    kinds = [k for _, k in g.vertices]
    adj = [[] for _ in kinds]
    for e in g.edges:
        u, v = idx[e.a[0]], idx[e.b[0]]
        ru, rv = port_role(kinds[u], e.a[1]), port_role(kinds[v], e.b[1])
        adj[u].append((ru, v, rv))
        adj[v].append((rv, u, ru))
    return idx, kinds, adj


def _refine(colors, adj):
    while True:
        sigs = [(colors[i], tuple(sorted((r, colors[j], s) for r, j, s in adj[i])))
                for i in range(len(colors))]
        ranks = {s: n for n, s in enumerate(sorted(set(sigs)))}
        new = [ranks[s] for s in sigs]
        if len(ranks) == len(set(colors)):
            return new
        colors = new


def _leaves(colors, adj):
    colors = _refine(colors, adj)
    if len(set(colors)) == len(colors):
        yield colors
        return
    sizes = {}
    for c in colors:
        sizes[c] = sizes.get(c, 0) + 1
    target = min(c for c, n in sizes.items() if n > 1)
    for v in range(len(colors)):
        if colors[v] != target:
            continue
        keyed = [(c, 0 if (i == v or c != target) else 1) for i, c in enumerate(colors)]
        ranks = {k: n for n, k in enumerate(sorted(set(keyed)))}
        yield from _leaves([ranks[k] for k in keyed], adj)


def _lexmin_labels(bits_per_edge, stars, labels):
    """Smallest label vector (as an integer, first edge most significant) in the coset."""
    m = bits_per_edge
    basis = {}
    for s in stars:
        while s:
            top = s.bit_length() - 1
            if top in basis:
                s ^= basis[top]
            else:
                basis[top] = s
                break
    vec = 0
    for i, l in enumerate(labels):
        if l:
            vec |= 1 << (m - 1 - i)
    for top in sorted(basis, reverse=True):
        if vec >> top & 1:
            vec ^= basis[top]
    return vec


def _serialize(g, kinds, idx, pos, labels, with_labels):
    n = len(kinds)
    order = sorted(range(n), key=lambda i: pos[i])
    head = bytes([len(order)] + [KIND_RANK[kinds[i]] for i in order])
    keyed = []
    for ei, e in enumerate(g.edges):
        u, v = idx[e.a[0]], idx[e.b[0]]
        end1 = (pos[u], port_role(kinds[u], e.a[1]))
        end2 = (pos[v], port_role(kinds[v], e.b[1]))
        keyed.append((tuple(sorted((end1, end2))), ei))
    keyed.sort()
    struct = bytes(x for (k, _) in keyed for end in k for x in end)
    if not with_labels:
        return head + struct
    # edges with equal keys are parallel and interchangeable
    groups = []
    for k, ei in keyed:
        if groups and groups[-1][0] == k:
            groups[-1][1].append(ei)
        else:
            groups.append((k, [ei]))
    m = len(keyed)
    best = None
    for choice in product(*[permutations(grp) for _, grp in groups]):
        seq = [ei for grp in choice for ei in grp]
        stars = []
        for i in range(n):
            s = 0
            for slot, ei in enumerate(seq):
                e = g.edges[ei]
                if (idx[e.a[0]] == i) != (idx[e.b[0]] == i):
                    s |= 1 << (m - 1 - slot)
            stars.append(s)
        val = _lexmin_labels(m, stars, [labels[ei] for ei in seq])
        if best is None or val < best:
            best = val
    nbytes = max(1, (m + 7) // 8)
    return head + struct + bytes([255]) + best.to_bytes(nbytes, "big")


def canonical_form(g, c=None):
    """Canonical bytes of (graph, cocycle class).

    Invariant under renaming vertices, permuting interchangeable circles,
    reordering edges and adding coboundaries. With ``c=None`` the labels of
    ``g`` are used.
    """
    require_valid(g)
    labels = c.representative_labels if c is not None else g.labels
    return CanonicalForm(_canonical(g, labels, True))


def graph_canonical_form(g):
    """Canonical bytes of the underlying graph, ignoring the cocycle."""
    require_valid(g)
    return CanonicalForm(_canonical(g, g.labels, False))


def _canonical(g, labels, with_labels):
    idx, kinds, adj = _adjacency(g)
    start = [KIND_RANK[k] for k in kinds]
    best = None
    for leaf in _leaves(start, adj):
        s = _serialize(g, kinds, idx, leaf, labels, with_labels)
        if best is None or s < best:
            best = s
    return best


def relabel(g, mapping, port_perm=None, edge_order=None):
    """Apply a vertex renaming, port permutations and an edge reordering.

    Used to produce isomorphic copies of a graph. ``port_perm`` maps a vertex
    id to a permutation tuple of its ports, allowed only where circles are
    interchangeable.
    """
    port_perm = port_perm or {}

    def move(end):
        v, p = end
        perm = port_perm.get(v)
        return (mapping[v], perm[p] if perm else p)

    verts = tuple((mapping[v], k) for v, k in g.vertices)
    edges = [Edge(move(e.a), move(e.b), e.label) for e in g.edges]
    if edge_order is not None:
        edges = [edges[i] for i in edge_order]
    return EncodingGraph(verts, tuple(edges))
