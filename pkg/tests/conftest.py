import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from shadowcalc.enumeration import EnumerationBounds, enumerate as enumerate_census  # noqa: E402
from shadowcalc.graph import Edge, EncodingGraph, VertexKind, relabel, validate  # noqa: E402
from shadowcalc.polyhedron import PolyhedronSummary, RegionData  # noqa: E402

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def census():
    return enumerate_census(EnumerationBounds(8, Fraction(1, 2), Fraction(1, 2)))


def random_graph(rng, max_vertices=7, kinds=None):
    """A random valid encoding graph, built from a random port matching."""
    kinds = kinds or list(VertexKind)
    for _ in range(1000):
        n = rng.randint(1, max_vertices)
        vs = [(f"v{i}", rng.choice(kinds)) for i in range(n)]
        ports = [(v, p) for v, k in vs for p in range(k.required_degree)]
        if len(ports) % 2:
            continue
        rng.shuffle(ports)
        edges = tuple(Edge(ports[i], ports[i + 1], rng.randint(0, 1))
                      for i in range(0, len(ports), 2))
        g = EncodingGraph(tuple(vs), edges)
        if not validate(g):
            return g
    raise RuntimeError("no valid graph found")


def random_isomorph(g, rng):
    """Rename vertices, permute interchangeable circles, shuffle and flip edges."""
    ids = g.ids
    new = [f"w{i}" for i in range(len(ids))]
    rng.shuffle(new)
    mapping = dict(zip(ids, new))
    perms = {}
    for v, k in g.vertices:
        if k.interchangeable:
            p = list(range(k.required_degree))
            rng.shuffle(p)
            perms[v] = tuple(p)
    order = list(range(len(g.edges)))
    rng.shuffle(order)
    h = relabel(g, mapping, perms, order)
    edges = tuple(Edge(e.b, e.a, e.label) if rng.random() < 0.5 else e for e in h.edges)
    verts = list(h.vertices)
    rng.shuffle(verts)
    return EncodingGraph(tuple(verts), edges)


def random_flip(g, rng):
    s = {v for v in g.ids if rng.random() < 0.5}
    return g.with_labels([e.label ^ ((e.a[0] in s) ^ (e.b[0] in s)) for e in g.edges])


def random_summary(rng):
    """A random summary of a polyhedron with nonempty singular set."""
    m = rng.randint(0, 6)
    regions = []
    for _ in range(rng.randint(1, 6)):
        boundary = rng.random() < 0.2
        regions.append(RegionData(rng.randint(-4, 1), boundary,
                                  None if boundary else rng.randint(0, 1)))
    circles = rng.randint(1 if m == 0 else 0, 4)
    return PolyhedronSummary(m, tuple(regions), circles,
                             sum(1 for r in regions if r.is_boundary))


def pytest_terminal_summary(terminalreporter):
    import acceptance_log
    if acceptance_log.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance_log.lines():
            terminalreporter.write_line(line)
