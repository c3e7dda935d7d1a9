"""Cell structures for polyhedra given by encoding graphs.

Every circle of a piece gets a base point q and a loop b oriented by the
reference orientation of the circle. The pieces are

    Y piece   0-cell p and loop s on the singular circle; for each circle
              an arc e from p to q and a rectangle with word  e b e^-1 s^-w
    D         a disk with word  b
    P         arcs a1: q0 -> q1, a2: q0 -> q2 and one polygon with word
              b0 a1 b1 a1^-1 a2 b2 a2^-1
    Y2        0-cell m0 and loop c on the core, arc e from m0 to q and a
              polygon with word  e b e^-1 c^-2
    B         nothing beyond the circle (the collar retracts onto it)

An edge identifies the two base points and sets b = eps * b' where eps is
the sign of the circle identification determined by the label.
"""

import json
from dataclasses import dataclass

import numpy as np

from .algebra.groups import (GroupPresentation, free_reduce, homology_of_complex,
                             simplify_presentation)
from .graph import VertexKind, require_valid


@dataclass(frozen=True)
class ChainComplex:
    """d1 has shape (#0-cells, #1-cells) and d2 shape (#1-cells, #2-cells)."""
    d1: np.ndarray
    d2: np.ndarray
    labels0: tuple = ()
    labels1: tuple = ()
    labels2: tuple = ()

    def to_json(self):
        return {
            "d1": self.d1.tolist(), "d2": self.d2.tolist(),
            "cells": {"0": list(self.labels0), "1": list(self.labels1), "2": list(self.labels2)},
        }

    @classmethod
    def from_json(cls, data):
        if isinstance(data, str):
            data = json.loads(data)
        cells = data.get("cells", {})
        n0, n1 = len(cells.get("0", [])), len(cells.get("1", []))
        d1 = np.array(data["d1"], dtype=np.int64).reshape(-1, n1) if n1 or data["d1"] \
            else np.zeros((n0, 0), dtype=np.int64)
        d2 = np.array(data["d2"], dtype=np.int64)
        if d2.ndim != 2:
            d2 = d2.reshape(d1.shape[1], -1)
        return cls(d1, d2, tuple(cells.get("0", ())), tuple(cells.get("1", ())),
                   tuple(cells.get("2", ())))


def gluing_sign(kinds, edge):
    """Sign of the circle identification across an edge."""
    both_wings = kinds[edge.a[0]].is_y and kinds[edge.b[0]].is_y
    if both_wings:
        return 1 if edge.label == 0 else -1
    return -1 if edge.label == 0 else 1


class _Cells:
    def __init__(self):
        self.zero = []
        self.one = []  # (tail, head, label)
        self.two = []  # (word as list of (1-cell, +-1), label)

    def v(self, label):
        self.zero.append(label)
        return len(self.zero) - 1

    def e(self, tail, head, label):
        self.one.append((tail, head, label))
        return len(self.one) - 1

    def f(self, word, label):
        self.two.append((word, label))


class _SignedUnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.sign = [1] * n

    def find(self, x):
        s = 1
        path = []
        while self.parent[x] != x:
            path.append(x)
            s *= self.sign[x]
            x = self.parent[x]
        root = x
        # compress
        acc = s
        for y in path:
            old = self.sign[y]
            self.parent[y] = root
            self.sign[y] = acc
            acc *= old
        return root, s

    def union(self, a, b, eps):
        """Impose a = eps * b."""
        ra, sa = self.find(a)
        rb, sb = self.find(b)
        if ra == rb:
            return
        self.parent[ra] = rb
        self.sign[ra] = sa * eps * sb


def _build(g):
    require_valid(g)
    kinds = g._kinds()
    cells = _Cells()
    port_cells = {}
    for vid, k in g.vertices:
        ports = []
        for p in range(k.required_degree):
            q = cells.v(f"{vid}.{p}:q")
            b = cells.e(q, q, f"{vid}.{p}:circle")
            ports.append((q, b))
            port_cells[(vid, p)] = (q, b)
        if k.is_y:
            pt = cells.v(f"{vid}:singular point")
            s = cells.e(pt, pt, f"{vid}:singular circle")
            for p, (q, b) in enumerate(ports):
                a = cells.e(pt, q, f"{vid}.{p}:arc")
                w = k.winding(p)
                cells.f([(a, 1), (b, 1), (a, -1)] + [(s, -1)] * w, f"{vid}.{p}:wing")
        elif k is VertexKind.D:
            cells.f([(ports[0][1], 1)], f"{vid}:disk")
        elif k is VertexKind.P:
            (q0, b0), (q1, b1), (q2, b2) = ports
            a1 = cells.e(q0, q1, f"{vid}:arc1")
            a2 = cells.e(q0, q2, f"{vid}:arc2")
            cells.f([(b0, 1), (a1, 1), (b1, 1), (a1, -1), (a2, 1), (b2, 1), (a2, -1)],
                    f"{vid}:pants")
        elif k is VertexKind.Y2:
            q, b = ports[0]
            m0 = cells.v(f"{vid}:core point")
            c = cells.e(m0, m0, f"{vid}:core")
            a = cells.e(m0, q, f"{vid}:arc")
            cells.f([(a, 1), (b, 1), (a, -1), (c, -1), (c, -1)], f"{vid}:moebius")

    zero_uf = _SignedUnionFind(len(cells.zero))
    one_uf = _SignedUnionFind(len(cells.one))
    for e in g.edges:
        qa, ba = port_cells[e.a]
        qb, bb = port_cells[e.b]
        zero_uf.union(qa, qb, 1)
        one_uf.union(ba, bb, gluing_sign(kinds, e))

    def renumber(uf, n):
        roots = {}
        for x in range(n):
            r, _ = uf.find(x)
            roots.setdefault(r, len(roots))
        return roots

    z_idx = renumber(zero_uf, len(cells.zero))
    o_idx = renumber(one_uf, len(cells.one))
    zero = [None] * len(z_idx)
    for x, lab in enumerate(cells.zero):
        i = z_idx[zero_uf.find(x)[0]]
        zero[i] = lab if zero[i] is None else zero[i]
    one = [None] * len(o_idx)
    for x, (t, h, lab) in enumerate(cells.one):
        r, s = one_uf.find(x)
        i = o_idx[r]
        if one[i] is None and s == 1:
            one[i] = (z_idx[zero_uf.find(t)[0]], z_idx[zero_uf.find(h)[0]], lab)
    for x, (t, h, lab) in enumerate(cells.one):
        r, s = one_uf.find(x)
        i = o_idx[r]
        if one[i] is None:
            # only loops get identified, so reversing keeps the endpoints
            one[i] = (z_idx[zero_uf.find(h)[0]], z_idx[zero_uf.find(t)[0]], lab)

    def cell(x):
        r, s = one_uf.find(x)
        return o_idx[r], s

    two = []
    for word, lab in cells.two:
        new = []
        for x, ex in word:
            i, s = cell(x)
            new.append((i, ex * s))
        two.append((new, lab))
    return zero, one, two


def chain_complex(g, c=None):
    """Integer cellular chain complex of the polyhedron of (g, c)."""
    if c is not None:
        g = g.with_labels(c.representative_labels)
    zero, one, two = _build(g)
    d1 = np.zeros((len(zero), len(one)), dtype=np.int64)
    for j, (t, h, _) in enumerate(one):
        d1[h, j] += 1
        d1[t, j] -= 1
    d2 = np.zeros((len(one), len(two)), dtype=np.int64)
    for j, (word, _) in enumerate(two):
        for i, s in word:
            d2[i, j] += s
    return ChainComplex(d1, d2, tuple(zero), tuple(l for *_, l in one),
                        tuple(l for _, l in two))


def homology(g, c=None):
    return homology_of_complex(chain_complex(g, c))


def pi1_presentation(g, c=None, simplify=True):
    """Presentation of the fundamental group from a spanning tree of the 1-skeleton."""
    if c is not None:
        g = g.with_labels(c.representative_labels)
    zero, one, two = _build(g)
    parent = list(range(len(zero)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = set()
    for j, (t, h, _) in enumerate(one):
        rt, rh = find(t), find(h)
        if rt != rh:
            parent[rt] = rh
            tree.add(j)
    gens = [j for j in range(len(one)) if j not in tree]
    pos = {j: i + 1 for i, j in enumerate(gens)}
    names = tuple(one[j][2] for j in gens)
    relators = []
    for word, _ in two:
        w = [pos[i] * s for i, s in word if i in pos]
        relators.append(tuple(w))
    p = GroupPresentation(names, tuple(free_reduce(r) for r in relators))
    return simplify_presentation(p) if simplify else p
