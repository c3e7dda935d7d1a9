"""Acceptance criteria, one test per criterion.

Each test records its outcome in acceptance_log so the run ends with a
pass/fail line per criterion. Criteria 2 and 8 are checked literally; the
companion tests pin down what does hold for those two.
"""

import functools
import random
import time
from fractions import Fraction

import numpy as np
import pytest

import acceptance_log
from conftest import random_flip, random_isomorph, random_summary
from oracles import determinantal_invariants, textbook_invariants
from shadowcalc.algebra import (AbelianGroup, GroupPresentation, LaurentPoly,
                                abelianization_vectors, alexander_matrix, free_reduce,
                                fundamental_identity_holds, h1_from_presentation,
                                parse_presentation, snf)
from shadowcalc.analysis import (CANDIDATE, CENSUS_LABELS, NOT_A_SHADOW, M, census_label,
                                 classification_tables, costantino_check, cut_system_stats,
                                 genus_bound, overall_status)
from shadowcalc.cw import homology
from shadowcalc.enumeration import EnumerationBounds, enumerate as enumerate_census
from shadowcalc.graph import canonical_form, parse_graph
from shadowcalc.polyhedron import (build_xk, connected_sum, extract_regions, specialize,
                                   weighted_complexity)

HALF = Fraction(1, 2)
Z = AbelianGroup(1)
ZERO = AbelianGroup(0)


def checked(number, title):
    """Record the wrapped test's outcome under `number`."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                acceptance_log.record(number, title, False)
                raise
            acceptance_log.record(number, title, True)
        return run
    return wrap


def companion(number):
    """Append the wrapped test's outcome to the note of criterion `number`."""
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                acceptance_log.annotate(number, f"{fn.__doc__.strip()}: FAIL")
                raise
            acceptance_log.annotate(number, f"{fn.__doc__.strip()}: pass")
        return run
    return wrap


def census_homology(label):
    return homology(parse_graph(CENSUS_LABELS[label]))


# 1 ------------------------------------------------------------------------

@checked(1, "census at (8, 1/2, 1/2): 22 classes / 24 polyhedra of value 1/2, < 60 s")
def test_census_reproduction():
    start = time.perf_counter()
    entries = enumerate_census(EnumerationBounds(8, HALF, HALF))
    elapsed = time.perf_counter() - start
    half = [e for e in entries if e.value(HALF) == HALF]
    assert len(half) == 24
    assert len({e.graph_class for e in half}) == 22
    # the two classes carrying two polyhedra each
    doubled = {}
    for e in half:
        doubled.setdefault(e.graph_class, []).append(census_label(e.canonical))
    pairs = sorted(sorted(v) for v in doubled.values() if len(v) == 2)
    assert pairs == [["a15^0", "a15^1"], ["a17^0", "a17^1"]]
    assert elapsed < 60


# 2 ------------------------------------------------------------------------

TORSION_TABLE = {
    "a6": AbelianGroup(0, (3,)),
    "a7": AbelianGroup(0, (3,)),
    "a8": AbelianGroup(0, (6,)),
    "a15^1": AbelianGroup(0, (3,)),
    "m3": AbelianGroup(0, (2,)),
    "m4": AbelianGroup(0, (4,)),
}


@checked(2, "torsion table: H1 as listed, H2 = 0, NotAShadow for all six")
def test_torsion_table():
    for label, h1 in TORSION_TABLE.items():
        h = census_homology(label)
        assert h[2] == ZERO, label
        assert costantino_check(h[1], h[2]).status == NOT_A_SHADOW, label
    wrong = {label: str(census_homology(label)[1]) for label, h1 in TORSION_TABLE.items()
             if census_homology(label)[1] != h1}
    assert not wrong, f"H1 differs from the table: {wrong}"


@companion(2)
def test_torsion_table_torsion_parts():
    """torsion parts, H2 = 0 and verdicts"""
    for label, h1 in TORSION_TABLE.items():
        h = census_homology(label)
        assert h[1].torsion == h1.torsion, label
        assert h[2] == ZERO and costantino_check(h[1], h[2]).status == NOT_A_SHADOW
    # the two that carry a free summand as well
    assert census_homology("a7")[1] == AbelianGroup(1, (3,))
    assert census_homology("a15^1")[1] == AbelianGroup(1, (3,))


# 3 ------------------------------------------------------------------------

@checked(3, "X_k for k <= 12: H2 = Z^k, H1 = 0, c = (0, max(0,k-2)), genus k, < 1 s")
def test_xk_family():
    start = time.perf_counter()
    for k in range(1, 13):
        g, c = build_xk(k)
        h = homology(g, c)
        assert h[2] == AbelianGroup(k) and h[1] == ZERO, k
        s = extract_regions(g, c)[1]
        wc = weighted_complexity(s)
        assert (wc.m, wc.n) == (0, max(0, k - 2)), k
        k1, k2, k3 = 0, k, 0
        assert wc.value(HALF) == max(0, Fraction(2 * k1 + k2 + k3 - 2, 2))
        if k >= 2:
            assert genus_bound(s) == k
    assert time.perf_counter() - start < 1


# 4 ------------------------------------------------------------------------

@checked(4, "counting lemmas on 100 random summaries")
def test_counting_lemmas():
    rng = random.Random(4)
    for _ in range(100):
        s = random_summary(rng)
        st = cut_system_stats(s)
        wc = weighted_complexity(s)
        assert st.n_prime == wc.value(1) + 1
        assert st.tau_arcs == 2 + 2 * wc.value(HALF)
        assert st.sigma_genus == 3 + 2 * wc.value(HALF)
        assert st.chi_gamma == -wc.value(0) - wc.n


# 5 ------------------------------------------------------------------------

@checked(5, "specialize adds 2n true vertices and its value is c_2 of the input")
def test_specialization():
    rng = random.Random(5)
    done = 0
    while done < 100:
        s = random_summary(rng)
        wc = weighted_complexity(s)
        if wc.n == 0:
            continue
        done += 1
        sp = specialize(s)
        assert sp.true_vertices == s.true_vertices + 2 * wc.n
        for r in (0, Fraction(1, 3), HALF, 1, 2, Fraction(7, 2), 10):
            assert weighted_complexity(sp).value(r) == wc.value(2)


# 6 ------------------------------------------------------------------------

@checked(6, "connected-sum excess is 2r on 100 random pairs")
def test_connected_sum_excess():
    rng = random.Random(6)
    for _ in range(100):
        a, b = random_summary(rng), random_summary(rng)
        s = connected_sum(a, rng.randrange(len(a.regions)), b, rng.randrange(len(b.regions)))
        for r in (0, HALF, 1, 2):
            va, vb, vs = (weighted_complexity(x).value(r) for x in (a, b, s))
            assert vs - va - vb == 2 * r


# 7 ------------------------------------------------------------------------

def boundary_presentation(m, n):
    return parse_presentation(f"<x,y,z | [x,z], [z,y^-1xy], x^{n}zyzy^-1, z^-1(xy^-1xy)^{m}>")


@checked(7, "H1 of the boundary: Z, Z+Z or Z+Z/(4m+n) over [-5,5]^2, < 1 s")
def test_boundary_trichotomy():
    start = time.perf_counter()
    for m in range(-5, 6):
        for n in range(-5, 6):
            d = abs(4 * m + n)
            got = h1_from_presentation(boundary_presentation(m, n)).group
            if d == 0:
                expected = AbelianGroup(2)
            elif d == 1:
                expected = Z
            else:
                expected = AbelianGroup(1, (d,))
            assert got == expected, (m, n)
    assert time.perf_counter() - start < 1


# 8 ------------------------------------------------------------------------

V2 = ("t1", "t2")
T1, T2 = LaurentPoly.gens(V2)
ONE = LaurentPoly.const(V2, 1)


def upper_right_minor(m):
    p = boundary_presentation(m, -4 * m)
    A = alexander_matrix(p, {"x": (0, 1), "y": (1, 0), "z": (0, 2 * m)})
    return A.submatrix((0, 1), (1, 2)).det()


def expected_minor(m):
    return T1 ** -1 * T2 * (ONE - T2) ** 2 * (ONE - T2 ** (2 * m))


@checked(8, "upper-right 2x2 Alexander minor for m = 1, 2, 3 with n = -4m")
def test_alexander_minor():
    bad = {m: str(upper_right_minor(m)) for m in (1, 2, 3)
           if upper_right_minor(m) != expected_minor(m)}
    assert not bad, f"minor differs from t1^-1 t2 (1-t2)^2 (1-t2^2m): {bad}"


@companion(8)
def test_alexander_minor_up_to_unit():
    """equal up to the unit t2^-1"""
    for m in (1, 2, 3):
        assert upper_right_minor(m).unit_ratio(expected_minor(m)) == T2 ** -1


# 9 ------------------------------------------------------------------------

def random_presentation(rng):
    n = rng.randint(1, 3)
    letters = [i for i in range(1, n + 1)] + [-i for i in range(1, n + 1)]
    rels = tuple(free_reduce([rng.choice(letters) for _ in range(rng.randint(0, 8))])
                 for _ in range(rng.randint(0, 4)))
    return GroupPresentation(tuple("xyz"[:n]), rels)


@checked(9, "property suites: zero violations over >= 10^4 cases")
def test_property_suites(census):
    rng = random.Random(9)
    cases = 0
    violations = []

    for _ in range(3000):
        rows, cols = rng.randint(1, 8), rng.randint(1, 8)
        A = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        U, D, V = snf(np.array(A, dtype=object))
        nz = [D[i, i] for i in range(min(D.shape)) if D[i, i]]
        ok = (U.dot(np.array(A, dtype=object)).dot(V) == D).all() and \
            nz == textbook_invariants(A)
        if ok and min(rows, cols) <= 3:
            ok = nz == determinantal_invariants(A)
        cases += 1
        if not ok:
            violations.append(("snf", A))

    for _ in range(3000):
        p = random_presentation(rng)
        ab = {g: (rng.randint(-2, 2), rng.randint(-2, 2)) for g in p.generators}
        for vectors in (abelianization_vectors(p, ab), abelianization_vectors(p)):
            cases += 1
            if not fundamental_identity_holds(p, vectors):
                violations.append(("fox", p))

    for e in census:
        g = e.graph.with_labels(e.cocycle.representative_labels)
        regions = sorted(r.key() for r in extract_regions(g)[0])
        h = homology(g)
        for _ in range(60):
            other = random_flip(random_isomorph(g, rng), rng)
            cases += 1
            if canonical_form(other) != e.canonical or \
                    sorted(r.key() for r in extract_regions(other)[0]) != regions or \
                    homology(other) != h:
                violations.append(("census", e.graph.to_dsl()))

    for _ in range(2000):
        s = random_summary(rng)
        wc = weighted_complexity(s)
        r1 = Fraction(rng.randint(0, 100), rng.randint(1, 20))
        r2 = Fraction(rng.randint(0, 100), rng.randint(1, 20))
        cases += 1
        if wc.value(min(r1, r2)) > wc.value(max(r1, r2)):
            violations.append(("monotone", s))

    acceptance_log.annotate(9, f"{cases} cases")
    assert cases >= 10 ** 4
    assert not violations, violations[:5]


# 10 -----------------------------------------------------------------------

TABLE0 = ["S4", "CP2", "CP2BAR", "S2xS2", "2CP2", "CP2#CP2BAR", "2CP2BAR"]
TABLE_HALF = ["3CP2", "2CP2#CP2BAR", "CP2#2CP2BAR", "3CP2BAR", "S1xS3", "(S1xS3)#CP2",
              "(S1xS3)#CP2BAR", "S_2", "S'_2", "S_3"]


@checked(10, "classification tables have 7 and 10 entries; survivors name subsets")
def test_classification_tables(census):
    t0 = classification_tables(0)
    th = classification_tables(HALF)
    assert sorted(map(str, t0)) == sorted(str(M(x)) for x in TABLE0)
    assert sorted(map(str, th)) == sorted(str(M(x)) for x in TABLE_HALF)
    assert len(t0) == 7 and len(th) == 10
    allowed = {str(x) for x in t0 + th}
    reached = set()
    for e in census:
        if overall_status(e.verdicts) != CANDIDATE:
            continue
        for v in e.verdicts:
            named = set(v.get("shadow_of") or ())
            assert named <= allowed, (census_label(e.canonical), named - allowed)
            reached |= named
    # every manifold of complexity 1/2 is reached by some survivor
    assert {str(x) for x in th} <= reached


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v"]))
