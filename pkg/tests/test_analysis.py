import random
from fractions import Fraction

import pytest

from conftest import random_summary
from shadowcalc.algebra import AbelianGroup
from shadowcalc.analysis import (CANDIDATE, CENSUS_LABELS, NOT_A_SHADOW,
                                 ObstructionVerdict, SingularSetEmptyError, TrisectionError,
                                 TrisectionParams, M, census_label, classification_tables,
                                 costantino_check, curated_verdict, cut_system_stats,
                                 destab_triple, genus_bound, martelli_family, overall_status,
                                 structural_checks, trisection_ops)
from shadowcalc.graph import parse_graph
from shadowcalc.polyhedron import (PolyhedronSummary, RegionData, UndefinedComplexityError,
                                   build_xk, extract_regions, weighted_complexity)

HALF = Fraction(1, 2)
Z = AbelianGroup(1)
ZERO = AbelianGroup(0)


def summary(label):
    return extract_regions(parse_graph(CENSUS_LABELS[label]))[1]


def test_manifold_expr():
    assert M("S4#CP2") == M("CP2")
    assert str(M("S4")) == "S4"
    assert M("2CP2") == M("CP2#CP2") == M("CP2") + M("CP2")
    assert M("CP2#CP2BAR") != M("2CP2")
    assert M("(S1xS3)#CP2").b2 == 1
    assert str(M("S2xS2#CP2BAR#S2xS2")) == "CP2BAR#2(S2xS2)"
    with pytest.raises(ValueError):
        M("S_1")
    with pytest.raises(ValueError):
        M("T4")


def test_costantino_check():
    assert costantino_check(AbelianGroup(0, (3,)), ZERO).status == NOT_A_SHADOW
    assert costantino_check(Z, ZERO).status == CANDIDATE
    assert costantino_check(AbelianGroup(0, (2,)), Z).status == CANDIDATE


def test_costantino_monotone_in_h2():
    rng = random.Random(51)
    for _ in range(200):
        h1 = AbelianGroup(rng.randint(0, 2), tuple(2 ** i for i in range(rng.randint(0, 2))))
        h2 = AbelianGroup(rng.randint(0, 2))
        bigger = AbelianGroup(h2.rank + rng.randint(1, 3))
        if costantino_check(h1, h2).status == CANDIDATE:
            assert costantino_check(h1, bigger).status == CANDIDATE


def test_structural_checks():
    torus = PolyhedronSummary(0, (RegionData(0),), 0, 0, is_closed_surface_positive_genus=True)
    v = structural_checks(torus)
    assert (v.status, v.rule) == (NOT_A_SHADOW, "closed_surf")
    v = structural_checks(summary("Y3+D"))
    assert (v.status, v.rule) == (NOT_A_SHADOW, "closed_polyh")
    assert structural_checks(summary("X2")).status == CANDIDATE


def test_verdict_requires_rule():
    with pytest.raises(ValueError):
        ObstructionVerdict(NOT_A_SHADOW, "")
    with pytest.raises(ValueError):
        ObstructionVerdict("Maybe", "x")


def test_martelli_family():
    assert [str(b) for b in martelli_family(3).bases] == ["S_3"]
    assert {str(b) for b in martelli_family(2).bases} == {"S_2", "S'_2"}
    assert [str(b) for b in martelli_family(1).bases] == ["S4"]
    assert M("CP2") in martelli_family(1).members(2)
    assert [str(b) for b in martelli_family(2, witness="S'_2").bases] == ["S'_2"]
    with pytest.raises(ValueError):
        martelli_family(4)


def test_cut_system_stats_examples():
    x4 = extract_regions(build_xk(4)[0])[1]
    s = cut_system_stats(x4)
    assert (s.total_arcs, s.n_prime, s.tau_arcs, s.sigma_genus, s.destabilized_bound) == \
        (2, 3, 4, 5, 4)
    s = cut_system_stats(summary("X2"))
    assert (s.tau_arcs, s.sigma_genus, s.destabilized_bound) == (2, 3, 2)
    s = cut_system_stats(PolyhedronSummary(2, (RegionData(0),), 0, 0))
    assert (s.n_prime, s.chi_gamma) == (4, -3)
    with pytest.raises(SingularSetEmptyError):
        cut_system_stats(summary("disk"))


def test_cut_system_identities():
    rng = random.Random(52)
    for _ in range(200):
        s = random_summary(rng)
        st = cut_system_stats(s)
        wc = weighted_complexity(s)
        assert st.sigma_genus - st.destabilized_bound == 1
        assert st.chi_gamma == -(wc.m + wc.n)
        assert st.tau_arcs == st.n_prime + wc.m + 1
        assert st.arcs_per_region == tuple(1 - r.chi for r in s.regions)


def test_genus_bound_examples():
    for k in range(2, 10):
        assert genus_bound(extract_regions(build_xk(k)[0])[1]) == k
    assert genus_bound(summary("a1")) == 1
    assert genus_bound(summary("X1")) == 1
    torus = PolyhedronSummary(0, (RegionData(0),), 0, 0, is_closed_surface_positive_genus=True)
    with pytest.raises(UndefinedComplexityError):
        genus_bound(torus)


def parallel(*pairs):
    p = [[False] * 3 for _ in range(3)]
    for i, j in pairs:
        p[i][j] = p[j][i] = True
    return p


def test_destab_triple():
    inter = [[0, 0, 1], [0, 0, 1], [1, 1, 0]]
    assert destab_triple({"parallel": parallel((0, 1)), "intersections": inter})
    assert not destab_triple({"parallel": parallel(), "intersections": inter})
    assert not destab_triple({"parallel": parallel((0, 1), (1, 2)), "intersections": inter})
    two = [[0, 0, 2], [0, 0, 1], [2, 1, 0]]
    assert not destab_triple({"parallel": parallel((0, 1)), "intersections": two})
    with pytest.raises(ValueError):
        destab_triple({"parallel": parallel((0, 1))})
    with pytest.raises(ValueError):
        destab_triple({"parallel": parallel((0, 1)), "intersections": [[0, 1, 0], [0, 0, 1],
                                                                      [0, 1, 0]]})


def test_trisection_ops():
    assert trisection_ops(TrisectionParams(0, 0, 0, 0), "stabilize", 1) == \
        TrisectionParams(1, 1, 0, 0)
    assert trisection_ops(TrisectionParams(1, 2, 0, 0)) == ["max k_i exceeds g"]
    assert trisection_ops(TrisectionParams(3, 2, 2, 2)) == []
    with pytest.raises(TrisectionError):
        trisection_ops(TrisectionParams(1, 2, 0, 0), "stabilize", 1)
    with pytest.raises(TrisectionError):
        trisection_ops(TrisectionParams(1, 0, 0, 0), "stabilize", 4)
    assert TrisectionParams(1, 1, 1, 1).euler_characteristic() == 0


def test_classification_tables():
    t0 = classification_tables(0)
    assert len(t0) == 7 and M("S4") in t0 and M("2CP2BAR") in t0
    t1 = classification_tables(HALF)
    assert len(t1) == 10 and M("S_3") in t1 and M("(S1xS3)#CP2BAR") in t1
    assert classification_tables("1/2") == t1
    with pytest.raises(ValueError):
        classification_tables(Fraction(1, 4))


def test_census_verdicts(census):
    for e in census:
        label = census_label(e.canonical)
        for v in e.verdicts:
            assert v["status"] in (NOT_A_SHADOW, CANDIDATE)
        if e.homology[2].is_trivial and e.homology[1].has_torsion:
            assert overall_status(e.verdicts) == NOT_A_SHADOW
        if label in ("a6", "a8", "m3", "m4"):
            assert any(v["rule"] == "homology" and v["status"] == NOT_A_SHADOW
                       for v in e.verdicts)


def test_curated_flags():
    for label in ("a15^0", "m2", "a17^1", "a16"):
        assert curated_verdict(label).curated
    assert not curated_verdict("a6").curated
    m5 = curated_verdict("m5")
    assert {str(x) for x in m5.shadow_of} == {"S_2", "S'_2"}
    a10 = curated_verdict("a10")
    assert {str(x) for x in a10.shadow_of} == {"S_2", "S'_2"}


def test_curated_negative_verdicts_have_rules():
    for label in CENSUS_LABELS:
        v = curated_verdict(label)
        if v.status == NOT_A_SHADOW:
            assert v.rule and v.shadow_of is None
