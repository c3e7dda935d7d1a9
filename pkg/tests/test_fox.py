import pytest

from shadowcalc.algebra import (GroupRingElement, InconsistentAbelianizationError, LaurentMatrix,
                                LaurentPoly, abelianization_vectors, alexander_matrix,
                                elementary_ideal_check, fox_derivative,
                                fundamental_identity_holds, parse_presentation, parse_word)

V2 = ("t1", "t2")
t1, t2 = LaurentPoly.gens(V2)
ONE = LaurentPoly.const(V2, 1)


def boundary_presentation(m, n):
    return parse_presentation(f"<x,y,z | [x,z], [z,y^-1xy], x^{n}zyzy^-1, z^-1(xy^-1xy)^{m}>")


def boundary_ab(m):
    return {"x": (0, 1), "y": (1, 0), "z": (0, 2 * m)}


def test_fox_rules():
    gens = ["x", "y"]
    assert fox_derivative(parse_word("xy", gens), 1) == GroupRingElement({(): 1})
    assert fox_derivative(parse_word("x^-1", gens), 1) == GroupRingElement({(-1,): -1})
    assert fox_derivative(parse_word("y", gens), 1) == GroupRingElement({})


def test_fox_product_rule_expansion():
    # d/dy of x y x^-1 y^-1 y^-1, term by term
    w = parse_word("xyx^-1y^-2", ["x", "y"])
    expected = GroupRingElement({(1,): 1, (1, 2, -1, -2): -1, (1, 2, -1, -2, -2): -1})
    assert fox_derivative(w, 2) == expected
    assert fox_derivative(w, 2).format(("x", "y")) == "x - xyx^-1y^-1 - xyx^-1y^-2"


def test_alexander_entry_11():
    M = alexander_matrix(boundary_presentation(1, -4), boundary_ab(1))
    assert M[0, 0] == ONE - t2 ** 2


def test_one_relator_power():
    for k in range(1, 7):
        M = alexander_matrix(parse_presentation(f"<x | x^{k}>"), {"x": (1,)})
        (t,) = LaurentPoly.gens(("t1",))
        expected = LaurentPoly.zero(("t1",))
        for i in range(k):
            expected = expected + t ** i
        assert M.shape == (1, 1) and M[0, 0] == expected


def test_strict_rejects_non_homomorphism():
    with pytest.raises(InconsistentAbelianizationError):
        alexander_matrix(parse_presentation("<x | x^3>"), {"x": (1,)}, strict=True)
    with pytest.raises(InconsistentAbelianizationError):
        alexander_matrix(parse_presentation("<x,y | xy>"), {"x": (1,)})
    with pytest.raises(InconsistentAbelianizationError):
        alexander_matrix(parse_presentation("<x,y | xy>"), {"x": (1,), "y": (1, 0)})


def test_default_ab_free_abelian():
    p = parse_presentation("<x,y | [x,y]>")
    assert abelianization_vectors(p) == [[1, 0], [0, 1]]
    M = alexander_matrix(p)
    assert M.shape == (1, 2)
    assert M[0, 0] == ONE - t2 and M[0, 1] == t1 - ONE


def test_default_ab_projects_to_free_part():
    p = boundary_presentation(1, -4)
    vectors = abelianization_vectors(p)
    assert len(vectors[0]) == 2
    assert fundamental_identity_holds(p, vectors)


@pytest.mark.parametrize("m", range(-3, 4))
def test_fundamental_identity_boundary(m):
    p = boundary_presentation(m, -4 * m)
    assert fundamental_identity_holds(p, [boundary_ab(m)[g] for g in p.generators])


def test_elementary_ideal_examples():
    p = parse_presentation("<x,y | [x,y]>")
    M = alexander_matrix(p)
    assert elementary_ideal_check(M, 0)
    assert not elementary_ideal_check(M, 1)
    zero = LaurentMatrix(((LaurentPoly.zero(V2),) * 3,) * 2)
    assert all(elementary_ideal_check(zero, d) for d in range(3))
    ident = LaurentMatrix(((ONE, LaurentPoly.zero(V2)), (LaurentPoly.zero(V2), ONE)))
    assert not elementary_ideal_check(ident, 0)
    with pytest.raises(ValueError):
        elementary_ideal_check(ident, 3)


def test_laurent_basics():
    p = (ONE - t2) * (ONE + t2)
    assert p == ONE - t2 ** 2
    assert (t1 ** -1) * t1 == ONE
    assert (p - p).is_zero() and (p - p).terms == ()
    assert str(ONE - t2 ** 2) == "1 - t2^2"
    assert LaurentPoly.from_json(p.to_json()) == p
    assert (t1 * p).unit_ratio(p) == t1
    assert (ONE + t1).unit_ratio(ONE + t2) is None
    assert p.evaluate((2, 3)) == -8
    with pytest.raises(ValueError):
        (ONE + t1) ** -1


def test_laurent_matrix_det():
    M = LaurentMatrix(((t1, t2), (ONE, ONE)))
    assert M.det() == t1 - t2
    with pytest.raises(ValueError):
        LaurentMatrix(((t1, t2),)).det()
