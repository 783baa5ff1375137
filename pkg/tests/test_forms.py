from fractions import Fraction
from itertools import permutations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tensorspace.cyclotomic import CyclotomicScalar as Z
from tensorspace.forms import (
    SparseForm,
    Vector,
    as_polynomial,
    blowup_form,
    blowup_index,
    diagonal_form,
    evaluate,
    preserves,
    pullback,
    relation_form,
    symmetrize,
)
from tensorspace.fraisse import line_cycle, path_graph
from tensorspace.monomial import MonomialMap, all_monomial_maps
from tensorspace.polynomial import Polynomial
from tensorspace.relstruct import RelationalStructure


def basis(n, i, m=1, scale=1):
    return Vector.basis(n, i, m, scale)


def test_diagonal_form_polynomial_and_values():
    g = diagonal_form(3, 3)
    assert as_polynomial(g) == Polynomial.from_text("x0^3 + x1^3 + x2^3", 3)
    v = basis(3, 0) + basis(3, 1)
    assert evaluate(g, [v, v, v]) == 2
    assert evaluate(diagonal_form(2, 2), [basis(2, 0), basis(2, 1)]) == 0
    w = Vector.from_values([1, 1])
    assert evaluate(diagonal_form(2, 3), [w, w, w]) == 2


def test_root_of_unity_evaluations():
    z = Z.root(3)
    v = Vector(1, 3, {0: z})
    assert evaluate(diagonal_form(1, 3), [v] * 3) == 1
    value = evaluate(diagonal_form(1, 2), [v] * 2)
    assert value == z**2 and value != 1


def test_relation_form():
    f = relation_form(path_graph(3), 0)
    assert evaluate(f, [basis(3, 0), basis(3, 1)]) == 1
    assert evaluate(f, [basis(3, 0), basis(3, 2)]) == 0
    with pytest.raises(IndexError):
        relation_form(path_graph(3), 1)


def test_blowup_line_polynomial():
    f = blowup_form(line_cycle(6), 0, 3)
    assert f.d == 6
    assert blowup_index((0, 1), 3) == (0, 0, 0, 1, 1, 1)
    expected = Polynomial.from_text(" + ".join(f"x{i}^3*x{(i + 1) % 6}^3" for i in range(6)), 6)
    # both orientations of each edge are stored, so the diagonal restriction doubles
    assert as_polynomial(f) == expected * 2


def test_symmetrize_examples():
    g = diagonal_form(2, 3)
    assert g.is_symmetric()
    assert as_polynomial(g) == Polynomial.from_text("x0^3 + x1^3", 2)
    f = relation_form(path_graph(3), 0)
    assert f.is_symmetric()
    assert as_polynomial(f) == Polynomial.from_text("2*x0*x1 + 2*x1*x2", 3)
    a = relation_form(RelationalStructure.build(2, (2,), [[(0, 1)]]), 0)
    assert not a.is_symmetric()
    assert symmetrize(a).terms == {(0, 1): Fraction(1, 2), (1, 0): Fraction(1, 2)}


def test_pullback_examples():
    g3 = diagonal_form(3, 3)
    assert all(preserves(g3, g) for g in all_monomial_maps(3, 3))
    g2 = diagonal_form(3, 2)
    twisted = pullback(g2, MonomialMap.twist(3, 0, 3))
    assert twisted != g2 and twisted.coefficient((0, 0)) == Z.root(3, 2)
    f = relation_form(path_graph(3), 0)
    assert preserves(f, MonomialMap.permutation((2, 1, 0)))


def test_dimension_errors():
    with pytest.raises(ValueError):
        pullback(diagonal_form(2, 2), MonomialMap.identity(3))
    with pytest.raises(ValueError):
        evaluate(diagonal_form(2, 2), [basis(2, 0)])
    with pytest.raises(ValueError):
        evaluate(diagonal_form(2, 2), [basis(3, 0), basis(3, 0)])
    with pytest.raises(ValueError):
        basis(2, 0, 4).apply(MonomialMap.identity(2, 3))


def test_form_json():
    f = SparseForm(2, 2, {(0, 1): Fraction(-3, 4), (1, 1): Fraction(2)})
    assert f.to_dict()["terms"] == [{"idx": [0, 1], "coef": "-3/4"}, {"idx": [1, 1], "coef": "2/1"}]
    assert SparseForm.from_json(f.to_json()) == f
    with pytest.raises(ValueError):
        pullback(diagonal_form(1, 2), MonomialMap.twist(1, 0, 3)).to_dict()


def test_monomial_map_algebra():
    g = MonomialMap((1, 2, 0), (1, 0, 2), 3)
    h = MonomialMap((0, 2, 1), (0, 1, 1), 3)
    e = MonomialMap.identity(3, 3)
    assert g @ g.inverse() == e and g.inverse() @ g == e
    assert (g @ h) @ g == g @ (h @ g)
    v = Vector.from_values([1, 2, 3], 3)
    assert v.apply(g @ h) == v.apply(h).apply(g)
    assert MonomialMap.twist(2, 0, 2).lift(4) == MonomialMap.twist(2, 0, 4, 2)
    assert sum(1 for _ in all_monomial_maps(3, 2)) == 48
    with pytest.raises(ValueError):
        MonomialMap((0, 0), (0, 0), 2)


# property tests ------------------------------------------------------------

RAT = st.fractions(min_value=-3, max_value=3, max_denominator=3)


@st.composite
def forms(draw, n=None, d=None):
    n = n or draw(st.integers(1, 3))
    d = d or draw(st.integers(1, 3))
    idx = draw(st.sets(st.tuples(*[st.integers(0, n - 1)] * d), max_size=8))
    return SparseForm(n, d, {t: draw(RAT) for t in idx})


@st.composite
def maps(draw, n, m):
    perm = draw(st.permutations(range(n)))
    return MonomialMap(tuple(perm), tuple(draw(st.integers(0, m - 1)) for _ in range(n)), m)


def scalar(draw, m):
    return Z.from_poly(m, [draw(RAT) for _ in range(m)])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_evaluate_multilinear(data):
    f = data.draw(forms())
    m = data.draw(st.sampled_from([1, 3, 4]))
    vec = lambda: Vector(f.n, m, {i: scalar(data.draw, m) for i in range(f.n)})  # noqa: E731
    args = [vec() for _ in range(f.d)]
    u = vec()
    a, b = scalar(data.draw, m), scalar(data.draw, m)
    j = data.draw(st.integers(0, f.d - 1))
    mixed, other = list(args), list(args)
    mixed[j] = args[j] * a + u * b
    other[j] = u
    assert evaluate(f, mixed) == evaluate(f, args) * a + evaluate(f, other) * b


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_pullback_functorial(data):
    f = data.draw(forms())
    m = data.draw(st.sampled_from([1, 2, 3, 6]))
    g, h = data.draw(maps(f.n, m)), data.draw(maps(f.n, m))
    assert pullback(pullback(f, g), h) == pullback(f, g @ h)


@settings(max_examples=60, deadline=None)
@given(forms())
def test_symmetrize_keeps_polynomial(f):
    s = symmetrize(f)
    assert as_polynomial(s) == as_polynomial(f)
    assert symmetrize(s) == s


@settings(max_examples=60, deadline=None)
@given(forms())
def test_form_json_byte_stable(f):
    assert SparseForm.from_json(f.to_json()).to_json() == f.to_json()


def test_diagonal_preserved_by_whole_wreath_product():
    for n, d in product(range(1, 4), (2, 3, 4)):
        g = diagonal_form(n, d)
        assert all(preserves(g, x) for x in all_monomial_maps(n, d))


def test_blowup_form_is_invariant_under_block_twists():
    s = RelationalStructure.build(3, (2,), [[(0, 1), (1, 2)]])
    f = blowup_form(s, 0, 3)
    for perm in permutations(range(3)):
        ok = preserves(f, MonomialMap.permutation(perm, 3))
        assert ok == (perm == (0, 1, 2))
    assert all(preserves(f, MonomialMap.twist(3, i, 3)) for i in range(3))
