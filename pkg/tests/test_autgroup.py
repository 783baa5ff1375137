from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_monomial_maps
from tensorspace.autgroup import (
    brute_force_monomial_group,
    construction_forms,
    monomial_automorphism_search,
    random_rational_vectors,
    rigidity_certificate,
    support_structure,
    verify_construction,
    verify_diagonal,
    verify_wreath_containment,
)
from tensorspace.caps import CapExceeded, Caps
from tensorspace.forms import SparseForm, blowup_form, diagonal_form, relation_form
from tensorspace.fraisse import complete_graph, cycle_graph, dlo_approx, k4_minus_edge, path_graph
from tensorspace.relstruct import PermGroup, automorphism_search, cycle


def elements(group):
    return {(g.perm, g.exps) for g in group.elements}


def test_diagonal_2_3():
    f = [diagonal_form(2, 3)]
    g = monomial_automorphism_search(f, 3)
    assert g.order == 18
    assert elements(g) == brute_monomial_maps([f[0].terms], 2, 3)
    assert g.is_closed(exhaustive=True)


def test_g2_g3_kill_diagonal():
    forms = [diagonal_form(3, 2), diagonal_form(3, 3)]
    g = monomial_automorphism_search(forms, 6)
    assert g.order == 6 and g.diagonal_parts_trivial()


def test_p3_standard():
    system = construction_forms(path_graph(3), "standard")
    assert system.names == ("f1", "g2", "g3") and system.root_order == 6
    assert monomial_automorphism_search(system.forms, 6).order == 2


@pytest.mark.parametrize("n,d", [(1, 3), (2, 3), (3, 3), (2, 4), (3, 4)])
def test_diagonal_over_doubled_roots(n, d):
    # over mu_2d the diagonal d-form is preserved exactly by mu_d wr S_n
    f = diagonal_form(n, d)
    g = monomial_automorphism_search([f], 2 * d)
    assert g.order == d**n * factorial(n)
    assert elements(g) == brute_monomial_maps([f.terms], n, 2 * d)


def test_verify_diagonal_report():
    report = verify_diagonal(3, 3)
    assert report.group_order == 162 and report.match
    assert report.to_dict()["mode"] == "prop-diag(n=3,d=3)"


def test_wreath_containment_examples():
    c4 = cycle_graph(4)
    rot = PermGroup(4, (cycle(4, [0, 1, 2, 3]),))
    blow = construction_forms(c4, "blowup", 3)
    assert verify_wreath_containment(blow.forms, rot, 3)
    p3 = path_graph(3)
    std = construction_forms(p3, "standard").forms
    assert verify_wreath_containment(std, automorphism_search(p3), 1)
    s3 = PermGroup(3, (cycle(3, [0, 1]), cycle(3, [0, 1, 2])))
    assert not verify_wreath_containment(std, s3, 1)
    with pytest.raises(ValueError):
        verify_wreath_containment(std, rot, 1)


@pytest.mark.parametrize("v,crit", [((0, 1, 0), True), ((1, 0, 1), False), ((0, 0, 5), True), ((0, 0, 0), True)])
def test_rigidity_examples(v, crit):
    report = rigidity_certificate(diagonal_form(3, 3), [v])
    assert report.passed
    assert report.samples[0].criterion is crit


def test_rigidity_preconditions():
    with pytest.raises(ValueError):
        rigidity_certificate(diagonal_form(3, 2), [(1, 0, 0)])
    with pytest.raises(ValueError):
        rigidity_certificate(relation_form(path_graph(3), 0), [(1, 0, 0)])


def test_random_vectors_cover_supports():
    vs = random_rational_vectors(4, 200, seed=3)
    supports = {sum(1 for x in v if x) for v in vs}
    assert supports == {0, 1, 2, 3, 4}
    assert vs == random_rational_vectors(4, 200, seed=3)


@pytest.mark.parametrize("s", [path_graph(3), cycle_graph(4), cycle_graph(5), complete_graph(3), k4_minus_edge(),
                               dlo_approx(3)], ids=["P3", "C4", "C5", "K3", "K4-e", "chain3"])
@pytest.mark.parametrize("m", [3, 4])
def test_blowup_corpus(s, m):
    report = verify_construction(s, "blowup", m)
    gamma = automorphism_search(s)
    assert report.match
    assert report.group_order == m**s.n * gamma.order
    assert report.mode == f"blowup({m})"


def test_blowup_needs_m_at_least_3():
    with pytest.raises(ValueError):
        construction_forms(path_graph(3), "blowup", 2)
    with pytest.raises(ValueError):
        construction_forms(path_graph(3), "sideways")


def test_blowup2_k2_and_report_json():
    report = verify_construction(complete_graph(2), "blowup2")
    d = report.to_dict()
    assert d["group_order"] == 8 and d["expected_order"] == 8 and d["match"]
    assert set(d) >= {"mode", "group_order", "expected_order", "match", "generators"}
    assert all(set(g) == {"perm", "exps", "m"} for g in d["generators"])
    gens = report.group.generators()
    assert len(group_closure_monomial(gens)) == 8


def group_closure_monomial(gens):
    e = gens[0] @ gens[0].inverse()
    seen, frontier = {e}, [e]
    while frontier:
        frontier = [s @ x for x in frontier for s in gens if s @ x not in seen]
        seen.update(frontier)
    return seen


def test_monomial_cap():
    with pytest.raises(CapExceeded):
        monomial_automorphism_search([diagonal_form(4, 4)], 4, Caps(group=100))


def test_package_brute_force_agrees_with_oracle():
    forms = construction_forms(path_graph(3), "standard").forms
    assert elements(brute_force_monomial_group(forms, 6)) == brute_monomial_maps([f.terms for f in forms], 3, 6)


def test_support_structure_is_valid():
    s = support_structure(construction_forms(cycle_graph(4), "standard").forms, 6)
    assert s.n == 4


RAT = st.sampled_from([Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-3)])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_search_matches_brute_force(data):
    n = data.draw(st.integers(1, 3))
    m = data.draw(st.sampled_from([1, 2, 3, 4]))
    forms = []
    for _ in range(data.draw(st.integers(1, 2))):
        d = data.draw(st.integers(1, 3))
        idx = data.draw(st.sets(st.tuples(*[st.integers(0, n - 1)] * d), max_size=5))
        forms.append(SparseForm(n, d, {t: data.draw(RAT) for t in idx}))
    g = monomial_automorphism_search(forms, m)
    assert elements(g) == brute_monomial_maps([f.terms for f in forms], n, m)
    assert g.is_closed(exhaustive=True)


def test_blowup_form_invariance_under_block_roots():
    f = blowup_form(path_graph(3), 0, 4)
    g = monomial_automorphism_search([f, diagonal_form(3, 4)], 4)
    assert g.order == 4**3 * 2
