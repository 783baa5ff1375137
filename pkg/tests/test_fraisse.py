import pytest

from oracles import bit_graph_edges, brute_automorphisms, union_find_orbits
from tensorspace.caps import CapExceeded, Caps
from tensorspace.fraisse import (
    ColoredHypergraph,
    complete_graph,
    dlo_approx,
    extension_property_check,
    free_amalgam,
    generic_extensions,
    glinfty_approx,
    graph_class,
    hypergraph_class,
    hypergraph_glue,
    hypergraph_truncation,
    line_cycle,
    line_rotation,
    linear_order_class,
    petersen_graph,
    rado_approx,
    random_colored_hypergraph,
)
from tensorspace.relstruct import PermGroup, RelationalStructure, automorphism_search, validate_structure


def edges(s):
    return {frozenset(t) for t in s.relations[0]}


def test_dlo():
    assert len(dlo_approx(3).relations[0]) == 3
    assert dlo_approx(1).relations == ((),)
    assert automorphism_search(dlo_approx(4)).order == 1


def test_rado():
    assert edges(rado_approx(4)) == {frozenset(e) for e in [(0, 1), (0, 3), (1, 2), (1, 3)]}
    assert edges(rado_approx(2)) == {frozenset((0, 1))}
    assert edges(rado_approx(32)) == bit_graph_edges(32)
    s = rado_approx(16)
    assert all((b, a) in s.relation_set(0) for a, b in s.relations[0])


def test_glinfty():
    s = glinfty_approx(2, 2)
    assert (0, 0, 0) in s.relation_set(0)
    assert automorphism_search(s).order == 6
    assert (2, 1) in glinfty_approx(3, 1).relation_set(1)
    with pytest.raises(ValueError):
        glinfty_approx(7, 1)
    with pytest.raises(CapExceeded):
        glinfty_approx(5, 3, Caps(tuples=1000))


def test_glinfty_gf4_is_a_field_action():
    s = glinfty_approx(4, 1)
    # x = w*y with w primitive: a 3-cycle on the nonzero elements, fixing 0
    scale = dict((y, x) for x, y in s.relations[1])
    assert scale[0] == 0
    orbit, y = [], 1
    for _ in range(3):
        orbit.append(y)
        y = scale[y]
    assert y == 1 and sorted(orbit) == [1, 2, 3]
    assert automorphism_search(s).elements == tuple(sorted(brute_automorphisms(s)))


def test_line():
    assert automorphism_search(line_cycle(4)).order == 8
    assert len(union_find_orbits(6, 2, [line_rotation(6)])) == 6
    assert edges(line_cycle(3)) == {frozenset(e) for e in [(0, 1), (1, 2), (0, 2)]}
    with pytest.raises(ValueError):
        line_cycle(2)


def test_glue_examples():
    h = ColoredHypergraph(3, 1, 3, (((0, 1, 2),),))
    s = hypergraph_glue(h)
    assert len(s.relations[0]) == 6 and all(t[-1] == 3 for t in s.relations[0])
    assert s.relations[1] == ((3,),)
    empty = hypergraph_glue(ColoredHypergraph(3, 2, 3, ((), ())))
    assert empty.relations == ((), ((3,), (4,)))
    two = hypergraph_glue(ColoredHypergraph(3, 2, 3, (((0, 1, 2),), ((0, 1, 2),))))
    assert len(two.relations[0]) == 12 and {t[-1] for t in two.relations[0]} == {3, 4}


def test_hypergraph_validation():
    with pytest.raises(ValueError):
        ColoredHypergraph(3, 1, 3, (((0, 0, 1),),))
    with pytest.raises(ValueError):
        ColoredHypergraph(3, 1, 3, (((0, 1, 5),),))


def test_random_hypergraph():
    assert random_colored_hypergraph(5, 2, 3, 0.0, seed=1).edge_count == 0
    full = random_colored_hypergraph(4, 1, 3, 1.0, seed=1)
    assert full.edges == (((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)),)
    a = random_colored_hypergraph(7, 3, 3, 0.5, seed=42)
    assert a == random_colored_hypergraph(7, 3, 3, 0.5, seed=42)
    assert a != random_colored_hypergraph(7, 3, 3, 0.5, seed=43)
    with pytest.raises(ValueError):
        random_colored_hypergraph(4, 1, 3, 1.5, seed=1)


@pytest.mark.parametrize("t", [1, 2, 3])
def test_glued_sorts_are_separated(t):
    s = hypergraph_glue(hypergraph_truncation(t, 3))
    n = t * 3
    for p in automorphism_search(s).elements:
        assert all(p[x] < n for x in range(n))


def test_glued_random_sorts_are_separated():
    h = random_colored_hypergraph(6, 2, 3, 0.4, seed=5)
    s = hypergraph_glue(h)
    for p in automorphism_search(s).elements:
        assert all(p[x] < h.n for x in range(h.n))


def test_presets_validate():
    presets = [dlo_approx(5), rado_approx(20), glinfty_approx(3, 2), glinfty_approx(4, 2), line_cycle(7),
               petersen_graph(), hypergraph_glue(hypergraph_truncation(3)),
               hypergraph_glue(random_colored_hypergraph(6, 2, 3, 0.3, seed=0))]
    assert all(validate_structure(s) == [] for s in presets)


EDGE = RelationalStructure.build(2, (2,), [[(0, 1), (1, 0)]])
POINT = RelationalStructure.build(1, (2,), [[]])
EMPTY = RelationalStructure.build(0, (2,), [[]])
CHAIN2 = dlo_approx(2)


def test_free_amalgam_path():
    out = free_amalgam(POINT, EDGE, (1,), EDGE, (0,))
    assert out.n == 3 and edges(out) == {frozenset((0, 1)), frozenset((1, 2))}
    assert out.induced([0, 1]) == EDGE and out.induced([1, 2]) == EDGE


def test_free_amalgam_disjoint():
    out = free_amalgam(EMPTY, EDGE, (), EDGE, ())
    assert out.n == 4 and edges(out) == {frozenset((0, 1)), frozenset((2, 3))}


def test_order_amalgam():
    out = free_amalgam(POINT, CHAIN2, (1,), CHAIN2, (0,), strategy="order")
    assert out == dlo_approx(3)
    # both chains above a shared bottom: the union is a V, linearised least first
    v = free_amalgam(POINT, CHAIN2, (0,), CHAIN2, (0,), strategy="order")
    assert v.relations == (((0, 1), (0, 2), (1, 2)),)
    assert v.induced([0, 1]) == CHAIN2 and v.induced([0, 2]) == CHAIN2


def test_amalgam_rejects_non_embeddings():
    with pytest.raises(ValueError):
        free_amalgam(EDGE, EDGE, (0, 1), RelationalStructure.build(2, (2,), [[]]), (0, 1))
    with pytest.raises(ValueError):
        free_amalgam(POINT, EDGE, (5,), EDGE, (0,))
    with pytest.raises(ValueError):
        free_amalgam(POINT, EDGE, (0,), EDGE, (0,), strategy="weird")


def test_extension_property():
    assert extension_property_check(rado_approx(64), graph_class(), 1).passed
    small = extension_property_check(rado_approx(4), graph_class(), 2)
    assert not small.passed and small.subset is not None
    assert extension_property_check(POINT, graph_class(), 0).passed
    for k in (3, 4, 5, 6):
        assert extension_property_check(rado_approx(2**k), graph_class(), 1).passed
    assert not extension_property_check(rado_approx(4), graph_class(), 1).passed


def test_extension_property_is_deterministic_and_capped():
    a = extension_property_check(rado_approx(8), graph_class(), 3)
    b = extension_property_check(rado_approx(8), graph_class(), 3)
    assert a == b and not a.passed
    with pytest.raises(CapExceeded):
        extension_property_check(rado_approx(64), graph_class(), 2, Caps(configs=50))


def test_linear_order_class():
    spec = linear_order_class()
    assert spec.member(dlo_approx(4)) and not spec.member(EDGE)
    assert len(spec.one_point_extensions(dlo_approx(2))) == 3
    # a finite chain has no point below its least element
    assert not extension_property_check(dlo_approx(5), spec, 1).passed


def test_generic_extensions_match_graph_extensions():
    spec = graph_class()
    for a in (POINT, EDGE):
        generic = generic_extensions(a, spec.member)
        assert sorted(e.relations for e in generic) == sorted(e.relations for e in spec.one_point_extensions(a))


def test_hypergraph_class_membership():
    spec = hypergraph_class(3)
    assert spec.member(hypergraph_glue(hypergraph_truncation(2)))
    bad = RelationalStructure.build(4, (4, 1), [[(0, 1, 2, 3)], [(3,)]])
    assert not spec.member(bad)   # orderings of the edge are missing
    exts = spec.one_point_extensions(hypergraph_glue(ColoredHypergraph(3, 1, 3, ((),))))
    assert all(spec.member(e) for e in exts)
    # new colour: 2 choices (edge or not); new vertex: 2^(3 pairs * 1 colour)
    assert len(exts) == 2 + 8


def test_membership_is_hereditary_on_small_instances():
    spec = graph_class()
    s = petersen_graph()
    for subset in ([0, 1, 2], [0, 5, 7, 9], [1, 3]):
        assert spec.member(s.induced(subset))


def test_search_group_on_complete_graph_is_symmetric():
    assert automorphism_search(complete_graph(5)).order == 120
    assert PermGroup(3, ()).generators == ()
