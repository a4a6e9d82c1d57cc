import pytest
from hypothesis import given
from hypothesis import strategies as st

from matchgates.generators import random_disconnected_matchgate, random_matchgate, random_plane_graph
from matchgates.planegraph import (
    EmbeddingError,
    PlaneGraph,
    as_bits,
    components,
    faces,
    is_connected,
    preprocess,
    remove_externals,
)
from matchgates.realize import crossover_gadget
from matchgates.signature import signature

from conftest import rngs


def triangle():
    return PlaneGraph([1, 2, 3], {(1, 2): 1, (2, 3): 1, (1, 3): 1}, {1: [2, 3], 2: [3, 1], 3: [1, 2]}, (1, 3))


def single_edge(externals=()):
    return PlaneGraph([1, 2], {(1, 2): 1}, {1: [2], 2: [1]}, (1, 2), externals)


# -- faces ---------------------------------------------------------------------


def test_triangle_faces():
    fs = faces(triangle())
    assert sorted(len(f.darts) for f in fs) == [3, 3]
    assert sum(f.outer for f in fs) == 1


def test_single_edge_has_one_face_with_both_darts():
    fs = faces(single_edge())
    assert len(fs) == 1
    assert sorted(fs[0].darts) == [(1, 2), (2, 1)]
    assert fs[0].outer


def test_crossover_gadget_faces():
    g = crossover_gadget()
    assert (len(g.nodes), len(g.edges)) == (6, 7)
    assert len(faces(g)) == 3


@given(rngs, st.integers(1, 14))
def test_euler_formula_and_dart_partition(rng, n):
    g = random_plane_graph(rng, n)
    fs = faces(g)
    darts = [d for f in fs for d in f.darts]
    assert len(darts) == len(set(darts)) == 2 * len(g.edges)
    inner = sum(not f.outer for f in fs)
    assert len(g.nodes) - len(g.edges) + inner + 1 == 2
    assert sum(f.outer for f in fs) == (1 if g.edges else 0)


@given(rngs)
def test_euler_formula_disconnected(rng):
    parts = [(rng.randint(1, 5), 0) for _ in range(rng.randint(1, 3))]
    g = random_disconnected_matchgate(rng, parts)
    c = len(components(g))
    assert c == len(parts)
    # every component has its own outer walk, but they bound a single face
    inner = sum(not f.outer for f in faces(g))
    assert len(g.nodes) - len(g.edges) + inner + 1 == 1 + c


# -- validation ----------------------------------------------------------------


def test_zero_weight_rejected():
    with pytest.raises(EmbeddingError) as info:
        PlaneGraph([1, 2], {(1, 2): 0}, {1: [2], 2: [1]}, (1, 2))
    assert info.value.kind == "edge"


def test_inconsistent_rotation_rejected():
    with pytest.raises(EmbeddingError) as info:
        PlaneGraph([1, 2, 3], {(1, 2): 1, (2, 3): 1}, {1: [2], 2: [1], 3: [2]}, (1, 2))
    assert info.value.kind in ("edge", "rotation")


def test_non_planar_rotation_rejected():
    # K4 with a rotation system of genus 1
    edges = {(u, v): 1 for u in range(1, 5) for v in range(u + 1, 5)}
    rot = {1: [2, 3, 4], 2: [1, 3, 4], 3: [1, 2, 4], 4: [1, 2, 3]}
    with pytest.raises(EmbeddingError) as info:
        PlaneGraph(range(1, 5), edges, rot, (1, 2))
    assert info.value.kind == "rotation"


def test_external_must_lie_on_outer_face():
    # wheel: hub 4 is inside the triangle 1-2-3
    edges = {(1, 2): 1, (2, 3): 1, (1, 3): 1, (1, 4): 1, (2, 4): 1, (3, 4): 1}
    rot = {1: [2, 4, 3], 2: [3, 4, 1], 3: [1, 4, 2], 4: [1, 2, 3]}
    outer = (1, 3)
    PlaneGraph(range(1, 5), edges, rot, outer, [1, 3, 2])
    with pytest.raises(EmbeddingError) as info:
        PlaneGraph(range(1, 5), edges, rot, outer, [4])
    assert info.value.kind == "external"


def test_external_order_must_be_clockwise():
    g = crossover_gadget()
    with pytest.raises(EmbeddingError) as info:
        g.with_externals([1, 3, 2, 4])
    assert info.value.kind == "external"
    # any rotation of the clockwise order is fine
    assert g.with_externals([3, 4, 1, 2]).arity == 4


def test_cut_vertex_on_outer_walk_is_accepted():
    # two triangles sharing node 3; the outer walk visits 3 twice
    edges = {(1, 2): 1, (1, 3): 1, (2, 3): 1, (3, 4): 1, (3, 5): 1, (4, 5): 1}
    rot = {1: [2, 3], 2: [3, 1], 3: [1, 2, 4, 5], 4: [5, 3], 5: [3, 4]}
    g = PlaneGraph(range(1, 6), edges, rot, (1, 3), [1, 3, 4])
    assert g.arity == 3


def test_outer_dart_must_exist():
    with pytest.raises(EmbeddingError) as info:
        PlaneGraph([1, 2], {(1, 2): 1}, {1: [2], 2: [1]}, (1, 3))
    assert info.value.kind == "outer"


# -- removal patterns ----------------------------------------------------------


def test_remove_nothing_is_identity():
    g = crossover_gadget()
    assert remove_externals(g, "0000") == g


def test_remove_one_end_of_an_edge():
    h = remove_externals(single_edge([1, 2]), "10")
    assert h.nodes == (2,) and not h.edges and h.externals == (2,)


def test_crossover_remove_1010():
    h = remove_externals(crossover_gadget(), "1010")
    assert h.nodes == (2, 4, 5, 6)
    assert sorted(h.edges) == [(2, 6), (4, 5), (5, 6)]


def test_pattern_forms_agree():
    assert as_bits("0110", 4) == as_bits(6, 4) == as_bits((0, 1, 1, 0), 4) == (0, 1, 1, 0)
    with pytest.raises(ValueError):
        as_bits("011", 4)


@given(rngs, st.integers(0, 5))
def test_removal_composes(rng, k):
    g = random_matchgate(rng, rng.randint(1, 10), k)
    a = rng.randrange(1 << k)
    once = remove_externals(g, a)
    rest = once.arity
    b = rng.randrange(1 << rest)
    # spread the bits of b over the surviving positions of a
    bits_a = as_bits(a, k)
    bits_b = iter(as_bits(b, rest))
    union = tuple(1 if x else next(bits_b) for x in bits_a)
    assert remove_externals(once, b) == remove_externals(g, union)


# -- connectivity --------------------------------------------------------------


def test_components():
    assert is_connected(triangle())
    two = PlaneGraph([1, 2, 3, 4], {(1, 2): 1, (3, 4): 1}, {1: [2], 2: [1], 3: [4], 4: [3]}, [(1, 2), (3, 4)])
    assert components(two) == [(1, 2), (3, 4)]
    assert not is_connected(two)
    empty = PlaneGraph([], {}, {}, None)
    assert components(empty) == []


# -- preprocessing -------------------------------------------------------------


def test_preprocess_labels_five_externals():
    rng = __import__("random").Random(11)
    g = random_matchgate(rng, 9, 5)
    p = preprocess(g)
    assert p.externals == (1, 2, 3, 4, 5)
    for i in range(1, 6):
        assert p.neighbors(i) == (11 - i,)
    originals = sorted(v for v in p.nodes if v > 10)
    assert originals == list(range(11, 11 + len(g.nodes)))
    assert signature(p) == signature(g)


def test_preprocess_two_disjoint_edges():
    two = PlaneGraph(
        [1, 2, 3, 4], {(1, 2): 2, (3, 4): 3}, {1: [2], 2: [1], 3: [4], 4: [3]}, [(1, 2), (3, 4)], [1, 2, 3, 4]
    )
    p = preprocess(two)
    assert p.is_connected()
    assert signature(p) == signature(two)


def test_preprocess_twice():
    rng = __import__("random").Random(3)
    g = random_matchgate(rng, 6, 3)
    once = preprocess(g)
    twice = preprocess(once)
    assert signature(twice) == signature(once) == signature(g)


@given(rngs)
def test_preprocess_is_neutral(rng):
    if rng.random() < 0.5:
        g = random_matchgate(rng, rng.randint(1, 10), rng.randint(0, 4))
    else:
        g = random_disconnected_matchgate(rng, [(rng.randint(1, 4), rng.randint(0, 2)) for _ in range(rng.randint(1, 3))])
    p = preprocess(g)
    assert p.is_connected()
    assert all(len(p.neighbors(x)) == 1 for x in p.externals)
    assert signature(p) == signature(g)
