import random

import pytest

from edgeideals import (Graph, InputError, Monomial, MonomialIdeal,
                        alexander_dual_of_edge_ideal, colon_by_monomial,
                        cycle_graph, edge_ideal, minimalize,
                        squarefree_degree_component, vertex_covers_of_size)

from oracles import brute_dual


def M(*vs):
    return Monomial(vs)


def random_graph(rng, n, p):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def test_monomial_basics():
    m = M(0, 2, 3)
    assert m.degree == 3 and m.support == {0, 2, 3}
    assert M(0, 2).divides(m) and not m.divides(M(0, 2))
    assert m.gcd(M(2, 4)).support == {2}
    assert m.lcm(M(2, 4)).support == {0, 2, 3, 4}
    assert m.colon(M(0, 4)).support == {2, 3}
    with pytest.raises(InputError):
        M(0, 2).times(M(2))


def test_ideal_canonical_order_and_minimality():
    I = MonomialIdeal.from_generators(5, [M(1, 2), M(0, 1), M(0, 1, 2)])
    assert [sorted(g.support) for g in I.gens] == [[0, 1], [1, 2]]
    with pytest.raises(InputError):
        MonomialIdeal(3, (M(0), M(0, 1)))
    with pytest.raises(InputError):
        MonomialIdeal(2, (M(0, 1), M(0)))  # wrong order
    with pytest.raises(InputError):
        MonomialIdeal(1, (M(3),))  # outside ambient


def test_zero_and_unit_conventions():
    z = MonomialIdeal.zero(4)
    u = MonomialIdeal.unit(4)
    assert z.is_zero and not z.is_unit
    assert u.is_unit and not u.is_zero
    assert u.contains(M(1)) and not z.contains(M(1))


def test_edge_ideal_examples():
    assert [sorted(g.support) for g in edge_ideal(cycle_graph(4)).gens] == \
        [[0, 1], [0, 3], [1, 2], [2, 3]]
    G = Graph(6, [(0, 1), (1, 2), (2, 3), (0, 3), (2, 4), (3, 4), (4, 5)])
    assert {frozenset(g.support) for g in edge_ideal(G).gens} == \
        {frozenset(e) for e in G.edges()}
    assert edge_ideal(Graph(3)).is_zero


def test_dual_examples():
    c5 = alexander_dual_of_edge_ideal(cycle_graph(5))
    assert [sorted(g.support) for g in c5.gens] == \
        [[0, 1, 3], [0, 2, 3], [0, 2, 4], [1, 2, 4], [1, 3, 4]]
    # remainder graph of the first worked example
    G = Graph(5, [(0, 1), (1, 2), (2, 3), (0, 3), (2, 4), (3, 4)])
    got = {frozenset(g.support) for g in alexander_dual_of_edge_ideal(G).gens}
    assert got == {frozenset({0, 2, 3}), frozenset({1, 2, 3}),
                   frozenset({0, 2, 4}), frozenset({1, 3, 4})}


def test_dual_of_edgeless_is_unit():
    assert alexander_dual_of_edge_ideal(Graph(3)).is_unit


def test_dual_involution_via_hitting_sets():
    rng = random.Random(3)
    for _ in range(25):
        G = random_graph(rng, rng.randint(2, 8), 0.4)
        if G.edge_count() == 0:
            continue
        dual = alexander_dual_of_edge_ideal(G)
        supports = [frozenset(g.support) for g in dual.gens]
        back = brute_dual(supports)
        assert sorted(map(sorted, back)) == \
            sorted(sorted(g.support) for g in edge_ideal(G).gens)


def test_squarefree_degree_component_examples():
    # pendant four-cycle, whiskered: degree-3 part keeps only the three
    # degree-3 covers
    gens = [M(0, 2, 4), M(1, 3, 4), M(0, 2, 5), M(0, 1, 3, 5)]
    I = MonomialIdeal.from_generators(6, gens)
    comp = squarefree_degree_component(I, 3)
    assert {frozenset(g.support) for g in comp.gens} == \
        {frozenset({0, 2, 4}), frozenset({1, 3, 4}), frozenset({0, 2, 5})}
    assert squarefree_degree_component(I, 2).is_zero


def test_component_matches_covers_of_size():
    rng = random.Random(5)
    for _ in range(25):
        G = random_graph(rng, rng.randint(1, 8), 0.4)
        dual = alexander_dual_of_edge_ideal(G)
        for d in range(G.n + 1):
            comp = squarefree_degree_component(dual, d)
            covers = vertex_covers_of_size(G, d)
            assert {frozenset(g.support) for g in comp.gens} == set(covers)


def test_component_monotone():
    rng = random.Random(7)
    for _ in range(10):
        G = random_graph(rng, rng.randint(2, 7), 0.5)
        dual = alexander_dual_of_edge_ideal(G)
        if dual.is_zero:
            continue
        for d in range(dual.min_degree, G.n):
            comp = squarefree_degree_component(dual, d)
            nxt = squarefree_degree_component(dual, d + 1)
            for g in comp.gens:
                for v in range(G.n):
                    if v not in g.support:
                        assert nxt.contains(g.times(M(v)))


def test_colon_examples():
    I = MonomialIdeal.from_generators(5, [M(0, 1, 3)])
    assert [sorted(g.support) for g in colon_by_monomial(I, M(0, 2, 3)).gens] == [[1]]
    c5 = alexander_dual_of_edge_ideal(cycle_graph(5))
    prefix = MonomialIdeal.from_generators(5, list(c5.gens[:4]))
    got = colon_by_monomial(prefix, M(1, 3, 4))
    assert [sorted(g.support) for g in got.gens] == [[0], [2]]
    assert colon_by_monomial(c5, M(0, 1, 3)).is_unit


def test_minimalize_examples():
    assert [sorted(g.support) for g in minimalize(3, [M(0), M(0, 1)]).gens] == [[0]]
    assert [sorted(g.support) for g in minimalize(5, [M(1, 3), M(3)]).gens] == [[3]]
    anti = [M(0, 1), M(1, 2), M(0, 2)]
    assert list(minimalize(3, anti).gens) == sorted(anti, key=lambda g: g.sort_key)


def test_ideal_json_roundtrip():
    G = cycle_graph(5)
    dual = alexander_dual_of_edge_ideal(G)
    data = dual.to_json(G.labels)
    assert data["gens"][0] == ["x1", "x2", "x4"]
    assert MonomialIdeal.from_json(data) == dual
    with pytest.raises(InputError):
        MonomialIdeal.from_json({"ambient": 2, "vars": ["a"], "gens": []})


def test_colon_contains_image_and_is_minimal():
    rng = random.Random(23)
    for _ in range(20):
        G = random_graph(rng, rng.randint(2, 7), 0.5)
        I = alexander_dual_of_edge_ideal(G)
        if I.is_zero:
            continue
        u = M(*rng.sample(range(G.n), rng.randint(1, G.n)))
        C = colon_by_monomial(I, u)
        for g in I.gens:
            assert C.contains(g.colon(u))
        for a in C.gens:
            for b in C.gens:
                assert a == b or not a.divides(b)
