import random

import pytest

from edgeideals import (Graph, InputError, Monomial, MonomialIdeal,
                        add_whiskers, alexander_dual_of_edge_ideal, cycle_graph,
                        delete_vertices, dual_component_order, find_order,
                        has_dual_linear_quotients, induced_subgraph,
                        has_linear_resolution, is_chordal, make_order,
                        squarefree_degree_component, verify_order,
                        whisker_order, whisker_split)
from edgeideals.quotients import reset_search_stats, search_stats

from oracles import permutation_order_exists

M = Monomial


def random_graph(rng, n, p):
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def paper_order(ideal, sequence):
    pos = {frozenset(g.support): i for i, g in enumerate(ideal.gens)}
    return make_order(ideal, [pos[frozenset(s)] for s in sequence])


# ---------------------------------------------------------------------------
# verify_order


def test_c5_listed_order_verifies_with_colon_vars():
    dual = alexander_dual_of_edge_ideal(cycle_graph(5))
    q = paper_order(dual, [{0, 1, 3}, {0, 2, 3}, {0, 2, 4}, {1, 2, 4}, {1, 3, 4}])
    assert verify_order(q)
    assert q.colon_vars == (frozenset(), frozenset({1}), frozenset({3}),
                            frozenset({0}), frozenset({0, 2}))
    assert q.step_sizes() == [0, 1, 1, 1, 2]


def test_mixed_degree_listed_order_verifies():
    # whiskered second worked example: five degree-4 covers then one degree-5
    G = Graph(6, [(0, 1), (1, 2), (2, 3), (0, 3), (2, 4), (3, 4), (1, 5), (2, 5)])
    W, _ = add_whiskers(G, [5])
    dual = alexander_dual_of_edge_ideal(W)
    q = paper_order(dual, [{0, 2, 3, 5}, {1, 2, 3, 5}, {0, 2, 4, 5},
                           {1, 3, 4, 5}, {1, 2, 3, 6}, {0, 1, 2, 4, 6}])
    assert verify_order(q)


def test_disjoint_supports_fail_either_order():
    I = MonomialIdeal.from_generators(4, [M([0, 2]), M([1, 3])])
    assert not verify_order(make_order(I, [0, 1]))
    assert not verify_order(make_order(I, [1, 0]))


def test_verify_rejects_malformed():
    I = MonomialIdeal.from_generators(4, [M([0, 2]), M([1, 3])])
    q = make_order(I, [0, 1])
    with pytest.raises(InputError):
        verify_order(type(q)(I, (0, 0), q.colon_vars))
    with pytest.raises(InputError):
        verify_order(type(q)(I, (0, 1), (frozenset(),)))


def test_degree_sorted_requirement():
    I = MonomialIdeal.from_generators(3, [M([0]), M([1, 2])])
    assert verify_order(make_order(I, [0, 1]))
    assert not verify_order(make_order(I, [1, 0]))


# ---------------------------------------------------------------------------
# find_order


def test_find_order_c5():
    dual = alexander_dual_of_edge_ideal(cycle_graph(5))
    q = find_order(dual)
    assert q is not None and verify_order(q)


def test_find_order_none_for_disjoint_pair():
    I = MonomialIdeal.from_generators(4, [M([0, 2]), M([1, 3])])
    assert find_order(I) is None


def test_find_order_trivial_cases():
    single = MonomialIdeal.from_generators(3, [M([0, 1])])
    q = find_order(single)
    assert verify_order(q) and q.colon_vars == (frozenset(),)
    assert verify_order(find_order(MonomialIdeal.zero(3)))
    assert verify_order(find_order(MonomialIdeal.unit(3)))


def test_find_order_requires_equigenerated():
    I = MonomialIdeal.from_generators(3, [M([0]), M([1, 2])])
    with pytest.raises(InputError):
        find_order(I)


def test_find_order_deterministic():
    rng = random.Random(31)
    for _ in range(10):
        G = random_graph(rng, 6, 0.5)
        dual = alexander_dual_of_edge_ideal(G)
        if dual.is_zero:
            continue
        comp = squarefree_degree_component(dual, dual.min_degree + 1)
        a = find_order(comp)
        b = find_order(comp)
        assert (a is None) == (b is None)
        if a is not None:
            assert a.order == b.order


def test_find_order_matches_permutation_oracle():
    rng = random.Random(37)
    graphs = [cycle_graph(k) for k in (3, 4, 5, 6)]
    graphs += [random_graph(rng, rng.randint(2, 6), rng.choice([0.3, 0.6]))
               for _ in range(30)]
    checked = 0
    for G in graphs:
        dual = alexander_dual_of_edge_ideal(G)
        if dual.is_zero:
            continue
        for d in range(dual.min_degree, G.n + 1):
            comp = squarefree_degree_component(dual, d)
            if len(comp.gens) > 9:
                continue
            q = find_order(comp)
            oracle = permutation_order_exists([frozenset(g.support) for g in comp.gens])
            assert (q is not None) == oracle
            if q is not None:
                assert verify_order(q)
            checked += 1
    assert checked > 40


# ---------------------------------------------------------------------------
# dual linear quotients


def test_dlq_remainder_true_but_induced_four_cycle_false():
    G = Graph(5, [(0, 1), (1, 2), (2, 3), (0, 3), (2, 4), (3, 4)])
    assert has_dual_linear_quotients(G).verdict is True
    four = induced_subgraph(G, [0, 1, 2, 3])
    report = has_dual_linear_quotients(four)
    assert report.verdict is False
    assert report.failing_degree == 2


def test_dlq_chordal_graphs():
    rng = random.Random(41)
    seen = 0
    for _ in range(40):
        G = random_graph(rng, rng.randint(1, 8), rng.choice([0.3, 0.5]))
        if not is_chordal(G).chordal:
            continue
        report = has_dual_linear_quotients(G)
        assert report.verdict is True
        for q in report.per_degree.values():
            assert verify_order(q)
        seen += 1
    assert seen >= 15


def test_dlq_c4_fails_at_degree_two():
    report = has_dual_linear_quotients(cycle_graph(4))
    assert report.verdict is False
    assert report.per_degree[2] is None
    assert report.per_degree[3] is not None and report.per_degree[4] is not None


def test_dlq_reports_are_deterministic():
    G = cycle_graph(5)
    a = has_dual_linear_quotients(G)
    b = has_dual_linear_quotients(G)
    assert {d: q.order for d, q in a.certificates().items()} == \
        {d: q.order for d, q in b.certificates().items()}


def test_dlq_implies_linear_resolution():
    rng = random.Random(43)
    checked = 0
    for _ in range(25):
        G = random_graph(rng, rng.randint(1, 7), 0.4)
        report = has_dual_linear_quotients(G)
        for d, q in report.certificates().items():
            comp = q.ideal
            assert has_linear_resolution(comp)
            checked += 1
        if checked >= 60:
            break
    assert checked >= 30


def test_isolated_vertex_does_not_change_dlq():
    rng = random.Random(47)
    for _ in range(20):
        G = random_graph(rng, rng.randint(1, 6), 0.5)
        bigger = Graph(G.n + 1, G.edges())
        assert has_dual_linear_quotients(G).verdict == \
            has_dual_linear_quotients(bigger).verdict


# ---------------------------------------------------------------------------
# the constructive whisker order


def test_whisker_order_smallest():
    e = Graph(2, [(0, 1)])
    q = whisker_order(e, (0, 1), 1)
    assert [sorted(g.support) for g in q.ordered_gens()] == [[1], [0]]
    assert verify_order(q)
    assert q.colon_vars == (frozenset(), frozenset({1}))


def test_whisker_order_villarreal_edge():
    # path x1-y1-y2-x2 as whiskering both ends of an edge
    G = Graph(2, [(0, 1)])
    W, wm = add_whiskers(G, [0, 1])
    y, x = wm.pairs[-1]
    q = whisker_order(W, (x, y), 2)
    assert verify_order(q)
    ordered = [frozenset(g.support) for g in q.ordered_gens()]
    # base-vertex block first, every generator in it contains y
    assert y in ordered[0]


def test_whisker_order_covers_all_degrees_when_fully_whiskered():
    # whiskering every vertex leaves an edgeless remainder, so the
    # construction is guaranteed to produce verifying orders at every degree
    from edgeideals import vertex_covers_of_size
    rng = random.Random(53)
    for _ in range(20):
        G = random_graph(rng, rng.randint(1, 5), 0.5)
        W, wm = add_whiskers(G, range(G.n))
        if not wm.pairs:
            continue
        y, x = wm.pairs[-1]
        for d in range(W.n + 1):
            if vertex_covers_of_size(W, d):
                q = whisker_order(W, (x, y), d)
                assert verify_order(q)
                assert {frozenset(g.support) for g in q.ideal.gens} == \
                    set(vertex_covers_of_size(W, d))


def test_whisker_order_fails_when_hypothesis_fails():
    G = Graph(5, [(0, 1), (1, 2), (2, 3), (0, 3), (0, 4)])
    W, wm = add_whiskers(G, [4])
    q = whisker_order(W, wm.pairs[-1][::-1], 3)
    assert not verify_order(q)


def test_whisker_order_validates_tip():
    W = cycle_graph(4)
    with pytest.raises(InputError):
        whisker_order(W, (0, 1), 2)  # degree-2 vertex is no tip
    e = Graph(3, [(0, 1), (1, 2)])
    with pytest.raises(InputError):
        whisker_order(e, (0, 2), 2)  # wrong base
    with pytest.raises(InputError):
        whisker_order(e, (0, 1), 0)  # zero component


def test_whisker_order_with_explicit_oracle():
    G = Graph(3, [(0, 1), (1, 2)])
    W, wm = add_whiskers(G, [1])
    y, x = wm.pairs[-1]
    calls = []

    def oracle(sub, d):
        calls.append((sub.n, d))
        return dual_component_order(sub, d)

    q = whisker_order(W, (x, y), 2, recurse=oracle)
    assert verify_order(q)
    assert calls  # the recursion was actually consulted


def test_whisker_split_bijection():
    rng = random.Random(59)
    for _ in range(25):
        G = random_graph(rng, rng.randint(1, 5), 0.5)
        S = [v for v in range(G.n) if rng.random() < 0.5]
        W, wm = add_whiskers(G, S)
        if not wm.pairs:
            continue
        y, x = wm.pairs[-1]
        for d in range(W.n + 1):
            split = whisker_split(W, (x, y), d)
            nondiv = {a for a in split.A_list if y not in a}
            assert nondiv == {c | split.D for c in split.C_list}
            for a in split.A_list:
                assert len(a) == d - 1
            for b in split.B_list:
                assert len(b) == d - 1
            for c in split.C_list:
                assert len(c) == d - 1 - split.u


def test_subgraph_induction_claim_desk_scale():
    # hypothesis on tip-free subgraphs propagates to every tip-containing one
    rng = random.Random(61)
    tried = 0
    memo = {}
    from edgeideals.harness import _graph_key

    def dlq(H):
        key = _graph_key(H)
        if key not in memo:
            memo[key] = has_dual_linear_quotients(H).verdict
        return memo[key]

    while tried < 6:
        n = rng.randint(1, 4)
        G0 = random_graph(rng, n, 0.5)
        S = [v for v in range(n) if rng.random() < 0.7]
        if not S:
            continue
        W, wm = add_whiskers(G0, S)
        if W.n > 9:
            continue
        tips = sorted(wm.tips)
        y, x = wm.pairs[-1]
        lead = tips[:-1]
        others = [v for v in range(W.n) if v not in (x, y) and v not in lead]
        hyp = True
        for mask in range(1 << len(others)):
            keep = lead + [others[i] for i in range(len(others)) if mask >> i & 1]
            if not dlq(induced_subgraph(W, keep)):
                hyp = False
                break
        if not hyp:
            continue
        rest = [v for v in range(W.n) if v not in tips]
        for mask in range(1 << len(rest)):
            keep = tips + [rest[i] for i in range(len(rest)) if mask >> i & 1]
            assert dlq(induced_subgraph(W, keep))
        tried += 1


def test_tip_equivalence_random():
    from edgeideals import all_induced_dlq, all_tip_induced_dlq
    rng = random.Random(67)
    all_memo = {}
    dlq_memo = {}
    for _ in range(20):
        n = rng.randint(1, 6)
        G = random_graph(rng, n, 0.45)
        S = frozenset(v for v in range(n) if rng.random() < 0.5)
        lhs = all_induced_dlq(delete_vertices(G, S), all_memo, dlq_memo)
        rhs = all_tip_induced_dlq(G, S, dlq_memo)
        assert lhs == rhs


def test_search_stats_accumulate():
    reset_search_stats()
    find_order(alexander_dual_of_edge_ideal(cycle_graph(5)))
    assert search_stats["identity"] == 1
    find_order(MonomialIdeal.from_generators(4, [M([0, 2]), M([1, 3])]))
    assert search_stats["exhausted"] == 1


def test_dlq_budget_marks_unknown():
    report = has_dual_linear_quotients(cycle_graph(4), budget=0)
    assert report.verdict is None
    assert 2 in report.unknown
    assert report.per_degree[3] is not None  # canonical order needs no search


def test_find_order_budget_raises():
    from edgeideals import SearchBudgetExceeded
    I = MonomialIdeal.from_generators(4, [M([0, 2]), M([1, 3])])
    with pytest.raises(SearchBudgetExceeded):
        find_order(I, budget=0)


def test_listed_remainder_order_verifies():
    # the worked remainder graph: four listed covers in their given order
    G = Graph(5, [(0, 1), (1, 2), (2, 3), (0, 3), (2, 4), (3, 4)])
    dual = alexander_dual_of_edge_ideal(G)
    pos = {frozenset(g.support): i for i, g in enumerate(dual.gens)}
    seq = [frozenset({0, 2, 3}), frozenset({1, 2, 3}),
           frozenset({0, 2, 4}), frozenset({1, 3, 4})]
    q = make_order(dual, [pos[s] for s in seq])
    assert verify_order(q)
    assert q.step_sizes() == [0, 1, 1, 1]
