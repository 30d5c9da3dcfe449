import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracminor.decompose import (
    Decomposition,
    NoSeparationError,
    Separation,
    balanced_separator,
    degenerate_bipartify,
    eppstein_constants,
    eppstein_decompose,
    group_components,
    hypercube_decompose,
    mader_refine,
    reduce_expand,
)
from fracminor.graphcore import (
    CapExceededError,
    Graph,
    complete_graph,
    cycle_graph,
    disjoint_copies,
    disjoint_union,
    enumerate_graphs,
    grid_graph,
    hypercube,
    path_graph,
)
from fracminor.suites import in_class, is_fixed_point, random_graph, random_tree
from oracles import brute_min_separation, connected
from strategies import graphs

HALF = Fraction(1, 2)


# separators


def test_separator_examples():
    assert balanced_separator(path_graph(7)).order == 1
    assert balanced_separator(path_graph(7)).separator == frozenset({3})
    assert balanced_separator(cycle_graph(6)).order == 2
    with pytest.raises(NoSeparationError):
        balanced_separator(complete_graph(5))


def test_exact_separator_matches_labelling_search():
    for g in enumerate_graphs(6, min_vertices=2):
        best = brute_min_separation(g)
        if best is None:
            with pytest.raises(NoSeparationError):
                balanced_separator(g)
        else:
            assert balanced_separator(g).order == best


def test_exact_separator_on_random_seven_vertex_graphs():
    rng = random.Random(7)
    for _ in range(25):
        g = random_graph(rng, 7, rng.uniform(0.2, 0.7))
        best = brute_min_separation(g)
        if best is None:
            continue
        assert balanced_separator(g).order == best


def test_exact_cap_and_forest_exemption():
    with pytest.raises(CapExceededError):
        balanced_separator(cycle_graph(25))
    sep = balanced_separator(random_tree(random.Random(1), 150))
    assert sep.order <= 1


@given(graphs(min_order=4, max_order=9))
def test_heuristic_separations_are_valid(g):
    try:
        sep = balanced_separator(g, mode="heuristic")
    except NoSeparationError:
        return
    assert not sep.problems(g) and sep.is_balanced(g)


def test_separation_problem_reports():
    g = path_graph(3)
    assert Separation(frozenset({0}), frozenset({1, 2})).problems(g) == ["an edge crosses the separation"]
    assert "a side is contained in the other" in Separation(frozenset({0, 1, 2}), frozenset({1})).problems(g)


# Eppstein decomposition


def test_constants_are_ordered_intervals():
    g_lo, g_hi, c_lo, c_hi = eppstein_constants(HALF, 1, HALF)
    assert g_lo <= g_hi and c_lo <= c_hi
    assert abs(float(g_hi) - 2.539) < 1e-3 and abs(float(c_hi) - 77.36) < 1e-2
    with pytest.raises(ValueError):
        eppstein_constants(1, 1, HALF)


def test_decompose_path_100():
    g = path_graph(100)
    d = eppstein_decompose(g, HALF, 1, HALF)
    assert not d.problems(g)
    assert d.excess <= 50 and d.certified and d.nodes_ok


def test_decompose_single_edge():
    d = eppstein_decompose(complete_graph(2), HALF, 1, Fraction(1, 3))
    assert d.bags == (frozenset({0, 1}),) and d.excess == 0


def test_decompose_grid_heuristic():
    g = grid_graph(8, 8)
    d = eppstein_decompose(g, HALF, 2, HALF, separator="heuristic")
    assert not d.problems(g) and d.nodes_ok
    # C exceeds 64 here, so no separator is consulted and one bag suffices
    assert d.C > 64 and len(d.bags) == 1 and d.certified
    g = grid_graph(14, 14)
    d = eppstein_decompose(g, HALF, 1, 1, separator="heuristic")
    assert not d.problems(g) and d.nodes_ok and len(d.bags) > 1
    assert not d.certified  # only the exact search certifies


def test_decompose_rejects_bad_epsilon():
    with pytest.raises(ValueError):
        eppstein_decompose(path_graph(4), HALF, 1, 0)
    with pytest.raises(ValueError):
        eppstein_decompose(path_graph(4), HALF, 1, 2)


def test_broken_separator_contract_is_flagged():
    def fat(sub):
        # valid and balanced, but the overlap is about a third of the piece
        n = sub.order
        w = n // 6
        mid = n // 2
        return Separation(frozenset(range(mid + w + 1)), frozenset(range(mid - w, n)))

    g = path_graph(60)
    d = eppstein_decompose(g, HALF, 1, 1, separator=fat)
    assert not d.problems(g)
    assert not d.nodes_ok and not d.certified
    assert any(not nd.separator_ok for nd in d.nodes)


@pytest.mark.parametrize("seed", range(5))
def test_trees_excess_within_budget(seed):
    rng = random.Random(seed)
    g = random_tree(rng, rng.randint(60, 200))
    d = eppstein_decompose(g, HALF, 1, 1)
    assert not d.problems(g)
    assert d.certified and d.excess <= g.order


def test_problems_detects_bad_decompositions():
    g = path_graph(4)
    assert Decomposition((frozenset({0, 1}), frozenset({2, 3})), Fraction(4), 0, False).problems(g)
    bad = Decomposition((frozenset({0, 1, 2}), frozenset({2, 3})), Fraction(2), 1, False)
    assert any("more than" in p for p in bad.problems(g))
    assert Decomposition((frozenset({0, 1, 2}), frozenset({2, 3})), Fraction(4), 0, False).problems(g)


# hypercube


def test_hypercube_examples():
    d3 = hypercube_decompose(3)
    assert sorted(len(b) for b in d3.bags) == [2, 2, 2, 2, 4, 4] and d3.excess == 8
    d1 = hypercube_decompose(1)
    assert sorted(len(b) for b in d1.bags) == [1, 1, 2] and d1.excess == 2
    d6 = hypercube_decompose(6)
    assert [len(b) for b in d6.bags] == [8] * 16 and d6.excess == 64


@pytest.mark.parametrize("d", range(1, 9))
def test_hypercube_decomposition_validates(d):
    dec = hypercube_decompose(d)
    q = hypercube(d)
    assert q.num_edges == d * 2 ** (d - 1)
    assert not dec.problems(q, cap=2 ** ((d + 1) // 2))
    assert dec.excess == 2 ** d and dec.certified


# padding into copies


def test_group_examples():
    h = disjoint_union([complete_graph(3)] * 5 + [complete_graph(2)] * 3)
    r = group_components(h, 1)
    assert r.ell * r.J.order <= 2 * h.order and r.J.order <= r.C_prime
    r = group_components(complete_graph(3), HALF)
    assert r.ell == 1 and r.embedding == (0, 1, 2)
    r = group_components(disjoint_copies(complete_graph(2), 100), HALF)
    assert r.ell * r.J.order <= 300 and r.J.order <= r.C_prime


def _component_bounded(rng):
    comps = []
    for _ in range(rng.randint(1, 40)):
        n = rng.randint(1, 4)
        comps.append(random_tree(rng, n) if rng.random() < 0.5 else complete_graph(n))
    return disjoint_union(comps)


def test_group_bounds_on_random_inputs():
    rng = random.Random(3)
    for _ in range(100):
        h = _component_bounded(rng)
        eps = Fraction(rng.randint(1, 4), 4)
        r = group_components(h, eps)
        assert r.ell * r.J.order <= (1 + eps) * h.order
        assert r.J.order <= r.C_prime
        assert r.host.order == r.ell * r.J.order
        assert len(set(r.embedding)) == h.order
        for u in range(h.order):
            for v in range(u + 1, h.order):
                assert h.has_edge(u, v) == r.host.has_edge(r.embedding[u], r.embedding[v])


# reduce / expand


def _check_reduce(h, bags, eps):
    r = reduce_expand(h, bags, eps)
    excess = sum(len(set(b)) for b in bags) - h.order
    assert len(r.F) == excess
    # contracting each branch set of the model through F recovers h
    for branch in r.model.branch:
        assert connected(r.H_prime, branch)
    for u, v in h.edges:
        assert any(r.H_prime.has_edge(a, b) for a in r.model.branch[u] for b in r.model.branch[v])
    # H' without F is ell disjoint copies of J
    f = {(min(a, b), max(a, b)) for a, b in r.F}
    rest = Graph(r.H_prime.order, r.H_prime.edges - f)
    assert rest.order == r.ell * r.J.order
    assert rest.num_edges == r.ell * r.J.num_edges
    # H' - X maps injectively onto a subgraph of h
    assert len(set(r.back.values())) == len(r.back) == r.H_prime.order - len(r.X)
    for a, b in r.H_prime.edges:
        if a not in r.X and b not in r.X:
            assert h.has_edge(r.back[a], r.back[b])
    return r


def test_reduce_examples():
    r = _check_reduce(cycle_graph(4), [[0, 1, 2], [2, 3, 0]], HALF)
    assert r.H_prime.order == 6 and len(r.F) == 2
    r = _check_reduce(complete_graph(3), [[0, 1, 2]], HALF)
    assert r.H_prime.order == 3 and not r.F and not r.X
    p5 = path_graph(5)
    _check_reduce(p5, eppstein_decompose(p5, HALF, 1, HALF).bags, HALF)


def test_reduce_rejects_non_decompositions():
    with pytest.raises(ValueError):
        reduce_expand(path_graph(3), [[0, 1]], HALF)
    with pytest.raises(ValueError):
        reduce_expand(path_graph(3), [[0, 1], [2]], HALF)


@pytest.mark.parametrize("rows,cols", [(3, 10), (6, 6), (10, 14)])
def test_reduce_on_grid_decompositions(rows, cols):
    g = grid_graph(rows, cols)
    d = eppstein_decompose(g, HALF, 1, 1, separator="heuristic")
    assert not d.problems(g)
    _check_reduce(g, d.bags, 1)


def test_reduce_on_tree_decomposition():
    g = random_tree(random.Random(11), 200)
    d = eppstein_decompose(g, HALF, 1, 1)
    _check_reduce(g, d.bags, 1)


# bipartite expansion


def test_bipartify_examples():
    r = degenerate_bipartify(complete_graph(3), 2)
    assert sum(len(w) for w in r.W) == 6
    assert degenerate_bipartify(complete_graph(1), 2).W == ((),)
    assert sum(len(w) for w in degenerate_bipartify(hypercube(3), 3).W) == 16
    with pytest.raises(ValueError):
        degenerate_bipartify(complete_graph(3), 1)


@given(graphs(min_order=1, max_order=8), st.integers(2, 5))
def test_bipartify_properties(h, d):
    r = degenerate_bipartify(h, d)
    n = h.order
    hp = r.H_prime
    assert hp.order == n + sum(len(w) for w in r.W)
    assert all(len(w) == r.ell for w in r.W)
    for a, b in hp.edges:
        assert (a < n) != (b < n)
    assert all(hp.degree(w) <= d for w in range(n, hp.order))
    r.model.validate(h, hp)


# Mader refinement


def test_mader_examples():
    r = mader_refine(complete_graph(7), 2, 1)
    assert r.graph.order == 4 and r.graph.num_edges == 6
    assert mader_refine(complete_graph(4), 2, 1).graph.num_edges == 6
    r = mader_refine(complete_graph(9), 3, 1)
    assert r.connectivity >= 1 and r.min_triangles >= 3
    with pytest.raises(ValueError):
        mader_refine(complete_graph(4), 1, 1)
    with pytest.raises(ValueError):
        mader_refine(path_graph(5), 2, 1)


@pytest.mark.parametrize("d,k", [(2, 1), (3, 1), (4, 2)])
def test_mader_fixed_points(d, k):
    rng = random.Random(d * 10 + k)
    made = 0
    while made < 10:
        n = rng.randint(2 * d + 1, 12)
        g = random_graph(rng, n, rng.uniform(0.6, 1.0))
        if g.num_edges < d * n:
            continue
        made += 1
        m = mader_refine(g, d, k).graph
        assert in_class(m, d, k) and is_fixed_point(m, d, k)
        assert d - k <= Fraction(m.num_edges, m.order) <= d
