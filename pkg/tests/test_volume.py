from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracminor.graphcore import (
    Graph,
    complete_bipartite,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    disjoint_copies,
    empty_graph,
    invariants,
    is_minor,
    path_graph,
)
from fracminor.volume import (
    WeightFormatError,
    WeightVector,
    bipartite_vol_bound,
    blowup_pack,
    enumerate_nmodels,
    parse_weights,
    verify_graph_certificate,
    vol_graph,
    vol_vector,
    vol_weighted,
)
from oracles import brute_nmodel_loads, brute_vol_graph, brute_vol_vector, minimal
from strategies import graphs, rationals, weight_vectors

K2, K3, K4 = complete_graph(2), complete_graph(3), complete_graph(4)
PATTERNS = [K2, K3, path_graph(3), cycle_graph(4), complete_bipartite(2, 1), empty_graph(2)]


# weight vectors


def test_weight_vector_arithmetic():
    w = WeightVector.from_list([3, 1, 1])
    assert w.total() == 5
    assert w.norm() == 25 - 11
    assert w.density() == Fraction(14, 10)
    assert w.sorted_support() == [1, 2, 3]
    with pytest.raises(TypeError):
        WeightVector({1: 0.5})
    with pytest.raises(ValueError):
        WeightVector({1: -1})


def test_weight_text_roundtrip():
    w = WeightVector({1: Fraction(3, 2), 4: 2})
    assert parse_weights(w.to_text()) == w
    assert parse_weights("i 2 5\n") == WeightVector({2: 5})
    with pytest.raises(WeightFormatError):
        parse_weights("i 1 1\ni 1 2\n")
    with pytest.raises(WeightFormatError):
        parse_weights("i 1 -1/2\n")


# models in the integers


def test_nmodel_examples():
    assert enumerate_nmodels(K3, 2).generators == ((2, 2),)
    assert enumerate_nmodels(K2, 2).generators == ((1, 1),)
    assert enumerate_nmodels(empty_graph(2), 1).generators == ((2,),)


@pytest.mark.parametrize("h", PATTERNS + [K4, cycle_graph(5)], ids=lambda g: f"v{g.order}e{g.num_edges}")
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_nmodels_match_exhaustive_maps(h, n):
    ms = enumerate_nmodels(h, n)
    assert sorted(ms.generators) == minimal(brute_nmodel_loads(h, n))
    inv = invariants(h)
    for g in ms.generators:
        assert sum(g) >= 2 * h.order - inv.alpha(n)


# volumes


def test_vol_graph_examples():
    assert vol_graph(K2, complete_graph(5)).value == Fraction(5, 2)
    assert vol_graph(K3, K3).value == 1
    assert vol_graph(K3, K2).value == Fraction(1, 2)


def test_vol_weighted_examples():
    assert vol_weighted(K2, K3, [1, 1, 1]).value == Fraction(3, 2)
    assert vol_weighted(K2, K3, [2, 2, 2]).value == 3
    assert vol_weighted(K3, K2, [5, 1]).value == Fraction(1, 2)


def test_vol_vector_examples():
    for r in (1, 2, 7):
        assert vol_vector(K3, WeightVector.from_list([r, 1])).value == Fraction(1, 2)
    for t, k in ((2, 3), (3, 4), (4, 4), (4, 5), (3, 5)):
        assert vol_vector(complete_graph(t), WeightVector.indicator(range(1, k + 1))).value == Fraction(k, t)
    assert vol_vector(K3, WeightVector()).value == 0


def test_vol_vector_k4_on_three():
    # below the k >= t regime the symmetric packing is not optimal
    assert vol_vector(K4, WeightVector.indicator(range(1, 4))).value == Fraction(3, 5)
    assert brute_vol_vector(K4, [1, 1, 1]) == Fraction(3, 5)


@given(st.sampled_from(PATTERNS), graphs(min_order=1, max_order=5))
def test_vol_graph_matches_exhaustive_models(h, g):
    res = vol_graph(h, g)
    assert res.value == brute_vol_graph(h, g)
    assert verify_graph_certificate(h, g, [1] * g.order, res) == []


@given(st.sampled_from(PATTERNS), graphs(min_order=1, max_order=5), st.data())
def test_vol_weighted_matches_exhaustive_models(h, g, data):
    caps = data.draw(st.lists(st.integers(0, 3), min_size=g.order, max_size=g.order))
    res = vol_weighted(h, g, caps)
    assert res.value == brute_vol_graph(h, g, caps)
    assert verify_graph_certificate(h, g, caps, res) == []


@given(st.sampled_from(PATTERNS + [K4]), weight_vectors(max_support=4))
def test_vol_vector_matches_exhaustive_maps(h, w):
    res = vol_vector(h, w)
    vals = [w[i] for i in w.support]
    assert res.value == brute_vol_vector(h, vals)
    assert res.certificate.value == res.value


@given(st.sampled_from(PATTERNS), weight_vectors(max_support=3), weight_vectors(max_support=3, start=2), rationals)
def test_superadditive_and_homogeneous(h, w1, w2, q):
    a, b = vol_vector(h, w1).value, vol_vector(h, w2).value
    assert vol_vector(h, w1 + w2).value >= a + b
    assert vol_vector(h, w1.scale(q)).value == q * a


@given(st.sampled_from(PATTERNS), graphs(min_order=1, max_order=6))
def test_minor_gives_volume_one(h, g):
    if is_minor(h, g) is not None:
        assert vol_graph(h, g).value >= 1
    if is_minor(disjoint_copies(h, 2), g) is not None:
        assert vol_graph(h, g).value >= 2


def test_graph_volume_equals_vector_volume_on_cliques():
    for h in (K3, K4, cycle_graph(5)):
        for caps in ([3, 1, 1], [2, 2, 1, 1], [5, 1]):
            g = complete_graph(len(caps))
            assert vol_weighted(h, g, caps).value == vol_vector(h, WeightVector.from_list(caps)).value


def test_bipartite_bound_examples():
    assert bipartite_vol_bound(2, 1, K4) == Fraction(4, 3)
    assert bipartite_vol_bound(1, 1, cycle_graph(5)) == 2
    assert bipartite_vol_bound(3, 3, K3) == Fraction(1, 2)


@given(graphs(min_order=2, max_order=6).filter(lambda g: g.min_degree() >= 1),
       st.sampled_from([(1, 1), (2, 1), (2, 2), (3, 2)]))
def test_bipartite_volume_bound_holds(g, st_pair):
    s, t = st_pair
    assert vol_graph(complete_bipartite(s, t), g).value >= bipartite_vol_bound(s, t, g)


def test_blowup_pack_examples():
    r = blowup_pack(K3, K3, 5, 5)
    assert r.host == complete_multipartite([5, 5, 5]) and r.model.is_valid(r.pattern, r.host)
    assert len(r.model.branch) == 15
    r = blowup_pack(K2, K2, 1, 1)
    assert r.model.branch == (frozenset({0}), frozenset({1}))
    r = blowup_pack(K3, K2, 4, 2)
    assert r.model.is_valid(disjoint_copies(K3, 2), r.host)
    assert max(len(b) for b in r.model.branch) <= 2
    with pytest.raises(ValueError):
        blowup_pack(K3, K2, 4, 3)


@given(st.sampled_from([K2, K3, path_graph(3)]), graphs(min_order=2, max_order=5), st.integers(1, 4))
def test_blowup_pack_models_validate(h, g, k):
    ell = blowup_pack(h, g, k, 0).achievable
    assert ell <= vol_graph(h, g).value * k
    if ell:
        r = blowup_pack(h, g, k, ell)
        assert r.model.is_valid(disjoint_copies(h, ell), r.host)
