from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fracminor import ratlp
from fracminor.graphcore import complete_graph
from fracminor.volume import enumerate_nmodels
from oracles import brute_lp_max, brute_vertices


def test_single_variable():
    res = ratlp.solve(ratlp.LinearProgram.build([1], [[1]], [ratlp.LE], [1]))
    assert res.optimal and res.value == 1


def test_fractional_matching_triangle():
    rows = [[1, 0, 1], [1, 1, 0], [0, 1, 1]]
    lp = ratlp.LinearProgram.build([1, 1, 1], rows, [ratlp.LE] * 3, [1, 1, 1])
    res = ratlp.solve(lp)
    assert res.value == Fraction(3, 2)
    assert ratlp.check_duality(lp, res) == []
    assert brute_lp_max([1, 1, 1], rows, [1, 1, 1]) == Fraction(3, 2)


def test_infeasible():
    lp = ratlp.LinearProgram.build([1], [[-1], [1]], [ratlp.LE, ratlp.LE], [-1, 0])
    assert ratlp.solve(lp).status == ratlp.INFEASIBLE


def test_unbounded():
    lp = ratlp.LinearProgram.build([1, 1], [[1, -1]], [ratlp.LE], [1])
    assert ratlp.solve(lp).status == ratlp.UNBOUNDED


def test_equality_and_ge_rows():
    # max x + y, x + y = 2, x >= 1/2, y <= 1
    lp = ratlp.LinearProgram.build([1, 1], [[1, 1], [1, 0], [0, 1]],
                                   [ratlp.EQ, ratlp.GE, ratlp.LE], [2, Fraction(1, 2), 1])
    res = ratlp.solve(lp)
    assert res.value == 2
    assert ratlp.check_duality(lp, res) == []


def test_floats_rejected():
    with pytest.raises(TypeError):
        ratlp.LinearProgram.build([1.0], [[1]], [ratlp.LE], [1])


small = st.integers(0, 4)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.lists(small, min_size=n, max_size=n),
    st.lists(st.lists(st.integers(1, 4), min_size=n, max_size=n), min_size=1, max_size=4),
    st.lists(st.integers(1, 6), min_size=4, max_size=4),
)))
def test_simplex_matches_vertex_search(data):
    c, rows, rhs = data
    rhs = rhs[: len(rows)]
    lp = ratlp.LinearProgram.build(c, rows, [ratlp.LE] * len(rows), rhs)
    res = ratlp.solve(lp)
    assert res.optimal
    assert res.value == brute_lp_max(c, rows, rhs)
    assert ratlp.check_duality(lp, res) == []


def test_polytope_examples():
    assert sorted(ratlp.polytope_vertices([[2, 2]], [1])) == [(0, Fraction(1, 2)), (Fraction(1, 2), 0)]
    assert ratlp.polytope_vertices([[1]], [1]) == [(1,)]
    gens = enumerate_nmodels(complete_graph(4), 2).generators
    assert gens == ((3, 3),)
    got = sorted(ratlp.polytope_vertices(gens, [1] * len(gens)))
    assert got == [(0, Fraction(1, 3)), (Fraction(1, 3), 0)]


@given(st.integers(2, 4).flatmap(lambda n: st.lists(
    st.lists(st.integers(0, 4), min_size=n, max_size=n).filter(lambda r: sum(r) > 0),
    min_size=1, max_size=5)))
def test_double_description_matches_tight_subsystems(A):
    # each coordinate gets a covering row so the polyhedron is pointed and non-empty
    n = len(A[0])
    A = A + [[1 if j == i else 0 for j in range(n)] for i in range(n) if all(r[i] == 0 for r in A)]
    b = [1] * len(A)
    dd = sorted(ratlp.polytope_vertices(A, b, method="dd"))
    tight = sorted(ratlp.polytope_vertices(A, b, method="tight"))
    assert dd == tight == brute_vertices(A, b)
