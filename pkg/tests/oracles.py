"""Slow, obviously-correct reference computations used to pin expected values.

Nothing here shares code with the package beyond the ``Graph`` container and
the rational LP (whose answers are themselves re-checked through duality).
"""
from __future__ import annotations

import itertools
from fractions import Fraction

from fracminor import ratlp
from fracminor.graphcore import Graph


def edges_of(g: Graph):
    return sorted(g.edges)


def colourable(g: Graph, verts, k: int) -> bool:
    """Backtracking colouring in plain vertex order, no heuristics."""
    verts = list(verts)
    col = {}

    def rec(i):
        if i == len(verts):
            return True
        v = verts[i]
        for c in range(min(k, i + 1)):
            if all(col.get(u) != c for u in g.neighbors(v)):
                col[v] = c
                if rec(i + 1):
                    return True
                del col[v]
        return False

    return rec(0)


def brute_alpha(g: Graph, k: int) -> int:
    n = g.order
    for size in range(n, -1, -1):
        for S in itertools.combinations(range(n), size):
            if colourable(g, S, k):
                return size
    return 0


def brute_chi(g: Graph) -> int:
    if g.order == 0:
        return 0
    k = 1
    while not colourable(g, range(g.order), k):
        k += 1
    return k


def brute_tau(g: Graph) -> int:
    n = g.order
    for size in range(n + 1):
        for S in itertools.combinations(range(n), size):
            s = set(S)
            if all(u in s or v in s for u, v in g.edges):
                return size
    return n


def connected(g: Graph, verts) -> bool:
    verts = set(verts)
    if not verts:
        return False
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in g.neighbors(x):
            if y in verts and y not in seen:
                seen.add(y)
                stack.append(y)
    return seen == verts


def touching(g: Graph, a, b) -> bool:
    return any(g.has_edge(x, y) for x in a for y in b)


def brute_minor(h: Graph, g: Graph) -> bool:
    """Label every host vertex with a pattern vertex or nothing, then test branch sets."""
    if h.order > g.order:
        return False
    for lab in itertools.product(range(h.order + 1), repeat=g.order):
        sets = [[v for v in range(g.order) if lab[v] == x] for x in range(h.order)]
        if not all(sets):
            continue
        if not all(connected(g, s) for s in sets):
            continue
        if all(touching(g, sets[u], sets[v]) for u, v in h.edges):
            return True
    return False


def connected_subsets(g: Graph):
    out = []
    for r in range(1, g.order + 1):
        for S in itertools.combinations(range(g.order), r):
            if connected(g, S):
                out.append(frozenset(S))
    return out


def brute_jumbled_loads(h: Graph, g: Graph):
    """Load vectors of all jumbled models of ``h`` in ``g`` (no pruning)."""
    subs = connected_subsets(g)
    loads = set()
    for choice in itertools.product(subs, repeat=h.order):
        if all(touching(g, choice[u], choice[v]) for u, v in h.edges):
            load = [0] * g.order
            for s in choice:
                for v in s:
                    load[v] += 1
            loads.add(tuple(load))
    return sorted(loads)


def packing_value(loads, caps) -> Fraction:
    m = len(caps)
    lp = ratlp.LinearProgram.build([1] * len(loads), [[ld[i] for ld in loads] for i in range(m)],
                                   [ratlp.LE] * m, list(caps))
    res = ratlp.solve(lp)
    assert res.optimal
    assert not ratlp.check_duality(lp, res)
    return res.value


def brute_vol_graph(h: Graph, g: Graph, caps=None) -> Fraction:
    caps = [1] * g.order if caps is None else caps
    return packing_value(brute_jumbled_loads(h, g), caps)


def brute_nmodel_loads(h: Graph, n: int):
    """Load vectors of jumbled models in ``{1..n}``: sets of size 1 or 2, equal singletons non-adjacent."""
    opts = [frozenset([i]) for i in range(n)] + [frozenset(p) for p in itertools.combinations(range(n), 2)]
    loads = set()
    for choice in itertools.product(opts, repeat=h.order):
        ok = True
        for u, v in h.edges:
            if len(choice[u]) == 1 and choice[u] == choice[v]:
                ok = False
                break
        if ok:
            load = [0] * n
            for s in choice:
                for i in s:
                    load[i] += 1
            loads.add(tuple(load))
    return sorted(loads)


def minimal(vectors):
    vs = set(vectors)
    return sorted(v for v in vs if not any(u != v and all(a <= b for a, b in zip(u, v)) for u in vs))


def brute_vol_vector(h: Graph, values) -> Fraction:
    return packing_value(brute_nmodel_loads(h, len(values)), list(values))


def brute_min_separation(g: Graph):
    """Minimum order of a balanced separation, by labelling vertices 1, 2 or both."""
    n = g.order
    best = None
    for lab in itertools.product((1, 2, 3), repeat=n):
        a1 = {v for v in range(n) if lab[v] & 1}
        a2 = {v for v in range(n) if lab[v] & 2}
        if not (a1 - a2) or not (a2 - a1):
            continue
        if 3 * len(a1) < n or 3 * len(a2) < n:
            continue
        if any((u in a1 - a2 and v in a2 - a1) or (v in a1 - a2 and u in a2 - a1) for u, v in g.edges):
            continue
        order = len(a1 & a2)
        if best is None or order < best:
            best = order
    return best


def ht_alphas(t: int):
    """``alpha_i`` of K_{2t} minus a t-clique, using its symmetry: only (clique part, independent part) sizes matter."""
    from fracminor.graphcore import ht_graph

    g = ht_graph(t)
    alphas = {}
    for i in range(1, 2 * t + 1):
        best = 0
        for a in range(t + 1):
            for b in range(t + 1):
                verts = list(range(a)) + list(range(t, t + b))
                if a + b > best and colourable(g, verts, i):
                    best = a + b
        alphas[i] = best
    return alphas


def turan_value(v: int, tau: int, alphas: dict, chi: int) -> Fraction:
    vals = [Fraction(tau), Fraction(v, 2)]
    for i in range(2, chi + 1):
        vals.append(Fraction(i - 1, i) * (v - Fraction(alphas[i], 2)))
    return max(vals)


def solve_square(M, rhs):
    """Gauss-Jordan over the rationals; None when singular."""
    n = len(M)
    A = [list(map(Fraction, row)) + [Fraction(r)] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col] != 0), None)
        if piv is None:
            return None
        A[col], A[piv] = A[piv], A[col]
        p = A[col][col]
        A[col] = [x / p for x in A[col]]
        for r in range(n):
            if r != col and A[r][col] != 0:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[r][n] for r in range(n)]


def brute_lp_max(c, rows, rhs):
    """max c.x over {x >= 0, rows.x <= rhs} by trying every basic solution (bounded, feasible LPs)."""
    n = len(c)
    cons = [(list(r), b) for r, b in zip(rows, rhs)]
    cons += [([-1 if j == i else 0 for j in range(n)], 0) for i in range(n)]
    best = None
    for pick in itertools.combinations(range(len(cons)), n):
        x = solve_square([cons[i][0] for i in pick], [cons[i][1] for i in pick])
        if x is None:
            continue
        if all(sum(a * v for a, v in zip(r, x)) <= b for r, b in cons):
            val = sum(a * v for a, v in zip(c, x))
            if best is None or val > best:
                best = val
    return best


def brute_vertices(A, b):
    """Vertices of {a >= 0 : A a >= b} from every full tight subsystem."""
    n = len(A[0])
    cons = [(list(r), Fraction(v)) for r, v in zip(A, b)]
    cons += [([1 if j == i else 0 for j in range(n)], Fraction(0)) for i in range(n)]
    out = set()
    for pick in itertools.combinations(range(len(cons)), n):
        x = solve_square([cons[i][0] for i in pick], [cons[i][1] for i in pick])
        if x is None:
            continue
        if all(sum(a * v for a, v in zip(r, x)) >= bb for r, bb in cons):
            out.add(tuple(x))
    return sorted(out)
