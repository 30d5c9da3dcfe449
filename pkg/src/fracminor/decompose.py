"""Graph decompositions and the minor reductions built on them.

* balanced separations and recursive decompositions of graphs with small
  separators into bounded bags with small total overlap;
* the two-sided decomposition of the hypercube;
* padding a graph with small components into many copies of one graph;
* reduce/expand: turning a bag decomposition into a graph ``H'`` that has
  ``H`` as a minor, is a disjoint union of equal pieces after deleting a few
  edges, and is a subgraph of ``H`` after deleting a few vertices;
* bipartite graphs of bounded degree on one side containing a given graph
  as a minor;
* minor-minimal dense graphs with high connectivity and many triangles.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath
import networkx as nx

from .graphcore import (
    CapExceededError,
    Graph,
    Model,
    bits,
    degeneracy_order,
    disjoint_copies,
    disjoint_union,
    popcount,
    to_networkx,
)

EXACT_SEPARATOR_CAP = 20


class NoSeparationError(ValueError):
    """The graph has no balanced separation (complete graphs have no separation at all)."""


class InternalConsistencyError(AssertionError):
    pass


@dataclass(frozen=True)
class Separation:
    A1: frozenset
    A2: frozenset

    @property
    def order(self) -> int:
        return len(self.A1 & self.A2)

    @property
    def separator(self) -> frozenset:
        return self.A1 & self.A2

    def problems(self, g: Graph) -> list[str]:
        errs = []
        if self.A1 | self.A2 != frozenset(range(g.order)):
            errs.append("sides do not cover the vertex set")
        only1, only2 = self.A1 - self.A2, self.A2 - self.A1
        if not only1 or not only2:
            errs.append("a side is contained in the other")
        if any((u in only1 and v in only2) or (u in only2 and v in only1) for u, v in g.edges):
            errs.append("an edge crosses the separation")
        return errs

    def is_balanced(self, g: Graph) -> bool:
        return 3 * len(self.A1) >= g.order and 3 * len(self.A2) >= g.order


def _group(g: Graph, sep: int) -> Separation | None:
    """Split the components of ``G - sep`` into two non-empty balanced groups, as evenly as possible."""
    n = g.order
    rest = g.full_mask & ~sep
    comps = g.components(rest)
    if len(comps) < 2:
        return None
    s = popcount(sep)
    sizes = [popcount(c) for c in comps]
    total = n - s
    # reachable[t] = list of component indices summing to t (first found)
    reach: dict[int, tuple] = {0: ()}
    for i, sz in enumerate(sizes):
        for t, used in list(reach.items()):
            if t + sz not in reach:
                reach[t + sz] = used + (i,)
    best = None
    for t, used in reach.items():
        if not used or len(used) == len(comps):
            continue
        if 3 * (t + s) >= n and 3 * (total - t + s) >= n:
            key = abs(2 * t - total)
            if best is None or key < best[0]:
                best = (key, used)
    if best is None:
        return None
    side = 0
    for i in best[1]:
        side |= comps[i]
    a1 = frozenset(bits(side | sep))
    a2 = frozenset(bits((rest & ~side) | sep))
    return Separation(a1, a2)


def _is_forest(g: Graph) -> bool:
    return g.num_edges == g.order - len(g.components())


def _exact_separator(g: Graph, cap: int) -> Separation:
    n = g.order
    forest = _is_forest(g)
    if n > cap and not forest:
        raise CapExceededError(f"exact separator search is limited to {cap} vertices (or forests)")
    top = 1 if forest and n > cap else n - 2
    for s in range(0, max(top, 0) + 1):
        # among minimum-order separations keep the most even one
        best = None
        for S in itertools.combinations(range(n), s):
            mask = sum(1 << v for v in S)
            sep = _group(g, mask)
            if sep is not None:
                key = abs(len(sep.A1) - len(sep.A2))
                if best is None or key < best[0]:
                    best = (key, sep)
        if best is not None:
            return best[1]
    raise NoSeparationError("no balanced separation exists")


def _bfs_order(g: Graph, root: int, mask: int) -> list[int]:
    seen = 1 << root
    out = [root]
    i = 0
    while i < len(out):
        for u in bits(g.adjacency[out[i]] & mask & ~seen):
            seen |= 1 << u
            out.append(u)
        i += 1
    return out


def _heuristic_separator(g: Graph, roots: int = 12) -> Separation:
    n = g.order
    cands = []
    comps = g.components()
    if len(comps) >= 2:
        cands.append(0)
    verts = list(range(n))
    # start from peripheral-ish vertices and a spread of others
    start = sorted(verts, key=lambda v: (g.degree(v), v))
    picks = []
    for v in start[:roots // 2] + verts[:: max(1, n // (roots // 2 or 1))]:
        if v not in picks:
            picks.append(v)
    for r in picks:
        comp = next(c for c in comps if c >> r & 1)
        order = _bfs_order(g, r, comp)
        prefix = 0
        for v in order:
            prefix |= 1 << v
            boundary = g.nbr_mask(prefix) & ~prefix
            cands.append(boundary)
    best = None
    seen = set()
    for S in cands:
        if S in seen:
            continue
        seen.add(S)
        if best is not None and popcount(S) >= best.order:
            continue
        sep = _group(g, S)
        if sep is not None:
            best = _shrink(g, sep)
    if best is None:
        # fall back to an exhaustive search when small enough
        return _exact_separator(g, EXACT_SEPARATOR_CAP)
    return best


def _shrink(g: Graph, sep: Separation) -> Separation:
    """Move separator vertices into one side when they have no neighbours on the other."""
    A1, A2 = set(sep.A1), set(sep.A2)
    changed = True
    while changed:
        changed = False
        for x in sorted(A1 & A2):
            only1 = A1 - A2
            only2 = A2 - A1
            nb = set(bits(g.adjacency[x]))
            if not nb & only2 and 3 * (len(A2) - 1) >= g.order:
                A2.discard(x)
                changed = True
            elif not nb & only1 and 3 * (len(A1) - 1) >= g.order:
                A1.discard(x)
                changed = True
    out = Separation(frozenset(A1), frozenset(A2))
    return out if not out.problems(g) else sep


def balanced_separator(g: Graph, mode: str = "exact", cap: int = EXACT_SEPARATOR_CAP) -> Separation:
    """A separation ``(A1, A2)`` with ``|A1|, |A2| >= v(G)/3``.

    ``exact`` returns one of minimum order (graphs up to ``cap`` vertices, or
    forests of any size, for which order at most one always suffices).
    ``heuristic`` sweeps breadth-first prefixes from several roots and uses
    each prefix boundary as a candidate separator.
    """
    if mode == "exact":
        sep = _exact_separator(g, cap)
    elif mode == "heuristic":
        sep = _heuristic_separator(g)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    errs = sep.problems(g)
    if errs or not sep.is_balanced(g):
        raise InternalConsistencyError("; ".join(errs) or "separation is not balanced")
    return sep


# recursive decomposition


@dataclass(frozen=True)
class NodeCertificate:
    size: int
    excess: int
    bound: Fraction  # rational lower bound on epsilon*n - gamma*n^beta
    separator_order: int | None
    separator_ok: bool
    checked: bool  # whether the node is large enough for the excess bound to be claimed

    @property
    def ok(self) -> bool:
        return self.separator_ok and (not self.checked or self.excess <= self.bound)


@dataclass(frozen=True)
class Decomposition:
    bags: tuple  # frozensets of vertices
    C: Fraction
    excess: int
    certified: bool
    nodes: tuple = ()

    @property
    def nodes_ok(self) -> bool:
        """Every recorded node satisfies its separator contract and excess bound."""
        return all(nd.ok for nd in self.nodes)

    def to_dict(self) -> dict:
        return {
            "bags": [sorted(b) for b in self.bags],
            "C": f"{self.C.numerator}/{self.C.denominator}",
            "excess": self.excess,
            "certified": self.certified,
        }

    def problems(self, g: Graph, cap=None) -> list[str]:
        """Coverage, boundedness and excess accounting against the host ``g``."""
        errs = []
        union = frozenset().union(*self.bags)
        if union != frozenset(range(g.order)):
            errs.append("bags do not cover the vertex set")
        for u, v in g.sorted_edges():
            if not any(u in b and v in b for b in self.bags):
                errs.append(f"edge {(u, v)} lies in no bag")
                break
        if self.excess != sum(len(b) for b in self.bags) - g.order:
            errs.append("excess does not match the bag sizes")
        cap = self.C if cap is None else cap
        if any(len(b) > cap for b in self.bags):
            errs.append(f"a bag has more than {cap} vertices")
        return errs


def _iv(q: Fraction):
    return mpmath.iv.mpf(q.numerator) / q.denominator


class _ivprec:
    def __init__(self, prec):
        self.prec = prec

    def __enter__(self):
        self.saved = mpmath.iv.prec
        mpmath.iv.prec = self.prec

    def __exit__(self, *exc):
        mpmath.iv.prec = self.saved


def _mpf_to_fraction(v) -> Fraction:
    man, exp = mpmath.mpf(v).man_exp
    return Fraction(man) * (Fraction(2) ** exp)


def eppstein_constants(beta, c, epsilon, prec: int = 160) -> tuple:
    """Intervals for ``gamma = c / ((1/3)^beta + (2/3)^beta - 1)`` and ``C = 3 (gamma/epsilon)^(1/(1-beta))``.

    Returns ``(gamma_lo, gamma_hi, C_lo, C_hi)`` as rationals from outward-rounded
    interval arithmetic.
    """
    beta, c, epsilon = Fraction(beta), Fraction(c), Fraction(epsilon)
    if not (0 <= beta < 1) or c <= 0 or epsilon <= 0:
        raise ValueError("need 0 <= beta < 1, c > 0 and epsilon > 0")
    with _ivprec(prec):
        b = _iv(beta)
        third = mpmath.iv.mpf(1) / 3
        denom = third ** b + (2 * third) ** b - 1
        gamma = _iv(c) / denom
        C = 3 * (gamma / _iv(epsilon)) ** (1 / (1 - b))
        return (_mpf_to_fraction(gamma.a), _mpf_to_fraction(gamma.b),
                _mpf_to_fraction(C.a), _mpf_to_fraction(C.b))


def _pow_le(x: Fraction, c: Fraction, n: int, beta: Fraction) -> bool:
    """Exactly decide ``x <= c * n^beta`` for rational ``beta``."""
    if x <= 0:
        return True
    p, q = beta.numerator, beta.denominator
    return (x / c) ** q <= Fraction(n) ** p


def _excess_bound(n: int, beta: Fraction, gamma_hi: Fraction, epsilon: Fraction, prec: int = 160) -> Fraction:
    with _ivprec(prec):
        val = _iv(epsilon) * n - _iv(gamma_hi) * mpmath.iv.mpf(n) ** _iv(beta)
        return _mpf_to_fraction(val.a)


def eppstein_decompose(g: Graph, beta, c, epsilon, separator="exact") -> Decomposition:
    """Bags of size at most ``C`` with total excess at most ``epsilon * v(G)``.

    Recursively split on balanced separations until a piece has at most ``C``
    vertices (the rational upper bound on ``C`` is the bag cap). The separator
    contract ``order <= c n^beta`` is checked exactly at every split, and the
    excess bound ``epsilon n - gamma n^beta`` at every piece with at least
    ``C/3`` vertices. ``separator`` is ``"exact"``, ``"heuristic"`` or a
    callable returning a :class:`Separation`; only the exact search certifies.
    """
    beta, c, epsilon = Fraction(beta), Fraction(c), Fraction(epsilon)
    if not 0 < epsilon <= 1:
        raise ValueError("epsilon must lie in (0, 1]")
    _, gamma_hi, _, C_hi = eppstein_constants(beta, c, epsilon)
    if callable(separator):
        find = separator
    else:
        mode = separator

        def find(sub):
            if mode == "exact" and sub.order > EXACT_SEPARATOR_CAP and not _is_forest(sub):
                return balanced_separator(sub, mode="heuristic")
            return balanced_separator(sub, mode=mode)
    exact_only = [True]  # flips once a non-exact separator is consulted
    nodes: list[NodeCertificate] = []

    def rec(vertices: list[int]) -> list[frozenset]:
        n = len(vertices)
        checked = 3 * n >= C_hi
        bound = _excess_bound(n, beta, gamma_hi, epsilon)
        if n <= C_hi:
            nodes.append(NodeCertificate(n, 0, bound, None, True, checked))
            return [frozenset(vertices)]
        sub = g.induced(vertices)
        if separator != "exact" or (n > EXACT_SEPARATOR_CAP and not _is_forest(sub)):
            exact_only[0] = False
        sep = find(sub)
        errs = sep.problems(sub)
        if errs or not sep.is_balanced(sub):
            raise InternalConsistencyError("separator returned an invalid separation")
        ok = _pow_le(Fraction(sep.order), c, n, beta)
        bags = rec([vertices[i] for i in sorted(sep.A1)]) + rec([vertices[i] for i in sorted(sep.A2)])
        exc = sum(len(b) for b in bags) - n
        nodes.append(NodeCertificate(n, exc, bound, sep.order, ok, checked))
        return bags

    bags = rec(list(range(g.order))) if g.order else []
    excess = sum(len(b) for b in bags) - g.order
    nodes_ok = all(nd.ok for nd in nodes)
    return Decomposition(tuple(bags), C_hi, excess, nodes_ok and exact_only[0], tuple(nodes))


def hypercube_decompose(d: int) -> Decomposition:
    """Bags: components of ``Q_d`` along the first ``ceil(d/2)`` axes, and along the remaining ones.

    Every edge lies in a bag, every vertex is in exactly two bags, and bags
    have at most ``2^ceil(d/2)`` vertices.
    """
    if d < 1:
        raise ValueError("dimension must be at least 1")
    lo = (d + 1) // 2
    n = 1 << d
    bags = []
    # components along the low axes: fixed high bits
    for high in range(1 << (d - lo)):
        bags.append(frozenset((high << lo) | x for x in range(1 << lo)))
    for low in range(1 << lo):
        bags.append(frozenset((y << lo) | low for y in range(1 << (d - lo))))
    excess = sum(len(b) for b in bags) - n
    return Decomposition(tuple(bags), Fraction(1 << lo), excess, excess == n)


# padding small components


@dataclass(frozen=True)
class GroupResult:
    ell: int
    J: Graph
    host: Graph  # ell disjoint copies of J
    embedding: tuple  # vertex of h -> vertex of host
    C: int
    C_prime: Fraction
    classes: int


def _isomorphism(a: Graph, b: Graph) -> dict | None:
    gm = nx.algorithms.isomorphism.GraphMatcher(to_networkx(a), to_networkx(b))
    return next(gm.isomorphisms_iter(), None) if gm.is_isomorphic() else None


def group_components(h: Graph, epsilon) -> GroupResult:
    """Embed ``h`` as an induced subgraph of ``ell`` copies of one graph ``J`` with little padding.

    With ``C`` the largest component order and ``s`` the number of component
    isomorphism classes, ``C' = 3 s C / epsilon``. Small graphs are returned
    unchanged with ``ell = 1``; otherwise ``ell = ceil(2v/C')`` and ``J`` holds
    ``ceil(a_i/ell)`` copies of each class with ``a_i`` members. Then
    ``v(J) <= C'`` and ``ell v(J) <= (1 + epsilon) v(h)``.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if h.order == 0:
        raise ValueError("empty graph")
    comps = [sorted(bits(c)) for c in h.components()]
    C = max(len(c) for c in comps)
    graphs = [h.induced(c) for c in comps]
    reps: list[int] = []  # component index of each class representative
    cls_of = []
    maps = []  # isomorphism component -> representative (local labels)
    for i, cg in enumerate(graphs):
        for k, r in enumerate(reps):
            rg = graphs[r]
            if rg.order == cg.order and rg.num_edges == cg.num_edges and sorted(rg.degrees()) == sorted(cg.degrees()):
                iso = _isomorphism(cg, rg)
                if iso is not None:
                    cls_of.append(k)
                    maps.append(iso)
                    break
        else:
            reps.append(i)
            cls_of.append(len(reps) - 1)
            maps.append({x: x for x in range(cg.order)})
    s = len(reps)
    C_prime = Fraction(3 * s * C) / epsilon
    v = h.order
    if v <= C_prime:
        return GroupResult(1, h, h, tuple(range(v)), C, C_prime, s)
    ell = math.ceil(Fraction(2 * v) / C_prime)
    counts = [cls_of.count(k) for k in range(s)]
    mult = [math.ceil(Fraction(a, ell)) for a in counts]
    pieces = []
    for k in range(s):
        pieces += [graphs[reps[k]]] * mult[k]
    J = disjoint_union(pieces)
    host = disjoint_copies(J, ell)
    # offset of the j-th copy of class k inside J
    offsets = []
    off = 0
    for k in range(s):
        offsets.append([off + j * graphs[reps[k]].order for j in range(mult[k])])
        off += mult[k] * graphs[reps[k]].order
    used = [0] * s
    emb = [None] * v
    for i, comp in enumerate(comps):
        k = cls_of[i]
        slot = used[k]
        used[k] += 1
        copy, j = divmod(slot, mult[k])
        base = copy * J.order + offsets[k][j]
        for local, x in enumerate(comp):
            emb[x] = base + maps[i][local]
    res = GroupResult(ell, J, host, tuple(emb), C, C_prime, s)
    if J.order > C_prime or ell * J.order > (1 + epsilon) * v:
        raise InternalConsistencyError("padding bounds violated")
    _check_induced_embedding(h, host, res.embedding)
    return res


def _check_induced_embedding(h: Graph, host: Graph, emb: Sequence[int]):
    if len(set(emb)) != len(emb):
        raise InternalConsistencyError("embedding is not injective")
    for u, v in itertools.combinations(range(h.order), 2):
        if h.has_edge(u, v) != host.has_edge(emb[u], emb[v]):
            raise InternalConsistencyError("embedding is not induced")


# reduce / expand


@dataclass(frozen=True)
class ReduceResult:
    H_prime: Graph
    F: tuple  # added edges
    X: frozenset  # deleted vertices giving a subgraph of h
    J: Graph
    ell: int
    model: Model  # model of h in H_prime
    back: dict  # vertex of H_prime - X -> vertex of h


def reduce_expand(h: Graph, bags: Sequence[Sequence[int]], epsilon) -> ReduceResult:
    """Build ``H'`` from a bag decomposition of ``h``.

    Take the disjoint union ``H1`` of the induced bags, join the copies of
    each vertex by a path (the edge set ``F``, one edge per unit of excess),
    and pad ``H1`` into ``ell`` copies of a graph ``J``. Then ``h`` is a minor
    of ``H'``; ``H' - F`` is ``ell`` copies of ``J``; and deleting the copies
    of vertices in several bags plus the padding leaves a subgraph of ``h``.
    """
    bags = [sorted(set(b)) for b in bags]
    if set().union(*map(set, bags)) != set(range(h.order)):
        raise ValueError("bags must cover every vertex")
    for u, v in h.edges:
        if not any(u in b and v in b for b in bags):
            raise ValueError(f"edge {(u, v)} lies in no bag")
    pieces = [h.induced(b) for b in bags]
    H1 = disjoint_union(pieces)
    origin = []  # vertex of H1 -> vertex of h
    copies: dict[int, list[int]] = {}
    for b in bags:
        for x in b:
            copies.setdefault(x, []).append(len(origin))
            origin.append(x)
    grp = group_components(H1, Fraction(epsilon) / 3)
    emb = grp.embedding
    F = []
    for x in range(h.order):
        cs = copies[x]
        for a, b in zip(cs, cs[1:]):
            F.append((emb[a], emb[b]))
    host = grp.host
    Hp = Graph(host.order, host.edges | frozenset((min(a, b), max(a, b)) for a, b in F))
    if len(F) != sum(len(b) for b in bags) - h.order:
        raise InternalConsistencyError("|F| differs from the excess")
    if host.edges & frozenset((min(a, b), max(a, b)) for a, b in F):
        raise InternalConsistencyError("an F edge is already present in the padded graph")
    model = Model(tuple(frozenset(emb[c] for c in copies[x]) for x in range(h.order)))
    model.validate(h, Hp)
    image = set(emb)
    multi = {emb[c] for x in range(h.order) if len(copies[x]) > 1 for c in copies[x]}
    X = frozenset(multi | (set(range(Hp.order)) - image))
    back = {emb[i]: origin[i] for i in range(len(origin)) if emb[i] not in X}
    if len(set(back.values())) != len(back):
        raise InternalConsistencyError("H' - X does not map injectively into h")
    for a, b in Hp.edges:
        if a not in X and b not in X and not h.has_edge(back[a], back[b]):
            raise InternalConsistencyError("H' - X is not a subgraph of h")
    return ReduceResult(Hp, tuple(F), X, grp.J, grp.ell, model, back)


# bipartite expansion


@dataclass(frozen=True)
class BipartifyResult:
    H_prime: Graph
    W: tuple  # new vertices, grouped per original vertex
    ell: int
    model: Model


def degenerate_bipartify(h: Graph, d: int) -> BipartifyResult:
    """Bipartite ``H'`` with parts ``V(h)`` and ``W`` where every vertex of ``W`` has degree at most ``d``.

    Order the vertices so each has at most ``D`` (the degeneracy) earlier
    neighbours; give vertex ``v_i`` a set ``W_i`` of ``ell = ceil(D/(d-1))``
    new vertices, each adjacent to ``v_i`` and to at most ``d - 1`` of its
    earlier neighbours, together covering them. Contracting each ``W_i`` into
    ``v_i`` recovers ``h``.
    """
    if d < 2:
        raise ValueError("d must be at least 2")
    D, order = degeneracy_order(h)
    ell = -(-D // (d - 1)) if D else 0
    pos = {v: i for i, v in enumerate(order)}
    n = h.order
    edges = []
    W = []
    nxt = n
    for v in range(n):
        earlier = sorted(u for u in bits(h.adjacency[v]) if pos[u] < pos[v])
        group = []
        for j in range(ell):
            wv = nxt
            nxt += 1
            group.append(wv)
            edges.append((v, wv))
            for u in earlier[j * (d - 1):(j + 1) * (d - 1)]:
                edges.append((u, wv))
        if len(earlier) > ell * (d - 1):
            raise InternalConsistencyError("earlier neighbours not covered")
        W.append(tuple(group))
    Hp = Graph.from_edges(nxt, edges)
    model = Model(tuple(frozenset((v,) + W[v]) for v in range(n)))
    model.validate(h, Hp)
    for w in range(n, nxt):
        if Hp.degree(w) > d:
            raise InternalConsistencyError("a new vertex has degree above d")
        if Hp.adjacency[w] >> n:
            raise InternalConsistencyError("new vertices are adjacent")
    return BipartifyResult(Hp, tuple(W), ell, model)


# minor-minimal dense graphs


@dataclass(frozen=True)
class MaderResult:
    graph: Graph
    steps: tuple = field(default=(), repr=False)
    connectivity: int = 0
    min_triangles: int = 0


def _in_class(n: int, e: int, d: int, k: int) -> bool:
    return n >= d and e >= d * n - k * d


def _triangles(g: Graph, u: int, v: int) -> int:
    return popcount(g.adjacency[u] & g.adjacency[v])


def _connectivity(g: Graph):
    G = to_networkx(g)
    if g.order <= 1:
        return 0, set()
    if nx.is_connected(G) is False:
        return 0, set()
    if g.num_edges == g.order * (g.order - 1) // 2:
        return g.order - 1, set()
    cut = nx.minimum_node_cut(G)
    return len(cut), cut


def mader_refine(g: Graph, d: int, k: int) -> MaderResult:
    """Minor-minimal member of ``{G : v(G) >= d, e(G) >= d v(G) - k d}`` below ``g``.

    Greedily applies edge deletions, then contractions, then vertex deletions
    while the graph stays in the class; when no single operation applies but
    a separation of order below ``k`` exists, one of its sides stays in the
    class and replaces the graph. The result is ``k``-connected, has density
    between ``d - k`` and ``d``, and every edge lies in at least ``d`` triangles.
    """
    if not (d >= 2 * k >= 0) or d < 1:
        raise ValueError("need d >= 2k >= 0")
    if not _in_class(g.order, g.num_edges, d, k):
        raise ValueError("g is not in the class (needs v >= d and e >= d v - k d)")
    cur = g
    steps = []
    while True:
        n, e = cur.order, cur.num_edges
        moved = False
        for u, v in cur.sorted_edges():
            if _in_class(n, e - 1, d, k):
                cur = cur.delete_edge(u, v)
                steps.append(("delete_edge", (u, v)))
                moved = True
                break
        if not moved:
            for u, v in cur.sorted_edges():
                if _in_class(n - 1, e - 1 - _triangles(cur, u, v), d, k):
                    cur = cur.contract(u, v)
                    steps.append(("contract", (u, v)))
                    moved = True
                    break
        if not moved:
            for x in range(n):
                if _in_class(n - 1, e - cur.degree(x), d, k):
                    cur = cur.delete_vertex(x)
                    steps.append(("delete_vertex", x))
                    moved = True
                    break
        if moved:
            continue
        kappa, cut = _connectivity(cur)
        if kappa >= k:
            break
        # a separation of order < k: one side stays in the class
        rest = cur.full_mask & ~sum(1 << x for x in cut)
        comps = cur.components(rest)
        replaced = False
        for comp in comps:
            for side in (comp, rest & ~comp):
                verts = sorted(bits(side)) + sorted(cut)
                sub = cur.induced(sorted(verts))
                if sub.order < n and _in_class(sub.order, sub.num_edges, d, k):
                    cur = sub
                    steps.append(("restrict", tuple(sorted(verts))))
                    replaced = True
                    break
            if replaced:
                break
        if not replaced:
            raise InternalConsistencyError("no side of a small separation stays in the class")
    kappa, _ = _connectivity(cur)
    tri = min((_triangles(cur, u, v) for u, v in cur.edges), default=0)
    dens = Fraction(cur.num_edges, cur.order)
    if kappa < k or not (d - k <= dens <= d) or (cur.num_edges and tri < d):
        raise InternalConsistencyError(f"postconditions fail: kappa={kappa}, density={dens}, triangles={tri}")
    return MaderResult(cur, tuple(steps), kappa, tri)
