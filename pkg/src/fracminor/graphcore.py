"""Simple graphs, exact invariants, constructions and minor models.

Vertices are the integers ``0 .. order-1``. Edges are stored as sorted pairs
``(u, v)`` with ``u < v``. Adjacency is also kept as integer bitmasks, which
is what the exact searches below work on.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

DEFAULT_INVARIANT_CAP = 16
DEFAULT_MINOR_CAP = 14


class GraphFormatError(ValueError):
    """Raised when a graph text file is malformed."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class CapExceededError(ValueError):
    """An exact search was asked to run on an instance above its size cap."""


class InvalidModelError(ValueError):
    """A claimed minor model fails connectivity, disjointness or adjacency."""


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


@dataclass(frozen=True)
class Graph:
    order: int
    edges: frozenset = frozenset()
    _adj: tuple = field(default=(), init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be non-negative")
        clean = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.order and 0 <= v < self.order):
                raise ValueError(f"edge {e} out of range for order {self.order}")
            clean.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(clean))
        adj = [0] * self.order
        for u, v in clean:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        object.__setattr__(self, "_adj", tuple(adj))

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Sequence[int]]) -> "Graph":
        return cls(order, frozenset((int(u), int(v)) for u, v in edges))

    # basic accessors
    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def adjacency(self) -> tuple:
        """Neighbourhood bitmask of every vertex."""
        return self._adj

    @property
    def full_mask(self) -> int:
        return (1 << self.order) - 1

    def neighbors(self, v: int) -> list[int]:
        return list(bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return popcount(self._adj[v])

    def degrees(self) -> list[int]:
        return [popcount(a) for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u] >> v & 1)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def nbr_mask(self, mask: int) -> int:
        """Union of the neighbourhoods of the vertices in ``mask``."""
        out = 0
        for v in bits(mask):
            out |= self._adj[v]
        return out

    def is_connected_mask(self, mask: int) -> bool:
        if mask == 0:
            return False
        seen = mask & -mask
        frontier = seen
        while frontier:
            frontier = self.nbr_mask(frontier) & mask & ~seen
            seen |= frontier
        return seen == mask

    def components(self, mask: int | None = None) -> list[int]:
        """Connected components of ``G[mask]`` as bitmasks, ordered by least vertex."""
        if mask is None:
            mask = self.full_mask
        comps = []
        rest = mask
        while rest:
            seen = rest & -rest
            frontier = seen
            while frontier:
                frontier = self.nbr_mask(frontier) & rest & ~seen
                seen |= frontier
            comps.append(seen)
            rest &= ~seen
        return comps

    def is_connected(self) -> bool:
        return self.order <= 1 or len(self.components()) == 1

    def induced(self, vertices: Sequence[int]) -> "Graph":
        """Induced subgraph, relabelled so ``vertices[i]`` becomes ``i``."""
        index = {v: i for i, v in enumerate(vertices)}
        es = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(vertices), es)

    def delete_vertex(self, x: int) -> "Graph":
        return self.induced([v for v in range(self.order) if v != x])

    def delete_edge(self, u: int, v: int) -> "Graph":
        e = (min(u, v), max(u, v))
        return Graph(self.order, self.edges - {e})

    def contract(self, u: int, v: int) -> "Graph":
        """Contract edge ``uv``; the merged vertex keeps the smaller label."""
        if not self.has_edge(u, v):
            raise ValueError(f"{(u, v)} is not an edge")
        keep, gone = min(u, v), max(u, v)

        def relabel(x):
            x = keep if x == gone else x
            return x - 1 if x > gone else x

        es = set()
        for a, b in self.edges:
            a, b = relabel(a), relabel(b)
            if a != b:
                es.add((min(a, b), max(a, b)))
        return Graph(self.order - 1, frozenset(es))

    def __str__(self) -> str:
        return serialize_graph(self).strip().replace("\n", "; ")


# text format


def parse_graph(text: str) -> Graph:
    """Parse ``p <n> <m>`` followed by ``e <u> <v>`` lines (0-indexed).

    Blank lines and lines starting with ``c`` or ``#`` are ignored.
    """
    order = None
    declared = 0
    seen: dict[tuple[int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c#":
            continue
        parts = line.split()
        if parts[0] == "p":
            if order is not None:
                raise GraphFormatError(lineno, "duplicate header")
            if len(parts) != 3:
                raise GraphFormatError(lineno, "header must be 'p <n> <m>'")
            try:
                order, declared = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(lineno, "non-integer header field") from None
            if order < 0 or declared < 0:
                raise GraphFormatError(lineno, "negative header field")
        elif parts[0] == "e":
            if order is None:
                raise GraphFormatError(lineno, "edge before header")
            if len(parts) != 3:
                raise GraphFormatError(lineno, "edge must be 'e <u> <v>'")
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError(lineno, "non-integer endpoint") from None
            if not (0 <= u < order and 0 <= v < order):
                raise GraphFormatError(lineno, f"endpoint out of range [0, {order})")
            if u == v:
                raise GraphFormatError(lineno, f"loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(lineno, f"duplicate edge {key} (first on line {seen[key]})")
            seen[key] = lineno
        else:
            raise GraphFormatError(lineno, f"unknown record type {parts[0]!r}")
    if order is None:
        raise GraphFormatError(0, "missing header")
    if declared != len(seen):
        raise GraphFormatError(0, f"header declares {declared} edges, found {len(seen)}")
    return Graph(order, frozenset(seen))


def serialize_graph(g: Graph) -> str:
    lines = [f"p {g.order} {g.num_edges}"]
    lines += [f"e {u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


# invariants


def density(g: Graph) -> Fraction:
    if g.order == 0:
        raise ValueError("density of the null graph is undefined")
    return Fraction(g.num_edges, g.order)


def degeneracy_order(g: Graph) -> tuple[int, list[int]]:
    """Degeneracy and an ordering in which each vertex has at most that many earlier neighbours."""
    alive = g.full_mask
    removal = []
    degen = 0
    while alive:
        v = min(bits(alive), key=lambda x: (popcount(g.adjacency[x] & alive), x))
        degen = max(degen, popcount(g.adjacency[v] & alive))
        removal.append(v)
        alive &= ~(1 << v)
    return degen, removal[::-1]


def degeneracy(g: Graph) -> int:
    return degeneracy_order(g)[0]


def _greedy_clique_cover(g: Graph, mask: int) -> list[int]:
    """Partition ``mask`` into cliques greedily (highest degree first)."""
    cover = []
    rest = mask
    while rest:
        v = max(bits(rest), key=lambda x: (popcount(g.adjacency[x] & rest), -x))
        clique = 1 << v
        cand = g.adjacency[v] & rest
        while cand:
            u = max(bits(cand), key=lambda x: (popcount(g.adjacency[x] & cand), -x))
            clique |= 1 << u
            cand &= g.adjacency[u]
        cover.append(clique)
        rest &= ~clique
    return cover


def max_k_colorable(g: Graph, k: int, mask: int | None = None) -> int:
    """Largest number of vertices of ``G[mask]`` inducing a ``k``-colourable subgraph.

    Branch and bound: each vertex is either coloured (colours used in
    canonical order) or dropped; the bound partitions the undecided vertices
    into cliques, each of which can contribute at most ``k`` vertices.
    """
    if mask is None:
        mask = g.full_mask
    if k <= 0 or mask == 0:
        return 0
    adj = g.adjacency
    order = sorted(bits(mask), key=lambda x: (-popcount(adj[x] & mask), x))
    n = len(order)
    best = 0
    classes = [0] * k

    def bound(idx: int) -> int:
        rest = 0
        for v in order[idx:]:
            rest |= 1 << v
        return sum(min(popcount(c), k) for c in _greedy_clique_cover(g, rest))

    def rec(idx: int, used: int, size: int):
        nonlocal best
        if size > best:
            best = size
        if idx == n or best == n:
            return
        if size + (n - idx) <= best:
            return
        if n - idx > 2 and size + bound(idx) <= best:
            return
        v = order[idx]
        for c in range(min(used + 1, k)):
            if not classes[c] & adj[v]:
                classes[c] |= 1 << v
                rec(idx + 1, max(used, c + 1), size + 1)
                classes[c] &= ~(1 << v)
                if best == n:
                    return
        rec(idx + 1, used, size)

    rec(0, 0, 0)
    return best


def is_k_colorable(g: Graph, k: int, mask: int | None = None) -> bool:
    """DSATUR-style backtracking test for a proper ``k``-colouring of ``G[mask]``."""
    if mask is None:
        mask = g.full_mask
    if mask == 0:
        return True
    if k <= 0:
        return False
    adj = g.adjacency
    colour = {}
    verts = list(bits(mask))

    def pick():
        best, key = None, None
        for v in verts:
            if v in colour:
                continue
            sat = {colour[u] for u in bits(adj[v] & mask) if u in colour}
            kk = (len(sat), popcount(adj[v] & mask), -v)
            if key is None or kk > key:
                best, key = v, kk
        return best

    def rec(used: int) -> bool:
        v = pick()
        if v is None:
            return True
        forbidden = {colour[u] for u in bits(adj[v] & mask) if u in colour}
        for c in range(min(used + 1, k)):
            if c in forbidden:
                continue
            colour[v] = c
            if rec(max(used, c + 1)):
                return True
            del colour[v]
        return False

    return rec(0)


def chromatic_number(g: Graph, mask: int | None = None) -> int:
    if mask is None:
        mask = g.full_mask
    if mask == 0:
        return 0
    k = max(1, popcount(max(_greedy_clique_cover(g, mask), key=popcount)))
    while not is_k_colorable(g, k, mask):
        k += 1
    return k


@dataclass(frozen=True)
class Invariants:
    order: int
    alphas: tuple  # alphas[i-1] = largest i-colourable induced subgraph
    tau: int
    chi: int

    def alpha(self, i: int) -> int:
        if i <= 0:
            return 0
        if i > len(self.alphas):
            return self.order
        return self.alphas[i - 1]


def invariants(g: Graph, cap: int = DEFAULT_INVARIANT_CAP) -> Invariants:
    """The sequence ``alpha_1 <= ... <= alpha_chi = v``, vertex cover number and chromatic number."""
    if g.order > cap:
        raise CapExceededError(f"order {g.order} exceeds invariant cap {cap}")
    chi = chromatic_number(g)
    alphas = tuple(max_k_colorable(g, i) for i in range(1, chi)) + ((g.order,) if chi else ())
    tau = g.order - (alphas[0] if alphas else 0)
    return Invariants(g.order, alphas, tau, chi)


# minor models


@dataclass(frozen=True)
class Model:
    """Branch sets of a minor model of ``h`` in ``g``: ``branch[x]`` is a frozenset of host vertices."""

    branch: tuple

    def validate(self, h: Graph, g: Graph) -> None:
        if len(self.branch) != h.order:
            raise InvalidModelError(f"expected {h.order} branch sets, got {len(self.branch)}")
        masks = []
        used = 0
        for x, bset in enumerate(self.branch):
            m = 0
            for v in bset:
                if not 0 <= v < g.order:
                    raise InvalidModelError(f"branch set {x} uses non-vertex {v}")
                m |= 1 << v
            if not g.is_connected_mask(m):
                raise InvalidModelError(f"branch set {x} is empty or disconnected")
            if m & used:
                raise InvalidModelError(f"branch set {x} overlaps an earlier one")
            used |= m
            masks.append(m)
        for a, b in h.edges:
            if not g.nbr_mask(masks[a]) & masks[b]:
                raise InvalidModelError(f"no host edge between branch sets {a} and {b}")

    def is_valid(self, h: Graph, g: Graph) -> bool:
        try:
            self.validate(h, g)
        except InvalidModelError:
            return False
        return True


def multipartite_parts(g: Graph) -> list[list[int]] | None:
    """Parts of ``g`` if it is complete multipartite (non-adjacency an equivalence), else None."""
    n = g.order
    if n == 0:
        return []
    full = g.full_mask
    parts = []
    assigned = 0
    for v in range(n):
        if assigned >> v & 1:
            continue
        part = full & ~g.adjacency[v]
        for u in bits(part):
            if (full & ~g.adjacency[u]) != part:
                return None
        parts.append(list(bits(part)))
        assigned |= part
    return parts


def _minor_in_multipartite(h: Graph, parts: list[list[int]]) -> Model | None:
    """Minor search when the host is complete multipartite.

    A minimal model there uses only single vertices and pairs of vertices
    from distinct parts; two branch sets fail to touch only when both are
    single vertices of the same part. So it suffices to give each vertex of
    ``h`` one part or two parts, respecting part sizes, with adjacent vertices
    never sharing a single part.
    """
    hn = h.order
    if hn == 0:
        return Model(())
    sizes = [len(p) for p in parts]
    # parts with equal capacity are interchangeable; at most hn vertices of a part are ever used
    cap = [min(s, hn) for s in sizes]
    idx = sorted(range(len(parts)), key=lambda i: -cap[i])[: 2 * hn]
    cap = [cap[i] for i in idx]
    p = len(idx)
    order = sorted(range(hn), key=lambda x: (-h.degree(x), x))
    single = [0] * p  # h-vertices sitting alone in part i
    load = [0] * p
    choice: dict[int, tuple] = {}
    hadj = h.adjacency

    def options(x):
        for i in range(p):
            yield (i,)
        for i, j in itertools.combinations(range(p), 2):
            yield (i, j)

    def rec(t: int) -> bool:
        if t == hn:
            return True
        x = order[t]
        tried_fresh = set()
        for opt in options(x):
            if any(load[i] >= cap[i] for i in opt):
                continue
            if len(opt) == 1 and single[opt[0]] & hadj[x]:
                continue
            # untouched parts of equal capacity are symmetric
            sig = tuple((cap[i], load[i] == 0 and single[i] == 0) for i in opt)
            fresh = all(load[i] == 0 for i in opt)
            if fresh:
                if (len(opt), sig) in tried_fresh:
                    continue
                tried_fresh.add((len(opt), sig))
            for i in opt:
                load[i] += 1
            if len(opt) == 1:
                single[opt[0]] |= 1 << x
            choice[x] = opt
            if rec(t + 1):
                return True
            del choice[x]
            if len(opt) == 1:
                single[opt[0]] &= ~(1 << x)
            for i in opt:
                load[i] -= 1
        return False

    if not rec(0):
        return None
    nxt = [0] * p
    branch = []
    for x in range(hn):
        bset = set()
        for i in choice[x]:
            bset.add(parts[idx[i]][nxt[i]])
            nxt[i] += 1
        branch.append(frozenset(bset))
    return Model(tuple(branch))


def _noncut_count(g: Graph, mask: int) -> int:
    if popcount(mask) <= 1:
        return popcount(mask)
    return sum(1 for v in bits(mask) if g.is_connected_mask(mask & ~(1 << v)))


def connected_subsets(g: Graph, mask: int | None = None) -> list[int]:
    """All non-empty connected vertex sets inside ``mask``, by increasing size."""
    if mask is None:
        mask = g.full_mask
    out = []
    verts = list(bits(mask))
    # grow from each root, only adding vertices larger than the root
    for r in verts:
        allowed = mask & ~((1 << r) - 1)
        found = set()
        stack = [1 << r]
        while stack:
            s = stack.pop()
            if s in found:
                continue
            found.add(s)
            ext = g.nbr_mask(s) & allowed & ~s
            for v in bits(ext):
                t = s | (1 << v)
                if t not in found:
                    stack.append(t)
        out.extend(found)
    out.sort(key=lambda s: (popcount(s), s))
    return out


def is_minor(h: Graph, g: Graph, cap: int = DEFAULT_MINOR_CAP) -> Model | None:
    """Return a minor model of ``h`` in ``g`` or None if ``h`` is not a minor of ``g``.

    Complete multipartite hosts are handled by a dedicated exact search of
    any size. Other hosts use branch and bound over connected branch sets,
    restricted to sets that are minimal for the adjacencies they must supply
    (at most ``deg_h(x)`` non-cut vertices), with host order at most ``cap``.
    """
    if h.order == 0:
        return Model(())
    if h.order > g.order or h.num_edges > g.num_edges:
        return None
    parts = multipartite_parts(g)
    if parts is not None:
        return _minor_in_multipartite(h, parts)
    if g.order > cap:
        raise CapExceededError(f"host order {g.order} exceeds minor cap {cap}")

    hadj = h.adjacency
    # place high degree first, then vertices with many placed neighbours
    order: list[int] = []
    placed = 0
    while len(order) < h.order:
        x = max((y for y in range(h.order) if not placed >> y & 1),
                key=lambda y: (popcount(hadj[y] & placed), h.degree(y), -y))
        order.append(x)
        placed |= 1 << x
    conn = connected_subsets(g)
    info = [(s, g.nbr_mask(s), popcount(s), _noncut_count(g, s)) for s in conn]
    hdeg = [h.degree(x) for x in range(h.order)]
    branch = [0] * h.order
    done = 0

    def rec(t: int, used: int) -> bool:
        nonlocal done
        if t == h.order:
            return True
        x = order[t]
        need = [branch[y] for y in bits(hadj[x] & done)]
        avail = g.full_mask & ~used
        room = popcount(avail) - (h.order - t - 1)
        later = [y for y in order[t + 1:]]
        for s, nb, size, noncut in info:
            if size > room:
                break
            if s & used:
                continue
            if size > 1 and noncut > max(1, hdeg[x]):
                continue
            if any(not nb & b for b in need):
                continue
            branch[x] = s
            done |= 1 << x
            rest = avail & ~s
            ok = True
            for y in later:
                for z in bits(hadj[y] & done):
                    if not g.nbr_mask(branch[z]) & rest:
                        ok = False
                        break
                if not ok:
                    break
            if ok and rec(t + 1, used | s):
                return True
            done &= ~(1 << x)
            branch[x] = 0
        return False

    if not rec(0, 0):
        return None
    return Model(tuple(frozenset(bits(branch[x])) for x in range(h.order)))


# constructions


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def empty_graph(n: int) -> Graph:
    return Graph(n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def grid_graph(rows: int, cols: int) -> Graph:
    es = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                es.append((v, v + 1))
            if r + 1 < rows:
                es.append((v, v + cols))
    return Graph.from_edges(rows * cols, es)


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    if any(s < 0 for s in sizes):
        raise ValueError("part sizes must be non-negative")
    part = []
    for i, s in enumerate(sizes):
        part += [i] * s
    n = len(part)
    return Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if part[u] != part[v]])


def complete_bipartite(s: int, t: int) -> Graph:
    return complete_multipartite([s, t])


def disjoint_copies(h: Graph, k: int) -> Graph:
    """``k`` disjoint copies; vertex ``x`` of copy ``j`` is ``j * v(h) + x``."""
    n = h.order
    return Graph.from_edges(n * k, [(j * n + u, j * n + v) for j in range(k) for u, v in h.edges])


def disjoint_union(graphs: Sequence[Graph]) -> Graph:
    es = []
    off = 0
    for g in graphs:
        es += [(off + u, off + v) for u, v in g.edges]
        off += g.order
    return Graph.from_edges(off, es)


def blowup(g: Graph, k: int) -> Graph:
    """Replace each vertex by ``k`` independent copies; copy ``c`` of ``v`` is ``v * k + c``."""
    return blowup_w(g, [k] * g.order)


def blowup_w(g: Graph, w: Sequence[int]) -> Graph:
    """Weighted blowup: vertex ``v`` becomes ``w[v]`` independent copies, numbered consecutively."""
    if len(w) != g.order:
        raise ValueError("weight list length must equal the order")
    if any(int(x) != x or x < 0 for x in w):
        raise ValueError("blowup weights must be non-negative integers")
    start = [0]
    for x in w:
        start.append(start[-1] + int(x))
    es = []
    for u, v in g.edges:
        for a in range(start[u], start[u + 1]):
            for b in range(start[v], start[v + 1]):
                es.append((a, b))
    return Graph.from_edges(start[-1], es)


def blowup_offsets(w: Sequence[int]) -> list[int]:
    start = [0]
    for x in w:
        start.append(start[-1] + int(x))
    return start


def hypercube(d: int) -> Graph:
    """``Q_d``: vertices are ``d``-bit integers, adjacent when they differ in one bit."""
    if d < 0:
        raise ValueError("dimension must be non-negative")
    n = 1 << d
    return Graph.from_edges(n, [(x, x ^ (1 << i)) for x in range(n) for i in range(d) if x < x ^ (1 << i)])


def ht_graph(t: int) -> Graph:
    """``K_{2t}`` with the edges of a ``t``-clique removed.

    Vertices ``0..t-1`` form a clique, ``t..2t-1`` are independent, and all
    edges between the two halves are present.
    """
    if t < 1:
        raise ValueError("t must be positive")
    es = [(u, v) for u, v in itertools.combinations(range(2 * t), 2) if not (u >= t and v >= t)]
    return Graph.from_edges(2 * t, es)


def complement(g: Graph) -> Graph:
    return Graph.from_edges(g.order, [e for e in itertools.combinations(range(g.order), 2) if e not in g.edges])


def to_networkx(g: Graph):
    import networkx as nx

    G = nx.Graph()
    G.add_nodes_from(range(g.order))
    G.add_edges_from(g.edges)
    return G


def relabel(g: Graph, perm: Mapping[int, int] | Sequence[int]) -> Graph:
    """Image of ``g`` under the vertex bijection ``v -> perm[v]``."""
    return Graph.from_edges(g.order, [(perm[u], perm[v]) for u, v in g.edges])


# small graph enumeration


def _refined_colours(g: Graph) -> list[int]:
    col = [g.degree(v) for v in range(g.order)]
    while True:
        sig = [(col[v], tuple(sorted(col[u] for u in bits(g.adjacency[v])))) for v in range(g.order)]
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranks[s] for s in sig]
        if len(set(new)) == len(set(col)):
            return new
        col = new


def canonical_form(g: Graph) -> tuple:
    """Isomorphism-invariant key: the least sorted edge list over refinement-respecting labellings."""
    col = _refined_colours(g)
    classes = [[v for v in range(g.order) if col[v] == c] for c in sorted(set(col))]
    best = None
    for perms in itertools.product(*(itertools.permutations(cl) for cl in classes)):
        pos = {}
        k = 0
        for p in perms:
            for v in p:
                pos[v] = k
                k += 1
        key = tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in g.edges))
        if best is None or key < best:
            best = key
    return (g.order, tuple(sorted(col)), best)


def enumerate_graphs(max_vertices: int, chi_cap: int | None = None, min_vertices: int = 1) -> list[Graph]:
    """One graph per isomorphism class with ``min_vertices..max_vertices`` vertices.

    Built by adding a vertex with every possible neighbourhood to each class
    on one fewer vertex. Optionally keeps only graphs with ``chi <= chi_cap``.
    """
    if max_vertices > 7:
        raise CapExceededError("graph enumeration is limited to 7 vertices")
    out = []
    layer = {canonical_form(Graph(1)): Graph(1)} if max_vertices >= 1 else {}
    for n in range(1, max_vertices + 1):
        if n > 1:
            nxt = {}
            for g in layer.values():
                for nb in range(1 << (n - 1)):
                    h = Graph(n, g.edges | frozenset((u, n - 1) for u in bits(nb)))
                    key = canonical_form(h)
                    if key not in nxt:
                        nxt[key] = h
            layer = nxt
        if n >= min_vertices:
            for key in sorted(layer, key=lambda k: (k[0], len(k[2]), k[2])):
                g = layer[key]
                if chi_cap is None or chromatic_number(g) <= chi_cap:
                    out.append(g)
    return out
