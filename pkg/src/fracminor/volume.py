"""Jumbled models and H-volume.

A jumbled model of ``H`` in a host assigns every vertex of ``H`` a connected
branch set; branch sets may overlap, but adjacent vertices of ``H`` need a
host edge between their sets. Its load vector counts, for each host vertex,
how many branch sets contain it. The H-volume of a weighting ``w`` of the
host is the largest total weight of a fractional packing of load vectors
that stays below ``w``.

Two hosts are supported:

* integer weight vectors on the positive integers (the host is a complete
  graph on the support, so branch sets are one index or two indices), handled
  through :class:`ModelSet` and :func:`vol_vector`;
* arbitrary graphs with vertex capacities, handled by column generation with
  an exact pricing search in :func:`vol_weighted`.

Every value comes with a dual certificate ``a >= 0`` with ``a . mu >= 1`` for
every load vector ``mu`` and ``a . w`` equal to the volume.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from . import ratlp
from .graphcore import Graph, Model, bits, blowup, connected_subsets, disjoint_copies, popcount

DEFAULT_BUDGET = 10**6


class BudgetExceededError(RuntimeError):
    pass


class CertificateError(AssertionError):
    """A dual certificate failed independent verification."""


class WeightFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


# weight vectors


class WeightVector:
    """Finitely supported non-negative rational vector on the non-negative integers."""

    __slots__ = ("_w",)

    def __init__(self, entries: Mapping[int, object] | None = None):
        w = {}
        for i, x in (entries or {}).items():
            if isinstance(x, float):
                raise TypeError("floats are not accepted; use Fraction or int")
            x = Fraction(x)
            if int(i) != i or i < 0:
                raise ValueError(f"index {i} is not a non-negative integer")
            if x < 0:
                raise ValueError(f"negative weight at index {i}")
            if x:
                w[int(i)] = x
        self._w = w

    @classmethod
    def from_list(cls, values: Sequence, start: int = 1) -> "WeightVector":
        return cls({start + k: x for k, x in enumerate(values)})

    @classmethod
    def indicator(cls, indices: Iterable[int], scale=1) -> "WeightVector":
        return cls({i: scale for i in indices})

    def __getitem__(self, i: int) -> Fraction:
        return self._w.get(i, Fraction(0))

    def items(self):
        return sorted(self._w.items())

    @property
    def support(self) -> list[int]:
        return sorted(self._w)

    def total(self) -> Fraction:
        """``|w|``."""
        return sum(self._w.values(), Fraction(0))

    def inner(self, other: "WeightVector") -> Fraction:
        """``<w, w'> = sum over i != j of w_i w'_j``."""
        return self.total() * other.total() - sum((x * other[i] for i, x in self._w.items()), Fraction(0))

    def norm(self) -> Fraction:
        """``||w|| = <w, w>``."""
        return self.inner(self)

    def density(self) -> Fraction:
        """``d(w) = ||w|| / (2|w|)``; the weighted analogue of edges per vertex."""
        t = self.total()
        if t == 0:
            raise ValueError("density of the zero vector is undefined")
        return self.norm() / (2 * t)

    def __add__(self, other: "WeightVector") -> "WeightVector":
        keys = set(self._w) | set(other._w)
        return WeightVector({i: self[i] + other[i] for i in keys})

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        keys = set(self._w) | set(other._w)
        return WeightVector({i: self[i] - other[i] for i in keys})

    def scale(self, q) -> "WeightVector":
        q = Fraction(q)
        return WeightVector({i: q * x for i, x in self._w.items()})

    def __le__(self, other: "WeightVector") -> bool:
        return all(x <= other[i] for i, x in self._w.items())

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return self._w == other._w

    def __hash__(self):
        return hash(frozenset(self._w.items()))

    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self._w.values())

    def sorted_support(self) -> list[int]:
        """Support ordered by non-increasing weight, ties by index."""
        return sorted(self._w, key=lambda i: (-self._w[i], i))

    def to_list(self, indices: Sequence[int]) -> list[Fraction]:
        return [self[i] for i in indices]

    def to_text(self) -> str:
        return "".join(f"i {i} {x.numerator}/{x.denominator}\n" for i, x in self.items())

    def __repr__(self):
        inner = ", ".join(f"{i}: {x}" for i, x in self.items())
        return f"WeightVector({{{inner}}})"


def parse_weights(text: str) -> WeightVector:
    """Parse lines ``i <index> <num>/<den>`` (``<num>`` alone is also accepted)."""
    w = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line[0] in "c#":
            continue
        parts = line.split()
        if parts[0] != "i" or len(parts) != 3:
            raise WeightFormatError(lineno, "expected 'i <index> <num>/<den>'")
        try:
            idx = int(parts[1])
            num, _, den = parts[2].partition("/")
            val = Fraction(int(num), int(den) if den else 1)
        except (ValueError, ZeroDivisionError):
            raise WeightFormatError(lineno, "malformed index or rational") from None
        if idx < 0:
            raise WeightFormatError(lineno, "negative index")
        if val < 0:
            raise WeightFormatError(lineno, "negative weight")
        if idx in w:
            raise WeightFormatError(lineno, f"duplicate index {idx}")
        w[idx] = val
    return WeightVector(w)


# jumbled models with integer support


@dataclass(frozen=True)
class ModelSet:
    """Minimal load vectors of jumbled models of ``h`` supported on ``1..n``.

    ``generators`` holds every minimal vector (closed under permutations of
    the indices); ``witness[g]`` is one jumbled model realising ``g``, given
    as a tuple of index sets, one per vertex of ``h``.
    """

    h: Graph
    n: int
    generators: tuple
    witness: Mapping = field(compare=False, repr=False)
    canonical: tuple = ()


def _dominated_free(vectors: Iterable[tuple]) -> list[tuple]:
    vs = sorted(set(vectors), key=lambda v: (sum(v), v))
    keep = []
    for v in vs:
        if not any(all(a <= b for a, b in zip(u, v)) for u in keep):
            keep.append(v)
    return keep


@lru_cache(maxsize=256)
def enumerate_nmodels(h: Graph, n: int, budget: int = DEFAULT_BUDGET) -> ModelSet:
    """All minimal load vectors of jumbled models of ``h`` with branch sets inside ``1..n``.

    A vertex goes to a single index or a pair of indices; two adjacent
    vertices may not share a single index. States are kept up to permutation
    of the indices, so the search works on sorted ``(load, singles)`` tuples.
    """
    if h.order == 0:
        raise ValueError("h must have at least one vertex")
    if n < 1:
        raise ValueError("support size must be positive")
    hadj = h.adjacency
    start = tuple((0, 0) for _ in range(n))
    # state -> witness: tuple of position tuples for the vertices placed so far
    layer = {start: ()}
    seen = 0
    for x in range(h.order):
        nxt = {}
        for state, wit in layer.items():
            opts = [(i,) for i in range(n) if not state[i][1] & hadj[x]]
            opts += list(itertools.combinations(range(n), 2))
            for opt in opts:
                ent = list(state)
                for i in opt:
                    c, m = ent[i]
                    ent[i] = (c + 1, m | (1 << x) if len(opt) == 1 else m)
                perm = sorted(range(n), key=lambda k: ent[k], reverse=True)
                new = tuple(ent[k] for k in perm)
                if new in nxt:
                    continue
                seen += 1
                if seen > budget:
                    raise BudgetExceededError(f"more than {budget} model states")
                pos = {old: k for k, old in enumerate(perm)}
                nxt[new] = tuple(tuple(pos[p] for p in o) for o in wit) + (tuple(pos[p] for p in opt),)
        layer = nxt

    finals = {}
    for state, wit in layer.items():
        counts = [c for c, _ in state]
        perm = sorted(range(n), key=lambda k: -counts[k])
        vec = tuple(counts[k] for k in perm)
        if vec not in finals:
            pos = {old: k for k, old in enumerate(perm)}
            finals[vec] = tuple(tuple(pos[p] for p in o) for o in wit)
    # sorted vectors: v is dominated by a permutation of u iff sorted(u) <= sorted(v)
    canonical = _dominated_free(finals)
    gens = {}
    for c in canonical:
        for sigma in set(itertools.permutations(range(n))):
            g = [0] * n
            for k in range(n):
                g[sigma[k]] = c[k]
            g = tuple(g)
            if g not in gens:
                gens[g] = tuple(frozenset(sigma[p] + 1 for p in o) for o in finals[c])
    generators = tuple(sorted(gens, reverse=True))
    return ModelSet(h, n, generators, gens, tuple(sorted(canonical, reverse=True)))


def load_vector(branch: Sequence[Iterable[int]], n: int) -> tuple:
    """Load vector on indices ``1..n`` of a jumbled model given by index sets."""
    out = [0] * n
    for b in branch:
        for i in b:
            out[i - 1] += 1
    return tuple(out)


def check_nmodel(h: Graph, branch: Sequence[frozenset]) -> bool:
    """Whether index sets form a jumbled model of ``h`` with integer support."""
    if len(branch) != h.order:
        return False
    for b in branch:
        if not 1 <= len(b) <= 2:
            return False
    for u, v in h.edges:
        if len(branch[u]) == 1 and branch[u] == branch[v]:
            return False
    return True


# certificates and results


@dataclass(frozen=True)
class DualCertificate:
    """``a >= 0`` with ``a . g >= 1`` for every load vector ``g`` and ``a . w = value``."""

    a: WeightVector
    value: Fraction

    def check(self, w: WeightVector, generators: Iterable[tuple], index: Sequence[int]) -> list[str]:
        """Verify against explicit load vectors whose coordinates follow ``index``."""
        errs = []
        for g in generators:
            s = sum((self.a[i] * x for i, x in zip(index, g)), Fraction(0))
            if s < 1:
                errs.append(f"load vector {g} has a . g = {s} < 1")
                break
        aw = sum((self.a[i] * w[i] for i in self.a.support), Fraction(0))
        if aw != self.value:
            errs.append(f"a . w = {aw} differs from value {self.value}")
        return errs


@dataclass(frozen=True)
class VolumeResult:
    value: Fraction
    packing: tuple  # (coefficient, load vector as WeightVector, branch sets)
    certificate: DualCertificate
    order: tuple = ()  # support order used for the LP (non-increasing weight)


def _packing_lp(columns: Sequence[tuple], caps: Sequence[Fraction]) -> ratlp.LinearProgram:
    m = len(caps)
    rows = [[col[i] for col in columns] for i in range(m)]
    return ratlp.LinearProgram.build([1] * len(columns), rows, [ratlp.LE] * m, caps)


def vol_vector(h: Graph, w: WeightVector, budget: int = DEFAULT_BUDGET) -> VolumeResult:
    """H-volume of a rational weight vector, with a verified dual certificate."""
    if h.order == 0:
        raise ValueError("h must have at least one vertex")
    order = w.sorted_support()
    n = len(order)
    if n == 0:
        return VolumeResult(Fraction(0), (), DualCertificate(WeightVector(), Fraction(0)), ())
    ms = enumerate_nmodels(h, n, budget)
    caps = w.to_list(order)
    lp = _packing_lp(ms.generators, caps)
    res = ratlp.solve(lp)
    if not res.optimal:
        raise RuntimeError(f"packing LP returned {res.status}")
    errs = ratlp.check_duality(lp, res)
    cert = DualCertificate(WeightVector({order[k]: res.y[k] for k in range(n)}), res.value)
    errs += cert.check(w, ms.generators, order)
    if errs:
        raise CertificateError("; ".join(errs))
    packing = []
    for coef, g in zip(res.x, ms.generators):
        if coef:
            branch = tuple(frozenset(order[i - 1] for i in b) for b in ms.witness[g])
            packing.append((coef, WeightVector({order[k]: g[k] for k in range(n)}), branch))
    return VolumeResult(res.value, tuple(packing), cert, tuple(order))


# graph hosts


def _false_twin_classes(h: Graph) -> list[list[int]]:
    groups: dict[int, list[int]] = {}
    for x in range(h.order):
        groups.setdefault(h.adjacency[x], []).append(x)
    return sorted(groups.values())


class _Pricer:
    """Exact search for a jumbled model of minimum weighted load.

    Two reductions keep it small. Vertices of ``h`` with the same
    neighbourhood can share one branch set (give them all the cheapest one),
    so the search runs on classes with multiplicities. And since weights are
    non-negative, each branch set can be shrunk until every non-cut vertex is
    the only contact towards some neighbouring class; so a set for a class with
    ``q`` neighbouring classes has at most ``q`` non-cut vertices.
    """

    def __init__(self, h: Graph, g: Graph, allowed: int):
        self.h, self.g = h, g
        classes = _false_twin_classes(h)
        self.classes = classes
        rep = {x: ci for ci, cl in enumerate(classes) for x in cl}
        k = len(classes)
        self.mult = [len(cl) for cl in classes]
        self.qadj = [0] * k
        for a, b in h.edges:
            self.qadj[rep[a]] |= 1 << rep[b]
            self.qadj[rep[b]] |= 1 << rep[a]
        sets = connected_subsets(g, allowed)
        self.sets = []
        for s in sets:
            size = popcount(s)
            noncut = size if size <= 1 else sum(1 for v in bits(s) if g.is_connected_mask(s & ~(1 << v)))
            self.sets.append((s, g.nbr_mask(s), size, noncut))
        self.cands = []
        for c in range(k):
            q = popcount(self.qadj[c])
            self.cands.append([t for t in self.sets if t[2] == 1 or t[3] <= q])
        # place classes with many neighbours first, keeping the placed part connected when possible
        order, placed = [], 0
        while len(order) < k:
            c = max((c for c in range(k) if not placed >> c & 1),
                    key=lambda c: (popcount(self.qadj[c] & placed), popcount(self.qadj[c]), self.mult[c], -c))
            order.append(c)
            placed |= 1 << c
        self.order = order

    def cheapest(self, y: Sequence[Fraction], bound: Fraction = Fraction(1)):
        """Minimum-load model with weighted load strictly below ``bound``, or None."""
        k = len(self.classes)
        cost_of = {}
        cands = []
        for c in range(k):
            lst = []
            for s, nb, size, _ in self.cands[c]:
                if s not in cost_of:
                    cost_of[s] = sum((y[v] for v in bits(s)), Fraction(0))
                lst.append((cost_of[s] * self.mult[c], s, nb))
            lst.sort(key=lambda t: (t[0], popcount(t[1]), t[1]))
            cands.append(lst)
        lb = [cands[c][0][0] if cands[c] else None for c in range(k)]
        if any(x is None for x in lb):
            return None
        rest_lb = [Fraction(0)] * (k + 1)
        for t in range(k - 1, -1, -1):
            rest_lb[t] = rest_lb[t + 1] + lb[self.order[t]]
        best = [bound, None]
        chosen = [None] * k  # (mask, nbr)
        order = self.order
        qadj = self.qadj

        def rec(t: int, cost: Fraction):
            if t == k:
                if cost < best[0]:
                    best[0] = cost
                    best[1] = [ch[0] for ch in chosen]
                return
            c = order[t]
            need = [chosen[d] for d in bits(qadj[c]) if chosen[d] is not None]
            for cc, s, nb in cands[c]:
                if cost + cc + rest_lb[t + 1] >= best[0]:
                    break
                if all(s & nb2 for _, nb2 in need):
                    chosen[c] = (s, nb)
                    rec(t + 1, cost + cc)
                    chosen[c] = None

        rec(0, Fraction(0))
        if best[1] is None:
            return None
        per_class = best[1]
        branch = [0] * self.h.order
        for ci, cl in enumerate(self.classes):
            for x in cl:
                branch[x] = per_class[ci]
        return best[0], branch


def check_jumbled_model(h: Graph, g: Graph, branch: Sequence[int]) -> bool:
    """Whether bitmask branch sets form a jumbled model of ``h`` in ``g``."""
    if len(branch) != h.order:
        return False
    if not all(g.is_connected_mask(b) for b in branch):
        return False
    return all(g.nbr_mask(branch[a]) & branch[b] for a, b in h.edges)


def vol_weighted(h: Graph, g: Graph, w: Sequence, max_rounds: int = 100_000) -> VolumeResult:
    """H-volume of ``g`` with vertex capacities ``w`` (all 1 gives the unweighted volume).

    Solved by column generation: a restricted packing LP over known load
    vectors, and an exact pricing search that either finds a model whose load
    has dual weight below 1 or proves there is none. At termination the LP
    duals are a certificate over all jumbled models.
    """
    if h.order == 0:
        raise ValueError("h must have at least one vertex")
    w = [_exact(x) for x in w]
    if len(w) != g.order:
        raise ValueError("one capacity per host vertex is required")
    if any(x < 0 for x in w):
        raise ValueError("capacities must be non-negative")
    verts = [v for v in range(g.order) if w[v] > 0]
    allowed = 0
    for v in verts:
        allowed |= 1 << v
    pricer = _Pricer(h, g, allowed)
    cols: list[tuple] = []
    models: list[list[int]] = []
    caps = [w[v] for v in verts]
    y_full = [Fraction(0)] * g.order
    res = None
    for _ in range(max_rounds):
        lp = _packing_lp(cols, caps)
        res = ratlp.solve(lp)
        if not res.optimal:
            raise RuntimeError(f"packing LP returned {res.status}")
        for k, v in enumerate(verts):
            y_full[v] = res.y[k]
        found = pricer.cheapest(y_full)
        if found is None:
            break
        _, branch = found
        load = [0] * g.order
        for b in branch:
            for v in bits(b):
                load[v] += 1
        col = tuple(load[v] for v in verts)
        if col in cols:
            raise RuntimeError("pricing returned a column already in the LP")
        cols.append(col)
        models.append(branch)
    else:
        raise RuntimeError("column generation did not converge")
    errs = ratlp.check_duality(lp, res)
    if errs:
        raise CertificateError("; ".join(errs))
    cert = DualCertificate(WeightVector({v: y_full[v] for v in verts}), res.value)
    packing = []
    for coef, col, branch in zip(res.x, cols, models):
        if coef:
            packing.append((coef, WeightVector(dict(zip(verts, col))),
                            tuple(frozenset(bits(b)) for b in branch)))
    return VolumeResult(res.value, tuple(packing), cert, tuple(verts))


def _exact(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use Fraction or int")
    return Fraction(x)


def vol_graph(h: Graph, g: Graph) -> VolumeResult:
    """Unweighted H-volume of a graph."""
    return vol_weighted(h, g, [1] * g.order)


def verify_graph_certificate(h: Graph, g: Graph, w: Sequence, res: VolumeResult) -> list[str]:
    """Re-check a graph volume certificate with a fresh exhaustive pricing run."""
    errs = []
    a = res.certificate.a
    if any(a[v] < 0 for v in a.support):
        errs.append("negative certificate entry")
    allowed = 0
    for v in range(g.order):
        if Fraction(w[v]) > 0:
            allowed |= 1 << v
    y = [a[v] for v in range(g.order)]
    if _Pricer(h, g, allowed).cheapest(y) is not None:
        errs.append("some jumbled model has dual load below 1")
    aw = sum((y[v] * Fraction(w[v]) for v in range(g.order)), Fraction(0))
    if aw != res.value:
        errs.append(f"a . w = {aw} but value is {res.value}")
    total = Fraction(0)
    for coef, load, branch in res.packing:
        total += coef
        masks = [sum(1 << v for v in b) for b in branch]
        if not check_jumbled_model(h, g, masks):
            errs.append("packing uses an invalid jumbled model")
    if total != res.value:
        errs.append("packing total differs from value")
    return errs


def bipartite_vol_bound(s: int, t: int, g: Graph) -> Fraction:
    """Closed-form lower bound ``min(v(G)/(s+t), delta(G)/t)`` on the ``K_{s,t}``-volume."""
    if not (s >= t >= 1):
        raise ValueError("need s >= t >= 1")
    if g.order == 0:
        raise ValueError("empty host")
    return min(Fraction(g.order, s + t), Fraction(g.min_degree(), t))


@dataclass(frozen=True)
class PackResult:
    model: Model
    host: Graph
    pattern: Graph
    achievable: int


def blowup_pack(h: Graph, g: Graph, k: int, ell: int) -> PackResult:
    """Model of ``ell`` disjoint copies of ``h`` in the ``k``-blowup of ``g``.

    Uses an optimal basic packing ``sum alpha_i mu_i``: model ``mu_i`` is used
    ``floor(k alpha_i)`` times, and each use takes one fresh copy of every
    host vertex in each of its branch sets. Copy ``c`` of ``v`` is ``v*k + c``.
    """
    if k < 1 or ell < 0:
        raise ValueError("need k >= 1 and ell >= 0")
    vol = vol_graph(h, g)
    uses = [(int(coef * k), branch) for coef, _, branch in vol.packing]
    achievable = sum(u for u, _ in uses)
    if achievable < ell:
        raise ValueError(f"packing yields only {achievable} disjoint models, fewer than {ell}")
    nxt = [0] * g.order
    branch_sets = []
    for count, branch in uses:
        for _ in range(count):
            if len(branch_sets) >= ell * h.order:
                break
            for x in range(h.order):
                bset = set()
                for v in branch[x]:
                    bset.add(v * k + nxt[v])
                    nxt[v] += 1
                branch_sets.append(frozenset(bset))
    host = blowup(g, k)
    pattern = disjoint_copies(h, ell)
    model = Model(tuple(branch_sets[: ell * h.order]))
    model.validate(pattern, host)
    return PackResult(model, host, pattern, achievable)
