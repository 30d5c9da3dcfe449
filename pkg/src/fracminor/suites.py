"""Batch verification suites behind ``fracminor verify``.

Each suite runs a family of exact checks and returns a :class:`SuiteReport`.
Randomised suites draw from ``random.Random(seed)`` only, so a rerun with
the same seed produces the same report.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import ratlp
from .decompose import (
    balanced_separator,
    eppstein_decompose,
    hypercube_decompose,
    mader_refine,
    reduce_expand,
)
from .extremal import (
    c_T,
    cf_closed_form,
    cf_support_bound,
    gamma_search,
    normbound_check,
    rational_near_maximiser,
    round_weights,
    verify_density_inequalities,
)
from .graphcore import (
    Graph,
    complete_bipartite,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    disjoint_copies,
    enumerate_graphs,
    grid_graph,
    hypercube,
    invariants,
    is_minor,
    path_graph,
)
from .surd import compare, to_text
from .volume import (
    WeightVector,
    bipartite_vol_bound,
    enumerate_nmodels,
    verify_graph_certificate,
    vol_graph,
    vol_vector,
    vol_weighted,
)


@dataclass(frozen=True)
class CaseResult:
    case: str
    ok: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"case": self.case, "ok": self.ok, "detail": self.detail}


@dataclass(frozen=True)
class SuiteReport:
    suite: str
    seed: int
    params: dict
    cases: tuple

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.cases)

    @property
    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.ok]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "params": self.params,
            "passed": self.passed,
            "total": len(self.cases),
            "failed": len(self.failures),
            "cases": [c.to_dict() for c in self.cases],
        }


def _q(x) -> str:
    return to_text(x)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < p])


def random_tree(rng: random.Random, n: int) -> Graph:
    return Graph.from_edges(n, [(i, rng.randrange(i)) for i in range(1, n)])


def random_weights(rng: random.Random, size: int, top: int = 8, den: int = 1) -> WeightVector:
    return WeightVector.from_list([Fraction(rng.randint(1, top), rng.randint(1, den)) for _ in range(size)])


SMALL_PATTERNS = {
    "K2": complete_graph(2),
    "P3": path_graph(3),
    "K3": complete_graph(3),
    "C4": cycle_graph(4),
    "K4": complete_graph(4),
    "K2,1": complete_bipartite(2, 1),
    "K2,2": complete_bipartite(2, 2),
}


# suites


def suite_duality(seed: int = 0, cases: int = 200, **_) -> list[CaseResult]:
    """Every volume LP carries a dual certificate that survives an independent check."""
    rng = random.Random(seed)
    names = sorted(SMALL_PATTERNS)
    out = []
    for t in range(cases):
        name = names[rng.randrange(len(names))]
        h = SMALL_PATTERNS[name]
        if t % 2 == 0:
            n = rng.randint(max(2, h.order - 1), 7)
            g = random_graph(rng, n, rng.choice((0.4, 0.6, 0.8)))
            w = [rng.randint(0, 3) for _ in range(n)]
            res = vol_weighted(h, g, w)
            errs = verify_graph_certificate(h, g, w, res)
            out.append(CaseResult(f"graph {name} in host {t}", not errs,
                                  {"value": _q(res.value), "errors": errs}))
        else:
            w = random_weights(rng, rng.randint(1, 4), den=3)
            res = vol_vector(h, w)
            order = res.order
            ms = enumerate_nmodels(h, len(order))
            errs = res.certificate.check(w, ms.generators, order)
            # the primal packing is feasible and has the same weight
            used = WeightVector()
            total = Fraction(0)
            for coef, load, _ in res.packing:
                used = used + load.scale(coef)
                total += coef
            if not used <= w:
                errs.append("packing exceeds the capacities")
            if total != res.value:
                errs.append("packing weight differs from the certificate value")
            lp = ratlp.LinearProgram.build(
                [1] * len(ms.generators),
                [[gv[i] for gv in ms.generators] for i in range(len(order))],
                [ratlp.LE] * len(order),
                w.to_list(order),
            )
            errs += ratlp.check_duality(lp, ratlp.solve(lp))
            out.append(CaseResult(f"vector {name} {w.to_list(w.support)}", not errs,
                                  {"value": _q(res.value), "errors": errs}))
    return out


def suite_superadditivity(seed: int = 0, cases: int = 200, **_) -> list[CaseResult]:
    """``Vol(w1 + w2) >= Vol(w1) + Vol(w2)`` and ``Vol(q w) = q Vol(w)``."""
    rng = random.Random(seed)
    names = sorted(SMALL_PATTERNS)
    out = []
    for _t in range(cases):
        name = names[rng.randrange(len(names))]
        h = SMALL_PATTERNS[name]
        idx = list(range(1, 6))
        w1 = WeightVector({i: Fraction(rng.randint(1, 6), rng.randint(1, 3)) for i in rng.sample(idx, rng.randint(1, 3))})
        w2 = WeightVector({i: Fraction(rng.randint(1, 6), rng.randint(1, 3)) for i in rng.sample(idx, rng.randint(1, 3))})
        q = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        v1, v2 = vol_vector(h, w1).value, vol_vector(h, w2).value
        v12 = vol_vector(h, w1 + w2).value
        vq = vol_vector(h, w1.scale(q)).value
        ok = v12 >= v1 + v2 and vq == q * v1
        out.append(CaseResult(f"{name} {w1!r} {w2!r} q={q}", ok,
                              {"vol1": _q(v1), "vol2": _q(v2), "vol_sum": _q(v12), "scaled": _q(vq)}))
    return out


def suite_fourcolor(max_vertices: int = 6, support: int = 4, **_) -> list[CaseResult]:
    """For ``chi <= 4``: ``c_f^(n)(H) <= max(v/2, tau)`` and the Turan terms are attained."""
    out = []
    for g_idx, h in enumerate(enumerate_graphs(max_vertices, chi_cap=4, min_vertices=2)):
        closed = cf_closed_form(h).value
        inv = invariants(h)
        vals = {}
        ok = True
        for n in range(2, support + 1):
            b = cf_support_bound(h, n).value
            vals[n] = _q(b)
            if compare(b, closed) > 0:
                ok = False
            # Turan attainment on the first k coordinates
            turan = Fraction(n - 1, n) * (h.order - Fraction(inv.alpha(n), 2))
            if compare(b, turan) < 0:
                ok = False
        out.append(CaseResult(f"graph {g_idx} v={h.order} e={h.num_edges}", ok,
                              {"closed_form": _q(closed), "support_bounds": vals}))
    return out


def suite_twothirds(max_vertices: int = 6, **_) -> list[CaseResult]:
    """When ``c_T > 2v/3`` the local density inequalities hold at ``c = c_T/v``."""
    out = []
    for g_idx, h in enumerate(enumerate_graphs(max_vertices, min_vertices=2)):
        ct = c_T(h).value
        if ct <= Fraction(2 * h.order, 3):
            continue
        rows = verify_density_inequalities(h, ct / h.order)
        closed = cf_closed_form(h)
        failed = [r.label for r in rows if not r.holds]
        ok = not failed and closed is not None and closed.value >= ct
        out.append(CaseResult(f"graph {g_idx} v={h.order} e={h.num_edges}", ok,
                              {"c_T": _q(ct), "rows": len(rows), "failed": failed}))
    return out


def suite_sandwich(max_vertices: int = 5, support: int = 3, gamma_order: int = 10, **_) -> list[CaseResult]:
    """Rounding a near-maximiser gives an H-minor-free complete multipartite graph,
    and the closed form drops by at most one under vertex deletion."""
    out = []
    for g_idx, h in enumerate(enumerate_graphs(max_vertices, min_vertices=2)):
        label = f"graph {g_idx} v={h.order} e={h.num_edges}"
        for n in range(2, support + 1):
            w, rep = rational_near_maximiser(h, n, stretch=8)
            dw = w.density()
            if dw < 2:
                continue
            r = round_weights(h, w)
            parts = [int(x) for _, x in r.x.items()]
            free = is_minor(h, complete_multipartite(parts)) is None
            ok = free and r.vol_x < 1 and r.d_x >= dw - 2
            detail = {"n": n, "d_w": _q(dw), "x": parts, "d_x": _q(r.d_x)}
            if sum(parts) <= gamma_order:
                gam = gamma_search(h, sum(parts)).value
                ok = ok and gam >= r.d_x
                detail["gamma"] = _q(gam)
            out.append(CaseResult(f"{label} rounding n={n}", ok, detail))
        closed = cf_closed_form(h)
        if h.order >= 3:
            for x in range(h.order):
                sub = h.delete_vertex(x)
                cs = cf_closed_form(sub)
                if cs is None:
                    continue
                ok = True
                if closed is not None:
                    ok = closed.value <= cs.value + 1
                for n in range(2, support + 1):
                    if compare(cf_support_bound(h, n).value, cs.value + 1) > 0:
                        ok = False
                out.append(CaseResult(f"{label} delete {x}", ok, {"sub_closed_form": _q(cs.value)}))
    return out


BIPARTITE_PAIRS = ((1, 1), (2, 1), (2, 2), (3, 2))


def suite_bipartite_vol(seed: int = 0, cases: int = 200, max_vertices: int = 8, **_) -> list[CaseResult]:
    """``Vol_{K_{s,t}}(G) >= min(v/(s+t), delta/t)`` for sampled hosts with no isolated vertex."""
    rng = random.Random(seed)
    out = []
    made = 0
    while made < cases:
        n = rng.randint(2, max_vertices)
        g = random_graph(rng, n, rng.choice((0.3, 0.5, 0.7, 0.9)))
        if g.min_degree() < 1:
            continue
        made += 1
        for s, t in BIPARTITE_PAIRS:
            val = vol_graph(complete_bipartite(s, t), g).value
            bound = bipartite_vol_bound(s, t, g)
            out.append(CaseResult(f"host {made} K{s},{t}", val >= bound, {"vol": _q(val), "bound": _q(bound)}))
    return out


ROUNDING_PATTERNS = {"K3": complete_graph(3), "K4": complete_graph(4), "C5": cycle_graph(5)}


def sample_rounding_inputs(rng: random.Random, h: Graph, count: int, max_support: int = 6, max_tries: int = 20_000):
    """Rational ``w`` with ``d(w) >= 2`` and ``Vol_H(w) < 1`` (none exist when ``c_f(H) <= 2``)."""
    got = []
    for _ in range(max_tries):
        if len(got) >= count:
            break
        w = random_weights(rng, rng.randint(2, max_support))
        vol = vol_vector(h, w).value
        d = w.density()
        if d <= 2 * vol:
            continue
        lo, hi = 2 / d, 1 / vol
        got.append(w.scale(lo + (hi - lo) * Fraction(rng.randrange(1000), 1000)))
    return got


def suite_rounding(seed: int = 0, cases: int = 200, **_) -> list[CaseResult]:
    """Rounded vectors keep volume below 1, lose at most 2 in density, and avoid H in the blowup."""
    rng = random.Random(seed)
    out = []
    per = {"K4": cases - cases // 2, "C5": cases // 2}
    for name, count in sorted(per.items()):
        h = ROUNDING_PATTERNS[name]
        for k, w in enumerate(sample_rounding_inputs(rng, h, count)):
            r = round_weights(h, w)
            parts = [int(x) for _, x in r.x.items()]
            free = is_minor(h, complete_multipartite(parts)) is None
            ok = (r.vol_x < 1 and r.d_x >= r.d_w - 2 and r.x.total() == int(w.total())
                  and r.x.total() >= 4 and free)
            out.append(CaseResult(f"{name} sample {k}", ok,
                                  {"w": w.to_text(), "x": parts, "d_w": _q(r.d_w), "d_x": _q(r.d_x)}))
    return out


def suite_normbound(seed: int = 0, cases: int = 200, **_) -> list[CaseResult]:
    """``||w|| <= |w|`` whenever the norm-bound hypotheses hold."""
    rng = random.Random(seed)
    out = []
    made = 0
    while made < cases:
        k = rng.randint(1, 4)
        b = Fraction(rng.randint(0, 6), rng.randint(1, 4))
        # a >= 1 + k b^2/4 gives both a^2 >= k b^2 and 4a >= 4 + k b^2
        a = 1 + k * b * b / 4 + Fraction(rng.randint(0, 8), 4)
        w = WeightVector.from_list([Fraction(rng.randint(0, 6), rng.randint(1, 12)) for _ in range(rng.randint(1, 6))])
        res = normbound_check(a, b, k, w)
        if not (res.preconditions and res.hypothesis):
            continue
        made += 1
        out.append(CaseResult(f"a={a} b={b} k={k}", res.holds, {"norm": _q(res.norm), "total": _q(res.total)}))
    return out


def _reduce_case(label: str, g: Graph, dec, epsilon) -> CaseResult:
    errs = dec.problems(g)
    r = reduce_expand(g, dec.bags, epsilon)
    if len(r.F) != dec.excess:
        errs.append("|F| differs from the excess")
    # H' minus F is ell disjoint copies of J, edge for edge
    fset = {(min(a, b), max(a, b)) for a, b in r.F}
    rest = r.H_prime.edges - fset
    if Graph(r.H_prime.order, frozenset(rest)) != disjoint_copies(r.J, r.ell):
        errs.append("H' - F is not ell copies of J")
    if not r.model.is_valid(g, r.H_prime):
        errs.append("model of the input in H' is invalid")
    return CaseResult(label, not errs, {"excess": dec.excess, "bags": len(dec.bags), "F": len(r.F),
                                        "ell": r.ell, "certified": dec.certified, "errors": errs})


def suite_decompositions(seed: int = 0, cases: int = 20, **_) -> list[CaseResult]:
    """Hypercube splits, and the separator decomposition followed by reduce/expand."""
    rng = random.Random(seed)
    out = []
    for d in range(1, 9):
        dec = hypercube_decompose(d)
        q = hypercube(d)
        errs = dec.problems(q, cap=1 << ((d + 1) // 2))
        ok = not errs and dec.excess == 1 << d and q.num_edges == d << (d - 1)
        out.append(CaseResult(f"hypercube {d}", ok, {"excess": dec.excess, "errors": errs}))
    half = Fraction(1, 2)
    for k in range(cases):
        n = rng.randint(10, 200)
        tree = random_tree(rng, n)
        dec = eppstein_decompose(tree, half, 1, 1, separator="exact")
        case = _reduce_case(f"tree {k} n={n}", tree, dec, 1)
        if not (dec.certified and dec.excess <= n):
            case = CaseResult(case.case, False, {**case.detail, "uncertified": True})
        out.append(case)
    for rows, cols in ((3, 3), (5, 8), (8, 8), (10, 20), (14, 14)):
        g = grid_graph(rows, cols)
        dec = eppstein_decompose(g, half, 1, 1, separator="heuristic")
        case = _reduce_case(f"grid {rows}x{cols}", g, dec, 1)
        if not dec.nodes_ok:
            case = CaseResult(case.case, False, {**case.detail, "node_failure": True})
        out.append(case)
    for g, name in ((path_graph(7), "P7"), (cycle_graph(6), "C6")):
        sep = balanced_separator(g)
        out.append(CaseResult(f"separator {name}", not sep.problems(g) and sep.is_balanced(g),
                              {"order": sep.order}))
    return out


MADER_PARAMS = ((2, 1), (3, 1), (4, 2))


def in_class(g: Graph, d: int, k: int) -> bool:
    return g.order >= d and g.num_edges >= d * g.order - k * d


def is_fixed_point(g: Graph, d: int, k: int) -> bool:
    """No single edge deletion, contraction or vertex deletion stays in the class."""
    for u, v in g.sorted_edges():
        if in_class(g.delete_edge(u, v), d, k) or in_class(g.contract(u, v), d, k):
            return False
    return not any(in_class(g.delete_vertex(x), d, k) for x in range(g.order))


def suite_mader(seed: int = 0, cases: int = 50, max_vertices: int = 13, **_) -> list[CaseResult]:
    """Minor-minimal dense graphs are ``k``-connected with every edge in ``d`` triangles."""
    rng = random.Random(seed)
    out = []
    for d, k in MADER_PARAMS:
        made = 0
        while made < cases:
            n = rng.randint(2 * d + 1, max_vertices)
            g = random_graph(rng, n, rng.uniform(0.5, 1.0))
            if g.num_edges < d * n:
                continue
            made += 1
            res = mader_refine(g, d, k)
            m = res.graph
            tri = min((len(set(m.neighbors(u)) & set(m.neighbors(v))) for u, v in m.edges), default=0)
            dens = Fraction(m.num_edges, m.order)
            ok = (in_class(m, d, k) and is_fixed_point(m, d, k) and res.connectivity >= k
                  and d - k <= dens <= d and tri >= d)
            out.append(CaseResult(f"d={d} k={k} sample {made}", ok,
                                  {"order": m.order, "edges": m.num_edges, "kappa": res.connectivity,
                                   "min_triangles": tri}))
    return out


SUITES: dict[str, Callable[..., list[CaseResult]]] = {
    "duality": suite_duality,
    "superadditivity": suite_superadditivity,
    "fourcolor": suite_fourcolor,
    "twothirds": suite_twothirds,
    "sandwich": suite_sandwich,
    "bipartite-vol": suite_bipartite_vol,
    "rounding": suite_rounding,
    "normbound": suite_normbound,
    "decompositions": suite_decompositions,
    "mader": suite_mader,
}


def run_suite(name: str, seed: int = 0, **params) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    params = {k: v for k, v in params.items() if v is not None}
    cases = SUITES[name](seed=seed, **params)
    return SuiteReport(name, seed, params, tuple(cases))
