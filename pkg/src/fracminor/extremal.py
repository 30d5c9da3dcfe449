"""Bounds on the fractional extremal constant of a graph.

For a weight vector ``w`` write ``d(w) = ||w|| / (2|w|)``. The fractional
constant of ``H`` is the supremum of ``d(w) / Vol_H(w)``; this module computes
its closed forms where they are known, the Turán-type lower bound, the exact
supremum over vectors with small support, and the constructive lemmas used to
pass between weight vectors and integer complete multipartite graphs.
"""
from __future__ import annotations

import itertools
import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Sequence

from . import ratlp
from .graphcore import DEFAULT_MINOR_CAP, Graph, complete_multipartite, invariants, is_minor
from .surd import Surd, compare, to_text
from .volume import WeightVector, enumerate_nmodels, vol_vector

DEFAULT_SUPPORT_CAP = 6


class InternalConsistencyError(AssertionError):
    """A proved statement failed on a computed instance."""


@dataclass(frozen=True)
class BoundReport:
    quantity: str
    value: Any  # Fraction or Surd
    kind: str  # exact | lower | upper
    provenance: str
    witness: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "quantity": self.quantity,
            "value": to_text(self.value),
            "kind": self.kind,
            "provenance": self.provenance,
            "witness": _jsonable(self.witness),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _jsonable(x):
    if isinstance(x, (Fraction, Surd)):
        return to_text(x)
    if isinstance(x, WeightVector):
        return {str(i): to_text(v) for i, v in x.items()}
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _require_order(h: Graph):
    if h.order < 2:
        raise ValueError("graphs with fewer than two vertices are not supported")


def naive_lower(h: Graph) -> BoundReport:
    """``max(v/2, tau)``: disjoint copies of a large clique, and large stars of cliques."""
    _require_order(h)
    inv = invariants(h)
    val = max(Fraction(h.order, 2), Fraction(inv.tau))
    return BoundReport("c_f", val, "lower", "clique and vertex-cover constructions",
                       {"v/2": Fraction(h.order, 2), "tau": inv.tau})


def turan_terms(h: Graph, cap: int = 16) -> list[tuple[Any, Fraction]]:
    """Candidates of the Turán bound in tie-break order: tau, then ``i = 2..chi``, then the limit."""
    inv = invariants(h, cap)
    v = h.order
    out: list[tuple[Any, Fraction]] = [("tau", Fraction(inv.tau))]
    for i in range(2, inv.chi + 1):
        out.append((i, Fraction(i - 1, i) * (v - Fraction(inv.alpha(i), 2))))
    out.append(("limit", Fraction(v, 2)))
    return out


def c_T(h: Graph, cap: int = 16) -> BoundReport:
    """Turán lower bound ``sup({tau} U {(i-1)/i (v - alpha_i/2) : i >= 2})``.

    For ``i >= chi`` the terms increase to ``v/2``, which is included as a
    limit. Ties go to the earliest candidate.
    """
    _require_order(h)
    terms = turan_terms(h, cap)
    arg, best = terms[0]
    for a, t in terms[1:]:
        if t > best:
            arg, best = a, t
    return BoundReport("c_T", best, "exact", "Turan-type lower bound on c_f",
                       {"argmax": arg, "terms": {str(a): t for a, t in terms}})


# support-restricted supremum


def _best_on_face(a: Sequence[Fraction]):
    """Maximise ``d(w)`` over ``w >= 0`` with ``a . w = 1`` when every ``a_i > 0``.

    On the face with support ``S`` (``k = |S|``) a stationary point satisfies
    ``w_i = s - r - r s a_i`` where ``r = d(w)`` and ``s = |w|``; eliminating
    ``s`` leaves ``(k A2 - A1^2) r^2 - 2 A1 r + (k - 1) = 0`` with
    ``A1 = sum a_i`` and ``A2 = sum a_i^2`` over ``S``. The maximum over the
    compact feasible set is the best feasible root over all faces.
    """
    n = len(a)
    best_r, best_w = Fraction(0), None
    for k in range(2, n + 1):
        for S in itertools.combinations(range(n), k):
            A1 = sum(a[i] for i in S)
            A2 = sum(a[i] * a[i] for i in S)
            quad = k * A2 - A1 * A1
            if quad == 0:
                roots = [Surd(Fraction(k - 1) / (2 * A1))]
            else:
                disc = A1 * A1 - quad * (k - 1)
                if disc < 0:
                    continue
                sq = Surd.sqrt(disc)
                roots = [(A1 + sq) / quad, (A1 - sq) / quad]
            for r in roots:
                if r.sign() <= 0:
                    continue
                den = (k - 1) - r * A1
                if den.sign() == 0:
                    continue
                s = r * k / den
                if s.sign() <= 0:
                    continue
                w = [s - r - r * s * a[i] for i in S]
                if any(x.sign() <= 0 for x in w):
                    continue
                if compare(r, best_r) > 0:
                    full = [Surd(0)] * n
                    for i, x in zip(S, w):
                        full[i] = x
                    best_r, best_w = r, full
    return best_r, best_w


def cf_support_bound(h: Graph, n: int, cap: int = DEFAULT_SUPPORT_CAP) -> BoundReport:
    """Exact ``sup d(w)/Vol_H(w)`` over ``w`` supported on ``1..n``.

    ``Vol_H(w)`` is the minimum of ``a . w`` over the vertices ``a`` of
    ``{a >= 0 : a . g >= 1 for every load vector g}``, so the supremum is the
    maximum over those vertices of ``sup {d(w) : a . w = 1}``. If ``a`` has one
    zero coordinate, pushing weight onto it drives the ratio up to
    ``max 1/a_i`` without reaching it; such values are flagged as not attained.
    The value may be a quadratic irrational.
    """
    _require_order(h)
    if n < 1:
        raise ValueError("support size must be positive")
    if n > cap:
        raise ValueError(f"support size {n} exceeds cap {cap}")
    if n == 1:
        return BoundReport(f"c_f^({n})", Fraction(0), "exact", "support restricted supremum",
                           {"note": "a single coordinate has zero density"})
    ms = enumerate_nmodels(h, n)
    verts = ratlp.polytope_vertices(ms.generators, [1] * len(ms.generators))
    best, best_a, best_w, attained = None, None, None, True
    for a in verts:
        zeros = [i for i in range(n) if a[i] == 0]
        if len(zeros) >= 2:
            raise InternalConsistencyError(f"dual vertex {a} has two zero coordinates")
        if zeros:
            val, w, att = Surd(max(1 / x for x in a if x > 0)), None, False
        else:
            val, w = _best_on_face(a)
            att = True
        if best is None or compare(val, best) > 0:
            best, best_a, best_w, attained = val, a, w, att
    value = best.to_fraction() if best.is_rational else best
    witness: dict = {"dual_vertex": list(best_a), "attained": attained, "dual_vertices": len(verts),
                     "generators": len(ms.generators)}
    if best_w is not None:
        witness["w"] = [x.to_fraction() if x.is_rational else x for x in best_w]
    if not attained:
        z = next(i for i in range(n) if best_a[i] == 0)
        j = max((i for i in range(n) if best_a[i] > 0), key=lambda i: 1 / best_a[i])
        witness["approach"] = f"w = e_{j + 1}/a_{j + 1} + t e_{z + 1}, t -> infinity"
    return BoundReport(f"c_f^({n})", value, "exact", "support restricted supremum via dual vertices", witness)


def cf_closed_form(h: Graph, cap: int = 16) -> BoundReport | None:
    """Exact ``c_f`` when a closed form applies: 4-colourable graphs, or ``c_T > 2v/3``."""
    _require_order(h)
    inv = invariants(h, cap)
    v = h.order
    if inv.chi <= 4:
        val = max(Fraction(v, 2), Fraction(inv.tau))
        return BoundReport("c_f", val, "exact", "4-colourable closed form max(v/2, tau)", {"chi": inv.chi})
    ct = c_T(h, cap)
    if ct.value > Fraction(2 * v, 3):
        return BoundReport("c_f", ct.value, "exact", "c_T exceeds 2v/3, so c_f = c_T",
                           {"chi": inv.chi, "c_T_argmax": ct.witness["argmax"]})
    return None


def alpha3_upper(h: Graph) -> BoundReport:
    """Upper bound ``max(v - alpha_3/2, tau)`` on ``c_f``."""
    _require_order(h)
    inv = invariants(h)
    val = max(h.order - Fraction(inv.alpha(3), 2), Fraction(inv.tau))
    return BoundReport("c_f", val, "upper", "delete all but a 3-colourable part",
                       {"alpha_3": inv.alpha(3), "tau": inv.tau})


def partitions(n: int, largest: int | None = None):
    """Integer partitions of ``n`` with non-increasing parts."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for p in range(min(n, largest), 0, -1):
        for rest in partitions(n - p, p):
            yield (p,) + rest


def multipartite_density(parts: Sequence[int]) -> Fraction:
    n = sum(parts)
    return Fraction(n * n - sum(p * p for p in parts), 2 * n)


def gamma_search(h: Graph, max_order: int, cap: int = DEFAULT_MINOR_CAP) -> BoundReport:
    """Densest complete multipartite graph on at most ``max_order`` vertices without ``h`` as a minor."""
    if max_order > cap:
        raise ValueError(f"max_order {max_order} exceeds minor cap {cap}")
    best, witness, tested = None, None, 0
    for N in range(1, max_order + 1):
        for parts in partitions(N):
            dens = multipartite_density(parts)
            if best is not None and dens <= best:
                continue
            tested += 1
            if is_minor(h, complete_multipartite(parts)) is None:
                best, witness = dens, parts
    if best is None:
        raise ValueError("every complete multipartite graph tested contains h")
    return BoundReport("gamma", best, "lower", "complete multipartite minor-free search",
                       {"parts": list(witness), "max_order": max_order, "oracle_calls": tested})


# weight vector constructions


@dataclass(frozen=True)
class RoundingResult:
    x: WeightVector
    order: tuple
    vol_w: Fraction
    vol_x: Fraction
    d_w: Fraction
    d_x: Fraction | None


def round_weights(h: Graph, w: WeightVector) -> RoundingResult:
    """Integer vector with volume below 1 and density at least ``d(w) - 2``.

    Sort ``w`` non-increasingly and set ``x_i`` to the difference of the
    floors of consecutive tail sums; then ``|x| = floor(|w|)`` and ``x`` is
    dominated by a shift of ``w``.
    """
    if w.total() == 0:
        raise ValueError("w must be non-zero")
    vw = vol_vector(h, w).value
    if vw >= 1:
        raise ValueError(f"Vol_H(w) = {vw} is not below 1")
    order = w.sorted_support()
    vals = w.to_list(order)
    tails = [sum(vals[i:], Fraction(0)) for i in range(len(vals) + 1)]
    fl = [t.numerator // t.denominator for t in tails]
    x = WeightVector({order[i]: fl[i] - fl[i + 1] for i in range(len(order))})
    vx = vol_vector(h, x).value if x.total() else Fraction(0)
    dw = w.density()
    dx = x.density() if x.total() else None
    if vx >= 1:
        raise InternalConsistencyError(f"rounded vector has volume {vx}")
    if x.total() != fl[0]:
        raise InternalConsistencyError("|x| differs from floor(|w|)")
    if dw >= 2:
        if dx is None or dx < dw - 2:
            raise InternalConsistencyError(f"d(x) = {dx} below d(w) - 2 = {dw - 2}")
        if x.total() < 4:
            raise InternalConsistencyError("|x| < 4 although d(w) >= 2")
    return RoundingResult(x, tuple(order), vw, vx, dw, dx)


@dataclass(frozen=True)
class EdgeDecomposition:
    terms: tuple  # ((i, j), coefficient) with i < j

    def reconstruct(self) -> WeightVector:
        acc: dict[int, Fraction] = defaultdict(Fraction)
        for (i, j), c in self.terms:
            acc[i] += c
            acc[j] += c
        return WeightVector(acc)


def is_matchable(w: WeightVector) -> bool:
    t = w.total()
    return all(2 * x <= t for _, x in w.items())


def matchable_decompose(w: WeightVector) -> EdgeDecomposition:
    """Write a matchable vector as a non-negative combination of edge vectors ``1_{i,j}``.

    Sort non-increasingly; move the excess of the top entry over the second
    onto edges to the tail; pair off the tail until one entry is left; then
    ``(a, a, c) = (c/2)(1_13 + 1_23) + (a - c/2) 1_12``.
    """
    if not is_matchable(w):
        raise ValueError("w is not matchable: some entry exceeds half the total")
    if w.total() == 0:
        return EdgeDecomposition(())
    vals = {i: x for i, x in w.items()}
    order = w.sorted_support()
    terms: dict[tuple, Fraction] = defaultdict(Fraction)

    def add(i, j, c):
        if c:
            terms[(min(i, j), max(i, j))] += c
            vals[i] -= c
            vals[j] -= c

    i1, i2 = order[0], order[1]
    excess = vals[i1] - vals[i2]
    for j in order[2:]:
        if excess == 0:
            break
        t = min(excess, vals[j])
        add(i1, j, t)
        excess -= t
    tail = [j for j in order[2:] if vals[j] > 0]
    while len(tail) >= 2:
        tail.sort(key=lambda j: (-vals[j], j))
        a, b = tail[0], tail[1]
        add(a, b, min(vals[a], vals[b]))
        tail = [j for j in tail if vals[j] > 0]
    if tail:
        j3 = tail[0]
        c = vals[j3]
        add(i1, j3, c / 2)
        add(i2, j3, c / 2)
    add(i1, i2, vals[i1])
    if any(vals[i] != 0 for i in vals):
        raise InternalConsistencyError("decomposition left a remainder")
    dec = EdgeDecomposition(tuple(sorted((p, c) for p, c in terms.items() if c)))
    if dec.reconstruct() != w or any(c < 0 for _, c in dec.terms):
        raise InternalConsistencyError("decomposition does not reconstruct w")
    return dec


def turan_witness(h: Graph, k: int, z: WeightVector) -> tuple[WeightVector, Fraction]:
    """``w = (alpha_k/k) 1_[k] + z`` for matchable ``z`` with ``|z| = 2(v - alpha_k)``; checks ``Vol_H(w) >= 1``."""
    if k < 1:
        raise ValueError("k must be positive")
    inv = invariants(h)
    ak = inv.alpha(k)
    if not is_matchable(z):
        raise ValueError("z is not matchable")
    if z.total() != 2 * (h.order - ak):
        raise ValueError(f"|z| must equal 2(v - alpha_k) = {2 * (h.order - ak)}")
    w = WeightVector.indicator(range(1, k + 1), Fraction(ak, k)) + z
    vol = vol_vector(h, w).value
    if vol < 1:
        raise InternalConsistencyError(f"Vol_H(w) = {vol} < 1")
    return w, vol


V1 = (Fraction(1), Fraction(1, 2), Fraction(0), Fraction(0))
V2 = (Fraction(1, 4),) * 4
U_VECTORS = (
    (Fraction(0), Fraction(2), Fraction(2), Fraction(2)),
    (Fraction(2, 3), Fraction(2, 3), Fraction(2, 3), Fraction(4, 3)),
    (Fraction(2, 5), Fraction(6, 5), Fraction(6, 5), Fraction(6, 5)),
    (Fraction(1), Fraction(1), Fraction(1), Fraction(1)),
)


def vectors_lemma(y: Sequence) -> tuple[Fraction, ...]:
    """Convex combination of the four fixed vectors ``u^i`` lying below ``y``, found by LP."""
    y = tuple(Fraction(v) for v in y)
    if len(y) != 4:
        raise ValueError("y must have four entries")
    if not (0 <= y[0] <= y[1] <= y[2] <= y[3]):
        raise ValueError("y must be non-negative and non-decreasing")
    if sum(a * b for a, b in zip(y, V1)) < 1 or sum(a * b for a, b in zip(y, V2)) < 1:
        raise ValueError("y must satisfy y.v1 >= 1 and y.v2 >= 1")
    rows = [[1, 1, 1, 1]] + [[u[j] for u in U_VECTORS] for j in range(4)]
    lp = ratlp.LinearProgram.build([0, 0, 0, 0], rows, [ratlp.EQ] + [ratlp.LE] * 4, (1,) + y)
    res = ratlp.solve(lp)
    if not res.optimal:
        raise InternalConsistencyError(f"no convex combination below {y}")
    lam = res.x
    for j in range(4):
        if sum(l * u[j] for l, u in zip(lam, U_VECTORS)) > y[j]:
            raise InternalConsistencyError("combination exceeds y")
    return lam


@dataclass(frozen=True)
class InequalityCheck:
    label: str
    lhs: Fraction
    rhs: Fraction

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


def verify_density_inequalities(h: Graph, c) -> list[InequalityCheck]:
    """Evaluate the local density inequalities for ``c`` with ``a_i = alpha_i/v``.

    Checked for ``2 <= j <= i <= chi``, and for the limit ``i -> infinity``
    (where ``a_i = 1``) which dominates every ``i > chi``.
    """
    c = Fraction(c)
    inv = invariants(h)
    v = h.order
    chi = inv.chi

    def al(i):
        return Fraction(inv.alpha(i), v)

    a1 = al(1)
    out = [InequalityCheck("c >= 1 - a1", c, 1 - a1)]
    idx = list(range(2, chi + 1)) + ["inf"]
    for i in idx:
        ai = Fraction(1) if i == "inf" else al(i)
        out.append(InequalityCheck(f"single i={i}", c * (4 - a1 - ai), ai * (2 - a1) + (1 - ai) * (3 - 2 * a1)))
    for i in idx:
        ai = Fraction(1) if i == "inf" else al(i)
        fi = Fraction(1) if i == "inf" else Fraction(i - 1, i)
        top = chi if i == "inf" else i
        for j in range(2, top + 1):
            aj = al(j)
            rhs = (2 - aj) * (fi * ai + Fraction(j - 1, j) * (2 - 2 * ai))
            out.append(InequalityCheck(f"pair i={i} j={j}", c * (4 - ai - aj), rhs))
    return out


@dataclass(frozen=True)
class NormBoundResult:
    preconditions: bool
    hypothesis: bool
    norm: Fraction
    total: Fraction

    @property
    def holds(self) -> bool:
        return self.norm <= self.total


def normbound_check(a, b, k: int, w: WeightVector) -> NormBoundResult:
    """Check ``||w|| <= |w|`` for ``w`` with ``a|w| - b(w_1 + ... + w_k) <= 1``.

    The implication is guaranteed when ``a^2 >= k b^2`` and ``4a >= 4 + k b^2``;
    preconditions are reported, not enforced. A failure with all preconditions
    met is an internal consistency error.
    """
    a, b = Fraction(a), Fraction(b)
    pre = a * a >= k * b * b and 4 * a >= 4 + k * b * b
    head = sum((w[i] for i in range(1, k + 1)), Fraction(0))
    hyp = a * w.total() - b * head <= 1
    res = NormBoundResult(pre, hyp, w.norm(), w.total())
    if pre and hyp and not res.holds:
        raise InternalConsistencyError(f"norm bound fails for a={a}, b={b}, k={k}, w={w}")
    return res


# links between the two sides of the sandwich


def rational_near_maximiser(h: Graph, n: int, margin: Fraction = Fraction(1, 100), stretch: int = 64):
    """A rational vector on ``1..n`` whose density ratio is close to the supremum.

    Irrational maximisers are truncated to rationals, limits are replaced by a
    large finite ``t``. The result is rescaled so that ``Vol_H(w) = 1 - margin``.
    """
    rep = cf_support_bound(h, n)
    wit = rep.witness
    if "w" in wit:
        vals = []
        for x in wit["w"]:
            vals.append(x if isinstance(x, Fraction) else Fraction(float(x)).limit_denominator(10**6))
    else:
        a = wit["dual_vertex"]
        z = next(i for i in range(n) if a[i] == 0)
        j = max((i for i in range(n) if a[i] > 0), key=lambda i: 1 / a[i])
        vals = [Fraction(0)] * n
        vals[j] = 1 / a[j]
        vals[z] = Fraction(stretch)
    w = WeightVector.from_list(vals)
    vol = vol_vector(h, w).value
    if vol == 0:
        raise InternalConsistencyError("near-maximiser has zero volume")
    return w.scale((1 - margin) / vol), rep
