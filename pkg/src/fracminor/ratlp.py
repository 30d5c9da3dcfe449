"""Exact linear programming over the rationals.

A two-phase primal simplex on a dense tableau of ``Fraction`` entries with
Bland's rule, so it terminates on degenerate problems. Optimal solutions come
with dual values, and :func:`check_duality` verifies a solution against its
dual without trusting the solver.

Polyhedra ``{x >= 0 : A x >= b}`` can have their vertices listed either by a
double description pass over the homogenised cone or by brute force over
tight constraint subsets. The two routes are independent and are compared in
the tests.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

LE, GE, EQ = "<=", ">=", "="

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


class LpError(ValueError):
    pass


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted on exact paths")
    return Fraction(x)


@dataclass(frozen=True)
class LinearProgram:
    """maximize ``c . x`` subject to ``rows[i] . x (senses[i]) rhs[i]`` and ``x >= 0``."""

    c: tuple
    rows: tuple
    senses: tuple
    rhs: tuple

    @classmethod
    def build(cls, c, rows, senses, rhs) -> "LinearProgram":
        c = tuple(_frac(x) for x in c)
        rows = tuple(tuple(_frac(x) for x in r) for r in rows)
        senses = tuple(senses)
        rhs = tuple(_frac(x) for x in rhs)
        if len(rows) != len(senses) or len(rows) != len(rhs):
            raise LpError("rows, senses and rhs must have equal length")
        for r in rows:
            if len(r) != len(c):
                raise LpError("every row needs one coefficient per variable")
        for s in senses:
            if s not in (LE, GE, EQ):
                raise LpError(f"unknown sense {s!r}")
        return cls(c, rows, senses, rhs)

    @property
    def num_vars(self) -> int:
        return len(self.c)

    @property
    def num_rows(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class LpResult:
    status: str
    value: Fraction | None = None
    x: tuple | None = None
    y: tuple | None = None  # one dual value per row

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


def solve(lp: LinearProgram) -> LpResult:
    """Solve ``lp`` exactly. Infeasible and unbounded problems are reported in ``status``."""
    m, n = lp.num_rows, lp.num_vars
    flip = []
    rows, senses, rhs = [], [], []
    for r, s, b in zip(lp.rows, lp.senses, lp.rhs):
        if b < 0:
            r = tuple(-a for a in r)
            b = -b
            s = {LE: GE, GE: LE, EQ: EQ}[s]
            flip.append(-1)
        else:
            flip.append(1)
        rows.append(r)
        senses.append(s)
        rhs.append(b)

    # column layout: originals | slack/surplus | artificials
    extra = [i for i in range(m) if senses[i] != EQ]
    slack_col = {i: n + k for k, i in enumerate(extra)}
    art_rows = [i for i in range(m) if senses[i] != LE]
    art_col = {i: n + len(extra) + k for k, i in enumerate(art_rows)}
    ncols = n + len(extra) + len(art_rows)
    first_art = n + len(extra)

    tab = []
    basis = []
    for i in range(m):
        row = [Fraction(0)] * (ncols + 1)
        row[:n] = rows[i]
        if i in slack_col:
            row[slack_col[i]] = Fraction(1 if senses[i] == LE else -1)
        if i in art_col:
            row[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(slack_col[i])
        row[-1] = rhs[i]
        tab.append(row)
    # identity column of each row, used to read off duals
    unit_col = [slack_col[i] if senses[i] == LE else art_col[i] for i in range(m)]

    def pivot(r: int, j: int, obj: list):
        prow = tab[r]
        p = prow[j]
        if p != 1:
            inv = 1 / p
            for k in range(ncols + 1):
                if prow[k]:
                    prow[k] *= inv
        nz = [k for k in range(ncols + 1) if prow[k]]
        for i in range(len(tab)):
            if i != r:
                f = tab[i][j]
                if f:
                    ti = tab[i]
                    for k in nz:
                        ti[k] -= f * prow[k]
        f = obj[j]
        if f:
            for k in nz:
                obj[k] -= f * prow[k]
        basis[r] = j

    def run(obj: list, allowed: int) -> str:
        # obj[j] holds the reduced cost; negative entries improve a maximisation
        while True:
            enter = next((j for j in range(allowed) if obj[j] < 0), None)
            if enter is None:
                return OPTIMAL
            best, leave = None, None
            for i in range(len(tab)):
                a = tab[i][enter]
                if a > 0:
                    ratio = tab[i][-1] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        best, leave = ratio, i
            if leave is None:
                return UNBOUNDED
            pivot(leave, enter, obj)

    if art_rows:
        # phase one: maximise minus the sum of artificials
        obj = [Fraction(0)] * (ncols + 1)
        for i in art_rows:
            for k in range(ncols + 1):
                obj[k] -= tab[i][k]
        for i in art_rows:
            obj[art_col[i]] += 1
        run(obj, first_art)
        if obj[-1] != 0:
            return LpResult(INFEASIBLE)
        # drive artificial variables out of the basis, dropping redundant rows
        i = 0
        while i < len(tab):
            if basis[i] >= first_art:
                j = next((j for j in range(first_art) if tab[i][j] != 0), None)
                if j is None:
                    tab.pop(i)
                    basis.pop(i)
                    continue
                pivot(i, j, obj)
            i += 1

    obj = [Fraction(0)] * (ncols + 1)
    for j in range(n):
        obj[j] = -lp.c[j]
    # express the objective in terms of the current basis
    for i, bj in enumerate(basis):
        f = obj[bj]
        if f:
            for k in range(ncols + 1):
                obj[k] -= f * tab[i][k]
    status = run(obj, first_art)
    if status != OPTIMAL:
        return LpResult(status)

    x = [Fraction(0)] * n
    for i, bj in enumerate(basis):
        if bj < n:
            x[bj] = tab[i][-1]
    y = []
    for i in range(m):
        j = unit_col[i]
        yi = obj[j]
        y.append(flip[i] * yi)
    return LpResult(OPTIMAL, obj[-1], tuple(x), tuple(y))


def check_duality(lp: LinearProgram, res: LpResult) -> list[str]:
    """Independently check an optimal result: primal and dual feasibility and equal objectives.

    Returns a list of problems, empty when the certificate is sound.
    """
    errs = []
    if not res.optimal:
        return [f"status is {res.status}"]
    x, y = res.x, res.y
    if any(v < 0 for v in x):
        errs.append("negative primal variable")
    for i, (r, s, b) in enumerate(zip(lp.rows, lp.senses, lp.rhs)):
        lhs = sum((a * v for a, v in zip(r, x)), Fraction(0))
        if (s == LE and lhs > b) or (s == GE and lhs < b) or (s == EQ and lhs != b):
            errs.append(f"row {i} violated")
        if (s == LE and y[i] < 0) or (s == GE and y[i] > 0):
            errs.append(f"dual {i} has the wrong sign")
    for j in range(lp.num_vars):
        col = sum((lp.rows[i][j] * y[i] for i in range(lp.num_rows)), Fraction(0))
        if col < lp.c[j]:
            errs.append(f"dual constraint {j} violated")
    primal = sum((a * v for a, v in zip(lp.c, x)), Fraction(0))
    dual = sum((b * v for b, v in zip(lp.rhs, y)), Fraction(0))
    if primal != dual or primal != res.value:
        errs.append(f"objectives differ: primal {primal}, dual {dual}, reported {res.value}")
    return errs


# vertex enumeration


def _int_row(r: Sequence[Fraction]) -> list[int]:
    den = 1
    for a in r:
        den = den * a.denominator // math.gcd(den, a.denominator)
    return [int(a * den) for a in r]


def _primitive(v: list[int]) -> tuple:
    g = 0
    for a in v:
        g = math.gcd(g, a)
    if g > 1:
        v = [a // g for a in v]
    return tuple(v)


def cone_rays(constraints: Sequence[Sequence[Fraction]], dim: int) -> list[tuple]:
    """Extreme rays of ``{x in R^dim : x >= 0, c . x >= 0 for c in constraints}`` (double description).

    Rays are returned as primitive integer vectors.
    """
    rows = [_int_row([_frac(a) for a in c]) for c in constraints]
    # start from the orthant; constraint k < dim is x_k >= 0
    full = (1 << dim) - 1
    rays = []
    for k in range(dim):
        v = [0] * dim
        v[k] = 1
        rays.append((tuple(v), full & ~(1 << k)))
    order = sorted(range(len(rows)), key=lambda i: (sum(abs(a) for a in rows[i]), rows[i]))
    for step, ri in enumerate(order):
        r = rows[ri]
        bit = 1 << (dim + step)
        pos, neg, zero = [], [], []
        for v, z in rays:
            s = sum(a * b for a, b in zip(r, v))
            if s > 0:
                pos.append((v, z, s))
            elif s < 0:
                neg.append((v, z, s))
            else:
                zero.append((v, z | bit))
        if not neg:
            rays = [(v, z) for v, z, _ in pos] + zero
            continue
        new = []
        zsets = [z for _, z in rays]
        for p, zp, sp in pos:
            for q, zq, sq in neg:
                common = zp & zq
                if bin(common).count("1") < dim - 2:
                    continue
                adjacent = True
                for z in zsets:
                    if z != zp and z != zq and common & z == common:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                w = [sp * b - sq * a for a, b in zip(p, q)]
                new.append((_primitive(w), common | bit))
        rays = [(v, z) for v, z, _ in pos] + zero + new
    seen = set()
    out = []
    for v, _ in rays:
        if v not in seen:
            seen.add(v)
            out.append(v)
    return out


def polytope_vertices(A: Sequence[Sequence], b: Sequence, method: str = "dd") -> list[tuple]:
    """Vertices of ``{x >= 0 : A x >= b}``, sorted lexicographically.

    ``method`` is ``"dd"`` (double description) or ``"tight"`` (solve every
    square subsystem of tight constraints; only for small inputs).
    """
    A = [[_frac(a) for a in row] for row in A]
    b = [_frac(x) for x in b]
    if not A:
        raise LpError("at least one constraint row is required")
    n = len(A[0])
    if any(len(row) != n for row in A):
        raise LpError("ragged constraint matrix")
    if method == "tight":
        return _vertices_tight(A, b, n)
    if method != "dd":
        raise LpError(f"unknown method {method!r}")
    # homogenise: (x, t) with A x - b t >= 0, x >= 0, t >= 0
    cons = [row + [-bi] for row, bi in zip(A, b)]
    verts = set()
    for ray in cone_rays(cons, n + 1):
        t = ray[-1]
        if t > 0:
            verts.add(tuple(Fraction(a, t) for a in ray[:-1]))
    return sorted(verts)


def _solve_square(M: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    n = len(M)
    aug = [row[:] + [r] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next((i for i in range(col, n) if aug[i][col] != 0), None)
        if piv is None:
            return None
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [a / p for a in aug[col]]
        for i in range(n):
            if i != col and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * c for a, c in zip(aug[i], aug[col])]
    return [aug[i][n] for i in range(n)]


def _vertices_tight(A, b, n) -> list[tuple]:
    cons = [(row, bi) for row, bi in zip(A, b)]
    for k in range(n):
        e = [Fraction(0)] * n
        e[k] = Fraction(1)
        cons.append((e, Fraction(0)))
    verts = set()
    for sub in itertools.combinations(range(len(cons)), n):
        x = _solve_square([cons[i][0] for i in sub], [cons[i][1] for i in sub])
        if x is None:
            continue
        if all(sum(a * v for a, v in zip(row, x)) >= bi for row, bi in cons):
            verts.add(tuple(x))
    return sorted(verts)
