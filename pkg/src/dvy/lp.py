"""Exact rational simplex for covering LPs ``min c.w  s.t.  A w >= b, w >= 0``.

The solver pivots on the dual ``max b.y  s.t.  A^T y <= c, y >= 0``, whose
origin is feasible whenever ``c >= 0``, so no phase one is needed.  Bland's
rule prevents cycling.  The primal optimum is read off the slack columns of
the final objective row, and both solutions are checked before returning.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .core import to_rat
from .errors import DomainError, InfeasibleError


@dataclass(frozen=True)
class LinearProgram:
    c: tuple[Fraction, ...]
    A: tuple[tuple[Fraction, ...], ...]
    b: tuple[Fraction, ...]

    def __post_init__(self):
        c = tuple(to_rat(x) for x in self.c)
        A = tuple(tuple(to_rat(x) for x in row) for row in self.A)
        b = tuple(to_rat(x) for x in self.b)
        if len(A) != len(b):
            raise DomainError(f"{len(A)} constraint rows but {len(b)} right-hand sides")
        if any(len(row) != len(c) for row in A):
            raise DomainError("constraint row length differs from the number of variables")
        if any(x < 0 for x in c):
            raise DomainError("objective must be nonnegative")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class LPResult:
    w: tuple[Fraction, ...]
    value: Fraction
    dual: tuple[Fraction, ...]  # optimality certificate: b.dual == value, A^T dual <= c

    def binding(self) -> list[int]:
        return [i for i, y in enumerate(self.dual) if y != 0]


def simplex_int(c: Sequence[int], A: Sequence[Sequence[int]], b: Sequence[int]):
    """Integer core of :func:`lp_solve`: returns ``(w_num, y_num, det)``.

    Values are ``w = w_num / det`` and ``y = y_num / det``; pivoting is
    fraction-free, so every entry stays an exact integer.
    """
    m, k = len(c), len(b)
    ncol = k + m
    T = [[A[j][i] for j in range(k)] + [int(i == t) for t in range(m)] + [c[i]] for i in range(m)]
    z = [-x for x in b] + [0] * m + [0]
    basis = [k + i for i in range(m)]
    det = 1
    while True:
        enter = next((j for j in range(ncol) if z[j] < 0), None)
        if enter is None:
            break
        r = None
        for i in range(m):
            a = T[i][enter]
            if a <= 0:
                continue
            if r is None:
                r = i
                continue
            lhs, rhs = T[i][-1] * T[r][enter], T[r][-1] * a
            if lhs < rhs or (lhs == rhs and basis[i] < basis[r]):
                r = i
        if r is None:
            raise InfeasibleError("covering constraints cannot be met: the dual is unbounded")
        pr = T[r]
        piv = pr[enter]
        for i in range(m):
            if i != r:
                f = T[i][enter]
                if f:
                    T[i] = [(x * piv - f * y) // det for x, y in zip(T[i], pr)]
                elif piv != det:
                    T[i] = [x * piv // det for x in T[i]]
        f = z[enter]
        z = [(x * piv - f * y) // det for x, y in zip(z, pr)]
        det = piv
        basis[r] = enter
    y = [0] * k
    for i, bv in enumerate(basis):
        if bv < k:
            y[bv] = T[i][-1]
    return z[k:k + m], y, det


def lp_solve(p: LinearProgram, verify: bool = True) -> LPResult:
    m = len(p.c)  # primal variables = dual rows
    k = len(p.b)  # primal constraints = dual variables
    if k == 0:
        return LPResult((Fraction(0),) * m, Fraction(0), ())
    # integer data: rows scaled by L (slacks rescaled to keep unit columns), objective by M
    L = 1
    for x in p.c + tuple(a for row in p.A for a in row):
        L = lcm(L, x.denominator)
    M = 1
    for x in p.b:
        M = lcm(M, x.denominator)
    c = [int(x * L) for x in p.c]
    A = [[int(a * L) for a in row] for row in p.A]
    b = [int(x * M) for x in p.b]
    wn, yn, det = simplex_int(c, A, b)
    y = tuple(Fraction(v, det) for v in yn)
    w = tuple(Fraction(v * L, det * M) for v in wn)
    value = sum((bj * yj for bj, yj in zip(p.b, y) if yj), Fraction(0))
    res = LPResult(w, value, y)
    if verify:
        check_certificate(p, res)
    return res


def check_certificate(p: LinearProgram, res: LPResult) -> None:
    """Assert primal and dual feasibility and equal objectives (hence optimality)."""
    w, y, value = res.w, res.dual, res.value
    assert all(x >= 0 for x in w) and all(x >= 0 for x in y)
    zero = Fraction(0)
    col = [zero] * len(p.c)
    for row, bj, yj in zip(p.A, p.b, y):
        assert sum((a * x for a, x in zip(row, w) if a and x), zero) >= bj, "primal infeasible"
        if yj:
            for i, a in enumerate(row):
                if a:
                    col[i] += a * yj
    assert all(s <= c for s, c in zip(col, p.c)), "dual infeasible"
    assert sum((c * x for c, x in zip(p.c, w) if x), zero) == value
    assert sum((b * x for b, x in zip(p.b, y) if x), zero) == value
