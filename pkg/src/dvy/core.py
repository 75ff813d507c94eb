"""Finite diversities, finite metrics and the axiom checker.

Subsets of a ground set are bitmasks: bit ``i`` marks the ``i``-th declared
element.  Every scalar is a :class:`fractions.Fraction`; nothing in this
package rounds.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .errors import DomainError, InputError, SizeError

MAX_GROUND = 16
MAX_TIGHT = 10

Rat = Fraction


# ---------------------------------------------------------------------------
# rationals and masks


def to_rat(x) -> Fraction:
    """Parse an integer, ``"p/q"`` string, decimal string or float exactly."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise InputError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        # repr gives the shortest decimal that round-trips; 0.6 -> 3/5
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(f"not a rational: {x!r}") from None
    raise InputError(f"not a number: {x!r}")


def fmt_rat(q: Fraction) -> str:
    return str(Fraction(q))


def popcount(mask: int) -> int:
    return mask.bit_count()


def bits(mask: int) -> list[int]:
    """Indices of the set bits, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def submasks(mask: int):
    """All submasks of ``mask`` including 0, in decreasing order."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def subset_order(n: int, include_empty: bool = False) -> list[int]:
    """Masks sorted by cardinality, then by value."""
    start = 0 if include_empty else 1
    return sorted(range(start, 1 << n), key=lambda m: (m.bit_count(), m))


def scale_to_int(*tables: Sequence[Fraction]) -> tuple[int, list[list[int]]]:
    """Common denominator ``L`` and each table multiplied by ``L`` as ints."""
    den = 1
    for t in tables:
        for v in t:
            den = lcm(den, v.denominator)
    return den, [[v.numerator * (den // v.denominator) for v in t] for t in tables]


# ---------------------------------------------------------------------------
# ground sets


@dataclass(frozen=True)
class GroundSet:
    labels: tuple[str, ...]
    index: dict = field(init=False, compare=False, hash=False, repr=False)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        if not labels:
            raise InputError("ground set is empty")
        if len(labels) > MAX_GROUND:
            raise SizeError(f"ground set has {len(labels)} elements; cap is {MAX_GROUND}")
        if len(set(labels)) != len(labels):
            raise InputError(f"duplicate element names in {list(labels)}")
        object.__setattr__(self, "index", {x: i for i, x in enumerate(labels)})

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __len__(self):
        return self.n

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for x in names:
            try:
                m |= 1 << self.index[str(x)]
            except KeyError:
                raise InputError(f"unknown element {x!r}") from None
        return m

    def bit(self, name: str) -> int:
        return self.mask([name])

    def names(self, mask: int) -> list[str]:
        return [self.labels[i] for i in bits(mask)]


def _ground(g) -> GroundSet:
    return g if isinstance(g, GroundSet) else GroundSet(tuple(g))


# ---------------------------------------------------------------------------
# diversities, metrics, point sets


@dataclass(frozen=True)
class FiniteDiversity:
    """Dense table of a set function indexed by subset mask.

    The constructor only checks shape; :func:`check_axioms` decides whether
    the table is a diversity.
    """

    ground: GroundSet
    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "ground", _ground(self.ground))
        vals = tuple(to_rat(v) for v in self.values)
        if len(vals) != 1 << self.ground.n:
            raise InputError(f"expected {1 << self.ground.n} values, got {len(vals)}")
        if vals[0] != 0:
            raise InputError("value of the empty set must be 0")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return self.ground.n

    @property
    def elements(self) -> tuple[str, ...]:
        return self.ground.labels

    def __call__(self, mask: int) -> Fraction:
        return self.values[mask]

    def of(self, *names: str) -> Fraction:
        return self.values[self.ground.mask(names)]

    @classmethod
    def from_function(cls, ground, fn: Callable[[int], object]) -> "FiniteDiversity":
        g = _ground(ground)
        return cls(g, tuple(to_rat(fn(m)) if m else Fraction(0) for m in range(1 << g.n)))

    @classmethod
    def from_sets(cls, elements, table: Mapping[Iterable[str], object]) -> "FiniteDiversity":
        """Build from ``{subset: value}``; empty set and singletons default to 0.

        Every subset with at least two elements must be present.
        """
        g = _ground(elements)
        vals: list[Fraction | None] = [None] * (1 << g.n)
        vals[0] = Fraction(0)
        for m in range(1 << g.n):
            if m.bit_count() == 1:
                vals[m] = Fraction(0)
        for key, v in table.items():
            names = [key] if isinstance(key, str) else list(key)
            m = g.mask(names)
            if len(set(names)) != len(names):
                raise InputError(f"repeated element in subset {names}")
            vals[m] = to_rat(v)
        missing = [g.names(m) for m, v in enumerate(vals) if v is None]
        if missing:
            raise InputError(f"missing values for subsets {missing[:5]}" + (" ..." if len(missing) > 5 else ""))
        return cls(g, tuple(vals))

    def with_value(self, mask: int, value) -> "FiniteDiversity":
        vals = list(self.values)
        vals[mask] = to_rat(value)
        return FiniteDiversity(self.ground, tuple(vals))


@dataclass(frozen=True)
class FiniteMetric:
    ground: GroundSet
    dist: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "ground", _ground(self.ground))
        n = self.ground.n
        rows = tuple(tuple(to_rat(v) for v in row) for row in self.dist)
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InputError(f"distance matrix must be {n}x{n}")
        object.__setattr__(self, "dist", rows)
        problems = metric_violations(self)
        if problems:
            raise DomainError(problems[0])

    @property
    def n(self) -> int:
        return self.ground.n

    def __call__(self, i: int, j: int) -> Fraction:
        return self.dist[i][j]

    def d(self, x: str, y: str) -> Fraction:
        return self.dist[self.ground.index[x]][self.ground.index[y]]


def metric_violations(m: FiniteMetric) -> list[str]:
    n, d, lab = m.ground.n, m.dist, m.ground.labels
    out = []
    for i in range(n):
        if d[i][i] != 0:
            out.append(f"M1: d({lab[i]},{lab[i]}) = {d[i][i]} != 0")
        for j in range(n):
            if d[i][j] != d[j][i]:
                out.append(f"M1: d({lab[i]},{lab[j]}) != d({lab[j]},{lab[i]})")
            if i != j and d[i][j] <= 0:
                out.append(f"M1: d({lab[i]},{lab[j]}) = {d[i][j]} is not positive")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if d[i][k] > d[i][j] + d[j][k]:
                    out.append(f"M2: d({lab[i]},{lab[k]}) > d({lab[i]},{lab[j]}) + d({lab[j]},{lab[k]})")
    return out


@dataclass(frozen=True)
class PointSet:
    ground: GroundSet
    coords: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "ground", _ground(self.ground))
        rows = tuple(tuple(to_rat(v) for v in row) for row in self.coords)
        if len(rows) != self.ground.n:
            raise InputError("one coordinate vector per element is required")
        dims = {len(r) for r in rows}
        if len(dims) != 1 or 0 in dims:
            raise InputError("all coordinate vectors must share one positive dimension")
        object.__setattr__(self, "coords", rows)

    @property
    def dim(self) -> int:
        return len(self.coords[0])


# ---------------------------------------------------------------------------
# axiom checking


@dataclass(frozen=True)
class Violation:
    """One failed axiom instance.

    ``sets`` holds the witness masks: ``(A,)`` for D1, ``(A, B)`` with
    ``A ⊆ B`` for D3 and ``(A, B, C)`` for D2.  ``lhs``/``rhs`` are the two
    sides of the failed inequality (for D1 ``rhs`` is the required value or
    bound).
    """

    axiom: str
    sets: tuple[int, ...]
    lhs: Fraction
    rhs: Fraction

    def as_dict(self, ground: GroundSet) -> dict:
        keys = "ABC"
        out: dict = {"axiom": self.axiom}
        for k, m in zip(keys, self.sets):
            out[k] = ground.names(m)
        out["lhs"] = fmt_rat(self.lhs)
        out["rhs"] = fmt_rat(self.rhs)
        return out


@dataclass
class AxiomReport:
    passed: bool
    violations: list[Violation]
    counts: dict[str, int]
    exhaustive: bool = True

    def __bool__(self):
        return self.passed


def verify_violation(delta: FiniteDiversity, v: Violation) -> bool:
    """Re-evaluate a witness against the table; True when it really fails."""
    val = delta.values
    if v.axiom == "D1":
        (a,) = v.sets
        if a.bit_count() <= 1:
            return val[a] != 0
        return val[a] <= 0
    if v.axiom == "D3":
        a, b = v.sets
        return a & ~b == 0 and val[a] > val[b]
    if v.axiom == "D2":
        a, b, c = v.sets
        return b != 0 and val[a | c] > val[a | b] + val[b | c]
    raise ValueError(v.axiom)


def _witness_key(sets: tuple[int, ...]):
    return (sum(s.bit_count() for s in sets),) + sets


def _check_d1(val, n, limit):
    out, count = [], 0
    for m in subset_order(n):
        v = val[m]
        bad = v != 0 if m.bit_count() == 1 else v <= 0
        if bad:
            count += 1
            if len(out) < limit:
                out.append(Violation("D1", (m,), v, Fraction(0)))
    return out, count


def _check_d3(val, n, limit):
    found = []
    count = 0
    for a in range(1 << n):
        for i in range(n):
            b = a | (1 << i)
            if b != a and val[a] > val[b]:
                count += 1
                found.append((a, b))
    found.sort(key=_witness_key)
    return [Violation("D3", s, val[s[0]], val[s[1]]) for s in found[:limit]], count


def _check_d2_exhaustive(ints, n):
    """Minimal-size D2 witness over all (A, B, C) with B nonempty, or None."""
    N = 1 << n
    top = max(abs(v) for v in ints)
    dtype = np.int64 if top < (1 << 61) else object
    arr = np.array(ints, dtype=dtype)
    idx = np.arange(N)
    pc = np.array([m.bit_count() for m in range(N)])
    rows = N if n <= 11 else max(1, (1 << 22) // N)
    best, count = None, 0
    for a0 in range(0, N, rows):
        A = idx[a0:a0 + rows]
        lhs = arr[A[:, None] | idx[None, :]]
        for b in range(1, N):
            row = arr[idx | b]
            bad = lhs > (row[A][:, None] + row[None, :])
            if not bad.any():
                continue
            ai, ci = np.nonzero(bad)
            count += len(ai)
            size = pc[A[ai]] + pc[ci]
            k = np.lexsort((ci, A[ai], size))[0]
            cand = (int(A[ai[k]]), b, int(ci[k]))
            if best is None or _witness_key(cand) < _witness_key(best):
                best = cand
    return best, count


def _check_d2_fast(val, n):
    """Pairwise disjoint A, B, C with B a singleton."""
    full = (1 << n) - 1
    best, count = None, 0
    for i in range(n):
        b = 1 << i
        rest = full ^ b
        for a in submasks(rest):
            vab = val[a | b]
            for c in submasks(rest ^ a):
                if val[a | c] > vab + val[b | c]:
                    count += 1
                    cand = (a, b, c)
                    if best is None or _witness_key(cand) < _witness_key(best):
                        best = cand
    return best, count


def check_axioms(candidate: FiniteDiversity, fast: bool = False, limit: int = 10) -> AxiomReport:
    """Check D1, D2 and D3 on a dense table.

    D2 is exhaustive over all triples unless ``fast`` is set, in which case
    only pairwise-disjoint triples with a singleton pivot are examined (a
    necessary condition, not a sufficient one).  Each axiom contributes at
    most ``limit`` violations, smallest witnesses first.
    """
    n = candidate.n
    if n > MAX_GROUND:
        raise SizeError(f"n = {n} exceeds {MAX_GROUND}")
    val = candidate.values
    d1, c1 = _check_d1(val, n, limit)
    d3, c3 = _check_d3(val, n, limit)
    if fast:
        w, c2 = _check_d2_fast(val, n)
    else:
        _, (ints,) = scale_to_int(val)
        w, c2 = _check_d2_exhaustive(ints, n)
    d2 = [] if w is None else [Violation("D2", w, val[w[0] | w[2]], val[w[0] | w[1]] + val[w[1] | w[2]])]
    violations = d1 + d2 + d3
    for v in violations:
        assert verify_violation(candidate, v), v
    return AxiomReport(
        passed=not violations,
        violations=violations,
        counts={"D1": c1, "D2": c2, "D3": c3},
        exhaustive=not fast,
    )


def require_diversity(delta: FiniteDiversity, fast: bool = False) -> FiniteDiversity:
    rep = check_axioms(delta, fast=fast, limit=1)
    if not rep.passed:
        v = rep.violations[0]
        raise DomainError(f"not a diversity: {v.axiom} fails at {v.as_dict(delta.ground)}")
    return delta


# ---------------------------------------------------------------------------
# constructions


def induced_metric(delta: FiniteDiversity) -> FiniteMetric:
    g = delta.ground
    rows = [[delta.values[(1 << i) | (1 << j)] if i != j else Fraction(0) for j in range(g.n)] for i in range(g.n)]
    return FiniteMetric(g, tuple(tuple(r) for r in rows))


def diameter_diversity(d: FiniteMetric) -> FiniteDiversity:
    n = d.n
    vals = [Fraction(0)] * (1 << n)
    for m in range(1, 1 << n):
        top = m.bit_length() - 1
        rest = m ^ (1 << top)
        best = vals[rest]
        for j in bits(rest):
            if d.dist[top][j] > best:
                best = d.dist[top][j]
        vals[m] = best
    return FiniteDiversity(d.ground, tuple(vals))


def l1_diversity(p: PointSet) -> FiniteDiversity:
    """Sum over coordinates of the coordinate range of the subset."""
    n = p.ground.n
    lo = [None] * (1 << n)
    hi = [None] * (1 << n)
    vals = [Fraction(0)] * (1 << n)
    for m in range(1, 1 << n):
        low = (m & -m).bit_length() - 1
        x = p.coords[low]
        rest = m & (m - 1)
        if rest == 0:
            lo[m], hi[m] = x, x
            continue
        lo[m] = tuple(min(a, b) for a, b in zip(lo[rest], x))
        hi[m] = tuple(max(a, b) for a, b in zip(hi[rest], x))
        vals[m] = sum((h - l for h, l in zip(hi[m], lo[m])), Fraction(0))
    return FiniteDiversity(p.ground, tuple(vals))


def truncate(delta: FiniteDiversity, k: int) -> FiniteDiversity:
    """``A -> max{delta(B) : B ⊆ A, |B| <= k}``."""
    if k < 2:
        raise DomainError(f"truncation order must be >= 2, got {k}")
    out = list(delta.values)
    for m in subset_order(delta.n):
        if m.bit_count() > k:
            out[m] = max(out[m ^ (1 << i)] for i in bits(m))
    return FiniteDiversity(delta.ground, tuple(out))


def sum_diversities(*ds: FiniteDiversity) -> FiniteDiversity:
    g = ds[0].ground
    return FiniteDiversity(g, tuple(sum(vs, Fraction(0)) for vs in zip(*(d.values for d in ds))))


def max_diversities(*ds: FiniteDiversity) -> FiniteDiversity:
    g = ds[0].ground
    return FiniteDiversity(g, tuple(max(vs) for vs in zip(*(d.values for d in ds))))


def cardinality_diversity(elements) -> FiniteDiversity:
    return FiniteDiversity.from_function(elements, lambda m: m.bit_count() if m.bit_count() >= 2 else 0)


def nonempty_subsets(n: int, min_size: int = 1):
    for r in range(min_size, n + 1):
        for c in combinations(range(n), r):
            yield sum(1 << i for i in c)
