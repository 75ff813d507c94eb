"""Tight span of a finite diversity.

Points of the tight span are set functions ``f`` with ``f(∅) = 0`` that are
pointwise minimal among those dominating the diversity on every finite
collection of subsets.  All heavy lifting happens on integer tables: the
diversity and the functions involved are rescaled by a common denominator,
the subset DPs run on Python ints, and results are divided back out.

Two cover functionals appear here:

* the *exact* cover ``Φ(Y)``: cheapest collection whose union is exactly
  ``Y`` (used by :func:`phi_cover` / :func:`phi_table` and the
  hyperconvex construction);
* the *upward* cover ``Φ⁺(Y) = min_{Z ⊇ Y} Φ(Z)``, cheaper to compute
  (3^n instead of 4^n).  Any supremum of the form ``sup_Y h(Y) - Φ(Y)``
  with ``h`` monotone is unchanged by swapping Φ for Φ⁺, which is how
  membership, minimisation and ``delta_T`` use it.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .core import (
    MAX_TIGHT,
    FiniteDiversity,
    GroundSet,
    _ground,
    bits,
    fmt_rat,
    scale_to_int,
    subset_order,
    submasks,
    to_rat,
)
from .errors import ConvergenceError, DomainError, InputError, SizeError

INF = math.inf


@dataclass(frozen=True)
class SpanFunction:
    """A rational set function with value 0 on the empty set."""

    ground: GroundSet
    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "ground", _ground(self.ground))
        vals = tuple(to_rat(v) for v in self.values)
        if len(vals) != 1 << self.ground.n:
            raise InputError(f"expected {1 << self.ground.n} values, got {len(vals)}")
        if vals[0] != 0:
            raise InputError("f(∅) must be 0")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return self.ground.n

    def __call__(self, mask: int) -> Fraction:
        return self.values[mask]

    def of(self, *names: str) -> Fraction:
        return self.values[self.ground.mask(names)]

    def singletons(self) -> tuple[Fraction, ...]:
        return tuple(self.values[1 << i] for i in range(self.n))

    @classmethod
    def from_sets(cls, elements, table: Mapping) -> "SpanFunction":
        g = _ground(elements)
        vals: list = [None] * (1 << g.n)
        vals[0] = Fraction(0)
        for key, v in table.items():
            names = [key] if isinstance(key, str) else list(key)
            vals[g.mask(names)] = to_rat(v)
        missing = [g.names(m) for m, v in enumerate(vals) if v is None]
        if missing:
            raise InputError(f"function is missing values for {missing[:5]}")
        return cls(g, tuple(vals))

    @classmethod
    def constant(cls, ground, c) -> "SpanFunction":
        g = _ground(ground)
        c = to_rat(c)
        return cls(g, (Fraction(0),) + (c,) * ((1 << g.n) - 1))


def _tight_cap(n: int):
    if n > MAX_TIGHT:
        raise SizeError(f"tight-span operations are capped at {MAX_TIGHT} elements, got {n}")


def _same_ground(delta, *fs):
    for f in fs:
        if f.ground != delta.ground:
            raise InputError(f"ground sets differ: {list(f.ground.labels)} vs {list(delta.ground.labels)}")


# ---------------------------------------------------------------------------
# integer kernels


def _superset_min(w: list, n: int) -> list:
    """``out[T] = min_{B ⊇ T} w[B]``."""
    out = list(w)
    N = 1 << n
    for i in range(n):
        bit = 1 << i
        for S in range(N):
            if not S & bit:
                v = out[S | bit]
                if v < out[S]:
                    out[S] = v
    return out


def _superset_argmin(w: list, n: int) -> tuple[list, list]:
    val = list(w)
    arg = list(range(1 << n))
    for i in range(n):
        bit = 1 << i
        for S in range(1 << n):
            if not S & bit:
                v = val[S | bit]
                if v < val[S]:
                    val[S] = v
                    arg[S] = arg[S | bit]
    return val, arg


def _upward_cover(wdown: list, n: int) -> list:
    """``G[S]``: cheapest collection whose union contains ``S``.

    ``wdown`` is the superset-min of the weights, i.e. the cheapest set
    containing a given trace.  Each step fixes the piece covering the lowest
    element of ``S``.
    """
    N = 1 << n
    G = [0] * N
    for S in range(1, N):
        low = S & -S
        rest = S ^ low
        best = INF
        sub = rest
        while True:
            T = sub | low
            v = wdown[T] + G[S ^ T]
            if v < best:
                best = v
            if sub == 0:
                break
            sub = (sub - 1) & rest
        G[S] = best
    return G


def _upward_cover_trace(w: list, n: int) -> tuple[list, list, list]:
    wdown, arg = _superset_argmin(w, n)
    N = 1 << n
    G = [0] * N
    choice = [0] * N
    for S in range(1, N):
        low = S & -S
        rest = S ^ low
        best, pick = INF, 0
        for sub in submasks(rest):
            T = sub | low
            v = wdown[T] + G[S ^ T]
            if v < best:
                best, pick = v, T
        G[S], choice[S] = best, pick
    return G, choice, arg


def _trace_collection(S: int, choice: list, arg: list) -> list[int]:
    sets = []
    while S:
        T = choice[S]
        B = arg[T]
        if B not in sets:
            sets.append(B)
        S ^= T
    return sorted(sets, key=lambda m: (m.bit_count(), m))


def _exact_cover(w: list, n: int) -> list:
    """``H[Y]``: cheapest collection (weights ``w``) with union exactly ``Y``.

    An inclusion-minimal optimal collection is either one set or splits into
    two sub-collections with proper unions ``Y1 ∪ Y2 = Y``; ``Y1`` is taken
    to hold the lowest element of ``Y``.
    """
    N = 1 << n
    H = [INF] * N
    H[0] = 0
    for Y in range(1, N):
        best = w[Y]
        low = Y & -Y
        rest = Y ^ low
        for s1 in submasks(rest):
            Y1 = low | s1
            if Y1 == Y:
                continue
            h1 = H[Y1]
            if h1 >= best:
                continue
            need = Y ^ Y1
            for s2 in submasks(Y1):
                if s2 == Y1:
                    continue
                v = h1 + H[need | s2]
                if v < best:
                    best = v
        H[Y] = best
    return H


def _unscale(x, den):
    return x if x == INF else Fraction(x, den)


def _weights_of(weights) -> tuple[Fraction, ...]:
    if isinstance(weights, (SpanFunction, FiniteDiversity)):
        return weights.values
    return tuple(to_rat(v) for v in weights)


# ---------------------------------------------------------------------------
# cover functional


def phi_cover(weights, Y: int, excluded: int | None = None) -> Fraction:
    """Cheapest collection of nonempty subsets of ``Y`` with union exactly ``Y``.

    ``weights`` is a table indexed by mask (a :class:`SpanFunction` or any
    sequence).  ``excluded`` bars one set from the collection.  Runs the
    remaining-set DP over ``R ⊆ Y`` directly, ``O(4^|Y|)``.
    """
    w = _weights_of(weights)
    if any(v < 0 for v in w[1:]):
        raise DomainError("cover weights must be nonnegative")
    pieces = [B for B in submasks(Y) if B and B != excluded]
    M = {0: Fraction(0)}
    for R in sorted(submasks(Y)):
        if R == 0:
            continue
        best = INF
        for B in pieces:
            if B & R:
                v = w[B] + M[R & ~B]
                if v < best:
                    best = v
        M[R] = best
    return M[Y]


def phi_table(weights, excluded: int | None = None) -> list:
    """:func:`phi_cover` for every ``Y`` at once (``INF`` where no cover exists)."""
    w = _weights_of(weights)
    n = (len(w) - 1).bit_length()
    if any(v < 0 for v in w[1:]):
        raise DomainError("cover weights must be nonnegative")
    den, (ints,) = scale_to_int(w)
    ints = [INF if (m == excluded and m) else v for m, v in enumerate(ints)]
    return [_unscale(x, den) for x in _exact_cover(ints, n)]


def min_weights(F: Sequence[SpanFunction]) -> tuple[Fraction, ...]:
    return tuple(min(col) for col in zip(*(f.values for f in F)))


# ---------------------------------------------------------------------------
# membership


@dataclass(frozen=True)
class CoverViolation:
    """A collection whose total falls short of the diversity of its union."""

    S: int
    cover: tuple[int, ...]
    cost: Fraction
    required: Fraction

    def as_dict(self, g: GroundSet) -> dict:
        return {
            "S": g.names(self.S),
            "cover": [g.names(m) for m in self.cover],
            "cost": fmt_rat(self.cost),
            "required": fmt_rat(self.required),
        }


@dataclass(frozen=True)
class SlackWitness:
    """A subset where ``f(A)`` exceeds ``max_B δ(A ∪ B) - f(B)``."""

    A: int
    sup: Fraction
    value: Fraction

    def as_dict(self, g: GroundSet) -> dict:
        return {"A": g.names(self.A)}


@dataclass(frozen=True)
class PCheck:
    ok: bool
    witness: CoverViolation | None = None

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class MembershipReport:
    in_P: bool
    in_T: bool
    witness: CoverViolation | SlackWitness | None = None

    def __post_init__(self):
        assert self.in_P or not self.in_T

    def __bool__(self):
        return self.in_T

    def as_dict(self, g: GroundSet) -> dict:
        out: dict = {"in_P": self.in_P, "in_T": self.in_T}
        if self.witness is not None:
            out["witness"] = self.witness.as_dict(g)
        return out


def in_P(delta: FiniteDiversity, f: SpanFunction) -> PCheck:
    """Does ``f`` dominate ``delta`` on every finite collection?"""
    _same_ground(delta, f)
    n = delta.n
    _tight_cap(n)
    den, (d, w) = scale_to_int(delta.values, f.values)
    for A in subset_order(n):
        if w[A] < d[A]:
            return PCheck(False, CoverViolation(A, (A,), f.values[A], delta.values[A]))
    G, choice, arg = _upward_cover_trace(w, n)
    for S in subset_order(n):
        if G[S] < d[S]:
            cover = _trace_collection(S, choice, arg)
            Z = 0
            for B in cover:
                Z |= B
            cost = sum((f.values[B] for B in cover), Fraction(0))
            # the collection covers Z ⊇ S and δ is monotone, so Z is violated too
            return PCheck(False, CoverViolation(Z, tuple(cover), cost, delta.values[Z]))
    return PCheck(True)


def verify_cover_violation(delta: FiniteDiversity, f: SpanFunction, w: CoverViolation) -> bool:
    union = 0
    for B in w.cover:
        union |= B
    cost = sum((f.values[B] for B in w.cover), Fraction(0))
    return union == w.S and cost == w.cost and cost < delta.values[w.S]


def tight_slack(delta: FiniteDiversity, f: SpanFunction, A: int) -> Fraction:
    """``max_B δ(A ∪ B) - f(B)`` over all ``B`` including ∅."""
    v, fv = delta.values, f.values
    return max(v[A | B] - fv[B] for B in range(1 << delta.n))


def in_T(delta: FiniteDiversity, f: SpanFunction) -> MembershipReport:
    """Tight-span membership with a witness on failure.

    ``f`` is tight iff it lies in ``P_X`` and every nonempty ``A`` satisfies
    ``f(A) = max_B δ(A ∪ B) - f(B)``.
    """
    p = in_P(delta, f)
    if not p:
        return MembershipReport(False, False, p.witness)
    n = delta.n
    den, (d, w) = scale_to_int(delta.values, f.values)
    N = 1 << n
    for A in subset_order(n):
        s = max(d[A | B] - w[B] for B in range(N))
        if s != w[A]:
            return MembershipReport(True, False, SlackWitness(A, Fraction(s, den), f.values[A]))
    return MembershipReport(True, True)


@lru_cache(maxsize=16384)
def _certified(delta: FiniteDiversity, f: SpanFunction) -> bool:
    return in_T(delta, f).in_T


def is_tight(delta: FiniteDiversity, f: SpanFunction) -> bool:
    """Cached :func:`in_T` verdict."""
    return _certified(delta, f)


# ---------------------------------------------------------------------------
# Kuratowski embedding, minimisation, induced diversity


def kuratowski(delta: FiniteDiversity, x: str) -> SpanFunction:
    """``h_x(A) = δ(A ∪ {x})``."""
    b = delta.ground.bit(x)
    v = delta.values
    return SpanFunction(delta.ground, tuple(v[m | b] if m else Fraction(0) for m in range(1 << delta.n)))


def kuratowski_all(delta: FiniteDiversity) -> list[SpanFunction]:
    return [kuratowski(delta, x) for x in delta.elements]


def minimize_to_tight(delta: FiniteDiversity, g: SpanFunction, max_sweeps: int | None = None) -> SpanFunction:
    """Lower ``g`` coordinate by coordinate until it is pointwise minimal.

    Sweeps run over nonempty subsets by (cardinality, mask).  Each update
    sets ``f(A)`` to the least value keeping every collection that avoids
    ``A`` satisfied, so feasibility is preserved and values only decrease.
    """
    _same_ground(delta, g)
    n = delta.n
    _tight_cap(n)
    p = in_P(delta, g)
    if not p:
        raise DomainError(f"starting function is not in P_X: {p.witness.as_dict(delta.ground)}")
    den, (d, f) = scale_to_int(delta.values, g.values)
    N = 1 << n
    order = subset_order(n)
    if max_sweeps is None:
        max_sweeps = 4 * N
    for _ in range(max_sweeps):
        changed = False
        for A in order:
            saved = f[A]
            f[A] = INF
            G = _upward_cover(_superset_min(f, n), n)
            new = max(d[A | U] - G[U] for U in range(N))
            assert new <= saved
            f[A] = new
            if new < saved:
                changed = True
        if not changed:
            break
    else:
        raise ConvergenceError(f"no exact fixpoint after {max_sweeps} sweeps")
    out = SpanFunction(delta.ground, tuple(Fraction(v, den) for v in f))
    rep = in_T(delta, out)
    if not rep:
        raise ConvergenceError(f"fixpoint failed the tight-span check: {rep}")
    return out


def _distinct(F: Iterable[SpanFunction]) -> list[SpanFunction]:
    out = []
    for f in F:
        if f not in out:
            out.append(f)
    return out


def _certify_all(delta, fams, check):
    _same_ground(delta, *fams)
    _tight_cap(delta.n)
    if check:
        for f in fams:
            if not _certified(delta, f):
                raise DomainError("family member is not in the tight span")


def delta_T(delta: FiniteDiversity, F: Iterable[SpanFunction], check: bool = True) -> Fraction:
    """Diversity of a finite family of tight-span points.

    ``max_Y δ(Y) - Φ_F(Y)`` where the cover weights are the pointwise minimum
    over the family.
    """
    fams = _distinct(F)
    if not fams:
        raise DomainError("delta_T needs a nonempty family")
    _certify_all(delta, fams, check)
    n = delta.n
    den, tabs = scale_to_int(delta.values, *(f.values for f in fams))
    d = tabs[0]
    w = [min(col) for col in zip(*tabs[1:])]
    G = _upward_cover(_superset_min(w, n), n)
    return Fraction(max(d[Y] - G[Y] for Y in range(1 << n)), den)


def delta_T_from_member(delta: FiniteDiversity, F: Iterable[SpanFunction], f: SpanFunction,
                        check: bool = True) -> Fraction:
    """``max_Y f(Y) - Φ_{F∖{f}}(Y)`` with the exact-union cover.

    Equals :func:`delta_T` for every choice of ``f ∈ F``; kept as a second,
    independently computed route.
    """
    fams = _distinct(F)
    if f not in fams:
        raise DomainError("distinguished function must belong to the family")
    _certify_all(delta, fams, check)
    others = [g for g in fams if g != f]
    if not others:
        return Fraction(0)
    phi = phi_table(min_weights(others))
    return max(f.values[Y] - phi[Y] for Y in range(1 << delta.n))


# ---------------------------------------------------------------------------
# sampling


def _rand_rat(rng: random.Random, hi: int = 8, den: int = 4) -> Fraction:
    return Fraction(rng.randint(0, hi), den)


def sample_tight(delta: FiniteDiversity, seed: int, count: int) -> list[SpanFunction]:
    """Deterministic pseudo-random tight-span points.

    Starting points cycle through three feasible families (shifted constant
    ``max δ``; nonnegative mixtures of Kuratowski functions; pointwise maxima
    of Kuratowski functions), each with a random nonnegative perturbation,
    and are then minimised.
    """
    if count < 1:
        raise DomainError("count must be at least 1")
    _tight_cap(delta.n)
    rng = random.Random(seed)
    n, N = delta.n, 1 << delta.n
    top = max(delta.values)
    hs = kuratowski_all(delta)
    out = []
    for i in range(count):
        kind = i % 3
        if kind == 0:
            vals = [top + _rand_rat(rng) for _ in range(N)]
        elif kind == 1:
            lam = [rng.randint(0, 4) for _ in range(n)]
            if not any(lam):
                lam[rng.randrange(n)] = 1
            tot = sum(lam)
            vals = [sum((Fraction(l, tot) * h.values[m] for l, h in zip(lam, hs)), Fraction(0)) for m in range(N)]
            vals = [v + (_rand_rat(rng, 4) if rng.random() < 0.3 else 0) for v in vals]
        else:
            pick = [h for h in hs if rng.random() < 0.5] or [rng.choice(hs)]
            vals = [max(h.values[m] for h in pick) + (_rand_rat(rng, 4) if rng.random() < 0.3 else 0)
                    for m in range(N)]
        vals[0] = Fraction(0)
        out.append(minimize_to_tight(delta, SpanFunction(delta.ground, tuple(vals))))
    return out


# ---------------------------------------------------------------------------
# hyperconvexity


@dataclass(frozen=True)
class Constraint:
    """Radius bound ``δ_T(family ∪ {g}) ≤ radius`` for the point sought."""

    family: tuple[SpanFunction, ...]
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "family", tuple(_distinct(self.family)))
        object.__setattr__(self, "radius", to_rat(self.radius))
        if not self.family:
            raise DomainError("constraint family must be nonempty")


class PremiseError(DomainError):
    def __init__(self, offending: tuple[int, ...], radius_sum: Fraction, required: Fraction):
        self.offending = offending
        self.radius_sum = radius_sum
        self.required = required
        super().__init__(f"constraints {list(offending)}: radii sum {radius_sum} < delta_T {required}")


def premise_violation(delta: FiniteDiversity, constraints: Sequence[Constraint]):
    """First sub-list (as an index tuple) whose radii undercut ``delta_T``, else None."""
    k = len(constraints)
    for m in subset_order(k):
        idx = tuple(bits(m))
        fam = [f for i in idx for f in constraints[i].family]
        r = sum((constraints[i].radius for i in idx), Fraction(0))
        need = delta_T(delta, fam)
        if r < need:
            return idx, r, need
    return None


def hyperconvex_extension(delta: FiniteDiversity, constraints: Sequence[Constraint]) -> SpanFunction:
    """A tight-span point within every constraint's radius of its family.

    Builds ``ω(A) = min(max δ, min_i r_i + Φ_{F_i}(A))`` (which lies in
    ``P_X`` whenever the premise holds) and minimises it.
    """
    _tight_cap(delta.n)
    for c in constraints:
        _certify_all(delta, c.family, True)
    bad = premise_violation(delta, constraints)
    if bad is not None:
        raise PremiseError(*bad)
    N = 1 << delta.n
    top = max(delta.values)
    omega = [Fraction(0)] + [top] * (N - 1)
    for c in constraints:
        phi = phi_table(min_weights(c.family))
        for A in range(1, N):
            if phi[A] != INF and c.radius + phi[A] < omega[A]:
                omega[A] = c.radius + phi[A]
    g = minimize_to_tight(delta, SpanFunction(delta.ground, tuple(omega)))
    for c in constraints:
        got = delta_T(delta, c.family + (g,))
        assert got <= c.radius, (got, c.radius)
    return g


# ---------------------------------------------------------------------------
# three points


@dataclass(frozen=True)
class ThreePointComplex:
    """Closed-form tight span of a diversity on three points.

    ``v`` are the external vertices (the Kuratowski points), ``u[0]`` the
    central vertex and ``u[1..3]`` the remaining tetrahedron corners.
    """

    d12: Fraction
    d13: Fraction
    d23: Fraction
    d123: Fraction
    beta: Fraction
    v: tuple[tuple[Fraction, Fraction, Fraction], ...]
    u: tuple[tuple[Fraction, Fraction, Fraction], ...]

    def pair_values(self, p) -> tuple[Fraction, Fraction, Fraction]:
        """``(f12, f13, f23)`` forced for a tight point with singletons ``p``."""
        f1, f2, f3 = p
        return (max(self.d12, self.d123 - f3), max(self.d13, self.d123 - f2), max(self.d23, self.d123 - f1))

    def as_function(self, ground, p) -> SpanFunction:
        g = _ground(ground)
        if g.n != 3:
            raise InputError("three-point complex needs a 3-element ground set")
        f12, f13, f23 = self.pair_values(p)
        vals = [Fraction(0), p[0], p[1], f12, p[2], f13, f23, self.d123]
        return SpanFunction(g, tuple(vals))

    def as_dict(self) -> dict:
        return {
            "beta": fmt_rat(self.beta),
            "v": [[fmt_rat(x) for x in p] for p in self.v],
            "u": [[fmt_rat(x) for x in p] for p in self.u],
        }


def three_point_violations(d12, d13, d23, d123) -> list[str]:
    d12, d13, d23, d123 = map(to_rat, (d12, d13, d23, d123))
    out = []
    for name, v in (("d12", d12), ("d13", d13), ("d23", d23)):
        if v <= 0:
            out.append(f"{name} > 0")
    if d13 > d12 + d23:
        out.append("d13 <= d12 + d23")
    if d12 > d13 + d23:
        out.append("d12 <= d13 + d23")
    if d23 > d12 + d13:
        out.append("d23 <= d12 + d13")
    if d123 < max(d12, d13, d23):
        out.append("d123 >= max(d12, d13, d23)")
    for name, v in (("d12 + d13", d12 + d13), ("d12 + d23", d12 + d23), ("d13 + d23", d13 + d23)):
        if d123 > v:
            out.append(f"d123 <= {name}")
    return out


def three_point_complex(d12, d13, d23, d123) -> ThreePointComplex:
    """Vertices of the three-point tight span.

    When ``2·d123 ≥ d12 + d13 + d23`` the centre is
    ``(d123 - d23, d123 - d13, d123 - d12)``; below that threshold the
    tight span is the metric tripod and its centre sits at the Gromov
    products ``((d12 + d13 - d23)/2, ...)``.  Both cases are the
    componentwise maximum of the two expressions.
    """
    d12, d13, d23, d123 = map(to_rat, (d12, d13, d23, d123))
    bad = three_point_violations(d12, d13, d23, d123)
    if bad:
        raise DomainError("invalid three-point diversity: requires " + "; ".join(bad))
    beta = max(2 * d123 - d12 - d23 - d13, Fraction(0))
    u0 = (
        max(d123 - d23, (d12 + d13 - d23) / 2),
        max(d123 - d13, (d12 + d23 - d13) / 2),
        max(d123 - d12, (d13 + d23 - d12) / 2),
    )
    us = [u0]
    for i in range(3):
        p = list(u0)
        p[i] -= beta
        us.append(tuple(p))
    v = ((Fraction(0), d12, d13), (d12, Fraction(0), d23), (d13, d23, Fraction(0)))
    return ThreePointComplex(d12, d13, d23, d123, beta, v, tuple(us))


def complex_of(delta: FiniteDiversity) -> ThreePointComplex:
    if delta.n != 3:
        raise InputError("three-point complex needs a 3-element ground set")
    v = delta.values
    return three_point_complex(v[0b011], v[0b101], v[0b110], v[0b111])


def _on_segment(p, a, b) -> bool:
    if a == b:
        return tuple(p) == tuple(a)
    k = next(i for i in range(3) if a[i] != b[i])
    t = (p[k] - a[k]) / (b[k] - a[k])
    if not 0 <= t <= 1:
        return False
    return all(p[i] == a[i] + t * (b[i] - a[i]) for i in range(3))


def in_complex(c: ThreePointComplex, p) -> bool:
    """Is the singleton profile ``p`` a point of the cell complex?"""
    p = tuple(p)
    for i in range(3):
        if _on_segment(p, c.u[i + 1], c.v[i]):
            return True
    s = [c.u[0][i] - p[i] for i in range(3)]
    return all(x >= 0 for x in s) and sum(s) <= c.beta


def three_point_membership(c: ThreePointComplex, f: SpanFunction) -> bool:
    if f.n != 3:
        raise InputError("three-point membership needs a 3-element ground set")
    vals = f.values
    p = (vals[0b001], vals[0b010], vals[0b100])
    if (vals[0b011], vals[0b101], vals[0b110]) != c.pair_values(p):
        return False
    if vals[0b111] != c.d123:
        return False
    return in_complex(c, p)


def complex_svg(c: ThreePointComplex, size: int = 400) -> str:
    """Project the singleton profiles onto the plane ``f1 + f2 + f3 = const``."""
    import math as _m

    def proj(p):
        x = (float(p[1]) - float(p[0])) * _m.sqrt(3) / 2
        y = float(p[2]) - (float(p[0]) + float(p[1])) / 2
        return x, -y

    pts = [proj(p) for p in c.v + c.u]
    xs = [x for x, _ in pts]
    ys = [y for _, y in pts]
    span = max(max(xs) - min(xs), max(ys) - min(ys)) or 1.0
    pad = 30
    sc = (size - 2 * pad) / span

    def xy(p):
        x, y = proj(p)
        return pad + (x - min(xs)) * sc, pad + (y - min(ys)) * sc

    lines = []
    for i in range(3):
        (x1, y1), (x2, y2) = xy(c.v[i]), xy(c.u[i + 1])
        lines.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="black" stroke-width="2"/>')
    if c.beta > 0:
        for i in range(4):
            for j in range(i + 1, 4):
                (x1, y1), (x2, y2) = xy(c.u[i]), xy(c.u[j])
                lines.append(f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" stroke="steelblue"/>')
    for i, p in enumerate(c.v):
        x, y = xy(p)
        lines.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="4"/>')
        lines.append(f'<text x="{x + 6:.2f}" y="{y - 6:.2f}" font-size="12">h{i + 1}</text>')
    body = "\n  ".join(lines)
    return f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">\n  {body}\n</svg>\n'
