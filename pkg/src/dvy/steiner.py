"""Metric, abstract and diversity Steiner problems and the truncation ladder.

The abstract and diversity LPs are solved over fully resolved trees (every
terminal a leaf, n-2 Steiner nodes of degree 3).  Any tree topology with
Steiner nodes of degree >= 3 is a contraction of a resolved one, and a zero
weight on the contracted edges reproduces its LP exactly, so the optimum
over resolved trees equals the optimum over all topologies.  Zero-weight
edges are contracted in the reported tree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .core import FiniteDiversity, FiniteMetric, GroundSet, scale_to_int, submasks, to_rat, truncate
from .errors import DomainError, InputError, SizeError
from .lp import LinearProgram, LPResult, check_certificate, simplex_int
from .phylo import WeightedTree

MAX_TERMINALS = 10
MAX_NODES = 64
MAX_TOPOLOGY = 7


# ---------------------------------------------------------------------------
# metric instances and Dreyfus-Wagner


@dataclass(frozen=True)
class MetricInstance:
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str, Fraction], ...]
    terminals: tuple[str, ...]
    dist: tuple = field(init=False, repr=False, compare=False)
    nxt: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nodes = tuple(str(x) for x in self.nodes)
        terms = tuple(str(x) for x in self.terminals)
        if not nodes:
            raise InputError("graph has no nodes")
        if len(set(nodes)) != len(nodes):
            raise InputError("duplicate node names")
        if len(nodes) > MAX_NODES:
            raise SizeError(f"{len(nodes)} nodes exceeds the cap of {MAX_NODES}")
        idx = {x: i for i, x in enumerate(nodes)}
        edges = []
        for e in self.edges:
            u, v, w = str(e[0]), str(e[1]), to_rat(e[2])
            if u not in idx or v not in idx:
                raise InputError(f"edge {u}-{v} uses an unknown node")
            if u == v:
                raise InputError(f"self-loop at {u}")
            if w <= 0:
                raise DomainError(f"edge {u}-{v} must have positive weight, got {w}")
            edges.append((u, v, w))
        if not terms:
            raise InputError("no terminals")
        if len(set(terms)) != len(terms):
            raise InputError("duplicate terminals")
        for t in terms:
            if t not in idx:
                raise InputError(f"terminal {t!r} is not a graph node")
        n = len(nodes)
        INF = None
        D = [[INF] * n for _ in range(n)]
        nxt = [[None] * n for _ in range(n)]
        for i in range(n):
            D[i][i] = Fraction(0)
            nxt[i][i] = i
        for u, v, w in edges:
            i, j = idx[u], idx[v]
            if D[i][j] is None or w < D[i][j]:
                D[i][j] = D[j][i] = w
                nxt[i][j] = j
                nxt[j][i] = i
        for k in range(n):
            Dk = D[k]
            for i in range(n):
                dik = D[i][k]
                if dik is None:
                    continue
                Di = D[i]
                for j in range(n):
                    if Dk[j] is None:
                        continue
                    cand = dik + Dk[j]
                    if Di[j] is None or cand < Di[j]:
                        Di[j] = cand
                        nxt[i][j] = nxt[i][k]
        if any(x is None for x in D[0]):
            raise DomainError("graph is not connected")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "terminals", terms)
        object.__setattr__(self, "dist", tuple(tuple(r) for r in D))
        object.__setattr__(self, "nxt", tuple(tuple(r) for r in nxt))

    @classmethod
    def from_metric(cls, d: FiniteMetric, terminals=None) -> "MetricInstance":
        lab = d.ground.labels
        edges = [(lab[i], lab[j], d.dist[i][j]) for i, j in combinations(range(d.n), 2)]
        return cls(lab, tuple(edges), tuple(lab if terminals is None else terminals))

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.terminals)

    def index(self, name: str) -> int:
        return self.nodes.index(name)

    def path(self, i: int, j: int) -> list[int]:
        out = [i]
        while out[-1] != j:
            out.append(self.nxt[out[-1]][j])
        return out

    def terminal_metric(self) -> FiniteMetric:
        ix = [self.index(t) for t in self.terminals]
        return FiniteMetric(self.ground, tuple(tuple(self.dist[a][b] for b in ix) for a in ix))


@dataclass(frozen=True)
class SteinerTree:
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str, Fraction], ...]
    length: Fraction


@lru_cache(maxsize=32)
def _dreyfus_wagner(m: MetricInstance):
    """Tables over (terminal subset, node) on the integer-scaled closure."""
    k = len(m.terminals)
    if k > MAX_TERMINALS:
        raise SizeError(f"{k} terminals exceeds the Dreyfus-Wagner cap of {MAX_TERMINALS}")
    n = len(m.nodes)
    den, (flat,) = scale_to_int([x for row in m.dist for x in row])
    D = [flat[i * n:(i + 1) * n] for i in range(n)]
    tix = [m.index(t) for t in m.terminals]
    size = 1 << k
    dp = [None] * size
    split = [None] * size  # split[S][u] = best S1 (or None for S singleton at a terminal)
    hop = [None] * size  # hop[S][v] = u achieving min_u g[S][u] + D[u][v]
    for S in range(1, size):
        if S & (S - 1) == 0:
            t = tix[S.bit_length() - 1]
            dp[S] = list(D[t])
            hop[S] = [t] * n
            split[S] = [None] * n
            continue
        g = [None] * n
        gs = [None] * n
        low = S & -S
        subs = [T for T in submasks(S) if T and T != S and T & low]
        for u in range(n):
            best, arg = None, None
            for T in subs:
                val = dp[T][u] + dp[S ^ T][u]
                if best is None or val < best:
                    best, arg = val, T
            g[u], gs[u] = best, arg
        row = [0] * n
        hp = [0] * n
        for v in range(n):
            best, arg = None, None
            for u in range(n):
                val = g[u] + D[u][v]
                if best is None or val < best:
                    best, arg = val, u
            row[v], hp[v] = best, arg
        dp[S], hop[S], split[S] = row, hp, gs
    return den, dp, hop, split


def _dw_edges(m: MetricInstance, tables, S: int, v: int, out: set) -> None:
    den, dp, hop, split = tables
    u = hop[S][v]
    if u != v:
        p = m.path(u, v)
        out.update(tuple(sorted(e)) for e in zip(p, p[1:]))
    T = split[S][u]
    if T is None:
        return
    _dw_edges(m, tables, T, u, out)
    _dw_edges(m, tables, S ^ T, u, out)


def metric_steiner_exact(m: MetricInstance, A=None) -> SteinerTree:
    """Minimum-length subtree of the graph containing the terminals ``A``."""
    A = tuple(m.terminals) if A is None else tuple(str(a) for a in A)
    if not A:
        raise InputError("need at least one terminal")
    g = m.ground
    S = g.mask(A)
    if S & (S - 1) == 0:
        return SteinerTree((A[0],), (), Fraction(0))
    tables = _dreyfus_wagner(m)
    den, dp = tables[0], tables[1]
    row = dp[S]
    v = min(range(len(m.nodes)), key=lambda i: (row[i], i))
    length = Fraction(row[v], den)
    es: set = set()
    _dw_edges(m, tables, S, v, es)
    edges = sorted(es)
    used = sorted({i for e in edges for i in e})
    wt = {}
    for u, v_, w in m.edges:
        a, b = sorted((m.index(u), m.index(v_)))
        if (a, b) not in wt or w < wt[(a, b)]:
            wt[(a, b)] = w
    total = sum((wt[e] for e in edges), Fraction(0))
    assert total == length and len(edges) == len(used) - 1, "Dreyfus-Wagner backtrack is not an optimal tree"
    nm = m.nodes
    return SteinerTree(tuple(nm[i] for i in used), tuple((nm[a], nm[b], wt[(a, b)]) for a, b in edges), length)


def steiner_length_diversity(m: MetricInstance) -> FiniteDiversity:
    g = m.ground
    if g.n == 1:
        return FiniteDiversity(g, (Fraction(0), Fraction(0)))
    den, dp, _, _ = _dreyfus_wagner(m)
    vals = [Fraction(0)] * (1 << g.n)
    for S in range(1, 1 << g.n):
        if S & (S - 1):
            vals[S] = Fraction(min(dp[S]), den)
    return FiniteDiversity(g, tuple(vals))


# ---------------------------------------------------------------------------
# topologies


@dataclass(frozen=True)
class Topology:
    """Tree on terminals plus Steiner nodes named by the terminals beneath them."""

    terminals: tuple[str, ...]
    steiner: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    @property
    def nodes(self) -> tuple[str, ...]:
        return self.terminals + self.steiner

    def as_dict(self) -> dict:
        return {"terminals": list(self.terminals), "steiner": list(self.steiner),
                "edges": [list(e) for e in self.edges]}


def _names(terminals, adj) -> dict:
    pos = {x: i for i, x in enumerate(terminals)}
    root = terminals[0]
    parent = {root: None}
    order = [root]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    below = {x: ({x} if x in pos else set()) for x in adj}
    for x in reversed(order[1:]):
        below[parent[x]] |= below[x]
    return {x: x if x in pos else "{" + ",".join(sorted(below[x], key=pos.__getitem__)) + "}" for x in adj}


def _canonical(terminals, adj) -> Topology:
    pos = {x: i for i, x in enumerate(terminals)}
    name = _names(terminals, adj)
    steiner = sorted((name[x] for x in adj if x not in pos),
                     key=lambda s: (-s.count(","), [pos[t] for t in s[1:-1].split(",")]))
    rank = {x: i for i, x in enumerate(tuple(terminals) + tuple(steiner))}
    edges = {tuple(sorted((name[x], name[y]), key=rank.__getitem__)) for x in adj for y in adj[x]}
    return Topology(tuple(terminals), tuple(steiner), tuple(sorted(edges, key=lambda e: (rank[e[0]], rank[e[1]]))))


def resolved_trees(X) -> list[dict]:
    """All fully resolved trees with leaves X, by stepwise leaf insertion (adjacency maps)."""
    X = tuple(X)
    n = len(X)
    if n == 1:
        return [{X[0]: set()}]
    if n == 2:
        return [{X[0]: {X[1]}, X[1]: {X[0]}}]
    start = {X[0]: {"#1"}, X[1]: {"#1"}, X[2]: {"#1"}, "#1": set(X[:3])}
    trees = [start]
    for k in range(3, n):
        nxt = []
        new = f"#{k - 1}"
        for t in trees:
            edges = sorted({tuple(sorted((u, v))) for u in t for v in t[u]})
            for u, v in edges:
                s = {x: set(nb) for x, nb in t.items()}
                s[u].discard(v)
                s[v].discard(u)
                s[new] = {u, v, X[k]}
                s[u].add(new)
                s[v].add(new)
                s[X[k]] = {new}
                nxt.append(s)
        trees = nxt
    return trees


def _contract(adj, edges_to_merge, terminals):
    """Contract the given edges; returns ``(adj, rep)`` or None if two terminals would merge."""
    parent = {x: x for x in adj}

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    for u, v in edges_to_merge:
        a, b = find(u), find(v)
        if a in terminals and b in terminals:
            return None
        if b in terminals:
            a, b = b, a
        parent[b] = a
    rep = {x: find(x) for x in adj}
    out = {}
    for x in adj:
        r = rep[x]
        out.setdefault(r, set())
        for y in adj[x]:
            if rep[y] != r:
                out[r].add(rep[y])
    return out, rep


def enumerate_topologies(X, max_steiner: int | None = None) -> list[Topology]:
    X = tuple(str(x) for x in X)
    n = len(X)
    if n == 0:
        raise InputError("need at least one terminal")
    if n > MAX_TOPOLOGY:
        raise SizeError(f"topology enumeration is capped at {MAX_TOPOLOGY} terminals")
    cap = max(n - 2, 0)
    max_steiner = cap if max_steiner is None else max_steiner
    if max_steiner < 0 or max_steiner > cap:
        raise DomainError(f"max_steiner must lie in 0..{cap}")
    tset = set(X)
    seen = {}
    for t in resolved_trees(X):
        edges = sorted({tuple(sorted((u, v))) for u in t for v in t[u]})
        for r in range(len(edges) + 1):
            for sub in combinations(edges, r):
                c = _contract(t, sub, tset)
                if c is None:
                    continue
                c = c[0]
                if sum(1 for x in c if x not in tset) > max_steiner:
                    continue
                top = _canonical(X, c)
                if top not in seen:
                    seen[top] = len(seen)
    return sorted(seen, key=lambda tp: (len(tp.steiner), seen[tp]))


# ---------------------------------------------------------------------------
# Steiner LPs


@dataclass(frozen=True)
class SteinerSolution:
    topology: Topology
    weights: tuple[Fraction, ...]  # aligned with topology.edges
    length: Fraction
    certificate: LPResult | None = None

    def tree(self) -> WeightedTree:
        return WeightedTree(self.topology.nodes,
                            tuple(e + (w,) for e, w in zip(self.topology.edges, self.weights)),
                            self.topology.terminals)

    def as_dict(self) -> dict:
        return {"length": self.length, "nodes": list(self.topology.nodes),
                "edges": [[u, v, w] for (u, v), w in zip(self.topology.edges, self.weights)]}


def _sides(adj, g: GroundSet):
    """Edges of a tree with the terminal mask on the side away from the root."""
    root = g.labels[0]
    parent = {root: None}
    order = [root]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    sub = {x: (g.bit(x) if x in g.index else 0) for x in adj}
    out = []
    for x in reversed(order[1:]):
        sub[parent[x]] |= sub[x]
        out.append(((parent[x], x), sub[x]))
    return out


def _tree_lp(rows, rhs, den, seed_rows):
    """Covering LP with 0/1 rows and integer right-hand sides (true values rhs/den).

    Violated rows are added to an initial working set until the solution
    covers all of them.  Returns ``(w_num, y_num, det)`` for the full row set.
    """
    active = sorted(set(seed_rows))
    nvar = len(rows[0])
    while True:
        wn, yn, det = simplex_int([1] * nvar, [rows[i] for i in active], [rhs[i] for i in active])
        support = [j for j, x in enumerate(wn) if x]
        bad = [i for i in range(len(rows))
               if sum(wn[j] for j in support if rows[i][j]) < rhs[i] * det]
        if not bad:
            break
        active = sorted(set(active) | set(bad))
    y = [0] * len(rows)
    for i, v in zip(active, yn):
        y[i] = v
    return wn, y, det


def _solve_over_trees(g: GroundSet, targets: list[tuple[int, Fraction]]) -> SteinerSolution:
    X = g.labels
    if g.n == 1:
        return SteinerSolution(Topology(X, (), ()), (), Fraction(0))
    best = None
    full = g.full
    den, (rhs,) = scale_to_int([v for _, v in targets])
    seed = [i for i, (Y, _) in enumerate(targets) if Y.bit_count() == 2 or Y == full]
    # every tree must carry total weight >= the value on the full set
    floor = max((v for Y, v in targets if Y == full), default=Fraction(0))
    for adj in resolved_trees(X):
        sides = _sides(adj, g)
        rows = [[1 if (Y & s and Y & (full ^ s)) else 0 for _, s in sides] for Y, _ in targets]
        wn, yn, det = _tree_lp(rows, rhs, den, seed)
        value = Fraction(sum(wn), det * den)
        if best is None or value < best[0]:
            best = (value, wn, yn, det, adj, sides, rows)
            if value == floor:
                break
    value, wn, yn, det, adj, sides, rows = best
    res = LPResult(tuple(Fraction(v, det * den) for v in wn), value, tuple(Fraction(v, det) for v in yn))
    check_certificate(LinearProgram((1,) * len(sides), tuple(map(tuple, rows)), tuple(v for _, v in targets)), res)
    zero = [e for (e, _), w in zip(sides, res.w) if w == 0]
    contracted = _contract(adj, zero, set(X))
    assert contracted is not None, "zero-weight path between terminals"
    c, rep = contracted
    top = _canonical(X, c)
    name = _names(X, c)
    weights = {frozenset((name[rep[u]], name[rep[v]])): w for ((u, v), _), w in zip(sides, res.w) if w != 0}
    ws = tuple(weights[frozenset(e)] for e in top.edges)
    return SteinerSolution(top, ws, res.value, res)


def _check_topology_cap(n: int) -> None:
    if n > MAX_TOPOLOGY:
        raise SizeError(f"Steiner LPs are capped at {MAX_TOPOLOGY} terminals, got {n}")


def abstract_steiner(d: FiniteMetric) -> SteinerSolution:
    """Lightest weighted tree whose path lengths dominate ``d`` on every pair."""
    _check_topology_cap(d.n)
    g = d.ground
    targets = [(g.bit(g.labels[i]) | g.bit(g.labels[j]), d.dist[i][j]) for i, j in combinations(range(d.n), 2)]
    return _solve_over_trees(g, targets)


def diversity_steiner(delta: FiniteDiversity) -> SteinerSolution:
    """Lightest weighted tree whose subtree lengths dominate ``delta`` on every subset."""
    _check_topology_cap(delta.n)
    targets = [(Y, delta.values[Y]) for Y in range(1, 1 << delta.n) if Y & (Y - 1)]
    return _solve_over_trees(delta.ground, targets)


# ---------------------------------------------------------------------------
# ladder


@dataclass(frozen=True)
class BoundLadder:
    bounds: dict  # k -> Fraction
    trees: dict  # k -> SteinerSolution
    exact: Fraction
    exact_tree: SteinerTree

    def as_dict(self) -> dict:
        return {"bounds": {str(k): v for k, v in self.bounds.items()}, "exact": self.exact,
                "trees": {str(k): s.as_dict() for k, s in self.trees.items()},
                "exact_tree": {"nodes": list(self.exact_tree.nodes),
                               "edges": [list(e) for e in self.exact_tree.edges]}}


def steiner_lower_bounds(m: MetricInstance, kmax: int | None = None) -> BoundLadder:
    n = len(m.terminals)
    _check_topology_cap(n)
    kmax = n if kmax is None else kmax
    if n < 2 or not 2 <= kmax <= n:
        raise DomainError(f"kmax must lie in 2..{n}")
    ell = steiner_length_diversity(m)
    exact = metric_steiner_exact(m)
    assert exact.length == ell.values[ell.ground.full]
    bounds, trees = {}, {}
    for k in range(2, kmax + 1):
        sol = diversity_steiner(truncate(ell, k))
        bounds[k], trees[k] = sol.length, sol
    vals = [bounds[k] for k in range(2, kmax + 1)]
    assert all(a <= b for a, b in zip(vals, vals[1:])), "ladder is not monotone"
    assert vals[-1] <= exact.length
    if kmax == n:
        assert vals[-1] == exact.length, "top rung differs from the Steiner optimum"
    return BoundLadder(bounds, trees, exact.length, exact)
