"""Edge-weighted trees, their subtree-length diversities, and reconstruction."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .core import FiniteDiversity, FiniteMetric, GroundSet, induced_metric, subset_order, to_rat
from .errors import DomainError, InputError


@dataclass(frozen=True)
class WeightedTree:
    """Finite tree with positive rational edge weights.

    ``leaves`` names the nodes identified with a ground set; they need not be
    graph leaves.  Zero-weight edges are contracted on construction, keeping
    the labelled endpoint's name.
    """

    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str, Fraction], ...]
    leaves: tuple[str, ...] = ()

    def __post_init__(self):
        nodes = tuple(str(x) for x in self.nodes)
        leaves = tuple(str(x) for x in self.leaves)
        if len(set(nodes)) != len(nodes):
            raise InputError("duplicate node names")
        known = set(nodes)
        edges = []
        for e in self.edges:
            u, v, w = str(e[0]), str(e[1]), to_rat(e[2])
            if u not in known or v not in known:
                raise InputError(f"edge {u}-{v} uses an unknown node")
            if w < 0:
                raise DomainError(f"edge {u}-{v} has negative weight {w}")
            edges.append((u, v, w))
        for x in leaves:
            if x not in known:
                raise InputError(f"labelled node {x!r} is not a tree node")
        if len(set(leaves)) != len(leaves):
            raise InputError("duplicate labelled nodes")
        nodes, edges = _contract_zero(nodes, edges, set(leaves))
        _check_tree(nodes, edges)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "leaves", leaves)

    def adjacency(self) -> dict[str, dict[str, Fraction]]:
        adj: dict[str, dict[str, Fraction]] = {x: {} for x in self.nodes}
        for u, v, w in self.edges:
            adj[u][v] = w
            adj[v][u] = w
        return adj

    def total_weight(self) -> Fraction:
        return sum((w for _, _, w in self.edges), Fraction(0))

    def edge_set(self) -> frozenset:
        return frozenset((frozenset((u, v)), w) for u, v, w in self.edges)

    def distance(self, x: str, y: str) -> Fraction:
        path = tree_path(self.adjacency(), x, y)
        adj = self.adjacency()
        return sum((adj[a][b] for a, b in zip(path, path[1:])), Fraction(0))


def _contract_zero(nodes, edges, labelled):
    parent = {x: x for x in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    order = {x: i for i, x in enumerate(nodes)}
    for u, v, w in edges:
        if w != 0:
            continue
        a, b = find(u), find(v)
        if a == b:
            # zero-weight cycle; _check_tree reports the cycle
            continue
        if a in labelled and b in labelled:
            raise DomainError(f"zero-weight path joins labelled nodes {a} and {b}")
        keep, drop = (a, b) if (a in labelled or (b not in labelled and order[a] < order[b])) else (b, a)
        parent[drop] = keep
    if all(w != 0 for _, _, w in edges):
        return nodes, list(edges)
    new_nodes = tuple(x for x in nodes if find(x) == x)
    new_edges = []
    for u, v, w in edges:
        if w == 0 and find(u) == find(v):
            continue
        new_edges.append((find(u), find(v), w))
    return new_nodes, new_edges


def _check_tree(nodes, edges):
    if not nodes:
        raise InputError("tree has no nodes")
    if len(edges) != len(nodes) - 1:
        raise DomainError(f"a tree on {len(nodes)} nodes needs {len(nodes) - 1} edges, got {len(edges)}")
    adj: dict = {x: [] for x in nodes}
    for u, v, _ in edges:
        if u == v:
            raise DomainError(f"self-loop at {u}")
        adj[u].append(v)
        adj[v].append(u)
    seen = {nodes[0]}
    stack = [nodes[0]]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    if len(seen) != len(nodes):
        raise DomainError("tree is not connected")


def tree_path(adj, x, y) -> list[str]:
    prev = {x: None}
    stack = [x]
    while stack:
        a = stack.pop()
        if a == y:
            break
        for b in adj[a]:
            if b not in prev:
                prev[b] = a
                stack.append(b)
    path = [y]
    while path[-1] != x:
        path.append(prev[path[-1]])
    return path[::-1]


def edge_sides(t: WeightedTree, ground: GroundSet) -> list[tuple[int, Fraction]]:
    """For each edge: mask of ground elements on its far side (rooted at node 0), and weight."""
    adj = t.adjacency()
    root = t.nodes[0]
    parent = {root: None}
    order = [root]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    sub = {x: (ground.bit(x) if x in ground.index else 0) for x in t.nodes}
    out = []
    for x in reversed(order[1:]):
        p = parent[x]
        sub[p] |= sub[x]
        out.append((sub[x], adj[x][p]))
    return out


def tree_diversity(t: WeightedTree, X=None) -> FiniteDiversity:
    """Weight of the smallest subtree spanning each subset of ``X``."""
    X = tuple(t.leaves) if X is None else tuple(str(x) for x in X)
    if not X:
        raise InputError("tree diversity needs at least one labelled node")
    missing = [x for x in X if x not in t.nodes]
    if missing:
        raise InputError(f"nodes {missing} are not in the tree")
    g = GroundSet(X)
    sides = edge_sides(t, g)
    full = g.full
    vals = [Fraction(0)] * (1 << g.n)
    for A in range(1, 1 << g.n):
        s = Fraction(0)
        for side, w in sides:
            if A & side and A & (full ^ side):
                s += w
        vals[A] = s
    return FiniteDiversity(g, tuple(vals))


# ---------------------------------------------------------------------------
# additivity


@dataclass(frozen=True)
class FourPointResult:
    additive: bool
    quartet: tuple[str, str, str, str] | None = None
    sums: tuple[Fraction, Fraction, Fraction] | None = None

    def __bool__(self):
        return self.additive


def four_point_check(d: FiniteMetric) -> FourPointResult:
    """The two largest of the three pairings must tie for every quadruple."""
    lab = d.ground.labels
    D = d.dist
    for w, x, y, z in combinations(range(d.n), 4):
        sums = (D[w][x] + D[y][z], D[w][y] + D[x][z], D[w][z] + D[x][y])
        s = sorted(sums)
        if s[1] != s[2]:
            return FourPointResult(False, (lab[w], lab[x], lab[y], lab[z]), sums)
    return FourPointResult(True)


# ---------------------------------------------------------------------------
# reconstruction


@dataclass(frozen=True)
class Reconstruction:
    ok: bool
    tree: WeightedTree | None = None
    reason: str | None = None
    detail: dict | None = None

    def __bool__(self):
        return self.ok


def _fresh_name(k, taken) -> str:
    name = f"_{k}"
    while name in taken:
        name = "_" + name
    return name


def _insert_leaves(d: FiniteMetric):
    """Additive-metric tree by successive Gromov-product insertion.

    Returns an adjacency map, or None when the insertion is inconsistent.
    """
    lab = d.ground.labels
    D = d.dist
    adj: dict[str, dict[str, Fraction]] = {lab[0]: {}}
    if d.n == 1:
        return adj
    adj[lab[0]][lab[1]] = D[0][1]
    adj[lab[1]] = {lab[0]: D[0][1]}
    labelled = {lab[0], lab[1]}
    fresh = 0
    a = lab[0]
    for k in range(2, d.n):
        z = lab[k]
        best_b, best_g = None, None
        for j in range(1, k):
            g = (D[0][k] + D[0][j] - D[j][k]) / 2
            if best_g is None or g > best_g:
                best_b, best_g = lab[j], g
        pend = D[0][k] - best_g
        if pend < 0 or best_g < 0:
            return None
        path = tree_path(adj, a, best_b)
        pos = Fraction(0)
        at = None
        for p, q in zip(path, path[1:]):
            w = adj[p][q]
            if pos == best_g:
                at = p
                break
            if pos + w > best_g:
                # subdivide p-q
                fresh += 1
                m = z if pend == 0 else _fresh_name(fresh, lab)
                del adj[p][q]
                del adj[q][p]
                adj[m] = {p: best_g - pos, q: pos + w - best_g}
                adj[p][m] = best_g - pos
                adj[q][m] = pos + w - best_g
                at = m
                break
            pos += w
        else:
            at = path[-1]
        if pend == 0:
            if at == z:
                labelled.add(z)
                continue
            if at in labelled:
                return None
            # relabel an internal node as z
            nbrs = adj.pop(at)
            adj[z] = nbrs
            for y, w in nbrs.items():
                del adj[y][at]
                adj[y][z] = w
            labelled.add(z)
            continue
        adj[z] = {at: pend}
        adj[at][z] = pend
        labelled.add(z)
    return adj


def canonical_tree(t: WeightedTree) -> WeightedTree:
    """Prune unlabelled leaves, suppress unlabelled degree-2 nodes, rename internals.

    Internal nodes are named ``{x,y,...}`` by the labels beneath them when the
    tree is rooted at the first label, so isomorphic trees compare equal.
    """
    labelled = list(t.leaves)
    if not labelled:
        raise DomainError("canonical form needs labelled nodes")
    adj = {x: dict(nb) for x, nb in t.adjacency().items()}
    lab = set(labelled)
    changed = True
    while changed:
        changed = False
        for x in list(adj):
            if x in lab:
                continue
            if len(adj[x]) <= 1:
                for y in adj[x]:
                    del adj[y][x]
                del adj[x]
                changed = True
            elif len(adj[x]) == 2:
                (y, wy), (z, wz) = adj[x].items()
                del adj[y][x]
                del adj[z][x]
                adj[y][z] = wy + wz
                adj[z][y] = wy + wz
                del adj[x]
                changed = True
    pos = {x: i for i, x in enumerate(labelled)}
    root = labelled[0]
    parent = {root: None}
    order = [root]
    for x in order:
        for y in adj[x]:
            if y not in parent:
                parent[y] = x
                order.append(y)
    below = {x: ({x} if x in lab else set()) for x in adj}
    for x in reversed(order[1:]):
        below[parent[x]] |= below[x]
    name = {}
    for x in adj:
        name[x] = x if x in lab else "{" + ",".join(sorted(below[x], key=pos.__getitem__)) + "}"
    nodes = tuple(sorted((name[x] for x in adj), key=lambda s: (s not in lab, pos.get(s, 0), s)))
    edges = sorted(
        (tuple(sorted((name[x], name[y]))) + (adj[x][y],) for x in adj for y in adj[x] if name[x] < name[y])
    )
    return WeightedTree(nodes, tuple(edges), tuple(labelled))


def reconstruct_tree(delta: FiniteDiversity) -> Reconstruction:
    """Find a weighted tree whose subtree-length diversity equals ``delta``.

    The pairwise metric is realised by leaf insertion; the tree is accepted
    only if its diversity matches ``delta`` on every subset.
    """
    d = induced_metric(delta)
    fp = four_point_check(d)
    if not fp:
        return Reconstruction(False, reason="metric not additive",
                              detail={"quartet": list(fp.quartet), "sums": [str(s) for s in fp.sums]})
    adj = _insert_leaves(d)
    if adj is None:
        return Reconstruction(False, reason="metric not additive", detail={})
    nodes = tuple(adj)
    edges = tuple((u, v, w) for u in adj for v, w in adj[u].items() if u < v)
    raw = WeightedTree(nodes, edges, delta.elements)
    t = canonical_tree(raw)
    td = tree_diversity(t, delta.elements)
    for A in subset_order(delta.n):
        if td.values[A] != delta.values[A]:
            kind = "metric not additive" if A.bit_count() == 2 else "higher-order mismatch"
            return Reconstruction(False, reason=kind, detail={
                "set": delta.ground.names(A), "tree_value": str(td.values[A]), "value": str(delta.values[A])})
    return Reconstruction(True, tree=t)
