"""Brute-force reference implementations, deliberately naive and independent of dvy internals."""
from fractions import Fraction
from itertools import chain, combinations, product


def all_masks(n):
    return range(1 << n)


def subsets_of(mask):
    items = [1 << i for i in range(mask.bit_length()) if mask >> i & 1]
    for r in range(len(items) + 1):
        for c in combinations(items, r):
            yield sum(c)


def union(ms):
    u = 0
    for m in ms:
        u |= m
    return u


def axioms_hold(val, n):
    """D1, D2 (every triple, B nonempty) and D3 by plain loops."""
    N = 1 << n
    for A in range(N):
        if bin(A).count("1") <= 1:
            if val[A] != 0:
                return False
        elif val[A] <= 0:
            return False
    for A in range(N):
        for B in range(1, N):
            for C in range(N):
                if val[A | C] > val[A | B] + val[B | C]:
                    return False
    for A in range(N):
        for B in range(N):
            if A & B == A and val[A] > val[B]:
                return False
    return True


def collections(n):
    """Every set of distinct nonempty subsets."""
    nonempty = list(range(1, 1 << n))
    return chain.from_iterable(combinations(nonempty, r) for r in range(1, len(nonempty) + 1))


def phi_exact(weights, Y, n):
    """Cheapest collection of nonempty subsets with union exactly Y (None if impossible)."""
    best = None
    subs = [m for m in range(1, 1 << n) if m & Y == m and weights[m] is not None]
    for r in range(1, len(subs) + 1):
        for c in combinations(subs, r):
            if union(c) == Y:
                cost = sum(weights[m] for m in c)
                if best is None or cost < best:
                    best = cost
    return best


def in_P(dvals, fvals, n):
    return all(sum(fvals[m] for m in c) >= dvals[union(c)] for c in collections(n))


def in_T(dvals, fvals, n):
    """In P, and every nonempty A sits in some collection with zero slack."""
    if not in_P(dvals, fvals, n):
        return False
    cols = list(collections(n))
    for A in range(1, 1 << n):
        if not any(A in c and sum(fvals[m] for m in c) == dvals[union(c)] for c in cols):
            return False
    return True


def delta_T(dvals, family, n):
    """sup over one subset A_f per function of δ(∪A_f) - Σ f(A_f)."""
    best = None
    for choice in product(range(1 << n), repeat=len(family)):
        v = dvals[union(choice)] - sum(f[a] for f, a in zip(family, choice))
        if best is None or v > best:
            best = v
    return best


def graph_steiner(nodes, edges, terminals):
    """Min over node supersets of the terminals of the MST weight of the induced subgraph."""
    others = [x for x in nodes if x not in terminals]
    best = None
    for r in range(len(others) + 1):
        for extra in combinations(others, r):
            vs = set(terminals) | set(extra)
            es = sorted((w, u, v) for u, v, w in edges if u in vs and v in vs)
            parent = {x: x for x in vs}

            def find(x):
                while parent[x] != x:
                    x = parent[x]
                return x

            total, used = Fraction(0), 0
            for w, u, v in es:
                a, b = find(u), find(v)
                if a != b:
                    parent[a] = b
                    total += w
                    used += 1
            if used == len(vs) - 1 and (best is None or total < best):
                best = total
    return best


def lp_vertices(c, A, b):
    """min c.w s.t. A w >= b, w >= 0 by enumerating basic solutions (tiny LPs only)."""
    m = len(c)
    rows = [list(map(Fraction, r)) for r in A] + [[Fraction(int(i == j)) for j in range(m)] for i in range(m)]
    rhs = list(map(Fraction, b)) + [Fraction(0)] * m
    best = None
    for pick in combinations(range(len(rows)), m):
        M = [rows[i][:] + [rhs[i]] for i in pick]
        # Gauss-Jordan
        ok = True
        for col in range(m):
            piv = next((r for r in range(col, m) if M[r][col] != 0), None)
            if piv is None:
                ok = False
                break
            M[col], M[piv] = M[piv], M[col]
            pv = M[col][col]
            M[col] = [x / pv for x in M[col]]
            for r in range(m):
                if r != col and M[r][col] != 0:
                    f = M[r][col]
                    M[r] = [x - f * y for x, y in zip(M[r], M[col])]
        if not ok:
            continue
        w = [M[i][m] for i in range(m)]
        if all(x >= 0 for x in w) and all(sum(a * x for a, x in zip(r, w)) >= bb for r, bb in zip(A, b)):
            v = sum(Fraction(ci) * x for ci, x in zip(c, w))
            if best is None or v < best:
                best = v
    return best


def prufer_topologies(X, k):
    """Trees on X plus k unlabelled Steiner nodes (degree >= 3), as frozensets of edges, up to Steiner relabelling."""
    from itertools import permutations

    steiner = [f"s{i}" for i in range(k)]
    nodes = list(X) + steiner
    N = len(nodes)
    out = set()
    if N == 1:
        return {frozenset()}
    if N == 2:
        return {frozenset([frozenset(nodes)])}
    for seq in product(range(N), repeat=N - 2):
        deg = [1] * N
        for s in seq:
            deg[s] += 1
        if any(deg[len(X) + i] < 3 for i in range(k)):
            continue
        d = deg[:]
        edges = []
        for s in seq:
            leaf = min(i for i in range(N) if d[i] == 1)
            edges.append((leaf, s))
            d[leaf] -= 1
            d[s] -= 1
        u, v = [i for i in range(N) if d[i] == 1]
        edges.append((u, v))
        forms = []
        for perm in permutations(range(k)):
            ren = {len(X) + i: len(X) + perm[i] for i in range(k)}
            forms.append(tuple(sorted(tuple(sorted((ren.get(a, a), ren.get(b, b)))) for a, b in edges)))
        out.add(min(forms))
    return out
