"""Seeded random instances.  Every generator takes a ``random.Random``."""
from __future__ import annotations

import random
from fractions import Fraction
from itertools import combinations

from .core import (FiniteDiversity, FiniteMetric, GroundSet, PointSet, diameter_diversity, l1_diversity,
                   max_diversities, sum_diversities, truncate)
from .phylo import WeightedTree, tree_diversity
from .steiner import MetricInstance, steiner_length_diversity


def labels(n: int) -> tuple[str, ...]:
    return tuple(str(i + 1) for i in range(n))


def rand_rat(rng: random.Random, lo: int = 1, hi: int = 8, dens=(1, 2, 3, 4)) -> Fraction:
    """Rational in ``[lo, hi]`` with a small denominator."""
    q = rng.choice(dens)
    return Fraction(rng.randint(lo * q, hi * q), q)


def random_metric(rng: random.Random, n: int) -> FiniteMetric:
    """Either entries in ``[h, 2h]`` (always metric) or a random graph closure."""
    g = GroundSet(labels(n))
    D = [[Fraction(0)] * n for _ in range(n)]
    if rng.random() < 0.5:
        h = rng.randint(2, 6)
        for i, j in combinations(range(n), 2):
            D[i][j] = D[j][i] = rand_rat(rng, h, 2 * h)
        return FiniteMetric(g, tuple(map(tuple, D)))
    m = random_graph(rng, n, n, density=0.5)
    return m.terminal_metric()


def random_points(rng: random.Random, n: int, dim: int) -> PointSet:
    seen = set()
    pts = []
    while len(pts) < n:
        p = tuple(rand_rat(rng, 0, 6) for _ in range(dim))
        if p not in seen:
            seen.add(p)
            pts.append(p)
    return PointSet(GroundSet(labels(n)), tuple(pts))


def random_tree(rng: random.Random, n_labels: int, extra: int | None = None,
                internal_labels: bool = True) -> WeightedTree:
    """Random tree on labelled nodes plus ``extra`` unlabelled ones, rational weights.

    With ``internal_labels`` false every label is a leaf hung off the helper tree.
    """
    extra = rng.randint(0, max(n_labels - 2, 0)) if extra is None else extra
    lab = list(labels(n_labels))
    helpers = [f"h{i}" for i in range(extra)]
    if internal_labels or not helpers:
        order = lab + helpers
        rng.shuffle(order)
        edges = [(order[rng.randrange(i)], order[i], rand_rat(rng, 1, 5)) for i in range(1, len(order))]
    else:
        order = helpers
        edges = [(order[rng.randrange(i)], order[i], rand_rat(rng, 1, 5)) for i in range(1, len(order))]
        edges += [(rng.choice(helpers), x, rand_rat(rng, 1, 5)) for x in lab]
        order = helpers + lab
    return WeightedTree(tuple(order), tuple(edges), tuple(lab))


def random_graph(rng: random.Random, n_nodes: int, n_terms: int, density: float = 0.3) -> MetricInstance:
    names = [f"v{i}" for i in range(n_nodes)]
    edges = {}
    for i in range(1, n_nodes):  # random spanning tree keeps it connected
        j = rng.randrange(i)
        edges[(j, i)] = rand_rat(rng, 1, 9)
    for i, j in combinations(range(n_nodes), 2):
        if (i, j) not in edges and rng.random() < density:
            edges[(i, j)] = rand_rat(rng, 1, 9)
    terms = rng.sample(names, n_terms)
    terms.sort(key=names.index)
    return MetricInstance(tuple(names), tuple((names[i], names[j], w) for (i, j), w in sorted(edges.items())),
                          tuple(terms))


def _relabel(delta: FiniteDiversity, n: int) -> FiniteDiversity:
    return FiniteDiversity(GroundSet(labels(n)), delta.values)


def random_diversity(rng: random.Random, n: int, kind: str | None = None) -> FiniteDiversity:
    """One of several constructions on ground set ``1..n``."""
    kinds = ("diameter", "l1", "tree", "steiner", "truncated", "sum", "max")
    kind = rng.choice(kinds) if kind is None else kind
    if kind == "diameter":
        return diameter_diversity(random_metric(rng, n))
    if kind == "l1":
        return l1_diversity(random_points(rng, n, rng.randint(1, 3)))
    if kind == "tree":
        return tree_diversity(random_tree(rng, n))
    if kind == "steiner":
        m = random_graph(rng, n + rng.randint(0, 3), n, density=0.4)
        return _relabel(steiner_length_diversity(m), n)
    if kind == "truncated":
        base = random_diversity(rng, n, rng.choice(("l1", "tree", "steiner")))
        return truncate(base, rng.randint(2, max(n, 2)))
    if kind == "sum":
        return sum_diversities(random_diversity(rng, n, "diameter"), random_diversity(rng, n, "tree"))
    if kind == "max":
        return max_diversities(random_diversity(rng, n, "l1"), random_diversity(rng, n, "tree"))
    raise ValueError(f"unknown kind {kind!r}")


def random_three_point(rng: random.Random, positive_beta: bool | None = None):
    """Valid ``(d12, d13, d23, d123)``; ``positive_beta`` picks the regime."""
    while True:
        d12, d13, d23 = (rand_rat(rng, 1, 6) for _ in range(3))
        s = sorted((d12, d13, d23))
        if s[2] < s[0] + s[1]:
            break
    lo, hi = s[2], s[0] + s[1]
    half = (d12 + d13 + d23) / 2
    if positive_beta is None:
        positive_beta = rng.random() < 0.5
    if positive_beta:
        a, b = half, hi  # strict: d123 in (half, hi]
    else:
        a, b = lo, half
    q = rng.choice((1, 2, 3, 5))
    for _ in range(100):
        t = Fraction(rng.randint(0, 4 * q), 4 * q)
        d123 = a + t * (b - a)
        if positive_beta and d123 == a:
            continue
        return d12, d13, d23, d123
    return d12, d13, d23, b
