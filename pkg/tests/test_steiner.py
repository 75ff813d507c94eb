import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import DATA, quartet_tree
from dvy.core import FiniteDiversity, FiniteMetric, GroundSet, check_axioms, induced_metric, truncate
from dvy.errors import DomainError, InfeasibleError, SizeError
from dvy.generators import random_diversity, random_graph, random_tree
from dvy.io import load_graph
from dvy.lp import LinearProgram, check_certificate, lp_solve
from dvy.phylo import canonical_tree, tree_diversity
from dvy.steiner import (MetricInstance, abstract_steiner, diversity_steiner, enumerate_topologies,
                         metric_steiner_exact, resolved_trees, steiner_length_diversity, steiner_lower_bounds)
from dvy.tightspan import complex_of, delta_T, in_T, kuratowski_all

F = Fraction


@pytest.fixture
def square():
    return load_graph(DATA / "square.json")


@pytest.fixture
def star():
    return load_graph(DATA / "star.json")


# -- LP ------------------------------------------------------------------------

def test_lp_examples():
    r = lp_solve(LinearProgram((1,), ((1,),), (2,)))
    assert r.w == (2,) and r.value == 2
    sq = LinearProgram((1, 1, 1, 1), ((1, 0, 1, 0), (0, 1, 0, 1), (1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1),
                                      (1, 0, 0, 1)), (6, 6, 4, 4, 4, 4))
    r = lp_solve(sq)
    assert r.value == 12
    check_certificate(sq, r)
    assert lp_solve(LinearProgram((1, 1), ((1, 1),), (2,))).value == 2
    with pytest.raises(InfeasibleError):
        lp_solve(LinearProgram((1,), ((0,),), (1,)))
    with pytest.raises(DomainError):
        LinearProgram((-1,), ((1,),), (1,))


lp_data = st.integers(1, 3).flatmap(lambda m: st.tuples(
    st.lists(st.integers(0, 4), min_size=m, max_size=m),
    st.lists(st.lists(st.integers(0, 3), min_size=m, max_size=m), min_size=1, max_size=4),
    st.lists(st.integers(-2, 6), min_size=4, max_size=4)))


@given(lp_data)
def test_lp_matches_vertex_enumeration(data):
    c, A, b = data
    b = b[:len(A)]
    feasible = all(any(x > 0 for x in row) or bb <= 0 for row, bb in zip(A, b))
    p = LinearProgram(c, A, b)
    if not feasible:
        with pytest.raises(InfeasibleError):
            lp_solve(p)
        return
    r = lp_solve(p)
    assert r.value == oracles.lp_vertices(c, A, b)
    assert all(sum(F(a) * x for a, x in zip(row, r.w)) >= bb for row, bb in zip(A, b))


def test_lp_is_deterministic():
    p = LinearProgram((1, 1, 1), ((1, 1, 0), (0, 1, 1), (1, 0, 1)), (2, 2, 2))
    assert lp_solve(p) == lp_solve(p)


# -- metric Steiner ----------------------------------------------------------------

def test_exact_examples(star, square):
    s = metric_steiner_exact(star)
    assert s.length == 3 and "s" in s.nodes
    q = metric_steiner_exact(square)
    assert q.length == 12
    assert metric_steiner_exact(square, ["a", "c"]).length == 6
    assert metric_steiner_exact(square, ["a"]).length == 0


def test_length_diversity_examples(star, square):
    d = steiner_length_diversity(star)
    assert all(d.of(x, y) == 2 for x, y in combinations("abc", 2)) and d.of("a", "b", "c") == 3
    e = steiner_length_diversity(square)
    assert e.of("a", "b") == 4 and e.of("a", "c") == 6 and e.of("a", "b", "c", "d") == 12
    assert check_axioms(e).passed


@pytest.mark.parametrize("seed", range(15))
def test_dreyfus_wagner_matches_brute_force(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 8)
    m = random_graph(rng, n, rng.randint(2, min(n, 4)))
    got = metric_steiner_exact(m)
    want = oracles.graph_steiner(m.nodes, m.edges, m.terminals)
    assert got.length == want
    assert set(m.terminals) <= set(got.nodes)
    assert sum(w for *_, w in got.edges) == got.length


def test_caps():
    with pytest.raises(SizeError):
        enumerate_topologies("abcdefgh")
    with pytest.raises(DomainError):
        enumerate_topologies("abc", 2)
    big = MetricInstance(tuple(f"v{i}" for i in range(12)), tuple((f"v{i}", f"v{i+1}", 1) for i in range(11)),
                         tuple(f"v{i}" for i in range(11)))
    with pytest.raises(SizeError):
        metric_steiner_exact(big)
    with pytest.raises(DomainError):
        MetricInstance(("a", "b", "c"), (("a", "b", 1),), ("a", "c"))


# -- topologies ----------------------------------------------------------------------

def test_topology_examples():
    assert len(enumerate_topologies("ab")) == 1
    t3 = enumerate_topologies("abc", 1)
    assert len(t3) == 4 and sum(1 for t in t3 if t.steiner) == 1
    t4 = enumerate_topologies("abcd", 2)
    quartets = [t for t in t4 if len(t.steiner) == 2]
    assert len(quartets) == 3
    assert [len(enumerate_topologies(x)) for x in ("abc", "abcd", "abcde")] == [4, 32, 396]
    assert len(resolved_trees("abcde")) == 15


@pytest.mark.parametrize("n", [3, 4, 5])
def test_topologies_match_prufer(n):
    X = "abcde"[:n]
    tops = enumerate_topologies(X)
    for k in range(n - 1):
        mine = {t for t in tops if len(t.steiner) == k}
        ref = oracles.prufer_topologies(X, k)
        assert len(mine) == len(ref)
    for t in tops:
        deg = {x: 0 for x in t.nodes}
        for u, v in t.edges:
            deg[u] += 1
            deg[v] += 1
        assert all(deg[s] >= 3 for s in t.steiner)
        assert len(t.edges) == len(t.nodes) - 1


# -- abstract / diversity Steiner ------------------------------------------------------

def test_abstract_examples():
    eq = FiniteMetric(GroundSet("abc"), ((0, 2, 2), (2, 0, 2), (2, 2, 0)))
    sol = abstract_steiner(eq)
    assert sol.length == 3 and len(sol.topology.steiner) == 1 and sol.weights == (1, 1, 1)
    two = abstract_steiner(FiniteMetric(GroundSet("xy"), ((0, 5), (5, 0))))
    assert two.length == 5 and two.weights == (5,)


def test_square_abstract_is_ten():
    # adjacent 4, opposite 6: the split ab|cd tree with leaves 2 and middle 2 dominates every pair
    sq = FiniteMetric(GroundSet("abcd"), ((0, 4, 6, 4), (4, 0, 4, 6), (6, 4, 0, 4), (4, 6, 4, 0)))
    sol = abstract_steiner(sq)
    assert sol.length == 10
    t = sol.tree()
    assert all(t.distance(x, y) >= sq.dist[i][j] for (i, x), (j, y) in combinations(enumerate("abcd"), 2))
    assert sol.certificate.value == 10 and any(sol.certificate.dual)


def test_diversity_examples(Q):
    syn = FiniteDiversity.from_sets("123", {("1", "2"): 2, ("1", "3"): 2, ("2", "3"): 2, ("1", "2", "3"): 4})
    assert abstract_steiner(induced_metric(syn)).length == 3
    assert diversity_steiner(syn).length == 4
    q = diversity_steiner(Q)
    assert q.length == 5 and q.tree().edge_set() == diversity_steiner(tree_diversity(quartet_tree())).tree().edge_set()
    assert sorted(q.weights) == [1] * 5


@pytest.mark.parametrize("seed", range(10))
def test_truncate_two_is_abstract(seed):
    rng = random.Random(seed)
    d = random_diversity(rng, rng.randint(2, 5))
    assert diversity_steiner(truncate(d, 2)).length == abstract_steiner(induced_metric(d)).length


@pytest.mark.parametrize("seed", range(10))
def test_tree_self_recovery(seed):
    rng = random.Random(seed)
    t = random_tree(rng, rng.randint(2, 6), internal_labels=False)
    d = tree_diversity(t)
    sol = diversity_steiner(d)
    # pendant unlabelled helpers carry weight that no subset uses
    assert sol.length == d.values[d.ground.full] == canonical_tree(t).total_weight()


@pytest.mark.parametrize("seed", range(8))
def test_solution_is_feasible_and_certified(seed):
    rng = random.Random(seed)
    d = random_diversity(rng, rng.randint(2, 5))
    sol = diversity_steiner(d)
    td = tree_diversity(sol.tree(), d.elements)
    assert all(a >= b for a, b in zip(td.values, d.values))
    assert sol.length >= d.values[d.ground.full]


@pytest.mark.parametrize("seed", range(8))
def test_three_point_optimum_sits_in_the_complex(seed):
    """For |X| = 3 an optimal star is realised by a tight point whose legs are its delta_T distances."""
    rng = random.Random(seed)
    d = random_diversity(rng, 3) if seed else FiniteDiversity.from_sets(
        "123", {("1", "2"): 2, ("1", "3"): 3, ("2", "3"): 4, ("1", "2", "3"): "24/5"})
    L = diversity_steiner(d).length
    c = complex_of(d)
    hs = kuratowski_all(d)
    found = False
    for p in c.u + c.v:
        f = c.as_function(d.ground, p)
        legs = [delta_T(d, [h, f]) for h in hs]
        if sum(legs) != L or not in_T(d, f):
            continue
        assert legs == list(p)
        ok = all(legs[i] + legs[j] >= d.values[(1 << i) | (1 << j)] for i, j in combinations(range(3), 2))
        found = found or ok
    assert found


# -- ladder ---------------------------------------------------------------------------

def test_ladder_examples(star, square):
    lad = steiner_lower_bounds(star)
    assert lad.bounds == {2: 3, 3: 3} and lad.exact == 3
    sq = steiner_lower_bounds(square)
    assert sq.bounds == {2: 10, 3: 10, 4: 12} and sq.exact == 12
    doc = sq.as_dict()
    assert doc["bounds"] == {"2": 10, "3": 10, "4": 12} and set(doc["trees"]) == {"2", "3", "4"}
    with pytest.raises(DomainError):
        steiner_lower_bounds(star, 1)


@pytest.mark.parametrize("seed", range(8))
def test_ladder_random(seed):
    rng = random.Random(seed)
    m = random_graph(rng, rng.randint(4, 10), rng.randint(2, 5))
    lad = steiner_lower_bounds(m)
    vals = [lad.bounds[k] for k in sorted(lad.bounds)]
    assert vals == sorted(vals) and vals[-1] == lad.exact
    assert vals[0] == abstract_steiner(m.terminal_metric()).length
