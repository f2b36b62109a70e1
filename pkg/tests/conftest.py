"""Shared corpus builders and independent oracles for the test suite.

Oracles here deliberately re-derive values by the dumbest correct method
(plain recursion, exhaustive enumeration) so the fast library paths are
checked against something that cannot share their bugs.
"""

from itertools import combinations, permutations

import pytest

from sparsekit import Graph
from sparsekit.rng import Xoshiro256


def random_graph(n, edge_percent, seed):
    """G(n, p) with p in percent, driven by the pinned generator."""
    rng = Xoshiro256(seed)
    edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if rng.randrange(100) < edge_percent
    ]
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# tree-depth oracle: the bare delete-a-vertex recursion, no memo, no pruning

def treedepth_oracle(g):
    def components(vertices):
        vset = set(vertices)
        seen = set()
        comps = []
        for s in vertices:
            if s in seen:
                continue
            comp = [s]
            seen.add(s)
            stack = [s]
            while stack:
                u = stack.pop()
                for w in g.adj[u]:
                    if w in vset and w not in seen:
                        seen.add(w)
                        comp.append(w)
                        stack.append(w)
            comps.append(comp)
        return comps

    def td(vertices):
        if not vertices:
            return 0
        comps = components(vertices)
        if len(comps) > 1:
            return max(td(c) for c in comps)
        if len(vertices) == 1:
            return 1
        return 1 + min(td([u for u in vertices if u != v]) for v in vertices)

    return td(list(range(g.n)))


# ---------------------------------------------------------------------------
# degeneracy oracle: max over subgraphs of min degree, by explicit peeling

def degeneracy_oracle(g):
    best = 0
    for subset_size in range(1, g.n + 1):
        for subset in combinations(range(g.n), subset_size):
            sset = set(subset)
            mindeg = min(sum(1 for w in g.adj[v] if w in sset) for v in subset)
            best = max(best, mindeg)
    return best


# ---------------------------------------------------------------------------
# isomorphism-class enumeration for the exhaustive small-graph catalog

def all_graphs_up_to_iso(n):
    """One representative per isomorphism class of graphs on n vertices."""
    pairs = list(combinations(range(n), 2))
    seen = set()
    out = []
    for mask in range(1 << len(pairs)):
        edges = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        canon = min(
            tuple(sorted(tuple(sorted((perm[u], perm[v]))) for u, v in edges))
            for perm in permutations(range(n))
        )
        if canon not in seen:
            seen.add(canon)
            out.append(Graph(n, edges))
    return out


@pytest.fixture(scope="session")
def small_graph_sample():
    """Mixed random graphs with n <= 8 for cross-check tests."""
    sample = []
    for seed in range(160):
        n = 1 + seed % 8
        density = 15 + (seed * 13) % 75
        sample.append(random_graph(n, density, seed=seed + 1000))
    return sample
