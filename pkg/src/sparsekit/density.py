"""Exact desk-scale density measures: max subgraph density (flow-based with
a brute-force cross-check oracle), and exhaustive shallow-minor, shallow
topological-minor, and shallow-immersion densities with validating witness
models.

All densities are reduced rationals; equality assertions in tests are
exact. The exhaustive searches refuse instances above their size limits
instead of degrading to heuristics.
"""

import math
import re
from fractions import Fraction
from itertools import combinations

from .errors import SizeLimitError, ValidationError
from .graphs import is_connected_mask, mask_of, mask_vertices


# ---------------------------------------------------------------------------
# witness models

class MinorModel:
    """Disjoint branch sets, each inducing a connected subgraph of radius
    <= depth; every claimed minor edge is witnessed by a base-graph edge
    between the two branch sets."""

    __slots__ = ("branch_sets", "depth", "minor_edges")

    def __init__(self, branch_sets, depth, minor_edges):
        self.branch_sets = tuple(tuple(sorted(b)) for b in branch_sets)
        self.depth = depth
        self.minor_edges = tuple(sorted(tuple(sorted(e)) for e in minor_edges))

    def order(self):
        return len(self.branch_sets)

    def size(self):
        return len(self.minor_edges)

    def density(self):
        return Fraction(self.size(), self.order())

    def validate(self, g):
        used = set()
        for b in self.branch_sets:
            if used & set(b):
                return False
            used |= set(b)
        for b in self.branch_sets:
            mask = mask_of(b)
            if not is_connected_mask(g.adj_mask, mask):
                return False
            if _mask_radius(g, mask) > self.depth:
                return False
        for i, j in self.minor_edges:
            if not (0 <= i < len(self.branch_sets) and 0 <= j < len(self.branch_sets)):
                return False
            ai = mask_of(self.branch_sets[i])
            aj = mask_of(self.branch_sets[j])
            if not any(g.adj_mask[v] & aj for v in mask_vertices(ai)):
                return False
        return True

    def to_json(self):
        return {
            "kind": "minor",
            "depth": self.depth,
            "branch_sets": [list(b) for b in self.branch_sets],
            "minor_edges": [list(e) for e in self.minor_edges],
        }


class TopoModel:
    """Principal vertices joined by internally vertex-disjoint paths of
    length <= 2*depth+1; no principal is interior to any path; the minor's
    edges are exactly the linked pairs."""

    __slots__ = ("principals", "paths", "depth")

    def __init__(self, principals, paths, depth):
        self.principals = tuple(sorted(principals))
        self.paths = tuple(tuple(p) for p in paths)
        self.depth = depth

    def order(self):
        return len(self.principals)

    def size(self):
        return len(self.paths)

    def density(self):
        return Fraction(self.size(), self.order())

    def validate(self, g):
        pset = set(self.principals)
        seen_pairs = set()
        interiors = set()
        for path in self.paths:
            if len(path) < 2 or len(path) - 1 > 2 * self.depth + 1:
                return False
            if len(set(path)) != len(path):
                return False
            for u, v in zip(path, path[1:]):
                if not g.has_edge(u, v):
                    return False
            if path[0] not in pset or path[-1] not in pset:
                return False
            inner = set(path[1:-1])
            if inner & pset:
                return False
            if inner & interiors:
                return False
            interiors |= inner
            pair = frozenset((path[0], path[-1]))
            if len(pair) != 2 or pair in seen_pairs:
                return False
            seen_pairs.add(pair)
        return True

    def to_json(self):
        return {
            "kind": "topological",
            "depth": self.depth,
            "principals": list(self.principals),
            "paths": [list(p) for p in self.paths],
        }


class ImmersionModel:
    """Principal vertices joined by edge-disjoint paths of length
    <= 2*depth+1, with no vertex interior to more than depth paths."""

    __slots__ = ("principals", "paths", "depth")

    def __init__(self, principals, paths, depth):
        self.principals = tuple(sorted(principals))
        self.paths = tuple(tuple(p) for p in paths)
        self.depth = depth

    def order(self):
        return len(self.principals)

    def size(self):
        return len(self.paths)

    def density(self):
        return Fraction(self.size(), self.order())

    def validate(self, g):
        pset = set(self.principals)
        seen_pairs = set()
        used_edges = set()
        interior_load = {}
        for path in self.paths:
            if len(path) < 2 or len(path) - 1 > 2 * self.depth + 1:
                return False
            if len(set(path)) != len(path):
                return False
            if path[0] not in pset or path[-1] not in pset:
                return False
            for u, v in zip(path, path[1:]):
                if not g.has_edge(u, v):
                    return False
                e = frozenset((u, v))
                if e in used_edges:
                    return False
                used_edges.add(e)
            for v in path[1:-1]:
                interior_load[v] = interior_load.get(v, 0) + 1
                if interior_load[v] > self.depth:
                    return False
            pair = frozenset((path[0], path[-1]))
            if len(pair) != 2 or pair in seen_pairs:
                return False
            seen_pairs.add(pair)
        return True

    def to_json(self):
        return {
            "kind": "immersion",
            "depth": self.depth,
            "principals": list(self.principals),
            "paths": [list(p) for p in self.paths],
        }


def _mask_radius(g, mask):
    """Radius of the induced subgraph on mask (min over roots of max BFS
    depth, measured inside the mask)."""
    best = None
    for root in mask_vertices(mask):
        seen = 1 << root
        frontier = 1 << root
        depth = 0
        while seen != mask and frontier:
            nxt = 0
            for v in mask_vertices(frontier):
                nxt |= g.adj_mask[v] & mask & ~seen
            seen |= nxt
            frontier = nxt
            depth += 1
        ecc = depth if seen == mask else None
        if ecc is not None and (best is None or ecc < best):
            best = ecc
    return best if best is not None else float("inf")


# ---------------------------------------------------------------------------
# max subgraph density (nabla_0) via parametric max-flow

class _Dinic:
    def __init__(self, size):
        self.size = size
        self.to = []
        self.cap = []
        self.head = [[] for _ in range(size)]

    def add_edge(self, u, v, c):
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s, t):
        flow = 0
        while True:
            level = [-1] * self.size
            level[s] = 0
            queue = [s]
            for u in queue:
                for ei in self.head[u]:
                    v = self.to[ei]
                    if self.cap[ei] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[t] < 0:
                return flow
            it = [0] * self.size

            def dfs(u, pushed):
                if u == t:
                    return pushed
                while it[u] < len(self.head[u]):
                    ei = self.head[u][it[u]]
                    v = self.to[ei]
                    if self.cap[ei] > 0 and level[v] == level[u] + 1:
                        got = dfs(v, min(pushed, self.cap[ei]))
                        if got:
                            self.cap[ei] -= got
                            self.cap[ei ^ 1] += got
                            return got
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, float("inf"))
                if not pushed:
                    break
                flow += pushed

    def reachable(self, s):
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for ei in self.head[u]:
                v = self.to[ei]
                if self.cap[ei] > 0 and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen


def _denser_subgraph(g, density):
    """Vertex set with subgraph density strictly above the guess, or None.

    Goldberg's network: with guess a/b the cut for source side W equals
    n*m*b - 2*b*(||W|| - (a/b)*|W|), so the minimal min-cut side is
    nonempty exactly when a strictly denser subgraph exists.
    """
    n, m = g.n, g.m
    a, b = density.numerator, density.denominator
    s, t = n, n + 1
    net = _Dinic(n + 2)
    for v in range(n):
        net.add_edge(s, v, m * b)
        net.add_edge(v, t, m * b + 2 * a - b * g.degree(v))
    for u, v in g.edges:
        net.add_edge(u, v, b)
        net.add_edge(v, u, b)
    net.max_flow(s, t)
    side = net.reachable(s)
    witness = sorted(v for v in side if v != s)
    return witness or None


def _edges_inside(g, vertices):
    vs = set(vertices)
    return sum(1 for u, v in g.edges if u in vs and v in vs)


def nabla0(g):
    """Exact max subgraph density max_H ||H||/|H| with a witness vertex set.

    Discrete Newton iteration on the density guess: each flow round either
    produces a strictly denser witness or certifies the current one.
    """
    if g.n == 0:
        raise ValidationError("nabla0 needs at least one vertex")
    if g.m == 0:
        return Fraction(0), [0]
    witness = list(range(g.n))
    best = Fraction(g.m, g.n)
    while True:
        denser = _denser_subgraph(g, best)
        if denser is None:
            return best, witness
        density = Fraction(_edges_inside(g, denser), len(denser))
        if density <= best:
            return best, witness
        best, witness = density, denser


def nabla0_bruteforce(g, limit=16):
    """Subset-enumeration oracle for nabla0 (cross-check path)."""
    if g.n > limit:
        raise SizeLimitError(f"nabla0_bruteforce limited to {limit} vertices")
    if g.n == 0:
        raise ValidationError("nabla0 needs at least one vertex")
    adj = g.adj_mask
    best = Fraction(0)
    witness = [0]
    for mask in range(1, 1 << g.n):
        verts = mask_vertices(mask)
        e = sum(bin(adj[v] & mask).count("1") for v in verts) // 2
        d = Fraction(e, len(verts))
        if d > best:
            best, witness = d, verts
    return best, witness


# ---------------------------------------------------------------------------
# shallow minors

def _forest_fast_path(g, r, model_cls):
    """Shallow minors, topological minors, and immersions of forests are
    forests, so the density maximum is attained by the densest subgraph."""
    value, witness = nabla0(g)
    if model_cls is MinorModel:
        model = MinorModel([[v] for v in witness], r, _subgraph_edge_pairs(g, witness))
    else:
        pairs = _subgraph_edge_pairs_vertices(g, witness)
        model = model_cls(witness, [(u, v) for u, v in pairs], r)
    return value, model


def _subgraph_edge_pairs(g, vertices):
    pos = {v: i for i, v in enumerate(vertices)}
    return [
        (pos[u], pos[v]) for u, v in g.edges if u in pos and v in pos
    ]


def _subgraph_edge_pairs_vertices(g, vertices):
    vs = set(vertices)
    return [(u, v) for u, v in g.edges if u in vs and v in vs]


def _is_forest(g):
    seen = [False] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if seen[root]:
            continue
        seen[root] = True
        stack = [root]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    parent[w] = u
                    stack.append(w)
                elif parent[u] != w:
                    return False
    return True


def grad(g, r, exact_limit=12):
    """Exact max density over depth-r shallow minors, with a witness model.

    r = 0 delegates to the flow-based densest subgraph. For r >= 1 the
    search enumerates families of disjoint connected branch sets of radius
    <= r (growing from the smallest unassigned vertex, so each family is
    visited once) with an upper-bound cut on the achievable density.
    """
    if r < 0:
        raise ValidationError("depth must be >= 0")
    if g.n == 0:
        raise ValidationError("grad needs at least one vertex")
    if r == 0:
        value, witness = nabla0(g)
        model = MinorModel([[v] for v in witness], 0, _subgraph_edge_pairs(g, witness))
        return value, model
    if _is_forest(g):
        return _forest_fast_path(g, r, MinorModel)
    if g.n > exact_limit:
        raise SizeLimitError(f"grad limited to {exact_limit} vertices for r >= 1, got {g.n}")
    n, m = g.n, g.m
    adj = g.adj_mask
    by_lowest = [[] for _ in range(n)]
    for mask in range(1, 1 << n):
        if is_connected_mask(adj, mask) and _mask_radius(g, mask) <= r:
            nbr = 0
            internal = 0
            for v in mask_vertices(mask):
                nbr |= adj[v]
                internal += bin(adj[v] & mask).count("1")
            low = (mask & -mask).bit_length() - 1
            by_lowest[low].append((mask, nbr & ~mask, internal // 2))
    for lst in by_lowest:
        # larger sets first reaches contracted structures early
        lst.sort(key=lambda c: (-bin(c[0]).count("1"), c[0]))

    seed_value, seed_witness = nabla0(g)
    best = [
        seed_value,
        MinorModel([[v] for v in seed_witness], r,
                   _subgraph_edge_pairs(g, seed_witness)),
    ]
    sets = []
    nbrs = []

    def bound_allows(e, h, blocked, internal):
        free = n - bin(blocked).count("1")
        budget = m - internal - e
        top = best[0]
        for a in range(free + 1):
            if h + a == 0:
                continue
            gain = min(a * h + a * (a - 1) // 2, budget)
            if Fraction(e + gain, h + a) > top:
                return True
        return False

    def rec(v, blocked, e, internal):
        h = len(sets)
        if h and Fraction(e, h) > best[0]:
            edges_h = [
                (i, j)
                for i, j in combinations(range(h), 2)
                if nbrs[i] & sets[j]
            ]
            best[0] = Fraction(len(edges_h), h)
            best[1] = MinorModel([mask_vertices(s) for s in sets], r, edges_h)
        while v < n and (blocked >> v) & 1:
            v += 1
        if v == n:
            return
        if not bound_allows(e, h, blocked, internal):
            return
        for mask, nbr, inner in by_lowest[v]:
            if mask & blocked:
                continue
            gained = sum(1 for s in sets if nbr & s)
            sets.append(mask)
            nbrs.append(nbr)
            rec(v + 1, blocked | mask, e + gained, internal + inner)
            sets.pop()
            nbrs.pop()
        rec(v + 1, blocked | (1 << v), e, internal)

    rec(0, 0, 0, 0)
    return best[0], best[1]


# ---------------------------------------------------------------------------
# shallow topological minors

def _edges_inside_mask(g, mask):
    return sum(bin(g.adj_mask[v] & mask).count("1")
               for v in mask_vertices(mask)) // 2


def _paths_between(g, u, v, max_len, forbidden_interior):
    """Simple u-v paths of length <= max_len whose interior avoids the
    forbidden set, deduplicated by interior footprint."""
    out = []
    seen_footprints = set()
    path = [u]
    on_path = {u}

    def walk(x):
        for w in g.adj[x]:
            if w == v:
                if len(path) <= max_len:
                    key = frozenset(path[1:])
                    if key not in seen_footprints:
                        seen_footprints.add(key)
                        out.append(tuple(path) + (v,))
                continue
            if w in on_path or w in forbidden_interior:
                continue
            if len(path) >= max_len:
                continue
            path.append(w)
            on_path.add(w)
            walk(w)
            path.pop()
            on_path.remove(w)

    walk(u)
    return out


def top_grad(g, r, exact_limit=12):
    """Exact max density over depth-r shallow topological minors.

    Enumerates principal-vertex sets (filtered by an achievability bound),
    then packs internally vertex-disjoint paths of length <= 2r+1 between
    non-adjacent principal pairs by exhaustive search.
    """
    if r < 0:
        raise ValidationError("depth must be >= 0")
    if g.n == 0:
        raise ValidationError("top_grad needs at least one vertex")
    if r == 0:
        value, witness = nabla0(g)
        model = TopoModel(witness, _subgraph_edge_pairs_vertices(g, witness), 0)
        return value, model
    if _is_forest(g):
        return _forest_fast_path(g, r, TopoModel)
    if g.n > exact_limit:
        raise SizeLimitError(f"top_grad limited to {exact_limit} vertices for r >= 1, got {g.n}")
    n = g.n
    max_len = 2 * r + 1
    seed_value, seed_witness = nabla0(g)
    best = [seed_value,
            TopoModel(seed_witness, _subgraph_edge_pairs_vertices(g, seed_witness), r)]

    subsets = []
    for mask in range(1, 1 << n):
        k = bin(mask).count("1")
        e0 = _edges_inside_mask(g, mask)
        ub = Fraction(min(k * (k - 1) // 2, e0 + (n - k)), k)
        subsets.append((ub, mask, k, e0))
    subsets.sort(key=lambda s: (-s[0], s[1]))

    for ub, mask, k, e0 in subsets:
        if ub <= best[0]:
            continue
        principals = mask_vertices(mask)
        pset = set(principals)
        pairs = []
        for u, v in combinations(principals, 2):
            if g.has_edge(u, v):
                continue
            cands = _paths_between(g, u, v, max_len, pset)
            if cands:
                pairs.append(((u, v), cands))
        if not Fraction(e0 + len(pairs), k) > best[0]:
            continue
        chosen = []
        best_pack = [[]]

        def pack(idx, used_mask):
            if len(chosen) > len(best_pack[0]):
                best_pack[0] = list(chosen)
            if idx == len(pairs):
                return
            if len(chosen) + (len(pairs) - idx) <= len(best_pack[0]):
                return
            _, cands = pairs[idx]
            for path in cands:
                pm = mask_of(path[1:-1])
                if pm & used_mask:
                    continue
                chosen.append(path)
                pack(idx + 1, used_mask | pm)
                chosen.pop()
            pack(idx + 1, used_mask)

        pack(0, 0)
        linked = len(best_pack[0])
        value = Fraction(e0 + linked, k)
        if value > best[0]:
            paths = [(u, v) for u, v in combinations(principals, 2)
                     if g.has_edge(u, v)]
            paths += [tuple(p) for p in best_pack[0]]
            best[0] = value
            best[1] = TopoModel(principals, paths, r)
    return best[0], best[1]


# ---------------------------------------------------------------------------
# shallow immersions

def imm_grad(g, r, exact_limit=10):
    """Exact max density over depth-r shallow immersions: edge-disjoint
    paths of length <= 2r+1 with per-vertex interior load <= r."""
    if r < 0:
        raise ValidationError("depth must be >= 0")
    if g.n == 0:
        raise ValidationError("imm_grad needs at least one vertex")
    if r == 0:
        value, witness = nabla0(g)
        model = ImmersionModel(witness, _subgraph_edge_pairs_vertices(g, witness), 0)
        return value, model
    if _is_forest(g):
        return _forest_fast_path(g, r, ImmersionModel)
    if g.n > exact_limit:
        raise SizeLimitError(f"imm_grad limited to {exact_limit} vertices for r >= 1, got {g.n}")
    n, m = g.n, g.m
    max_len = 2 * r + 1
    edge_id = {}
    for i, (u, v) in enumerate(g.edges):
        edge_id[(u, v)] = i
        edge_id[(v, u)] = i
    seed_value, seed_witness = nabla0(g)
    best = [seed_value,
            ImmersionModel(seed_witness, _subgraph_edge_pairs_vertices(g, seed_witness), r)]

    subsets = []
    for mask in range(1, 1 << n):
        k = bin(mask).count("1")
        ub = Fraction(min(k * (k - 1) // 2, m), k)
        subsets.append((ub, mask, k))
    subsets.sort(key=lambda s: (-s[0], s[1]))

    for ub, mask, k in subsets:
        if ub <= best[0]:
            continue
        principals = mask_vertices(mask)
        pairs = []
        for u, v in combinations(principals, 2):
            cands = _paths_between(g, u, v, max_len, frozenset())
            if cands:
                entries = []
                seen_foot = set()
                for path in cands:
                    em = 0
                    for a, b in zip(path, path[1:]):
                        em |= 1 << edge_id[(a, b)]
                    if em in seen_foot:
                        continue
                    seen_foot.add(em)
                    entries.append((path, em, path[1:-1]))
                pairs.append(((u, v), entries))
        if not Fraction(len(pairs), k) > best[0]:
            continue
        load = [0] * n
        chosen = []
        best_pack = [[]]

        def pack(idx, used_edges):
            if len(chosen) > len(best_pack[0]):
                best_pack[0] = list(chosen)
            if idx == len(pairs):
                return
            if len(chosen) + (len(pairs) - idx) <= len(best_pack[0]):
                return
            _, entries = pairs[idx]
            for path, em, interior in entries:
                if em & used_edges:
                    continue
                if any(load[x] + 1 > r for x in interior):
                    continue
                for x in interior:
                    load[x] += 1
                chosen.append(path)
                pack(idx + 1, used_edges | em)
                chosen.pop()
                for x in interior:
                    load[x] -= 1
            pack(idx + 1, used_edges)

        pack(0, 0)
        value = Fraction(len(best_pack[0]), k)
        if value > best[0]:
            best[0] = value
            best[1] = ImmersionModel(principals, [tuple(p) for p in best_pack[0]], r)
    return best[0], best[1]


# ---------------------------------------------------------------------------
# logarithmic-density profiles

def _profile_graph(family, size):
    from .generators import bounded_degree_graph, random_tree
    from .graphs import named

    mt = re.match(r"^subdivided_cliques\((\d+)\)$", family)
    if mt:
        p = int(mt.group(1))
        return named(f"sub_{p}(K_{size})"), ("clique", size, p)
    mt = re.match(r"^bounded_degree_random\((\d+)\)$", family)
    if mt:
        d = int(mt.group(1))
        return bounded_degree_graph(size, d, seed=size), None
    if family == "grids":
        return named(f"grid_{size}x{size}"), None
    if family == "trees":
        return random_tree(size, seed=size), None
    raise ValidationError(f"unknown profile family {family!r}")


def _planted_clique_model(t, p, r):
    """Witness recovering K_t from its p-th subdivision (requires p <= 2r):
    principals are the original ids, paths the subdivision chains."""
    paths = []
    for idx, (i, j) in enumerate(combinations(range(t), 2)):
        chain = [i] + [t + idx * p + x for x in range(p)] + [j]
        paths.append(tuple(chain))
    return TopoModel(list(range(t)), paths, r)


def density_profile(family, r, sizes, exact_limit=12):
    """Rows of the logarithmic-density trajectory for a graph family.

    Within the exact limit the shallow-topological-minor density is exact;
    beyond it the row carries a certified lower bound (a validated witness
    model: the planted clique for subdivided cliques, else the densest
    subgraph), flagged by the `exact` column. log_density is
    log(size)/log(order) of the witness minor.
    """
    rows = []
    for size in sizes:
        g, planted = _profile_graph(family, size)
        if g.n <= exact_limit or _is_forest(g):
            value, model = top_grad(g, r, exact_limit=exact_limit)
            exact = True
        elif planted is not None and planted[2] <= 2 * r:
            t, p = planted[1], planted[2]
            model = _planted_clique_model(t, p, r)
            if not model.validate(g):
                raise ValidationError("planted witness failed validation")
            value = model.density()
            exact = False
        else:
            value, witness = nabla0(g)
            model = TopoModel(witness, _subgraph_edge_pairs_vertices(g, witness), r)
            exact = False
        order, sz = model.order(), model.size()
        if order >= 2 and sz >= 1:
            log_density = math.log(sz) / math.log(order)
        else:
            log_density = None
        rows.append({
            "family": family,
            "n": g.n,
            "m": g.m,
            "r": r,
            "density": f"{value.numerator}/{value.denominator}",
            "density_float": float(value),
            "exact": exact,
            "witness_order": order,
            "witness_size": sz,
            "log_density": log_density,
        })
    return rows
