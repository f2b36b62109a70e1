"""Distance colorings, odd-distance sets, r-neighborhood covers, induced
pattern scans, and the brute-force choosability decision.
"""

from itertools import combinations

from .errors import SizeLimitError, ValidationError
from .graphs import (
    Graph,
    INFINITY,
    all_pairs_distances,
    bfs_distances,
    induced_subgraph,
    named,
)
from .treedepth import greedy_smallest_last_coloring


# ---------------------------------------------------------------------------
# distance colorings

def exact_distance_graph(g, n):
    """Same vertex set; an edge joins u,v iff their hop distance is exactly n."""
    if n < 1:
        raise ValidationError("distance must be >= 1")
    dist = all_pairs_distances(g)
    edges = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if dist[u][v] == n
    ]
    return Graph(g.n, edges)


def dn_coloring(g, n):
    """Greedy proper coloring of the exact-distance-n graph (n odd).

    Always valid for the distance constraint; no constant palette is
    promised (the class-level bound is not constructive at this scale).
    """
    if n % 2 == 0:
        raise ValidationError("distance colorings are defined for odd n")
    aux = exact_distance_graph(g, n)
    return greedy_smallest_last_coloring(aux)


def verify_dn_coloring(g, n, coloring):
    """True iff no two vertices at distance exactly n share a color."""
    aux = exact_distance_graph(g, n)
    for u, v in aux.edges:
        if coloring.assignment[u] == coloring.assignment[v]:
            return False
    return True


def max_odd_distance_set(g, size_limit=30):
    """A maximum vertex set pairwise at odd (finite) distance, via exact
    max-clique search on the odd-distance auxiliary graph."""
    if g.n > size_limit:
        raise SizeLimitError(f"max_odd_distance_set limited to {size_limit} vertices")
    dist = all_pairs_distances(g)
    edges = [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if dist[u][v] != INFINITY and dist[u][v] % 2 == 1
    ]
    aux = Graph(g.n, edges)
    return _max_clique(aux)


def _max_clique(g):
    """Exact maximum clique (branch and bound, greedy-coloring bound),
    returning the lexicographically first optimum found."""
    if g.n == 0:
        return []
    adj = g.adj_mask
    best = [[]]

    def color_bound(cand_list):
        classes = []
        bounds = []
        for v in cand_list:
            placed = False
            for i, cls in enumerate(classes):
                if not (adj[v] & cls[0]):
                    cls[0] |= 1 << v
                    cls[1].append(v)
                    placed = True
                    break
            if not placed:
                classes.append([1 << v, [v]])
        order = []
        for i, cls in enumerate(classes):
            for v in cls[1]:
                order.append((v, i + 1))
        return order  # (vertex, color index) with color index as bound

    def expand(current, cand_mask):
        cand_list = []
        mask = cand_mask
        while mask:
            bit = mask & -mask
            mask ^= bit
            cand_list.append(bit.bit_length() - 1)
        order = color_bound(cand_list)
        for v, bound in reversed(order):
            if len(current) + bound <= len(best[0]):
                return
            current.append(v)
            new_cand = cand_mask & adj[v]
            if new_cand:
                expand(current, new_cand)
            elif len(current) > len(best[0]):
                best[0] = sorted(current)
            current.pop()
            cand_mask ^= 1 << v

    expand([], (1 << g.n) - 1)
    return best[0]


# ---------------------------------------------------------------------------
# neighborhood covers

class Cover:
    """r-neighborhood cover: clusters of radius <= 2r such that every
    N_r(v) fits inside some cluster."""

    __slots__ = ("clusters", "r")

    def __init__(self, clusters, r):
        # clusters: list of (vertices, center, measured_radius)
        self.clusters = tuple(
            (tuple(sorted(vs)), center, radius) for vs, center, radius in clusters
        )
        self.r = r

    def max_membership(self, n):
        counts = [0] * n
        for vs, _, _ in self.clusters:
            for v in vs:
                counts[v] += 1
        return max(counts) if counts else 0

    def to_json(self):
        return {
            "r": self.r,
            "clusters": [
                {"vertices": list(vs), "center": c, "radius": rad}
                for vs, c, rad in self.clusters
            ],
        }


def ball(g, center, radius):
    dist = bfs_distances(g, center)
    return sorted(v for v in range(g.n) if dist[v] is not INFINITY and dist[v] <= radius)


def neighborhood_cover(g, r):
    """Greedy cover: repeatedly take the smallest-id vertex whose r-ball is
    not yet inside any cluster and add the r-ball around it (which contains
    that neighborhood by construction). Deterministic; the max membership
    degree upper-bounds the cover number tau_r.

    Radius-r clusters sit well inside the 2r validity bound and stay
    fine-grained even when the graph's own radius is at most 2r; a single
    whole-graph cluster would be a valid but vacuous cover there.
    """
    if r < 1:
        raise ValidationError("r must be >= 1")
    balls_r = [set(ball(g, v, r)) for v in range(g.n)]
    clusters = []
    cluster_sets = []
    covered = [False] * g.n
    while True:
        pending = next((v for v in range(g.n) if not covered[v]), None)
        if pending is None:
            break
        mset = balls_r[pending]
        members = sorted(mset)
        radius = _cluster_radius(g, members, pending)
        clusters.append((members, pending, radius))
        cluster_sets.append(mset)
        for v in range(g.n):
            if not covered[v] and balls_r[v] <= mset:
                covered[v] = True
    return Cover(clusters, r)


def _cluster_radius(g, members, center):
    """Eccentricity of the center inside the induced cluster."""
    sub, back = induced_subgraph(g, members)
    pos = {v: i for i, v in enumerate(back)}
    dist = bfs_distances(sub, pos[center])
    finite = [d for d in dist if d is not INFINITY]
    return max(finite) if finite else 0


def verify_cover(g, cover):
    """Check connectivity, radius <= 2r (best center), and N_r containment
    for every vertex; returns (True, None) or (False, witness)."""
    r = cover.r
    cluster_sets = []
    for vs, _, _ in cover.clusters:
        sub, back = induced_subgraph(g, list(vs))
        dists = [bfs_distances(sub, i) for i in range(sub.n)]
        if any(INFINITY in d for d in dists):
            return False, ("disconnected-cluster", list(vs))
        radius = min(max(d) for d in dists) if sub.n else 0
        if radius > 2 * r:
            return False, ("radius-exceeded", list(vs))
        cluster_sets.append(set(vs))
    for v in range(g.n):
        nr = set(ball(g, v, r))
        if not any(nr <= cs for cs in cluster_sets):
            return False, ("uncovered-neighborhood", v)
    return True, None


# ---------------------------------------------------------------------------
# induced pattern scan

def induced_pattern_scan(g, s, t, q, s_limit=7, t_limit=6, q_limit=4):
    """Presence of P_s, K_t, and K_{q,q} as induced subgraphs, each with a
    witness vertex map when present."""
    from .counting import find_embedding

    if s > s_limit or t > t_limit or q > q_limit:
        raise SizeLimitError("pattern size above the scan limits")
    report = {}
    for key, pattern_name in (("path", f"P_{s}"), ("clique", f"K_{t}"),
                              ("biclique", f"K_{q},{q}")):
        pattern = named(pattern_name)
        found = find_embedding(pattern, g, induced=True)
        report[key] = {
            "pattern": pattern_name,
            "present": found is not None,
            "witness": [found[i] for i in range(pattern.n)] if found is not None else None,
        }
    return report


# ---------------------------------------------------------------------------
# choosability

def is_k_choosable(g, k, order_limit=7, k_limit=2):
    """True iff every assignment of k-color lists admits a proper list
    coloring.

    List assignments are enumerated up to color renaming (each vertex in id
    order draws its list from already-seen colors plus canonically-named
    fresh ones); a universe of k*n colors suffices because at most n
    distinct lists occur. A prefix of vertices whose induced subgraph is
    already uncolorable ends the search immediately.
    """
    if g.n > order_limit or k > k_limit:
        raise SizeLimitError(
            f"is_k_choosable limited to {order_limit} vertices and k <= {k_limit}")
    if k < 1:
        raise ValidationError("k must be >= 1")
    lists = [None] * g.n

    def list_colorable(upto):
        """Proper coloring of g[0..upto] from the assigned lists?"""
        chosen = [None] * (upto + 1)

        def place(i):
            if i > upto:
                return True
            for c in lists[i]:
                if all(chosen[w] != c for w in g.adj[i] if w < i):
                    chosen[i] = c
                    if place(i + 1):
                        return True
                    chosen[i] = None
            return False

        return place(0)

    def assign(v, used):
        if v == g.n:
            return True  # every completed assignment was colorable
        # enumerate lists: j colors from the used pool, k - j fresh ones
        for j in range(k, -1, -1):
            for old in combinations(range(used), j):
                fresh = tuple(range(used, used + (k - j)))
                lists[v] = old + fresh
                if not list_colorable(v):
                    return False  # witness assignment: not k-choosable
                if not assign(v + 1, used + (k - j)):
                    return False
        lists[v] = None
        return True

    return assign(0, 0)


def choosability_implies_chromatic(g, k):
    """Sanity relation: k-choosable implies k-colorable (identical lists)."""
    from .graphs import chromatic_number

    return chromatic_number(g, exact_limit=max(12, g.n)) <= k
