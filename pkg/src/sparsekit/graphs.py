"""Immutable simple-graph core: construction, catalog, traversal, exact ω/χ.

Vertices are dense integer ids 0..n-1; an optional label tuple maps ids back
to external tokens. All algorithms work on ids, which keeps vertex subsets
representable as Python-int bitmasks (the workhorse of the exact solvers in
the treedepth and density modules).
"""

import math
import re
from itertools import combinations

from .errors import ParseError, SizeLimitError, ValidationError

INFINITY = math.inf


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1.

    No self-loops, no parallel edges. Construction validates; afterwards the
    object is read-only and safe to share across threads.
    """

    __slots__ = ("n", "edges", "labels", "_adj", "_adj_mask")

    def __init__(self, n, edges, labels=None):
        if n < 0:
            raise ValidationError("vertex count must be nonnegative")
        seen = set()
        norm = []
        for u, v in edges:
            if u == v:
                raise ValidationError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValidationError(f"edge ({u},{v}) endpoint out of range [0,{n})")
            e = (u, v) if u < v else (v, u)
            if e not in seen:
                seen.add(e)
                norm.append(e)
        norm.sort()
        self.n = n
        self.edges = tuple(norm)
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n:
                raise ValidationError("label map must cover every vertex")
            if len(set(labels)) != n:
                raise ValidationError("labels must be distinct")
        self.labels = labels
        adj = [[] for _ in range(n)]
        mask = [0] * n
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
            mask[u] |= 1 << v
            mask[v] |= 1 << u
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._adj_mask = tuple(mask)

    @property
    def m(self):
        return len(self.edges)

    @property
    def adj(self):
        return self._adj

    @property
    def adj_mask(self):
        return self._adj_mask

    def degree(self, v):
        return len(self._adj[v])

    def has_edge(self, u, v):
        return bool(self._adj_mask[u] >> v & 1) if u != v else False

    def label_of(self, v):
        return self.labels[v] if self.labels is not None else str(v)

    def __eq__(self, other):
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self.edges == other.edges
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


# ---------------------------------------------------------------------------
# bitmask helpers (shared by the exact solvers)

def component_masks(adj_mask, mask):
    """Split the vertex bitmask into connected components of the induced graph."""
    comps = []
    rest = mask
    while rest:
        start = rest & -rest
        comp = start
        frontier = start
        while frontier:
            v = frontier & -frontier
            frontier ^= v
            nbrs = adj_mask[v.bit_length() - 1] & mask & ~comp
            comp |= nbrs
            frontier |= nbrs
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected_mask(adj_mask, mask):
    if mask == 0:
        return True
    start = mask & -mask
    comp = start
    frontier = start
    while frontier:
        v = frontier & -frontier
        frontier ^= v
        nbrs = adj_mask[v.bit_length() - 1] & mask & ~comp
        comp |= nbrs
        frontier |= nbrs
    return comp == mask


def mask_vertices(mask):
    out = []
    while mask:
        v = mask & -mask
        out.append(v.bit_length() - 1)
        mask ^= v
    return out


def mask_of(vertices):
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# ---------------------------------------------------------------------------
# edge-list text format

def parse_edge_list(text):
    """Parse the edge-list text format into a Graph.

    One edge per line as two whitespace-separated tokens; '#' starts a
    comment, blank lines are ignored. The structured comment form
    '# vertex TOK' declares an isolated vertex (needed to round-trip
    edgeless graphs; foreign parsers see an ordinary comment).

    Ids are assigned in first-appearance order. Duplicate edges collapse
    silently; self-loops are rejected. If every token is the decimal string
    of its own dense id the label map is dropped.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    ids = {}
    order = []

    def intern(tok):
        if tok not in ids:
            ids[tok] = len(order)
            order.append(tok)
        return ids[tok]

    edges = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "vertex":
                intern(parts[1])
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two tokens, got {len(parts)}", line=ln)
        a, b = parts
        if a == b:
            raise ValidationError(f"line {ln}: self-loop on token {a!r}")
        edges.append((intern(a), intern(b)))
    n = len(order)
    labels = tuple(order)
    if labels == tuple(str(i) for i in range(n)):
        labels = None
    return Graph(n, edges, labels=labels)


def serialize_edge_list(g):
    """Inverse of parse_edge_list; emits dense ids unless labels are present.

    Ids are assigned by first appearance when parsing, so whenever the edge
    lines alone would not reproduce the vertex numbering (isolated vertices,
    or edges whose endpoints first appear out of order) a header of
    '# vertex TOK' declarations pins the order. parse(serialize(g)) == g.
    """
    tok = g.label_of
    appear = []
    seen = set()
    for u, v in g.edges:
        for x in (u, v):
            if x not in seen:
                seen.add(x)
                appear.append(x)
    lines = []
    if appear != list(range(g.n)):
        lines.extend(f"# vertex {tok(v)}" for v in range(g.n))
    for u, v in g.edges:
        lines.append(f"{tok(u)} {tok(v)}")
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# named catalog

_NAME_RES = [
    ("complete", re.compile(r"^K_(\d+)$")),
    ("path", re.compile(r"^P_(\d+)$")),
    ("cycle", re.compile(r"^C_(\d+)$")),
    ("biclique", re.compile(r"^K_(\d+),(\d+)$")),
    ("star", re.compile(r"^star_(\d+)$")),
    ("grid", re.compile(r"^grid_(\d+)x(\d+)$")),
    ("subdivision", re.compile(r"^sub_(\d+)\((.+)\)$")),
]


def named(name):
    """Build a catalog graph from its name token.

    Supported: K_n, P_n, C_n, K_a,b, star_k (= K_1,k), grid_RxC, Petersen,
    Clebsch, Q_3, and sub_p(NAME) for the p-th subdivision of another
    catalog graph. Constructions are deterministic, so a name reproduces
    the same graph bit-exactly.
    """
    if name == "Petersen":
        edges = []
        for i in range(5):
            edges.append((i, (i + 1) % 5))          # outer pentagon
            edges.append((i, i + 5))                # spokes
            edges.append((5 + i, 5 + (i + 2) % 5))  # inner pentagram
        return Graph(10, edges)
    if name == "Clebsch":
        # folded 5-cube: 4-bit vectors, adjacent iff XOR-weight is 1 or 4
        edges = []
        for u in range(16):
            for v in range(u + 1, 16):
                w = bin(u ^ v).count("1")
                if w == 1 or w == 4:
                    edges.append((u, v))
        return Graph(16, edges)
    if name == "Q_3":
        edges = []
        for u in range(8):
            for b in range(3):
                v = u ^ (1 << b)
                if u < v:
                    edges.append((u, v))
        return Graph(8, edges)
    for kind, rx in _NAME_RES:
        mt = rx.match(name)
        if not mt:
            continue
        if kind == "complete":
            n = int(mt.group(1))
            _require(n >= 1, name)
            return Graph(n, combinations(range(n), 2))
        if kind == "path":
            n = int(mt.group(1))
            _require(n >= 1, name)
            return Graph(n, [(i, i + 1) for i in range(n - 1)])
        if kind == "cycle":
            n = int(mt.group(1))
            _require(n >= 3, name)
            return Graph(n, [(i, (i + 1) % n) for i in range(n)])
        if kind == "biclique":
            a, b = int(mt.group(1)), int(mt.group(2))
            _require(a >= 1 and b >= 1, name)
            return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])
        if kind == "star":
            k = int(mt.group(1))
            _require(k >= 1, name)
            return Graph(k + 1, [(0, i) for i in range(1, k + 1)])
        if kind == "grid":
            r, c = int(mt.group(1)), int(mt.group(2))
            _require(r >= 1 and c >= 1, name)
            edges = []
            for i in range(r):
                for j in range(c):
                    v = i * c + j
                    if j + 1 < c:
                        edges.append((v, v + 1))
                    if i + 1 < r:
                        edges.append((v, v + c))
            return Graph(r * c, edges)
        if kind == "subdivision":
            p = int(mt.group(1))
            return subdivide(named(mt.group(2)), p)
    raise ValidationError(f"unknown graph name {name!r}")


def _require(cond, name):
    if not cond:
        raise ValidationError(f"parameters out of range in graph name {name!r}")


def catalog_names(max_n=None):
    """Names of the finite test catalog (parametric families at small sizes)."""
    names = ["Petersen", "Clebsch", "Q_3"]
    names += [f"K_{n}" for n in range(1, 9)]
    names += [f"P_{n}" for n in range(1, 11)]
    names += [f"C_{n}" for n in range(3, 11)]
    names += [f"K_{a},{b}" for a in range(1, 4) for b in range(a, 5)]
    names += [f"star_{k}" for k in range(1, 7)]
    names += ["grid_2x2", "grid_2x3", "grid_3x3", "grid_3x4", "grid_4x4"]
    if max_n is not None:
        names = [nm for nm in names if named(nm).n <= max_n]
    return names


# ---------------------------------------------------------------------------
# structural operations

def subdivide(g, p):
    """Replace every edge by a path with p internal vertices.

    Original vertices keep their ids; subdivision vertices are appended in
    edge order, so the construction is reproducible.
    """
    if p < 0:
        raise ValidationError("subdivision count must be >= 0")
    if p == 0:
        return Graph(g.n, g.edges)
    n = g.n
    edges = []
    for u, v in g.edges:
        chain = [u] + [n + i for i in range(p)] + [v]
        n += p
        edges.extend(zip(chain, chain[1:]))
    return Graph(n, edges)


def induced_subgraph(g, vertices):
    """Induced subgraph on the given vertex set, re-densified.

    Returns (subgraph, back_map) where back_map[i] is the original id of the
    new vertex i. Vertex order follows ascending original id.
    """
    vs = sorted(set(vertices))
    for v in vs:
        if not (0 <= v < g.n):
            raise ValidationError(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(vs)}
    keep = set(vs)
    edges = [(pos[u], pos[v]) for u, v in g.edges if u in keep and v in keep]
    labels = tuple(g.labels[v] for v in vs) if g.labels is not None else None
    return Graph(len(vs), edges, labels=labels), vs


def bfs_distances(g, source):
    """Exact hop distances from source; unreachable vertices get INFINITY."""
    if not (0 <= source < g.n):
        raise ValidationError(f"source {source} out of range")
    dist = [INFINITY] * g.n
    dist[source] = 0
    frontier = [source]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if dist[w] == INFINITY:
                    dist[w] = d
                    nxt.append(w)
        frontier = nxt
    return dist


def all_pairs_distances(g):
    return [bfs_distances(g, v) for v in range(g.n)]


def connected_components(g):
    """Partition of V into components, each sorted, ordered by smallest member."""
    return [mask_vertices(c) for c in component_masks(g.adj_mask, (1 << g.n) - 1)]


def girth(g):
    """Length of a shortest cycle, or INFINITY for forests."""
    best = INFINITY
    for root in range(g.n):
        dist = {root: 0}
        parent = {root: -1}
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for w in g.adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        parent[w] = u
                        nxt.append(w)
                    elif parent[u] != w and parent[w] != u:
                        best = min(best, dist[u] + dist[w] + 1)
            frontier = nxt
    return best


# ---------------------------------------------------------------------------
# degeneracy and orientations

ARC_ORIGINAL = "original"
ARC_FRATERNAL = "fraternal"
ARC_TRANSITIVE = "transitive"


class Orientation:
    """Directed version of a graph with per-arc provenance and round index.

    Every undirected edge of the (possibly augmented) underlying graph
    carries exactly one arc. Original arcs have round 0; arcs and edges
    added by transitive-fraternal augmentation carry the round that
    produced them.
    """

    __slots__ = ("base", "arcs", "arc_kind", "arc_round")

    def __init__(self, base, arcs, arc_kind, arc_round):
        self.base = base
        self.arcs = tuple(sorted(arcs))
        self.arc_kind = dict(arc_kind)
        self.arc_round = dict(arc_round)
        pairs = set()
        for u, v in self.arcs:
            if u == v:
                raise ValidationError("loop arc")
            key = (u, v) if u < v else (v, u)
            if key in pairs:
                raise ValidationError(f"pair {key} oriented twice")
            pairs.add(key)
        for a in self.arcs:
            if self.arc_kind[a] == ARC_ORIGINAL and self.arc_round[a] != 0:
                raise ValidationError("original arcs must have round 0")

    @property
    def n(self):
        return self.base.n

    def underlying_graph(self):
        """Simple graph carrying one edge per arc (base plus augmentations)."""
        return Graph(self.base.n, [tuple(sorted(a)) for a in self.arcs])

    def in_degrees(self):
        indeg = [0] * self.base.n
        for _, v in self.arcs:
            indeg[v] += 1
        return indeg

    def out_neighbors(self):
        out = [[] for _ in range(self.base.n)]
        for u, v in self.arcs:
            out[u].append(v)
        return [sorted(x) for x in out]

    def in_neighbors(self):
        inn = [[] for _ in range(self.base.n)]
        for u, v in self.arcs:
            inn[v].append(u)
        return [sorted(x) for x in inn]


def smallest_last_order(g, subset=None):
    """Smallest-last vertex order: repeatedly peel a minimum-degree vertex
    (smallest id on ties) and place it last. Peeling order is the reverse.
    """
    verts = sorted(subset) if subset is not None else list(range(g.n))
    alive = set(verts)
    deg = {v: sum(1 for w in g.adj[v] if w in alive) for v in verts}
    order = []
    for _ in range(len(verts)):
        v = min(alive, key=lambda x: (deg[x], x))
        order.append(v)
        alive.remove(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    order.reverse()
    return order


def degeneracy(g):
    """Max over subgraphs of minimum degree, via the peeling order."""
    alive = set(range(g.n))
    deg = {v: g.degree(v) for v in alive}
    best = 0
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        best = max(best, deg[v])
        alive.remove(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    return best


def degeneracy_orientation(g):
    """Acyclic orientation from the smallest-last order; when a vertex is
    peeled its surviving neighbors point into it, so max in-degree equals
    the degeneracy.
    """
    order = smallest_last_order(g)
    pos = {v: i for i, v in enumerate(order)}
    arcs = []
    for u, v in g.edges:
        a = (u, v) if pos[u] < pos[v] else (v, u)
        arcs.append(a)
    kind = {a: ARC_ORIGINAL for a in arcs}
    rnd = {a: 0 for a in arcs}
    return Orientation(g, arcs, kind, rnd)


# ---------------------------------------------------------------------------
# exact clique and chromatic number (desk scale, hard refusal above limits)

def clique_number(g, exact_limit=20):
    """Exact ω by branch and bound with a greedy-coloring upper bound."""
    if g.n > exact_limit:
        raise SizeLimitError(f"clique_number limited to {exact_limit} vertices, got {g.n}")
    if g.n == 0:
        return 0
    adj = g.adj_mask
    best = [1]

    def color_bound(cand):
        # greedy coloring of candidates; number of classes bounds the clique
        order = mask_vertices(cand)
        classes = []
        for v in order:
            for cls in classes:
                if not (adj[v] & cls[0]):
                    cls[0] |= 1 << v
                    break
            else:
                classes.append([1 << v])
        return len(classes)

    def expand(clique_size, cand):
        if cand == 0:
            best[0] = max(best[0], clique_size)
            return
        if clique_size + color_bound(cand) <= best[0]:
            return
        while cand:
            if clique_size + bin(cand).count("1") <= best[0]:
                return
            v = cand & -cand
            cand ^= v
            expand(clique_size + 1, cand & adj[v.bit_length() - 1])

    expand(0, (1 << g.n) - 1)
    return best[0]


def chromatic_number(g, exact_limit=12):
    """Exact χ: lower-bound by ω, then decide k-colorability upward."""
    if g.n > exact_limit:
        raise SizeLimitError(f"chromatic_number limited to {exact_limit} vertices, got {g.n}")
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    lb = clique_number(g, exact_limit=max(exact_limit, g.n))
    order = sorted(range(g.n), key=lambda v: -g.degree(v))

    def colorable(k):
        colors = [-1] * g.n

        def place(i, used):
            if i == len(order):
                return True
            v = order[i]
            forbidden = set()
            for w in g.adj[v]:
                if colors[w] >= 0:
                    forbidden.add(colors[w])
            for c in range(min(used + 1, k)):
                if c in forbidden:
                    continue
                colors[v] = c
                if place(i + 1, max(used, c + 1)):
                    return True
                colors[v] = -1
                if c == used:
                    break  # first fresh color suffices by symmetry
            return False

        return place(0, 0)

    k = lb
    while not colorable(k):
        k += 1
    return k
