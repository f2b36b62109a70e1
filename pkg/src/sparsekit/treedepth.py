"""Exact tree-depth with elimination-forest witnesses, plus the coloring
characterizations (centered colorings, vertex rankings) and DFS bounds.

The exact solver runs the delete-a-vertex recursion with memoization over
connected vertex subsets encoded as bitmasks, splitting into components
first. A separate bounded-depth decision procedure (`treedepth_at_most`)
handles larger graphs when only td <= k for small k is in question, which
is what the decomposition verifier needs.
"""

import math

from .errors import SizeLimitError, ValidationError
from .graphs import component_masks, mask_vertices, smallest_last_order

NO_PARENT = -1


class EliminationForest:
    """Rooted forest witnessing a tree-depth bound.

    parent[v] is the parent id or NO_PARENT for roots; height counts
    vertices on the longest root-to-leaf chain. Valid for a graph G when
    every edge of G joins an ancestor/descendant pair.
    """

    __slots__ = ("parent", "roots", "height", "_depth")

    def __init__(self, parent):
        parent = tuple(parent)
        n = len(parent)
        depth = [0] * n

        def resolve(v, trail):
            if depth[v]:
                return depth[v]
            if v in trail:
                raise ValidationError("parent relation contains a cycle")
            trail.add(v)
            p = parent[v]
            if p == NO_PARENT:
                depth[v] = 1
            else:
                if not (0 <= p < n):
                    raise ValidationError(f"parent {p} out of range")
                depth[v] = resolve(p, trail) + 1
            return depth[v]

        for v in range(n):
            resolve(v, set())
        self.parent = parent
        self.roots = tuple(v for v in range(n) if parent[v] == NO_PARENT)
        self._depth = tuple(depth)
        self.height = max(depth) if depth else 0

    @property
    def n(self):
        return len(self.parent)

    def depth_of(self, v):
        """Depth of v counted in vertices (roots have depth 1)."""
        return self._depth[v]

    def ancestors(self, v):
        out = []
        p = self.parent[v]
        while p != NO_PARENT:
            out.append(p)
            p = self.parent[p]
        return out

    def is_ancestor(self, a, v):
        while v != NO_PARENT:
            if v == a:
                return True
            v = self.parent[v]
        return False

    def to_json(self):
        return {"parent": list(self.parent), "roots": list(self.roots),
                "height": self.height}

    @classmethod
    def from_json(cls, obj):
        forest = cls(obj["parent"])
        if obj.get("height") is not None and obj["height"] != forest.height:
            raise ValidationError("declared height does not match parent relation")
        return forest


class Coloring:
    """Total vertex -> color map with a declared palette size."""

    __slots__ = ("assignment", "palette")

    def __init__(self, assignment, palette=None):
        assignment = tuple(assignment)
        if any(c < 0 for c in assignment):
            raise ValidationError("colors must be nonnegative")
        least = (max(assignment) + 1) if assignment else 0
        if palette is None:
            palette = least
        if palette < least:
            raise ValidationError("palette smaller than max color + 1")
        self.assignment = assignment
        self.palette = palette

    @property
    def n(self):
        return len(self.assignment)

    def classes(self):
        out = [[] for _ in range(self.palette)]
        for v, c in enumerate(self.assignment):
            out[c].append(v)
        return out

    def to_json(self):
        return {"colors": list(self.assignment), "palette": self.palette}


def verify_elimination_forest(g, forest):
    """True iff every edge of g joins an ancestor/descendant pair in forest."""
    if forest.n != g.n:
        raise ValidationError("forest and graph vertex counts differ")
    for u, v in g.edges:
        if not (forest.is_ancestor(u, v) or forest.is_ancestor(v, u)):
            return False
    return True


# ---------------------------------------------------------------------------
# exact tree-depth

def bitmask_td_solver(g):
    """Memoized td-of-vertex-bitmask evaluator for one graph (n <= ~18).

    Returns a function mask -> tree-depth of the induced subgraph. The memo
    is shared across calls, which makes it cheap to evaluate many subsets of
    the same graph (the chi_p brute force leans on this).
    """
    adj = g.adj_mask
    memo = {}

    def td_conn(mask):
        hit = memo.get(mask)
        if hit is not None:
            return hit[0]
        pc = bin(mask).count("1")
        if pc == 1:
            memo[mask] = (1, mask.bit_length() - 1)
            return 1
        verts = mask_vertices(mask)
        if all(adj[v] & mask == mask ^ (1 << v) for v in verts):
            memo[mask] = (pc, verts[0])
            return pc
        best, root = pc, verts[0]
        for v in verts:
            sub = mask ^ (1 << v)
            val = 1 + max(td_conn(c) for c in component_masks(adj, sub))
            if val < best:
                best, root = val, v
                if best == 2:
                    break
        memo[mask] = (best, root)
        return best

    def td_of(mask):
        if mask == 0:
            return 0
        return max(td_conn(c) for c in component_masks(adj, mask))

    td_of.memo = memo
    td_of.td_conn = td_conn
    return td_of


def treedepth_exact(g, exact_limit=18):
    """Exact tree-depth with a witness forest of matching height.

    Delete-a-vertex recursion over connected bitmask subsets, components
    split first, memoized. Among minimizing deletion vertices the smallest
    id wins, so the witness is deterministic.
    """
    if g.n > exact_limit:
        raise SizeLimitError(f"treedepth_exact limited to {exact_limit} vertices, got {g.n}")
    if g.n == 0:
        return 0, EliminationForest([])
    adj = g.adj_mask
    td_of = bitmask_td_solver(g)
    memo = td_of.memo

    def build(mask, parent, out_parent):
        for comp in component_masks(adj, mask):
            td_of.td_conn(comp)
            root = memo[comp][1]
            out_parent[root] = parent
            rest = comp ^ (1 << root)
            if rest:
                build(rest, root, out_parent)

    full = (1 << g.n) - 1
    value = td_of(full)
    parent = [NO_PARENT] * g.n
    build(full, NO_PARENT, parent)
    forest = EliminationForest(parent)
    return value, forest


def treedepth_at_most(g, k, _memo=None):
    """Decide td(g) <= k without a size limit on n (cost grows with k).

    Used by the decomposition verifier where k is small (the number of
    color classes) but the induced subgraph may be large. Returns a witness
    forest as a parent list, or None.
    """
    if k < 0:
        return None
    parent = [NO_PARENT] * g.n
    memo = {} if _memo is None else _memo

    def solve(vertices, budget, par):
        # vertices: sorted tuple forming a connected induced subgraph
        if not vertices:
            return True
        if budget <= 0:
            return False
        if len(vertices) == 1:
            parent[vertices[0]] = par
            return True
        if budget == 1:
            return False  # connected with >= 2 vertices has an edge
        key = (vertices, budget)
        known = memo.get(key)
        if known is False:
            return False
        vset = set(vertices)
        if known is not None and known is not True:
            root = known
            parent[root] = par
            rest = [v for v in vertices if v != root]
            return all(
                solve(comp, budget - 1, root)
                for comp in _components(g, rest, vset - {root})
            )
        dfs_parent, depth = _dfs_tree(g, vertices, vset)
        if depth <= budget:
            # a DFS tree is a valid elimination forest (only back edges)
            root_v = vertices[0]
            parent[root_v] = par
            for v in vertices:
                if v != root_v:
                    parent[v] = dfs_parent[v]
            memo[key] = True
            return True
        if depth >= (1 << budget):
            return False  # the DFS root path alone forces td > budget
        # try high-degree-inside vertices first; hubs usually split best
        inside_deg = {v: sum(1 for w in g.adj[v] if w in vset) for v in vertices}
        for root in sorted(vertices, key=lambda v: (-inside_deg[v], v)):
            rest = [v for v in vertices if v != root]
            comps = _components(g, rest, vset - {root})
            if all(solve(comp, budget - 1, root) for comp in comps):
                parent[root] = par
                memo[key] = root
                return True
        memo[key] = False
        return False

    all_vertices = list(range(g.n))
    ok = all(
        solve(comp, k, NO_PARENT)
        for comp in _components(g, all_vertices, set(all_vertices))
    )
    return parent if ok else None


def _dfs_tree(g, vertices, vset):
    """DFS tree of a connected vertex subset from its smallest member:
    (parent map, height counted in vertices)."""
    root = vertices[0]
    par = {root: NO_PARENT}
    depth = {root: 1}
    height = 1
    stack = [(root, iter(g.adj[root]))]
    while stack:
        u, it = stack[-1]
        advanced = False
        for w in it:
            if w in vset and w not in par:
                par[w] = u
                depth[w] = depth[u] + 1
                if depth[w] > height:
                    height = depth[w]
                stack.append((w, iter(g.adj[w])))
                advanced = True
                break
        if not advanced:
            stack.pop()
    return par, height


def _components(g, vertices, vset):
    comps = []
    seen = set()
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
        comp.sort()
        comps.append(tuple(comp))
    return comps


# ---------------------------------------------------------------------------
# coloring characterizations

def greedy_smallest_last_coloring(g):
    """Proper coloring in smallest-last order; palette <= degeneracy + 1."""
    order = smallest_last_order(g)
    colors = [-1] * g.n
    for v in order:
        used = {colors[w] for w in g.adj[v] if colors[w] >= 0}
        c = 0
        while c in used:
            c += 1
        colors[v] = c
    return Coloring(colors)


def centered_coloring_from_forest(forest):
    """Color every vertex by its depth in the forest (palette = height).

    For any graph the forest validates against, the result is a centered
    coloring: in a connected subgraph the unique shallowest vertex (the
    common ancestor) carries a color appearing exactly once.
    """
    colors = [forest.depth_of(v) - 1 for v in range(forest.n)]
    return Coloring(colors, palette=forest.height)


def ranking_from_forest(forest):
    """Vertex ranking from a forest: color = height - depth, so roots carry
    the highest color. In any graph the forest validates against, the
    unique shallowest vertex of a connected subgraph outranks the rest."""
    colors = [forest.height - forest.depth_of(v) for v in range(forest.n)]
    return Coloring(colors, palette=forest.height)


def verify_centered_coloring(g, coloring, bruteforce_limit=14):
    """True iff every connected induced subgraph has a uniquely used color.

    Exhausts all connected vertex subsets, so the graph must be small.
    """
    if g.n > bruteforce_limit:
        raise SizeLimitError(f"verify_centered_coloring limited to {bruteforce_limit} vertices")
    if coloring.n != g.n:
        raise ValidationError("coloring does not cover the graph")
    adj = g.adj_mask
    colors = coloring.assignment
    for mask in range(1, 1 << g.n):
        start = mask & -mask
        comp = start
        frontier = start
        while frontier:
            v = frontier & -frontier
            frontier ^= v
            nbrs = adj[v.bit_length() - 1] & mask & ~comp
            comp |= nbrs
            frontier |= nbrs
        if comp != mask:
            continue
        counts = {}
        for v in mask_vertices(mask):
            counts[colors[v]] = counts.get(colors[v], 0) + 1
        if 1 not in counts.values():
            return False
    return True


def verify_vertex_ranking(g, coloring, limit=14):
    """Ranking check via the color-threshold component formulation:
    deleting all vertices of color > k must leave no component holding two
    vertices of color k.
    """
    if g.n > limit:
        raise SizeLimitError(f"verify_vertex_ranking limited to {limit} vertices")
    if coloring.n != g.n:
        raise ValidationError("coloring does not cover the graph")
    colors = coloring.assignment
    adj = g.adj_mask
    for k in sorted(set(colors)):
        mask = 0
        for v, c in enumerate(colors):
            if c <= k:
                mask |= 1 << v
        for comp in component_masks(adj, mask):
            if sum(1 for v in mask_vertices(comp) if colors[v] == k) >= 2:
                return False
    return True


def minimum_centered_palette(g, limit=6):
    """Brute-force minimum number of colors in a centered coloring.

    Enumerates colorings up to color renaming (restricted-growth strings).
    """
    if g.n > limit:
        raise SizeLimitError(f"minimum_centered_palette limited to {limit} vertices")
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        if _exists_rgs_coloring(g, k, lambda c: verify_centered_coloring(g, c)):
            return k
    return g.n


def minimum_ranking_palette(g, limit=6):
    """Brute-force minimum vertex-ranking palette (colors are ordered, so
    all assignments are enumerated, not just up to renaming)."""
    if g.n > limit:
        raise SizeLimitError(f"minimum_ranking_palette limited to {limit} vertices")
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        if _exists_any_coloring(g, k, lambda c: verify_vertex_ranking(g, c)):
            return k
    return g.n


def _exists_rgs_coloring(g, k, accept):
    colors = [0] * g.n

    def rec(i, used):
        if i == g.n:
            return used == k and accept(Coloring(colors, palette=k))
        if used + (g.n - i) < k:
            return False
        for c in range(min(used + 1, k)):
            colors[i] = c
            if rec(i + 1, max(used, c + 1)):
                return True
        return False

    return rec(0, 0)


def _exists_any_coloring(g, k, accept):
    colors = [0] * g.n

    def rec(i):
        if i == g.n:
            return accept(Coloring(colors, palette=k))
        for c in range(k):
            colors[i] = c
            if rec(i + 1):
                return True
        return False

    return rec(0)


# ---------------------------------------------------------------------------
# DFS bounds

def dfs_height_bounds(g):
    """(lower, upper, witness): upper is the height of a DFS forest rooted at
    the smallest id of each component, lower is ceil(log2(h+2)).

    A DFS tree is a valid elimination forest because non-tree edges are back
    edges. Only td <= upper is a hard invariant; the log bound is reported
    informationally and can exceed the true tree-depth when the DFS height
    is far from minimal.
    """
    parent = [NO_PARENT] * g.n
    visited = [False] * g.n
    for root in range(g.n):
        if visited[root]:
            continue
        visited[root] = True
        stack = [(root, iter(g.adj[root]))]
        while stack:
            u, it = stack[-1]
            advanced = False
            for w in it:
                if not visited[w]:
                    visited[w] = True
                    parent[w] = u
                    stack.append((w, iter(g.adj[w])))
                    advanced = True
                    break
            if not advanced:
                stack.pop()
    forest = EliminationForest(parent)
    h = forest.height
    lower = math.ceil(math.log2(h + 2)) if h else 0
    return lower, h, forest
