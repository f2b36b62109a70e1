"""Low tree-depth decompositions via transitive-fraternal augmentation,
independent verification, the brute-force chi_p oracle, and tree-depth
cluster covers.

The augmentation schedule starts at zero rounds and escalates until the
output verifies, so palettes stay as small as the graph allows; correctness
comes from the verifier, never from trusting the construction.
"""

from itertools import combinations

from .errors import SizeLimitError, SparsekitError, ValidationError
from .graphs import (
    ARC_FRATERNAL,
    ARC_TRANSITIVE,
    Graph,
    Orientation,
    degeneracy_orientation,
)
from .treedepth import (
    Coloring,
    bitmask_td_solver,
    greedy_smallest_last_coloring,
    treedepth_at_most,
)


class LtdVerificationError(SparsekitError):
    """Raised when no verified decomposition could be produced; carries the
    offending color subset of the last attempt."""

    def __init__(self, message, counterexample):
        super().__init__(message)
        self.counterexample = tuple(counterexample)


class LtdDecomposition:
    """A coloring claimed to be a low tree-depth decomposition for parameter p:
    any I of at most p colors induces a subgraph of tree-depth at most |I|."""

    __slots__ = ("coloring", "p", "rounds_used", "verified")

    def __init__(self, coloring, p, rounds_used, verified):
        self.coloring = coloring
        self.p = p
        self.rounds_used = rounds_used
        self.verified = verified

    def to_json(self):
        return {
            "palette": self.coloring.palette,
            "colors": list(self.coloring.assignment),
            "rounds_used": self.rounds_used,
            "verified": self.verified,
        }


class LtdVerification:
    """Verifier outcome: truthy iff every checked subset passed.

    counterexample is the lexicographically smallest violating color set;
    indeterminate lists subsets whose exact check was refused by the size
    guard (distinct from failure).
    """

    __slots__ = ("ok", "counterexample", "indeterminate")

    def __init__(self, ok, counterexample=None, indeterminate=()):
        self.ok = ok
        self.counterexample = counterexample
        self.indeterminate = tuple(indeterminate)

    def __bool__(self):
        return self.ok


class ClusterCover:
    """Vertex clusters covering every connected subgraph of order <= t,
    each cluster inducing a connected subgraph of tree-depth <= t."""

    __slots__ = ("clusters", "t", "palette", "membership_bound")

    def __init__(self, clusters, t, palette=None, membership_bound=None):
        self.clusters = tuple(tuple(sorted(c)) for c in clusters)
        self.t = t
        self.palette = palette
        self.membership_bound = membership_bound

    def max_membership(self, n):
        counts = [0] * n
        for cluster in self.clusters:
            for v in cluster:
                counts[v] += 1
        return max(counts) if counts else 0

    def to_json(self):
        return {
            "t": self.t,
            "clusters": [list(c) for c in self.clusters],
            "palette": self.palette,
            "membership_bound": self.membership_bound,
        }


# ---------------------------------------------------------------------------
# transitive fraternal augmentation

def tf_augment(orientation, rounds, round_cap=12):
    """Apply `rounds` augmentation rounds to an orientation.

    Per round, computed from the arcs present at the start of the round:
      - transitive pair u->v->w (u != w, pair not yet adjacent): arc u->w;
      - fraternal pair u->v, w->v (u != w, pair not yet adjacent):
        undirected edge {u,w}.
    Transitive arcs are applied first in sorted order (first orientation of
    a pair wins); the round's new fraternal edges are then oriented by a
    smallest-last peeling of the graph they form, which greedily keeps
    in-degrees low. Stops early at a fixpoint.
    """
    if rounds < 0:
        raise ValidationError("rounds must be >= 0")
    if rounds > round_cap:
        raise SizeLimitError(f"augmentation round cap {round_cap} exceeded")
    arcs = dict.fromkeys(orientation.arcs)
    kind = dict(orientation.arc_kind)
    rnd = dict(orientation.arc_round)
    adjacent = {frozenset(a) for a in arcs}
    base_round = max(rnd.values(), default=0)

    for step in range(1, rounds + 1):
        this_round = base_round + step
        out = {}
        inn = {}
        for u, v in arcs:
            out.setdefault(u, []).append(v)
            inn.setdefault(v, []).append(u)
        transitive = set()
        for v, heads in out.items():
            for u in inn.get(v, ()):
                for w in heads:
                    if u != w and frozenset((u, w)) not in adjacent:
                        transitive.add((u, w))
        fraternal = set()
        for v, tails in inn.items():
            for u, w in combinations(sorted(tails), 2):
                if frozenset((u, w)) not in adjacent:
                    fraternal.add((u, w))
        if not transitive and not fraternal:
            break
        for a in sorted(transitive):
            pair = frozenset(a)
            if pair in adjacent:
                continue  # opposite direction was added first
            adjacent.add(pair)
            arcs[a] = None
            kind[a] = ARC_TRANSITIVE
            rnd[a] = this_round
        fresh = [e for e in sorted(fraternal) if frozenset(e) not in adjacent]
        for a in _orient_smallest_last(fresh):
            adjacent.add(frozenset(a))
            arcs[a] = None
            kind[a] = ARC_FRATERNAL
            rnd[a] = this_round
    return Orientation(orientation.base, list(arcs), kind, rnd)


def _orient_smallest_last(edges):
    """Orient an edge list by smallest-last peeling of the graph it forms;
    surviving neighbors point into the peeled vertex."""
    if not edges:
        return []
    adj = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    alive = set(adj)
    arcs = []
    while alive:
        v = min(alive, key=lambda x: (sum(1 for w in adj[x] if w in alive), x))
        for w in adj[v]:
            if w in alive:
                arcs.append((w, v))
        alive.remove(v)
    return arcs


# ---------------------------------------------------------------------------
# verification

def _color_subsets_lex(colors_present, p):
    """All nonempty subsets of at most p colors, in lexicographic order over
    the sorted tuples ((0,) < (0,1) < (0,1,2) < (0,2) < (1,) ...)."""

    def extend(prefix, start):
        for c in colors_present[start:]:
            subset = prefix + (c,)
            yield subset
            if len(subset) < p:
                yield from extend(subset, colors_present.index(c) + 1)

    yield from extend((), 0)


def verify_ltd(g, p, coloring, component_limit=None):
    """Check that every set I of at most p colors induces td <= |I|.

    Returns an LtdVerification; its counterexample is the lexicographically
    smallest violating color set. Components larger than component_limit
    (when given) are reported as indeterminate rather than guessed.
    """
    if coloring.n != g.n:
        raise ValidationError("coloring does not cover the graph")
    if p < 1:
        raise ValidationError("p must be >= 1")
    classes = {}
    for v, c in enumerate(coloring.assignment):
        classes.setdefault(c, []).append(v)
    colors_present = sorted(classes)
    memo = {}
    indeterminate = []
    for subset in _color_subsets_lex(colors_present, p):
        vertices = []
        for c in subset:
            vertices.extend(classes[c])
        vertices.sort()
        budget = len(subset)
        comps = _subset_components(g, vertices)
        for comp in comps:
            if len(comp) <= budget:
                continue
            if component_limit is not None and len(comp) > component_limit:
                indeterminate.append(subset)
                break
            if not _component_td_at_most(g, comp, budget, memo):
                return LtdVerification(False, counterexample=subset,
                                       indeterminate=indeterminate)
    return LtdVerification(True, indeterminate=indeterminate)


def _subset_components(g, vertices):
    vset = set(vertices)
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


def _component_td_at_most(g, comp, budget, memo):
    """td(G[comp]) <= budget for a connected comp, with a shared memo."""
    key = (comp, budget)
    hit = memo.get(key)
    if hit is not None:
        return hit
    sub, _ = _induced(g, comp)
    ok = treedepth_at_most(sub, budget) is not None
    memo[key] = ok
    return ok


def _induced(g, vertices):
    pos = {v: i for i, v in enumerate(vertices)}
    keep = set(vertices)
    edges = []
    for v in vertices:
        for w in g.adj[v]:
            if w in keep and v < w:
                edges.append((pos[v], pos[w]))
    return Graph(len(vertices), edges), list(vertices)


# ---------------------------------------------------------------------------
# construction

def ltd_coloring(g, p, max_rounds=None, exact_fallback_limit=8,
                 component_limit=None):
    """Low tree-depth decomposition with parameter p.

    Seeds a degeneracy orientation, augments it round by round (0 up to
    max_rounds, default 2p-2), greedily colors the augmented graph
    smallest-last, and returns the first coloring that verifies. Starting
    from zero rounds keeps the palette small on easy inputs (a proper
    coloring already suffices for p = 1). If no round verifies, small
    graphs fall back to the exact brute-force optimum; otherwise the last
    counterexample is raised.
    """
    if p < 1:
        raise ValidationError("p must be >= 1")
    if max_rounds is None:
        max_rounds = max(0, 2 * p - 2)
    orientation = degeneracy_orientation(g)
    last = None
    for r in range(max_rounds + 1):
        if r > 0:
            orientation = tf_augment(orientation, 1,
                                     round_cap=max(max_rounds, 12))
        coloring = greedy_smallest_last_coloring(orientation.underlying_graph())
        outcome = verify_ltd(g, p, coloring, component_limit=component_limit)
        if outcome:
            return LtdDecomposition(coloring, p, rounds_used=r, verified=True)
        last = outcome
    if g.n <= exact_fallback_limit:
        _, coloring = _chi_p_search(g, p)
        return LtdDecomposition(coloring, p, rounds_used=max_rounds,
                                verified=True)
    raise LtdVerificationError(
        f"no verified decomposition for p={p} within {max_rounds} rounds",
        counterexample=last.counterexample,
    )


def chi_p_bruteforce(g, p, limit=8):
    """Exact chi_p by enumerating colorings up to color renaming."""
    if g.n > limit:
        raise SizeLimitError(f"chi_p_bruteforce limited to {limit} vertices, got {g.n}")
    if g.n == 0:
        return 0
    k, _ = _chi_p_search(g, p)
    return k


def _chi_p_search(g, p):
    td_of = bitmask_td_solver(g)
    class_masks = [0] * g.n
    colors = [0] * g.n

    def valid(k):
        for size in range(2, min(p, k) + 1):
            for subset in combinations(range(k), size):
                mask = 0
                for c in subset:
                    mask |= class_masks[c]
                if td_of(mask) > size:
                    return False
        return True

    def proper_ok(v, c):
        return not (class_masks[c] & g.adj_mask[v])

    def rec(i, used, k):
        if i == g.n:
            return used == k and valid(k)
        if used + (g.n - i) < k:
            return False
        for c in range(min(used + 1, k)):
            if not proper_ok(i, c):
                continue
            colors[i] = c
            class_masks[c] |= 1 << i
            if rec(i + 1, max(used, c + 1), k):
                return True
            class_masks[c] &= ~(1 << i)
        return False

    for k in range(1, g.n + 1):
        for c in range(g.n):
            class_masks[c] = 0
        if rec(0, 0, k):
            return k, Coloring(list(colors), palette=k)
    raise AssertionError("coloring with n colors always exists")


# ---------------------------------------------------------------------------
# cluster covers

def cluster_cover(g, t, component_limit=None):
    """Tree-depth cluster cover from a verified decomposition: clusters are
    the components of every <= t-color-subset-induced subgraph, with
    clusters strictly inside another dropped."""
    decomposition = ltd_coloring(g, t, component_limit=component_limit)
    coloring = decomposition.coloring
    classes = {}
    for v, c in enumerate(coloring.assignment):
        classes.setdefault(c, []).append(v)
    colors_present = sorted(classes)
    found = set()
    for size in range(1, t + 1):
        for subset in combinations(colors_present, size):
            vertices = []
            for c in subset:
                vertices.extend(classes[c])
            vertices.sort()
            for comp in _subset_components(g, vertices):
                found.add(frozenset(comp))
    maximal = [c for c in found
               if not any(c < other for other in found)]
    maximal.sort(key=lambda c: tuple(sorted(c)))
    palette = len(colors_present)
    bound = _binomial(palette, min(t, palette))
    return ClusterCover(maximal, t, palette=palette, membership_bound=bound)


def _binomial(n, k):
    if k < 0 or k > n:
        return 0
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def verify_cluster_cover(g, cover, t_limit=4, order_limit=200):
    """Check the three cover conditions; returns (True, None) or
    (False, witness) with the first violation found.

    Violations: ("cluster-td", cluster) for a disconnected or too-deep
    cluster, ("uncovered", subgraph) for a connected <= t subgraph inside
    no cluster, ("membership", vertex) for a vertex in more clusters than
    the recorded bound.
    """
    t = cover.t
    if t > t_limit or g.n > order_limit:
        raise SizeLimitError("verify_cluster_cover enumeration budget exceeded")
    cluster_sets = [frozenset(c) for c in cover.clusters]
    for cluster in cover.clusters:
        comps = _subset_components(g, list(cluster))
        if len(comps) != 1:
            return False, ("cluster-td", list(cluster))
        sub, _ = _induced(g, list(cluster))
        if treedepth_at_most(sub, t) is None:
            return False, ("cluster-td", list(cluster))
    by_vertex = {}
    for i, cs in enumerate(cluster_sets):
        for v in cs:
            by_vertex.setdefault(v, []).append(i)
    for subset in _connected_subsets_upto(g, t):
        candidates = by_vertex.get(min(subset), [])
        if not any(subset <= cluster_sets[i] for i in candidates):
            return False, ("uncovered", sorted(subset))
    if cover.membership_bound is not None:
        for v in range(g.n):
            if len(by_vertex.get(v, [])) > cover.membership_bound:
                return False, ("membership", v)
    return True, None


def _connected_subsets_upto(g, t):
    """All connected vertex sets of size <= t, each yielded exactly once
    (ESU-style growth anchored at the smallest member: candidates must
    exceed the anchor, and vertices already adjacent to the subset are
    never re-proposed)."""
    for v in range(g.n):
        ext = [w for w in g.adj[v] if w > v]
        closed = {v} | set(g.adj[v])
        yield from _esu_grow(g, frozenset((v,)), ext, closed, v, t)


def _esu_grow(g, subset, ext, closed, anchor, t):
    yield subset
    if len(subset) == t:
        return
    ext = list(ext)
    while ext:
        w = ext.pop(0)
        new = [u for u in g.adj[w] if u > anchor and u not in closed]
        yield from _esu_grow(g, subset | {w}, ext + new,
                             closed | {w} | set(new), anchor, t)
