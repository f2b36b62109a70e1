"""Homomorphism existence, cores, t-approximations, and finite restricted
duality checks.

Search budgets never masquerade as mathematical negatives: a query that
runs out of budget raises BudgetExceededError ("indeterminate"), which the
report-producing checkers record per instance.
"""

from itertools import combinations

from .errors import BudgetExceededError, SizeLimitError, ValidationError
from .graphs import induced_subgraph

ANSWER_YES = "yes"
ANSWER_NO = "no"
ANSWER_INDETERMINATE = "indeterminate"


def is_homomorphism(g, h, mapping):
    """Check that mapping preserves adjacency edge by edge."""
    if len(mapping) != g.n:
        return False
    for u, v in g.edges:
        a, b = mapping[u], mapping[v]
        if a == b or not h.has_edge(a, b):
            return False
    return True


def hom_exists(g, h, source_limit=200, target_limit=32, budget=2_000_000):
    """A homomorphism g -> h as a vertex map, or None when none exists.

    Backtracking over g's vertices in descending-degree order (connected
    pieces stay contiguous), with arc-consistency pruning over candidate
    bitmasks. Raises BudgetExceededError if the node budget runs out.
    """
    if h.n > target_limit or g.n > source_limit:
        raise SizeLimitError(
            f"hom_exists limited to |g| <= {source_limit}, |h| <= {target_limit}")
    if g.n == 0:
        return {}
    if h.n == 0:
        return None
    if g.m > 0 and h.m == 0:
        return None
    full = (1 << h.n) - 1
    # candidate targets must have enough degree
    domains = []
    for v in range(g.n):
        dom = 0
        for t in range(h.n):
            if h.degree(t) >= 1 or g.degree(v) == 0:
                dom |= 1 << t
        domains.append(dom if g.degree(v) else full)

    order = _search_order(g)
    nodes = [0]

    def propagate(doms):
        changed = True
        while changed:
            changed = False
            for u, v in g.edges:
                for a, b in ((u, v), (v, u)):
                    allowed = 0
                    db = doms[b]
                    da = doms[a]
                    t = da
                    while t:
                        bit = t & -t
                        t ^= bit
                        if h.adj_mask[bit.bit_length() - 1] & db:
                            allowed |= bit
                    if allowed != da:
                        doms[a] = allowed
                        changed = True
                        if not allowed:
                            return False
        return True

    assignment = [-1] * g.n

    def assign(i, doms):
        nodes[0] += 1
        if nodes[0] > budget:
            raise BudgetExceededError("homomorphism search budget exceeded")
        if i == g.n:
            return True
        v = order[i]
        dom = doms[v]
        while dom:
            bit = dom & -dom
            dom ^= bit
            t = bit.bit_length() - 1
            ok = True
            for w in g.adj[v]:
                if assignment[w] >= 0 and not h.has_edge(t, assignment[w]):
                    ok = False
                    break
            if not ok:
                continue
            assignment[v] = t
            new_doms = list(doms)
            new_doms[v] = bit
            feasible = True
            for w in g.adj[v]:
                if assignment[w] < 0:
                    new_doms[w] &= h.adj_mask[t]
                    if not new_doms[w]:
                        feasible = False
                        break
            if feasible and assign(i + 1, new_doms):
                return True
            assignment[v] = -1
        return False

    doms = list(domains)
    if not propagate(doms):
        return None
    if assign(0, doms):
        result = dict(enumerate(assignment))
        if not is_homomorphism(g, h, result):
            raise AssertionError("search returned an invalid map")
        return result
    return None


def _search_order(g):
    """Vertices by descending degree, each component kept contiguous so a
    newly placed vertex always has a placed neighbor to prune against."""
    order = []
    seen = set()
    by_degree = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    for start in by_degree:
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        while True:
            fringe = {w for u in comp for w in g.adj[u] if w not in seen}
            if not fringe:
                break
            w = min(fringe, key=lambda v: (-g.degree(v), v))
            seen.add(w)
            comp.append(w)
        order.extend(comp)
    return order


def core(g, exact_limit=12):
    """The core: a minimal induced subgraph admitting a retraction from g.

    Greedy descent removing one vertex at a time (smallest removable id
    first); sound because a homomorphism onto a small retract composes with
    the inclusion into any single-vertex-removed superset.
    """
    if g.n > exact_limit:
        raise SizeLimitError(f"core limited to {exact_limit} vertices, got {g.n}")
    current = g
    while current.n > 1:
        shrunk = None
        for v in range(current.n):
            candidate, _ = induced_subgraph(
                current, [u for u in range(current.n) if u != v])
            if hom_exists(current, candidate) is not None:
                shrunk = candidate
                break
        if shrunk is None:
            return current
        current = shrunk
    return current


def t_approximation_check(g, h, t, budgets=None):
    """True iff g -> h and every subgraph of h of order <= t maps to g.

    Checking induced subgraphs suffices: a subgraph with fewer edges is
    easier to map, so the induced one is the binding constraint.
    """
    if t < 0:
        raise ValidationError("t must be >= 0")
    kw = budgets or {}
    if hom_exists(g, h, **kw) is None:
        return False
    for size in range(1, min(t, h.n) + 1):
        for subset in combinations(range(h.n), size):
            sub, _ = induced_subgraph(h, subset)
            if hom_exists(sub, g, **kw) is None:
                return False
    return True


def dual_check(f, d, family, budgets=None):
    """Check the restricted-duality biconditional f -/-> G <=> G -> d on a
    family, after verifying f -/-> d. Returns a report; indeterminate
    queries are recorded, never coerced to yes/no."""
    kw = budgets or {}
    report = {"pattern_maps_to_dual": None, "instances": []}
    try:
        report["pattern_maps_to_dual"] = hom_exists(f, d, **kw) is not None
    except BudgetExceededError:
        report["pattern_maps_to_dual"] = None
    for idx, g in enumerate(family):
        left = _answer(f, g, kw)      # f -> G ?
        right = _answer(g, d, kw)     # G -> D ?
        if ANSWER_INDETERMINATE in (left, right):
            status = ANSWER_INDETERMINATE
        else:
            # duality: f -/-> G  <=>  G -> D
            holds = (left == ANSWER_NO) == (right == ANSWER_YES)
            status = "consistent" if holds else "violation"
        report["instances"].append({
            "index": idx,
            "pattern_to_instance": left,
            "instance_to_dual": right,
            "status": status,
        })
    report["violations"] = [r["index"] for r in report["instances"]
                            if r["status"] == "violation"]
    report["indeterminate"] = [r["index"] for r in report["instances"]
                               if r["status"] == ANSWER_INDETERMINATE]
    return report


def _answer(a, b, kw):
    try:
        return ANSWER_YES if hom_exists(a, b, **kw) is not None else ANSWER_NO
    except BudgetExceededError:
        return ANSWER_INDETERMINATE
