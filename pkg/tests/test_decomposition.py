import pytest

from sparsekit import (
    Coloring,
    Graph,
    chi_p_bruteforce,
    cluster_cover,
    degeneracy_orientation,
    ltd_coloring,
    named,
    random_tree,
    tf_augment,
    treedepth_exact,
    verify_cluster_cover,
    verify_ltd,
)
from sparsekit.decomposition import ClusterCover, LtdVerificationError
from sparsekit.errors import SizeLimitError
from sparsekit.graphs import ARC_FRATERNAL, ARC_TRANSITIVE, Orientation


# ---------------------------------------------------------------------------
# tf_augment

def _orientation(n, edges, arcs):
    g = Graph(n, edges)
    kind = {a: "original" for a in arcs}
    rnd = {a: 0 for a in arcs}
    return Orientation(g, arcs, kind, rnd)


def test_fraternal_star():
    # leaves -> center: every leaf pair shares the head
    o = _orientation(4, [(0, 1), (0, 2), (0, 3)], [(1, 0), (2, 0), (3, 0)])
    out = tf_augment(o, 1)
    fraternal = [a for a in out.arcs if out.arc_kind[a] == ARC_FRATERNAL]
    assert len(fraternal) == 3
    assert {frozenset(a) for a in fraternal} == {
        frozenset((1, 2)), frozenset((1, 3)), frozenset((2, 3))}
    assert all(out.arc_round[a] == 1 for a in fraternal)


def test_transitive_path():
    o = _orientation(3, [(0, 1), (1, 2)], [(0, 1), (1, 2)])
    out = tf_augment(o, 1)
    added = [a for a in out.arcs if out.arc_kind[a] == ARC_TRANSITIVE]
    assert added == [(0, 2)]


def test_fixpoint_is_identity():
    o = _orientation(3, [(0, 1), (0, 2), (1, 2)], [(0, 1), (0, 2), (1, 2)])
    once = tf_augment(o, 1)
    assert set(once.arcs) == set(o.arcs)
    more = tf_augment(once, 3)
    assert set(more.arcs) == set(once.arcs)


def test_augment_monotone_and_rounds(small_graph_sample):
    for g in small_graph_sample[:25]:
        o = degeneracy_orientation(g)
        prev = set(o.arcs)
        cur = o
        for r in (1, 2):
            cur = tf_augment(cur, 1)
            assert prev <= set(cur.arcs)
            prev = set(cur.arcs)
            for a in cur.arcs:
                assert cur.arc_round[a] <= r


def test_round_cap():
    o = degeneracy_orientation(named("C_6"))
    with pytest.raises(SizeLimitError):
        tf_augment(o, 99)


# ---------------------------------------------------------------------------
# ltd_coloring / verify_ltd

def test_p1_is_proper_coloring(small_graph_sample):
    for g in small_graph_sample[:30]:
        d = ltd_coloring(g, 1)
        assert d.verified
        colors = d.coloring.assignment
        assert all(colors[u] != colors[v] for u, v in g.edges)


def test_tree_p2_three_colors():
    # star chromatic number of trees is at most 3
    for seed in (1, 7, 23):
        tree = random_tree(40, seed)
        d = ltd_coloring(tree, 2)
        assert d.verified
        assert d.coloring.palette <= 3


def test_c4_p3_needs_three_colors():
    d = ltd_coloring(named("C_4"), 3)
    assert d.verified
    assert d.coloring.palette >= 3
    assert chi_p_bruteforce(named("C_4"), 3) == 3


def test_verify_ltd_k3_rainbow():
    g = named("K_3")
    out = verify_ltd(g, 2, Coloring([0, 1, 2]))
    assert out.ok


def test_verify_ltd_p4_alternating_fails():
    g = named("P_4")
    out = verify_ltd(g, 3, Coloring([1, 2, 1, 2], palette=3))
    assert not out.ok
    assert out.counterexample == (1, 2)


def test_verify_ltd_proper_is_p1_valid(small_graph_sample):
    for g in small_graph_sample[:20]:
        d = ltd_coloring(g, 1)
        assert verify_ltd(g, 1, d.coloring).ok


def test_ltd_soundness_reverified_exactly(small_graph_sample):
    # every verified decomposition really satisfies the subset contract,
    # re-checked through the exact bitmask solver
    from itertools import combinations

    from sparsekit.treedepth import bitmask_td_solver

    for g in small_graph_sample[:30]:
        if g.n > 8:
            continue
        for p in (1, 2, 3):
            d = ltd_coloring(g, p)
            assert d.verified
            td_of = bitmask_td_solver(g)
            classes = {}
            for v, c in enumerate(d.coloring.assignment):
                classes.setdefault(c, 0)
                classes[c] |= 1 << v
            for size in range(1, p + 1):
                for subset in combinations(sorted(classes), size):
                    mask = 0
                    for c in subset:
                        mask |= classes[c]
                    assert td_of(mask) <= size


def test_chi_1_is_chromatic_number(small_graph_sample):
    from sparsekit import chromatic_number

    for g in small_graph_sample[:20]:
        if g.n > 8 or g.n == 0:
            continue
        assert chi_p_bruteforce(g, 1) == chromatic_number(g, exact_limit=8)


def test_chi_p_values():
    assert chi_p_bruteforce(named("K_3"), 1) == 3
    assert chi_p_bruteforce(named("P_4"), 2) == 3  # star chromatic number
    c4 = named("C_4")
    td, _ = treedepth_exact(c4)
    assert max(chi_p_bruteforce(c4, p) for p in range(1, 5)) == 3 == td


def test_chi_p_chain_and_td(small_graph_sample):
    for g in small_graph_sample[:20]:
        if not (1 <= g.n <= 6):
            continue
        values = [chi_p_bruteforce(g, p) for p in range(1, g.n + 1)]
        assert values == sorted(values)
        td, _ = treedepth_exact(g)
        assert values[-1] == td == max(values)


def test_ltd_failure_reports_counterexample():
    # with zero rounds P_4 only gets its 2-coloring, whose union is all of P_4
    g = named("P_4")
    with pytest.raises(LtdVerificationError) as exc:
        ltd_coloring(g, 2, max_rounds=0, exact_fallback_limit=0)
    assert len(exc.value.counterexample) == 2


# ---------------------------------------------------------------------------
# cluster covers

def test_cluster_cover_k2():
    cov = cluster_cover(named("K_2"), 2)
    assert cov.clusters == ((0, 1),)


def test_cluster_cover_p3_edges_covered():
    g = named("P_3")
    cov = cluster_cover(g, 2)
    for edge in g.edges:
        assert any(set(edge) <= set(c) for c in cov.clusters)


def test_cluster_cover_random_tree_verifies():
    g = random_tree(30, 5)
    cov = cluster_cover(g, 3)
    ok, witness = verify_cluster_cover(g, cov)
    assert ok, witness


def test_cluster_cover_membership_bound():
    for seed in (2, 9):
        g = random_tree(25, seed)
        for t in (2, 3):
            cov = cluster_cover(g, t)
            assert cov.max_membership(g.n) <= cov.membership_bound


def test_verify_cluster_cover_missing_cluster():
    g = named("P_4")
    cov = cluster_cover(g, 2)
    broken = ClusterCover([c for c in cov.clusters if set(c) != {1, 2}],
                          2, palette=cov.palette,
                          membership_bound=cov.membership_bound)
    ok, witness = verify_cluster_cover(g, broken)
    assert not ok and witness[0] == "uncovered"


def test_verify_cluster_cover_deep_cluster():
    g = named("P_7")  # td(P_7) = 3 > 2
    cov = ClusterCover([range(7)], 2, palette=3, membership_bound=3)
    ok, witness = verify_cluster_cover(g, cov)
    assert not ok and witness[0] == "cluster-td"
