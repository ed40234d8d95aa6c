import pytest

from dirspan import (
    TooLarge,
    all_pairs_spanner_check,
    build_graph,
    build_lp,
    brute_force_opt,
    demand_distance_rows,
    edge_check_equals_allpairs_check,
    is_k_spanner,
    solve_lp,
)

from oracles import exhaustive_opt, make_rng, naive_is_spanner, random_edge_list

TRIANGLE = [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)]


def cycle(n):
    return build_graph(n, [(i, (i + 1) % n, 1.0) for i in range(n)])


def test_detour_pair_is_spanner():
    g = build_graph(3, TRIANGLE)
    check = is_k_spanner(g, {0, 2}, 2)
    assert check.feasible
    assert check.violation is None


def test_dropping_both_detour_legs_fails():
    g = build_graph(3, TRIANGLE)
    check = is_k_spanner(g, {1}, 3)
    assert not check.feasible
    d, dist_g, dist_h = check.violation
    assert d in (0, 2)
    assert dist_g == 1.0
    assert dist_h == float("inf")


def test_stretch_threshold_is_sharp():
    # direct edge length 1, detour length 3: feasible iff k >= 3
    g = build_graph(3, [(0, 2, 1.0), (0, 1, 2.0), (1, 2, 1.0)])
    assert not is_k_spanner(g, {1, 2}, 2).feasible
    assert is_k_spanner(g, {1, 2}, 3).feasible


def test_violation_reports_exact_distances():
    g = build_graph(3, [(0, 2, 1.0), (0, 1, 2.0), (1, 2, 1.0)])
    check = is_k_spanner(g, {1, 2}, 2)
    assert check.violation == (0, 1.0, 3.0)


def test_full_edge_set_always_feasible():
    rng = make_rng(3)
    for _ in range(10):
        n = rng.randint(2, 8)
        g = build_graph(n, random_edge_list(rng, n, 0.5, max_len=3))
        assert is_k_spanner(g, set(range(g.m)), 1).feasible


def test_precomputed_rows_give_same_answer():
    g = build_graph(3, TRIANGLE)
    rows = demand_distance_rows(g)
    assert is_k_spanner(g, {0, 2}, 2, g_dist=rows).feasible
    assert not is_k_spanner(g, {0}, 2, g_dist=rows).feasible


def test_matches_naive_spanner_check():
    rng = make_rng(19)
    for _ in range(40):
        n = rng.randint(2, 7)
        edges = random_edge_list(rng, n, 0.5, max_len=3)
        g = build_graph(n, edges)
        if g.m == 0:
            continue
        h = frozenset(e for e in range(g.m) if rng.random() < 0.6)
        k = rng.choice([1, 2, 3])
        assert is_k_spanner(g, h, k).feasible == naive_is_spanner(n, edges, h, k)


def test_edge_check_agrees_with_all_pairs():
    rng = make_rng(37)
    for _ in range(60):
        n = rng.randint(2, 8)
        edges = random_edge_list(rng, n, 0.4, max_len=2)
        g = build_graph(n, edges)
        h = frozenset(e for e in range(g.m) if rng.random() < 0.5)
        k = rng.choice([1, 2, 3, 4])
        assert edge_check_equals_allpairs_check(g, h, k)
        assert is_k_spanner(g, h, k).feasible == all_pairs_spanner_check(g, h, k)


def test_opt_triangle():
    g = build_graph(3, TRIANGLE)
    res = brute_force_opt(g, 2)
    assert res.opt == 2
    assert res.witness == frozenset({0, 2})


def test_opt_cycle_needs_everything():
    res = brute_force_opt(cycle(6), 3)
    assert res.opt == 6
    assert res.witness == frozenset(range(6))


def test_opt_trivial_graphs():
    assert brute_force_opt(build_graph(4, []), 3).opt == 0
    single = brute_force_opt(build_graph(2, [(0, 1, 1.0)]), 3)
    assert single.opt == 1
    assert single.witness == frozenset({0})


def test_opt_matches_exhaustive_subset_scan():
    rng = make_rng(43)
    done = 0
    while done < 25:
        n = rng.randint(2, 6)
        edges = random_edge_list(rng, n, 0.45, max_len=2)
        if len(edges) > 11:
            continue
        g = build_graph(n, edges)
        k = rng.choice([1, 2, 3])
        res = brute_force_opt(g, k)
        best, _ = exhaustive_opt(n, edges, k)
        assert res.opt == best
        assert naive_is_spanner(n, edges, res.witness, k)
        assert len(res.witness) == res.opt
        done += 1


def test_witness_is_minimum_not_just_minimal():
    rng = make_rng(47)
    done = 0
    while done < 10:
        n = rng.randint(3, 6)
        edges = random_edge_list(rng, n, 0.5)
        if not 2 <= len(edges) <= 11:
            continue
        g = build_graph(n, edges)
        res = brute_force_opt(g, 2)
        # any proper subset of a minimum witness must fail
        for drop in res.witness:
            smaller = set(res.witness) - {drop}
            assert not is_k_spanner(g, smaller, 2).feasible
        done += 1


def test_lp_guided_ordering_same_answer():
    rng = make_rng(53)
    for _ in range(8):
        n = rng.randint(3, 6)
        g = build_graph(n, random_edge_list(rng, n, 0.5))
        if g.m == 0:
            continue
        sol = solve_lp(build_lp(g, 3))
        plain = brute_force_opt(g, 3)
        guided = brute_force_opt(g, 3, x=sol.x)
        assert plain.opt == guided.opt


def test_too_large_guard():
    g = build_graph(3, TRIANGLE)
    with pytest.raises(TooLarge):
        brute_force_opt(g, 2, max_free_edges=0)


def test_opt_sandwiched_by_lp():
    rng = make_rng(59)
    done = 0
    while done < 15:
        n = rng.randint(3, 7)
        g = build_graph(n, random_edge_list(rng, n, 0.4, max_len=2))
        if g.m == 0:
            continue
        k = rng.choice([2, 3])
        sol = solve_lp(build_lp(g, k))
        res = brute_force_opt(g, k, x=sol.x)
        assert sol.objective_value <= res.opt + 1e-7
        assert res.opt <= g.m
        done += 1
