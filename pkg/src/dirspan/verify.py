"""Exact spanner checking and brute-force optimum search.

A subgraph H of G is a k-spanner when dist_H(u, v) <= k * dist_G(u, v) for
every pair; checking only the demand pairs (the edges of G) is equivalent,
because shortest paths of G decompose into edges.  The optimum search fixes
the edges no alternative route can replace, then branches over the remaining
ones with bitmask path covers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import TooLarge
from .graph import _dijkstra
from .paths import PathCaps, enumerate_demand_paths

DEFAULT_MAX_FREE_EDGES = 22


@dataclass(frozen=True)
class SpannerCheck:
    feasible: bool
    violation: tuple | None  # (demand edge index, dist_g, dist_h)


def _subset_out_edges(g, h_edges):
    out = [[] for _ in range(g.n)]
    for e in sorted(h_edges):
        tail = g.edges[e][0]
        out[tail].append(e)
    return [tuple(lst) for lst in out]


def _source_rows(g, sources, out_edges=None):
    out = out_edges if out_edges is not None else g.out_edges
    return {s: _dijkstra(g.n, out, g.edges, s) for s in sources}


def demand_distance_rows(g):
    """dist_G rows for every demand tail, reusable across many H checks."""
    return _source_rows(g, sorted({tail for tail, _, _ in g.edges}))


def is_k_spanner(g, h_edges, k, g_dist=None):
    """Exact per-demand stretch check; returns the first violation if any.

    g_dist may carry precomputed rows of dist_G keyed by source vertex, which
    callers running many subgraphs against one base graph exploit.
    """
    tails = sorted({g.edges[e][0] for e in range(g.m)})
    if g_dist is None:
        g_dist = _source_rows(g, tails)
    h_out = _subset_out_edges(g, h_edges)
    h_dist = _source_rows(g, tails, h_out)
    for d in range(g.m):
        tail, head, _ = g.edges[d]
        allowed = k * g_dist[tail][head]
        got = h_dist[tail][head]
        if not got <= allowed:
            return SpannerCheck(feasible=False, violation=(d, g_dist[tail][head], got))
    return SpannerCheck(feasible=True, violation=None)


def all_pairs_spanner_check(g, h_edges, k):
    """The quantifier-over-all-pairs variant of the stretch condition."""
    h_out = _subset_out_edges(g, h_edges)
    for s in range(g.n):
        grow = _dijkstra(g.n, g.out_edges, g.edges, s)
        hrow = _dijkstra(g.n, h_out, g.edges, s)
        for t in range(g.n):
            if not hrow[t] <= k * grow[t]:
                return False
    return True


def edge_check_equals_allpairs_check(g, h_edges, k):
    """True when the demand-only check and the all-pairs check agree."""
    return is_k_spanner(g, h_edges, k).feasible == all_pairs_spanner_check(g, h_edges, k)


@dataclass(frozen=True)
class OptResult:
    opt: int
    witness: frozenset  # edge indices of one minimum spanner


def brute_force_opt(g, k, caps=None, max_free_edges=DEFAULT_MAX_FREE_EDGES, x=None):
    """Exact minimum k-spanner size by branch and bound over free edges.

    An edge is forced when its demand admits no other within-budget path.
    The remaining free edges are branched include-first, ordered by the LP
    values in x when provided; pruning uses monotone infeasibility of the
    still-available edge set plus a disjoint-demand lower bound.
    Raises TooLarge when more than max_free_edges edges stay free.
    """
    m = g.m
    if m == 0:
        return OptResult(opt=0, witness=frozenset())
    caps = caps or PathCaps()

    demand_masks = []
    forced = 0
    for d in range(m):
        dp = enumerate_demand_paths(g, k, d, caps)
        masks = []
        for p in dp.paths:
            pm = 0
            for i in range(len(p) - 1):
                pm |= 1 << g.edge_index[(p[i], p[i + 1])]
            masks.append(pm)
        tail, head, _ = g.edges[d]
        if dp.paths == ((tail, head),):
            forced |= 1 << d
        demand_masks.append(tuple(sorted(masks, key=lambda pm: (bin(pm).count("1"), pm))))

    free = [e for e in range(m) if not (forced >> e) & 1]
    if len(free) > max_free_edges:
        raise TooLarge(f"{len(free)} free edges exceed the cap of {max_free_edges}")
    if x is not None:
        free.sort(key=lambda e: (-x[e], e))
    else:
        counts = [sum(1 for masks in demand_masks for pm in masks if (pm >> e) & 1) for e in range(m)]
        free.sort(key=lambda e: (-counts[e], e))

    def satisfied(d, mask):
        for pm in demand_masks[d]:
            if pm & mask == pm:
                return True
        return False

    def all_satisfied(mask):
        return all(satisfied(d, mask) for d in range(m))

    full = (1 << m) - 1
    if not all_satisfied(full):
        raise AssertionError("the whole edge set must satisfy every demand")

    # greedy initial upper bound: cover unmet demands by their smallest path
    greedy = forced
    for d in range(m):
        if not satisfied(d, greedy):
            greedy |= demand_masks[d][0]
    best_mask = greedy
    best = bin(greedy).count("1")

    def lower_extra(chosen, avail):
        """Count demands whose remaining options use pairwise disjoint new edges."""
        footprints = []
        for d in range(m):
            if satisfied(d, chosen):
                continue
            fp = 0
            for pm in demand_masks[d]:
                if pm & avail == pm:
                    fp |= pm & ~chosen
            if fp == 0:
                return None  # some demand can no longer be met
            footprints.append(fp)
        footprints.sort(key=lambda fp: bin(fp).count("1"))
        used = 0
        count = 0
        for fp in footprints:
            if fp & used == 0:
                count += 1
                used |= fp
        return count

    def rec(idx, chosen, avail):
        nonlocal best, best_mask
        size = bin(chosen).count("1")
        extra = lower_extra(chosen, avail)
        if extra is None or size + extra >= best:
            return
        if extra == 0:
            best = size
            best_mask = chosen
            return
        if idx == len(free):
            return
        e = free[idx]
        bit = 1 << e
        if avail & bit:
            rec(idx + 1, chosen | bit, avail)
            rec(idx + 1, chosen, avail & ~bit)
        else:
            rec(idx + 1, chosen, avail)

    rec(0, forced, full)
    witness = frozenset(e for e in range(m) if (best_mask >> e) & 1)
    return OptResult(opt=best, witness=witness)
