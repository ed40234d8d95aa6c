"""Independent reference implementations used to cross-check the package.

Everything here is deliberately naive: dynamic programs over bounded walks,
unpruned recursive enumeration, and exhaustive subset scans.  None of it
shares code with the library under test.
"""

import itertools
import math
import random

INF = math.inf


def dp_distances(n, edges, source, allowed=None):
    """Min length over walks of at most n-1 edges, Bellman-Ford style."""
    use = range(len(edges)) if allowed is None else sorted(allowed)
    dist = [INF] * n
    dist[source] = 0.0
    for _ in range(n - 1):
        nxt = list(dist)
        for e in use:
            tail, head, length = edges[e]
            if dist[tail] + length < nxt[head]:
                nxt[head] = dist[tail] + length
        dist = nxt
    return dist


def all_simple_paths_within(n, edges, src, dst, budget, max_hops=None):
    """Every simple src->dst path with length <= budget, no pruning at all."""
    if max_hops is None:
        max_hops = n - 1
    out = [[] for _ in range(n)]
    for tail, head, length in edges:
        out[tail].append((head, length))
    found = []

    def walk(path, length):
        here = path[-1]
        if here == dst:
            if length <= budget:
                found.append(tuple(path))
            return
        if len(path) - 1 >= max_hops:
            return
        for head, elen in out[here]:
            if head not in path:
                walk(path + [head], length + elen)

    walk([src], 0.0)
    return sorted(found)


def naive_is_spanner(n, edges, h_edges, k):
    for d, (tail, head, _) in enumerate(edges):
        dg = dp_distances(n, edges, tail)[head]
        dh = dp_distances(n, edges, tail, allowed=h_edges)[head]
        if not dh <= k * dg:
            return False
    return True


def exhaustive_opt(n, edges, k):
    """Minimum spanner size by scanning every edge subset. Keep m small."""
    m = len(edges)
    best = None
    best_set = None
    for mask in range(1 << m):
        size = bin(mask).count("1")
        if best is not None and size >= best:
            continue
        subset = frozenset(e for e in range(m) if (mask >> e) & 1)
        if naive_is_spanner(n, edges, subset, k):
            best = size
            best_set = subset
    return best, best_set


def parent_vector_arborescences(n, edges, root):
    """All spanning arborescences by filtering every parent-edge combination."""
    others = [v for v in range(n) if v != root]
    in_lists = {v: [e for e, (_, head, _) in enumerate(edges) if head == v] for v in others}
    if any(not in_lists[v] for v in others):
        return []
    result = []
    for combo in itertools.product(*(in_lists[v] for v in others)):
        parent = dict(zip(others, combo))
        ok = True
        for v in others:
            seen = set()
            node = v
            while node != root:
                if node in seen:
                    ok = False
                    break
                seen.add(node)
                node = edges[parent[node]][0]
            if not ok:
                break
        if ok:
            result.append(dict(parent))
    return result


def random_edge_list(rng, n, p, max_len=1):
    """Plain random digraph; integer lengths so float sums stay exact."""
    edges = []
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < p:
                length = 1.0 if max_len <= 1 else float(rng.randint(1, max_len))
                edges.append((i, j, length))
    return edges


def make_rng(seed):
    return random.Random(seed)
