"""Randomized spanner construction from a fractional LP solution.

Three steps: start from the empty edge set, keep each edge independently
with probability min(alpha * x_e * sqrt(n), 1), then sample tree roots
each with probability min(alpha / sqrt(n), 1) and add a full outward and
inward shortest-path tree per root.  The trees alone repair every demand
whose covered vertex set is large, the rounded edges handle the rest with
high probability, and the expected size stays within alpha * sqrt(n) times
the LP value plus the tree budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotUnitLength
from .graph import INWARD, OUTWARD, shortest_path_tree
from .verify import is_k_spanner

EDGE_STREAM = 0
ROOT_STREAM = 1

MODES = ("unit", "general")


def _stream(seed, label):
    """Independent per-phase generator derived from the master seed by a labeled split."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(label,))))


def select_alpha(mode, n, k=None):
    """Scaling constant of the sampling probabilities, natural logarithm.

    unit-length instances afford 10 * sqrt(k) * ln n; the general setting
    uses 5 * ln n.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if mode == "unit":
        if k is None or k < 1:
            raise ValueError("unit mode needs the stretch factor k >= 1")
        return 10.0 * math.sqrt(k) * math.log(n)
    if mode == "general":
        return 5.0 * math.log(n)
    raise ValueError(f"unknown mode {mode!r}")


@dataclass(frozen=True)
class RoundingParams:
    alpha: float
    mode: str
    seed: int
    k: float
    n: int

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.k < 1:
            raise ValueError(f"stretch factor must be >= 1, got {self.k}")


def edge_inclusion_probs(x, alpha, n):
    """Exact per-edge keep probabilities min(alpha * x_e * sqrt(n), 1)."""
    root_n = math.sqrt(n)
    return [min(alpha * xe * root_n, 1.0) for xe in x]


def round_edges(g, x, alpha, rng):
    """Independent Bernoulli keep per edge, one uniform draw in index order."""
    probs = edge_inclusion_probs(x, alpha, g.n)
    draws = rng.random(g.m)
    return frozenset(e for e in range(g.m) if draws[e] < probs[e])


def sample_tree_roots(n, alpha, rng):
    """Independent Bernoulli per vertex with probability min(alpha / sqrt(n), 1)."""
    p = min(alpha / math.sqrt(n), 1.0)
    draws = rng.random(n)
    return frozenset(v for v in range(n) if draws[v] < p)


@dataclass(frozen=True)
class SpannerResult:
    rounded_edges: frozenset
    tree_roots: frozenset
    tree_edges: frozenset
    e_h: frozenset
    feasible: bool
    lp_value: float
    opt_if_known: int | None
    seed: int
    alpha: float


def build_spanner(
    g,
    lp_sol,
    params,
    force_rounded_edges=None,
    force_tree_roots=None,
    opt_if_known=None,
    g_dist=None,
):
    """One full randomized construction plus an exact feasibility check.

    The edge and root phases consume separate labeled streams of the master
    seed, so forcing one phase through the override hooks leaves the other
    phase's draws untouched.  Every random choice is per-edge or per-vertex
    independent and shortest-path trees never leave a weak component, so a
    single pass over the whole graph equals running each component alone.
    """
    if lp_sol.status != "optimal":
        raise ValueError(f"need an optimal LP solution, got status {lp_sol.status!r}")
    if params.mode == "unit" and not g.unit_lengths():
        raise NotUnitLength("mode 'unit' requires every edge length to be 1")
    if params.n != g.n:
        raise ValueError(f"params.n = {params.n} does not match the graph ({g.n})")

    if force_rounded_edges is not None:
        rounded = frozenset(force_rounded_edges)
    else:
        rounded = round_edges(g, lp_sol.x, params.alpha, _stream(params.seed, EDGE_STREAM))
    if force_tree_roots is not None:
        roots = frozenset(force_tree_roots)
    else:
        roots = sample_tree_roots(g.n, params.alpha, _stream(params.seed, ROOT_STREAM))

    tree_edges = set()
    for r in sorted(roots):
        tree_edges |= shortest_path_tree(g, r, OUTWARD).tree_edges
        tree_edges |= shortest_path_tree(g, r, INWARD).tree_edges
    e_h = frozenset(rounded | tree_edges)

    check = is_k_spanner(g, e_h, params.k, g_dist=g_dist)
    return SpannerResult(
        rounded_edges=rounded,
        tree_roots=roots,
        tree_edges=frozenset(tree_edges),
        e_h=e_h,
        feasible=check.feasible,
        lp_value=lp_sol.objective_value,
        opt_if_known=opt_if_known,
        seed=params.seed,
        alpha=params.alpha,
    )


@dataclass(frozen=True)
class CostReport:
    rounded_count: int
    tree_count: int
    eh_count: int
    step2_expected: float | None  # exact Bernoulli mean, needs the x vector
    step2_bound: float  # alpha * sqrt(n) * lp_value
    step3_edge_bound: float  # 2 * alpha * sqrt(n) * (n - 1)


def expected_cost_report(result, lp_value, n, alpha, x=None):
    """Observed sizes next to the theoretical step expectations."""
    root_n = math.sqrt(n)
    exact = None
    if x is not None:
        exact = float(sum(edge_inclusion_probs(x, alpha, n)))
    return CostReport(
        rounded_count=len(result.rounded_edges),
        tree_count=len(result.tree_edges),
        eh_count=len(result.e_h),
        step2_expected=exact,
        step2_bound=alpha * root_n * lp_value,
        step3_edge_bound=2.0 * alpha * root_n * (n - 1),
    )
