"""End-to-end runs: solve, rounding trials, oracle, and claim batches.

Per-trial seeds come from the master seed through splitmix64(seed + index),
so records are reproducible independently of how many worker threads execute
the trials.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .arborescence import ClaimContext
from .errors import BadSpec, IncompleteEnumeration
from .generate import generate_instance, parse_gen_spec
from .graph import induced_subgraph
from .io import parse_graph
from .lp import build_lp, solve_lp
from .paths import PathCaps, covered_vertices, enumerate_demand_paths
from .rounding import RoundingParams, build_spanner, select_alpha
from .verify import DEFAULT_MAX_FREE_EDGES, brute_force_opt, demand_distance_rows

MASK64 = (1 << 64) - 1


def splitmix64(value):
    """One step of the splitmix64 sequence; the trial-seed mixing function."""
    z = (value + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def trial_seed(seed, index):
    return splitmix64((seed + index) & MASK64)


@dataclass(frozen=True)
class Caps:
    max_paths: int = 100_000
    max_hops: int | None = None
    max_free_edges: int = DEFAULT_MAX_FREE_EDGES
    max_trees: int = 10**6

    def path_caps(self):
        return PathCaps(max_paths=self.max_paths, max_hops=self.max_hops)


_ENV_CAPS = {
    "DIRSPAN_MAX_PATHS": "max_paths",
    "DIRSPAN_MAX_HOPS": "max_hops",
    "DIRSPAN_MAX_FREE_EDGES": "max_free_edges",
    "DIRSPAN_MAX_TREES": "max_trees",
}


def caps_from_env(base=None):
    """Cap values may be overridden through environment variables, nothing else."""
    caps = base or Caps()
    for var, fieldname in _ENV_CAPS.items():
        raw = os.environ.get(var)
        if raw is not None:
            try:
                caps = replace(caps, **{fieldname: int(raw)})
            except ValueError:
                raise BadSpec(f"{var} must be an integer, got {raw!r}") from None
    return caps


@dataclass(frozen=True)
class RunConfig:
    k: int
    input: str  # file path, or generator spec prefixed with 'gen:'
    mode: str = "auto"  # 'unit' | 'general' | 'auto'
    alpha_override: float | None = None
    seed: int = 0
    trials: int = 1
    caps: Caps = field(default_factory=Caps)
    jobs: int = 1
    require_feasible: bool = False
    output: str | None = None


def load_input(spec_text):
    """Resolve a config input: 'gen:family:...' generates, anything else is a path."""
    if spec_text.startswith("gen:"):
        return generate_instance(parse_gen_spec(spec_text[len("gen:"):])), spec_text
    with open(spec_text, "r", encoding="utf-8") as fh:
        return parse_graph(fh.read()), spec_text


def resolve_mode(config, g):
    if config.mode == "auto":
        return "unit" if g.unit_lengths() else "general"
    return config.mode


def resolve_alpha(config, g, mode):
    if config.alpha_override is not None:
        return float(config.alpha_override)
    return select_alpha(mode, g.n, config.k)


def run_solve(config, g=None, opt=None, sol=None):
    """Full pipeline: LP once, then config.trials rounding trials.

    Returns a plain dict ready for dumps_report; the per-trial records are a
    pure function of the config, while timing lives only at the top level.
    A pre-solved LP may be passed in to round without re-solving.
    """
    t0 = time.perf_counter()
    if g is None:
        g, label = load_input(config.input)
    else:
        label = config.input
    mode = resolve_mode(config, g)
    alpha = resolve_alpha(config, g, mode)
    if sol is None:
        model = build_lp(g, config.k, caps=config.caps.path_caps())
        sol = solve_lp(model)
    t_lp = time.perf_counter()

    g_dist = demand_distance_rows(g)

    def one_trial(i):
        params = RoundingParams(alpha=alpha, mode=mode, seed=trial_seed(config.seed, i), k=config.k, n=g.n)
        result = build_spanner(g, sol, params, opt_if_known=opt, g_dist=g_dist)
        return {
            "trial": i,
            "seed": params.seed,
            "alpha": alpha,
            "rounded_edges": len(result.rounded_edges),
            "tree_roots": len(result.tree_roots),
            "tree_edges": len(result.tree_edges),
            "eh_size": len(result.e_h),
            "feasible": result.feasible,
        }

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            records = list(pool.map(one_trial, range(config.trials)))
    else:
        records = [one_trial(i) for i in range(config.trials)]
    t_end = time.perf_counter()

    feasible_count = sum(1 for r in records if r["feasible"])
    eh_sizes = [r["eh_size"] for r in records]
    report = {
        "instance": {"input": label, "n": g.n, "m": g.m, "k": config.k, "mode": mode},
        "alpha": alpha,
        "lp": {"status": sol.status, "value": sol.objective_value},
        "opt": opt,
        "trials": records,
        "aggregate": {
            "trials": config.trials,
            "feasible_fraction": (feasible_count / config.trials) if config.trials else None,
            "mean_eh": (sum(eh_sizes) / len(eh_sizes)) if eh_sizes else None,
            "max_eh": max(eh_sizes) if eh_sizes else None,
            "ratio_vs_lp": (
                sum(eh_sizes) / len(eh_sizes) / sol.objective_value
                if eh_sizes and sol.objective_value
                else None
            ),
            "ratio_vs_opt": (
                sum(eh_sizes) / len(eh_sizes) / opt if eh_sizes and opt else None
            ),
        },
        "timing": {
            "lp_seconds": t_lp - t0,
            "trials_seconds": t_end - t_lp,
            "total_seconds": t_end - t0,
        },
    }
    return report


def run_oracle(config, g=None, x=None):
    t0 = time.perf_counter()
    if g is None:
        g, label = load_input(config.input)
    else:
        label = config.input
    res = brute_force_opt(
        g,
        config.k,
        caps=config.caps.path_caps(),
        max_free_edges=config.caps.max_free_edges,
        x=x,
    )
    return {
        "instance": {"input": label, "n": g.n, "m": g.m, "k": config.k},
        "opt": res.opt,
        "witness": sorted(res.witness),
        "timing": {"total_seconds": time.perf_counter() - t0},
    }


def run_claims(config, g=None):
    """Check both claims on every demand of one instance.

    The cut-mass check runs once per demand against the solved LP; the
    equivalence check runs config.trials times per demand on random
    subgraphs and thresholds drawn from the run seed.
    """
    t0 = time.perf_counter()
    if g is None:
        g, label = load_input(config.input)
    else:
        label = config.input
    model = build_lp(g, config.k, caps=config.caps.path_caps())
    sol = solve_lp(model)

    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=config.seed, spawn_key=(2,))))
    demands_checked = 0
    trees_total = 0
    claim1_checks = 0
    claim1_disagreements = 0
    claim2_long_trees = 0
    claim2_violations = 0
    min_mass = None
    for d in range(g.m):
        dp = enumerate_demand_paths(g, config.k, d, config.caps.path_caps())
        try:
            covered = covered_vertices(dp)
        except IncompleteEnumeration:
            continue
        sub = induced_subgraph(g, covered)
        u, v, length = g.edges[d]
        su, sv = sub.vertices.index(u), sub.vertices.index(v)
        ctx = ClaimContext(sub.graph, su, sv, max_trees=config.caps.max_trees)
        demands_checked += 1
        trees_total += ctx.tree_count()

        x_sub = [sol.x[orig] for orig in sub.edge_map]
        threshold = config.k * length
        worst = ctx.min_long_cut_mass(x_sub, threshold)
        claim2_long_trees += ctx.long_tree_count(threshold)
        if worst is not None:
            if min_mass is None or worst < min_mass:
                min_mass = worst
            if worst < 1.0 - 1e-9:
                claim2_violations += 1

        for _ in range(config.trials):
            keep = rng.random(sub.graph.m) < 0.5
            h_edges = frozenset(e for e in range(sub.graph.m) if keep[e])
            quantile = float(rng.random())
            cap = threshold * 2.5 + 1.0
            k_rand = quantile * cap
            left = ctx.path_within(h_edges, k_rand)
            right = ctx.all_long_trees_cut(h_edges, k_rand)
            claim1_checks += 1
            if left != right:
                claim1_disagreements += 1

    return {
        "instance": {"input": label, "n": g.n, "m": g.m, "k": config.k},
        "lp_value": sol.objective_value,
        "demands_checked": demands_checked,
        "trees_enumerated": trees_total,
        "claim1": {"checks": claim1_checks, "disagreements": claim1_disagreements},
        "claim2": {
            "long_trees": claim2_long_trees,
            "violations": claim2_violations,
            "min_cut_mass": min_mass,
        },
        "timing": {"total_seconds": time.perf_counter() - t0},
    }
