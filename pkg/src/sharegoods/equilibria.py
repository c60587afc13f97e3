"""Efficiency analysis: exact equilibrium enumeration on small graphs,
owner-set feasibility for the access-cost game via max flow, worst/best
equilibrium ratios, and Monte Carlo cost statistics from the dynamics.
"""

from __future__ import annotations

import statistics
from collections import deque
from dataclasses import dataclass

from . import game
from .dynamics import best_response_dynamics, derive_seed
from .game import SGG, SGG_AC, GameConfig
from .netgraph import Graph
from .optimum import min_dominating_exact

DEFAULT_MAX_N_SGG = 20
DEFAULT_MAX_N_SGGAC = 16


@dataclass
class EfficiencyReport:
    opt_cost: float
    worst_ne_cost: float
    best_ne_cost: float
    poa: float
    pos: float
    exact: bool


@dataclass
class CostStats:
    runs: int
    mean_cost: float
    std_cost: float
    min_cost: float
    max_cost: float
    mean_passes: float


class _MaxFlow:
    """Shortest-augmenting-path max flow (Dinic); tiny instances only."""

    def __init__(self, size: int):
        self.size = size
        self.adj: list[list[int]] = [[] for _ in range(size)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, cap: int) -> None:
        self.adj[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.adj[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.size
            level[s] = 0
            dq = deque([s])
            while dq:
                v = dq.popleft()
                for e in self.adj[v]:
                    if self.cap[e] > 0 and level[self.to[e]] == -1:
                        level[self.to[e]] = level[v] + 1
                        dq.append(self.to[e])
            if level[t] == -1:
                return flow
            it = [0] * self.size

            def dfs(v: int, pushed: int) -> int:
                if v == t:
                    return pushed
                while it[v] < len(self.adj[v]):
                    e = self.adj[v][it[v]]
                    w = self.to[e]
                    if self.cap[e] > 0 and level[w] == level[v] + 1:
                        got = dfs(w, min(pushed, self.cap[e]))
                        if got > 0:
                            self.cap[e] -= got
                            self.cap[e ^ 1] += got
                            return got
                    it[v] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 60)
                if pushed == 0:
                    break
                flow += pushed


def enumerate_ne_owner_sets_sgg(g: Graph, k: int,
                                max_n: int = DEFAULT_MAX_N_SGG) -> list[frozenset]:
    """All k-independent dominating sets, by pruned backtracking over nodes.

    Prunes branches that violate independence and branches where some node
    can no longer be dominated by any undecided candidate.
    """
    n = g.n
    if n > max_n:
        raise ValueError(f"n={n} exceeds max_n={max_n}")
    nbhd = g.closed_neighborhoods(k)
    cov = []
    for nb in nbhd:
        m = 0
        for j in nb:
            m |= 1 << j
        cov.append(m)
    full = (1 << n) - 1
    # Nodes whose last potential dominator is i: must be dominated once the
    # decision on i has been made.
    due_at: list[list[int]] = [[] for _ in range(n)]
    for u in range(n):
        due_at[max(nbhd[u])].append(u)

    results: list[frozenset] = []

    def rec(i: int, chosen: tuple, dominated: int, blocked: int) -> None:
        if i == n:
            if dominated == full:
                results.append(frozenset(chosen))
            return
        if not (blocked >> i) & 1:
            # Including i dominates every node whose candidates end at i.
            rec(i + 1, chosen + (i,), dominated | cov[i], blocked | cov[i])
        if all((dominated >> u) & 1 for u in due_at[i]):
            rec(i + 1, chosen, dominated, blocked)

    rec(0, (), 0, 0)
    results.sort(key=lambda s: (len(s), sorted(s)))
    return results


def sggac_witness_profile(g: Graph, k: int, xi: int,
                          owner_set: set[int]):
    """A strategy profile witnessing that owner_set supports an SGG-AC
    equilibrium, or None if none exists.

    The owner set must be distance-k dominating and there must exist an
    assignment of non-owners to reachable owners giving every contested
    owner (one with another owner within k hops) at least xi followers.
    Decided by max flow; uncontested owners absorb leftovers.
    """
    owner_set = set(owner_set)
    if not game.is_distance_k_dominating(g, k, owner_set):
        return None
    nbhd = g.closed_neighborhoods(k)
    contested = [o for o in sorted(owner_set)
                 if any(j != o and j in owner_set for j in nbhd[o])]
    non_owners = [v for v in range(g.n) if v not in owner_set]
    assignment: dict[int, int] = {}
    if contested:
        src = 0
        non_base = 1
        own_base = 1 + len(non_owners)
        sink = own_base + len(contested)
        net = _MaxFlow(sink + 1)
        c_index = {o: idx for idx, o in enumerate(contested)}
        arc_info = []  # (edge index, non-owner, owner)
        for ni, v in enumerate(non_owners):
            net.add_edge(src, non_base + ni, 1)
            for o in nbhd[v]:
                if o != v and o in c_index:
                    arc_info.append((len(net.to), v, o))
                    net.add_edge(non_base + ni, own_base + c_index[o], 1)
        for idx in range(len(contested)):
            net.add_edge(own_base + idx, sink, xi)
        need = xi * len(contested)
        if net.max_flow(src, sink) < need:
            return None
        for e, v, o in arc_info:
            if net.cap[e] == 0:  # saturated forward arc -> assigned
                assignment[v] = o
    s = list(range(g.n))
    for v in non_owners:
        if v in assignment:
            s[v] = assignment[v]
        else:
            s[v] = min(o for o in nbhd[v] if o != v and o in owner_set)
    return s


def sggac_owner_set_feasible(g: Graph, k: int, xi: int,
                             owner_set: set[int]) -> bool:
    """True iff some SGG-AC equilibrium has exactly this owner set."""
    return sggac_witness_profile(g, k, xi, owner_set) is not None


def exact_efficiency(g: Graph, cfg: GameConfig,
                     max_n: int | None = None) -> EfficiencyReport:
    """Exact worst/best equilibrium costs against the optimum."""
    if max_n is None:
        max_n = DEFAULT_MAX_N_SGG if cfg.variant == SGG else DEFAULT_MAX_N_SGGAC
    if g.n > max_n:
        raise ValueError(f"n={g.n} exceeds max_n={max_n}")
    opt = min_dominating_exact(g, cfg.k, p=cfg.p)
    if cfg.variant == SGG:
        sizes = [len(s) for s in enumerate_ne_owner_sets_sgg(g, cfg.k, max_n)]
    else:
        sizes = []
        for mask in range(1, 1 << g.n):
            owner_set = {i for i in range(g.n) if (mask >> i) & 1}
            if sggac_owner_set_feasible(g, cfg.k, cfg.xi, owner_set):
                sizes.append(len(owner_set))
    worst = cfg.p * max(sizes)
    best = cfg.p * min(sizes)
    return EfficiencyReport(opt_cost=opt.cost, worst_ne_cost=worst,
                            best_ne_cost=best, poa=worst / opt.cost,
                            pos=best / opt.cost, exact=True)


def empirical_cost_stats(g: Graph, cfg: GameConfig, runs: int,
                         master_seed: int) -> CostStats:
    """Social-cost statistics over repeated best-response dynamics runs,
    seeds derived independently from (master_seed, run index)."""
    if runs < 1:
        raise ValueError("runs must be >= 1")
    costs = []
    passes = []
    for r in range(runs):
        result = best_response_dynamics(g, cfg, derive_seed(master_seed, r))
        costs.append(game.social_cost(g, cfg, result.profile))
        passes.append(result.passes)
    return CostStats(
        runs=runs,
        mean_cost=statistics.fmean(costs),
        std_cost=statistics.stdev(costs) if runs > 1 else 0.0,
        min_cost=min(costs),
        max_cost=max(costs),
        mean_passes=statistics.fmean(passes),
    )
