"""Socially optimal purchase sets: exact and greedy minimum distance-k
dominating set, plus export of the covering integer program in LP format.

The exact solver is a branch-and-bound over include/exclude decisions with
bitset coverage masks. The upper bound is seeded by the greedy heuristic;
the lower bound greedily packs pairwise-disjoint closed k-hop balls (any
dominator of a packed node lies inside its ball, so disjoint balls need
distinct dominators).
"""

from __future__ import annotations

from dataclasses import dataclass

from .netgraph import Graph


@dataclass
class OptResult:
    owners: set[int]
    cost: float
    proven_optimal: bool
    nodes_explored: int


class _BudgetExceeded(Exception):
    pass


def _cover_masks(g: Graph, k: int) -> list[int]:
    masks = []
    for nb in g.closed_neighborhoods(k):
        m = 0
        for j in nb:
            m |= 1 << j
        masks.append(m)
    return masks


def min_dominating_greedy(g: Graph, k: int) -> set[int]:
    """Repeatedly add the node covering the most uncovered nodes (ties go to
    the lowest id) until every node is within k hops of a chosen one."""
    n = g.n
    cov = _cover_masks(g, k)
    full = (1 << n) - 1
    uncovered = full
    chosen: set[int] = set()
    while uncovered:
        best_v, best_gain = -1, -1
        for v in range(n):
            gain = (cov[v] & uncovered).bit_count()
            if gain > best_gain:
                best_v, best_gain = v, gain
        chosen.add(best_v)
        uncovered &= ~cov[best_v]
    return chosen


def min_dominating_exact(g: Graph, k: int, p: float = 1.0,
                         node_budget: int = 50_000_000) -> OptResult:
    """Exact minimum distance-k dominating set by branch-and-bound.

    Returns the incumbent flagged proven_optimal=False if the search
    exceeds node_budget explored nodes.
    """
    n = g.n
    cov = _cover_masks(g, k)
    cov2k = _cover_masks(g, 2 * k)
    full = (1 << n) - 1

    incumbent = min_dominating_greedy(g, k)
    best_size = len(incumbent)
    explored = 0

    def lower_bound(uncovered: int) -> int:
        # Greedy packing of uncovered nodes pairwise further than 2k apart.
        count = 0
        blocked = 0
        m = uncovered
        while m:
            v = (m & -m).bit_length() - 1
            count += 1
            blocked |= cov2k[v]
            m = uncovered & ~blocked
        return count

    def branch(chosen: list[int], uncovered: int, forbidden: int) -> None:
        nonlocal best_size, incumbent, explored
        explored += 1
        if explored > node_budget:
            raise _BudgetExceeded
        if uncovered == 0:
            if len(chosen) < best_size:
                best_size = len(chosen)
                incumbent = set(chosen)
            return
        if len(chosen) + lower_bound(uncovered) >= best_size:
            return
        # Branch on the uncovered node with the most available coverers.
        pick, pick_deg = -1, -1
        m = uncovered
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            deg = (cov[v] & ~forbidden).bit_count()
            if deg > pick_deg:
                pick, pick_deg = v, deg
        candidates = []
        m = cov[pick] & ~forbidden
        while m:
            c = (m & -m).bit_length() - 1
            m &= m - 1
            candidates.append(c)
        if not candidates:
            return
        candidates.sort(key=lambda c: (-(cov[c] & uncovered).bit_count(), c))
        local_forbidden = forbidden
        for c in candidates:
            chosen.append(c)
            branch(chosen, uncovered & ~cov[c], local_forbidden)
            chosen.pop()
            local_forbidden |= 1 << c

    proven = True
    try:
        branch([], full, 0)
    except _BudgetExceeded:
        proven = False
    return OptResult(owners=incumbent, cost=p * len(incumbent),
                     proven_optimal=proven, nodes_explored=explored)


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def export_ilp(g: Graph, k: int, p: float = 1.0) -> str:
    """CPLEX-LP text for the covering integer program: minimize p * sum(x_i)
    subject to one covering constraint per node, all variables binary."""
    nbhd = g.closed_neighborhoods(k)
    lines = ["Minimize"]
    coef = "" if p == 1 else _fmt(p) + " "
    obj_terms = " + ".join(f"{coef}x{i}" for i in range(g.n))
    lines.append(f" obj: {obj_terms}")
    lines.append("Subject To")
    for i in range(g.n):
        terms = " + ".join(f"x{j}" for j in nbhd[i])
        lines.append(f" c{i}: {terms} >= 1")
    lines.append("Binary")
    lines.append(" " + " ".join(f"x{i}" for i in range(g.n)))
    lines.append("End")
    return "\n".join(lines) + "\n"
