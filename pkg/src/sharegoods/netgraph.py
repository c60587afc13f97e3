"""Undirected simple graphs: construction, edge-list ingestion, k-hop queries,
and the generator families used by the simulations."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from typing import Iterable


class ParseError(ValueError):
    """Malformed edge-list input."""


class ConfigError(ValueError):
    """Invalid generator parameters."""


# Zachary karate club, 0-based, 34 nodes / 78 edges.
KARATE_EDGES = (
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8),
    (0, 10), (0, 11), (0, 12), (0, 13), (0, 17), (0, 19), (0, 21), (0, 31),
    (1, 2), (1, 3), (1, 7), (1, 13), (1, 17), (1, 19), (1, 21), (1, 30),
    (2, 3), (2, 7), (2, 8), (2, 9), (2, 13), (2, 27), (2, 28), (2, 32),
    (3, 7), (3, 12), (3, 13), (4, 6), (4, 10), (5, 6), (5, 10), (5, 16),
    (6, 16), (8, 30), (8, 32), (8, 33), (9, 33), (13, 33), (14, 32), (14, 33),
    (15, 32), (15, 33), (18, 32), (18, 33), (19, 33), (20, 32), (20, 33),
    (22, 32), (22, 33), (23, 25), (23, 27), (23, 29), (23, 32), (23, 33),
    (24, 25), (24, 27), (24, 31), (25, 31), (26, 29), (26, 33), (27, 33),
    (28, 31), (28, 33), (29, 32), (29, 33), (30, 32), (30, 33), (31, 32),
    (31, 33), (32, 33),
)


class Graph:
    """Immutable undirected simple graph on dense node ids 0..n-1.

    Closed k-hop neighborhoods are computed by BFS and cached per k, since
    the dynamics and solvers query them heavily.
    """

    __slots__ = ("n", "_adj", "_edges", "_nbhd_cache", "original_ids")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]],
                 original_ids: tuple[int, ...] | None = None):
        if n < 0:
            raise ValueError("node count must be non-negative")
        edge_set = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            edge_set.add((min(u, v), max(u, v)))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edge_set:
            adj[u].append(v)
            adj[v].append(u)
        self.n = n
        self._adj = tuple(tuple(sorted(a)) for a in adj)
        self._edges = frozenset(edge_set)
        self._nbhd_cache: dict[int, tuple[tuple[int, ...], ...]] = {}
        self.original_ids = original_ids

    @property
    def edges(self) -> frozenset:
        return self._edges

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    def neighbors(self, i: int) -> tuple[int, ...]:
        return self._adj[i]

    def closed_neighborhood(self, i: int, k: int) -> set[int]:
        """Nodes within distance k of i, including i (k >= 0)."""
        if not 0 <= i < self.n:
            raise ValueError(f"node {i} out of range")
        if k < 0:
            raise ValueError("k must be non-negative")
        seen = {i}
        frontier = [i]
        for _ in range(k):
            nxt = []
            for v in frontier:
                for w in self._adj[v]:
                    if w not in seen:
                        seen.add(w)
                        nxt.append(w)
            if not nxt:
                break
            frontier = nxt
        return seen

    def closed_neighborhoods(self, k: int) -> tuple[tuple[int, ...], ...]:
        """All closed k-hop neighborhoods as sorted tuples; cached per k."""
        cached = self._nbhd_cache.get(k)
        if cached is None:
            cached = tuple(tuple(sorted(self.closed_neighborhood(i, k)))
                           for i in range(self.n))
            self._nbhd_cache[k] = cached
        return cached

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


@dataclass(frozen=True)
class FamilySpec:
    """Parameters for one of the built-in graph families."""

    family: str
    n: int | None = None
    k: int | None = None
    m: int | None = None
    prob: float | None = None
    seed: int | None = None


def load_edge_list(text: str | Iterable[str]) -> Graph:
    """Parse an edge-list document: two integer ids per line, '#' comments.

    Node ids are remapped to dense 0-based ids preserving sorted original
    order; duplicate edges collapse; self-loops are rejected.
    """
    lines = text.splitlines() if isinstance(text, str) else text
    raw_edges: list[tuple[int, int]] = []
    ids: set[int] = set()
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise ParseError(f"line {lineno}: expected two tokens, got {len(tokens)}")
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer token") from None
        if u < 0 or v < 0:
            raise ParseError(f"line {lineno}: negative node id")
        if u == v:
            raise ParseError(f"line {lineno}: self-loop on node {u}")
        raw_edges.append((u, v))
        ids.add(u)
        ids.add(v)
    order = tuple(sorted(ids))
    remap = {orig: i for i, orig in enumerate(order)}
    return Graph(len(order), [(remap[u], remap[v]) for u, v in raw_edges],
                 original_ids=order)


def star(n: int) -> Graph:
    if n < 1:
        raise ConfigError("star requires n >= 1")
    return Graph(n, [(0, i) for i in range(1, n)])


def chain(n: int) -> Graph:
    if n < 1:
        raise ConfigError("chain requires n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n: int) -> Graph:
    if n < 1:
        raise ConfigError("complete requires n >= 1")
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def er_random(n: int, prob: float, seed: int) -> Graph:
    """G(n, prob); deterministic for a fixed seed (fixed pair order)."""
    if n < 1:
        raise ConfigError("er_random requires n >= 1")
    if not 0.0 <= prob <= 1.0:
        raise ConfigError("edge probability must lie in [0, 1]")
    rng = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)
             if rng.random() < prob]
    return Graph(n, edges)


def two_center_tree(k: int, m: int) -> Graph:
    """Two adjacent centers, each with m pendant paths of k nodes."""
    if k < 1 or m < 1:
        raise ConfigError("two_center_tree requires k >= 1 and m >= 1")
    edges = [(0, 1)]
    nxt = 2
    for center in (0, 1):
        for _ in range(m):
            prev = center
            for _ in range(k):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
    return Graph(2 + 2 * m * k, edges)


def center_arms_tree(k: int, m: int) -> Graph:
    """One center with m pendant paths of k nodes."""
    if k < 1 or m < 1:
        raise ConfigError("center_arms_tree requires k >= 1 and m >= 1")
    edges = []
    nxt = 1
    for _ in range(m):
        prev = 0
        for _ in range(k):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(1 + m * k, edges)


def karate() -> Graph:
    return Graph(34, KARATE_EDGES)


def generate(spec: FamilySpec) -> Graph:
    """Build a graph from a FamilySpec, validating family-specific params."""
    fam = spec.family
    if fam == "star":
        _require(spec, "n")
        return star(spec.n)
    if fam == "chain":
        _require(spec, "n")
        return chain(spec.n)
    if fam == "complete":
        _require(spec, "n")
        return complete(spec.n)
    if fam == "er_random":
        _require(spec, "n", "prob")
        if spec.seed is None:
            raise ConfigError("er_random requires a seed")
        return er_random(spec.n, spec.prob, spec.seed)
    if fam == "two_center_tree":
        _require(spec, "k", "m")
        return two_center_tree(spec.k, spec.m)
    if fam == "center_arms_tree":
        _require(spec, "k", "m")
        return center_arms_tree(spec.k, spec.m)
    if fam == "karate":
        return karate()
    raise ConfigError(f"unknown family {fam!r}")


def _require(spec: FamilySpec, *fields: str) -> None:
    for f in fields:
        if getattr(spec, f) is None:
            raise ConfigError(f"family {spec.family!r} requires {f!r}")


def k_hop_neighborhood(g: Graph, i: int, k: int) -> set[int]:
    """{j : dist(i, j) <= k}; always contains i."""
    if k < 1:
        raise ValueError("k must be >= 1")
    return g.closed_neighborhood(i, k)


def connected_components(g: Graph) -> list[list[int]]:
    """Connected components, ordered by smallest member, each sorted."""
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        dq = deque([start])
        while dq:
            v = dq.popleft()
            for w in g.neighbors(v):
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    dq.append(w)
        comps.append(sorted(comp))
    return comps
