"""Equilibrium-finding procedures: best-response dynamics, a greedy
constructive equilibrium, and the optimum-repair stabilization for SGG-AC.

Best-response dynamics starts from the no-buyer profile (SGG) or a random
assignment (SGG-AC), fixes one random node order, and sweeps nodes letting
each deviate to a random best response when strictly improving. It provably
reaches a Nash equilibrium within three sweeps; we count sweeps and fail
loudly if a fourth would be needed.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field

from . import game
from .game import SGG, SGG_AC, MONEY_TOL, GameConfig, Profile
from .netgraph import Graph

_MASK64 = (1 << 64) - 1


def derive_seed(master_seed: int, index: int) -> int:
    """Independent 64-bit stream seed for run `index` (splitmix64 mixing)."""
    x = (master_seed + (index + 1) * 0x9E3779B97F4A7C15) & _MASK64
    x ^= x >> 30
    x = (x * 0xBF58476D1CE4E5B9) & _MASK64
    x ^= x >> 27
    x = (x * 0x94D049BB133111EB) & _MASK64
    x ^= x >> 31
    return x


@dataclass
class DynamicsResult:
    profile: Profile
    passes: int
    deviations: int
    seed: int
    # One [case1, case2, case3, case4] counter per executed pass.
    case_counts: list[list[int]] = field(default_factory=list)


class _State:
    """Incremental view of a strategy profile: follower counts and the number
    of owners inside each closed k-hop neighborhood."""

    __slots__ = ("g", "cfg", "nbhd", "s", "flw", "owners_in")

    def __init__(self, g: Graph, cfg: GameConfig, s: Profile):
        self.g = g
        self.cfg = cfg
        self.nbhd = g.closed_neighborhoods(cfg.k)
        self.s = s
        n = g.n
        self.owners_in = [0] * n
        self.flw = [0] * n
        for i in range(n):
            if self._owns(i):
                for j in self.nbhd[i]:
                    self.owners_in[j] += 1
            if cfg.variant == SGG_AC and s[i] != i:
                self.flw[s[i]] += 1

    def _owns(self, i: int) -> bool:
        return self.s[i] == 1 if self.cfg.variant == SGG else self.s[i] == i

    def set_strategy(self, i: int, new: int) -> None:
        old = self.s[i]
        if old == new:
            return
        owned = self._owns(i)
        self.s[i] = new
        owns_now = self._owns(i)
        if owned != owns_now:
            delta = 1 if owns_now else -1
            for j in self.nbhd[i]:
                self.owners_in[j] += delta
        if self.cfg.variant == SGG_AC:
            if old != i:
                self.flw[old] -= 1
            if new != i:
                self.flw[new] += 1

    def other_owner_in_range(self, i: int) -> bool:
        return self.owners_in[i] - (1 if self._owns(i) else 0) >= 1

    def is_nash(self) -> bool:
        cfg = self.cfg
        if cfg.variant == SGG:
            for i in range(self.g.n):
                if self.s[i] == 1:
                    if self.owners_in[i] > 1:
                        return False
                elif self.owners_in[i] == 0:
                    return False
            return True
        for i in range(self.g.n):
            if self.s[i] == i:
                if self.other_owner_in_range(i) and self.flw[i] < cfg.xi:
                    return False
            else:
                t = self.s[i]
                if self.s[t] != t:
                    return False
                if self.flw[i] >= cfg.xi:
                    return False
        return True


def _sweep(state: _State, order: list[int], rng: random.Random,
           cases: list[int]) -> int:
    """One pass of the dynamics; returns the number of deviations."""
    cfg = state.cfg
    nbhd = state.nbhd
    deviations = 0
    for i in order:
        if cfg.variant == SGG:
            owner = state.s[i] == 1
            others = state.owners_in[i] - (1 if owner else 0)
            u_cur = cfg.b - cfg.p if owner else (cfg.b if others else 0.0)
            u_free = cfg.b if others else 0.0
            u_max = max(cfg.b - cfg.p, u_free)
            if u_cur >= u_max - MONEY_TOL:
                continue
            best = [0] if u_free > cfg.b - cfg.p else [1]
            new = rng.choice(best)
        else:
            owner = state.s[i] == i
            u_buy = cfg.b - cfg.p + cfg.a * state.flw[i]
            rent_available = state.other_owner_in_range(i)
            u_rent = cfg.b - cfg.a if rent_available else float("-inf")
            if owner:
                u_cur = u_buy
            else:
                t = state.s[i]
                u_cur = cfg.b - cfg.a if state.s[t] == t else 0.0
            u_max = max(u_buy, u_rent)
            if u_cur >= u_max - MONEY_TOL:
                continue
            best = []
            if u_buy >= u_max - MONEY_TOL:
                best.append(i)
            if rent_available and u_rent >= u_max - MONEY_TOL:
                best.extend(j for j in nbhd[i]
                            if j != i and state.s[j] == j)
            new = rng.choice(best)
        buys = (new == 1) if cfg.variant == SGG else (new == i)
        if owner:
            cases[3] += 1            # owner reverts to free riding / renting
        elif buys:
            if state.other_owner_in_range(i):
                cases[2] += 1        # non-owner buys despite a nearby owner
            else:
                cases[0] += 1        # underprivileged node buys
        else:
            cases[1] += 1            # underprivileged node starts accessing
        state.set_strategy(i, new)
        deviations += 1
    return deviations


def best_response_dynamics(g: Graph, cfg: GameConfig, seed: int) -> DynamicsResult:
    """Run best-response dynamics to a Nash equilibrium (at most 3 passes)."""
    rng = random.Random(seed)
    nbhd = g.closed_neighborhoods(cfg.k)
    if cfg.variant == SGG:
        s = [0] * g.n
    else:
        s = []
        for i in range(g.n):
            options = [j for j in nbhd[i] if j != i]
            # Isolated nodes have no alternative; buying is the only
            # positive-utility action.
            s.append(rng.choice(options) if options else i)
    state = _State(g, cfg, s)
    order = list(range(g.n))
    rng.shuffle(order)
    passes = 0
    deviations = 0
    case_counts: list[list[int]] = []
    while not state.is_nash():
        if passes >= 3:
            raise RuntimeError("dynamics did not converge within 3 passes")
        cases = [0, 0, 0, 0]
        deviations += _sweep(state, order, rng, cases)
        case_counts.append(cases)
        passes += 1
    return DynamicsResult(profile=state.s, passes=passes,
                          deviations=deviations, seed=seed,
                          case_counts=case_counts)


def greedy_ne(g: Graph, cfg: GameConfig, pick_rule: str = "lowest_id",
              seed: int | None = None) -> Profile:
    """Constructive equilibrium: repeatedly pick a remaining node, make it an
    owner, attach all remaining nodes within k hops, and remove them."""
    if pick_rule not in ("lowest_id", "random"):
        raise ValueError(f"unknown pick_rule {pick_rule!r}")
    rng = random.Random(seed) if pick_rule == "random" else None
    nbhd = g.closed_neighborhoods(cfg.k)
    remaining = set(range(g.n))
    s: list[int] = [0] * g.n if cfg.variant == SGG else [-1] * g.n
    while remaining:
        if pick_rule == "lowest_id":
            i = min(remaining)
        else:
            i = rng.choice(sorted(remaining))
        s[i] = 1 if cfg.variant == SGG else i
        for j in nbhd[i]:
            if j != i and j in remaining:
                if cfg.variant == SGG_AC:
                    s[j] = i
                remaining.discard(j)
        remaining.discard(i)
    return s


def stabilize(g: Graph, cfg: GameConfig, opt_owners: set[int]) -> Profile:
    """Repair an optimal owner set into an SGG-AC equilibrium.

    Builds the initial profile by multi-source BFS from the owners (each
    owner's follower region is connected), then repeatedly lets a poor owner
    that can reach another owner defect to renting, re-homing its followers
    and promoting the stranded ones to new owners.
    """
    if cfg.variant != SGG_AC:
        raise game.VariantError("stabilize applies only to SGG-AC")
    if not game.is_distance_k_dominating(g, cfg.k, set(opt_owners)):
        raise ValueError("opt_owners is not distance-k dominating")
    n = g.n
    nbhd = g.closed_neighborhoods(cfg.k)
    current = set(opt_owners)

    # Region assignment: each node follows its nearest owner, regions
    # connected because every node inherits its BFS parent's owner.
    s = [-1] * n
    dq = deque()
    for o in sorted(current):
        s[o] = o
        dq.append(o)
    while dq:
        v = dq.popleft()
        for w in g.neighbors(v):
            if s[w] == -1:
                s[w] = s[v]
                dq.append(w)

    xi = cfg.xi
    max_iters = len(current) + 1
    for _ in range(max_iters):
        flw = [0] * n
        for i, x in enumerate(s):
            if x != i:
                flw[x] += 1
        poor = None
        for i in sorted(current):
            if flw[i] < xi and any(o != i and o in current for o in nbhd[i]):
                poor = i
                break
        if poor is None:
            break
        target = min(o for o in nbhd[poor] if o != poor and o in current)
        prev_followers = sorted(f for f in range(n) if s[f] == poor and f != poor)
        current.discard(poor)
        s[poor] = target
        stranded = []
        for f in prev_followers:
            alternatives = [o for o in nbhd[f] if o != f and o in current]
            if alternatives:
                s[f] = min(alternatives)
            else:
                stranded.append(f)
        pending = set(stranded)
        for leader in stranded:
            if leader not in pending:
                continue
            pending.discard(leader)
            current.add(leader)
            s[leader] = leader
            for f in sorted(pending):
                if leader in nbhd[f]:
                    s[f] = leader
                    pending.discard(f)
    else:
        raise RuntimeError("stabilize repair loop failed to terminate")

    if not game.is_nash(g, cfg, s):
        raise RuntimeError("stabilize produced a non-equilibrium profile")
    return s
