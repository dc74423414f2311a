"""Exact engines for the k-score maximization and the double distance.

Two independent routes: `ss_naive` sweeps all 2^a_star resolutions;
`ss_mis` enumerates short candidate components and solves a maximum-weight
independent set on their conflict graph by branch and bound.  Both return
the same scores; `dd_definition_oracle` re-derives the double distance from
its definition without touching the ambiguous-graph machinery at all.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import _kernels
from .abg import AmbiguousBreakpointGraph, build_abg, enumerate_candidates, score
from .bpgraph import BudgetExceeded, _Infinity, check_k, distance
from .genomes import (
    Genome,
    GenomeError,
    PairClass,
    classify_pair,
    enumerate_resolved_doublings,
    singularize,
)


@dataclass
class SolveStats:
    nodes: int = 0
    candidates: int = 0
    wall_ms: float = 0.0


@dataclass
class SolveResult:
    score: Fraction
    dd: Fraction
    tau: Optional[tuple]
    optimal: bool
    engine: str
    stats: SolveStats = field(default_factory=SolveStats)


def _result(abg, tau, k, engine, optimal, stats) -> SolveResult:
    actual = score(abg, tau, k)
    dd_value = Fraction(abg.n_star_doubled) - actual
    return SolveResult(actual, dd_value, tau, optimal, engine, stats)


def ss_naive(
    abg: AmbiguousBreakpointGraph,
    k,
    budget_nodes: int = 1 << 25,
) -> SolveResult:
    """Exact k-score maximum by exhausting all resolutions; ties keep the
    lowest bit pattern."""
    check_k(k)
    t0 = time.monotonic()
    total = 1 << abg.a_star
    if abg.a_star > 25 or total > budget_nodes:
        raise BudgetExceeded(
            "ss_naive needs 2^%d resolutions, over the budget" % abg.a_star
        )
    kcap = -1 if isinstance(k, _Infinity) else k
    best2x, tau_int, explored = _kernels.best_resolution(
        abg.sq_id, abg.e_part, abg.t_part, abg.d_part, abg.a_star, kcap, budget_nodes
    )
    if explored < total:
        raise BudgetExceeded("ss_naive budget exhausted after %d nodes" % explored)
    tau = tuple((tau_int >> i) & 1 for i in range(abg.a_star))
    stats = SolveStats(nodes=explored, candidates=0,
                       wall_ms=(time.monotonic() - t0) * 1000.0)
    result = _result(abg, tau, k, "naive", True, stats)
    assert result.score == Fraction(best2x, 2)
    return result


class _SearchBudget:
    def __init__(self, nodes, ms):
        self.nodes_left = nodes
        self.deadline = time.monotonic() + ms / 1000.0 if ms else None
        self.spent = 0

    def tick(self) -> bool:
        self.spent += 1
        self.nodes_left -= 1
        if self.nodes_left < 0:
            return False
        if self.deadline is not None and self.spent % 4096 == 0:
            return time.monotonic() < self.deadline
        return True


def _max_weight_independent_set(weights, neighbor_masks, budget):
    """Branch and bound MWIS over a conflict graph given as bitmasks.

    Vertices must be pre-sorted by descending weight.  Conflict-free
    vertices are taken outright; branching picks the most-conflicted
    vertex; the bound covers the available vertices greedily with cliques,
    each contributing its heaviest member.
    Returns (best_weight, best_mask, closed)."""
    n = len(weights)
    best = 0
    best_mask = 0
    full = (1 << n) - 1

    def upper(avail):
        ub = 0
        rem = avail
        while rem:
            v = (rem & -rem).bit_length() - 1
            ub += weights[v]
            clique = 1 << v
            common = neighbor_masks[v] & rem
            while common:
                u = (common & -common).bit_length() - 1
                clique |= 1 << u
                common &= neighbor_masks[u]
            rem &= ~clique
        return ub

    closed = True
    stack = [(full, 0, 0)]
    while stack:
        avail, cur, chosen = stack.pop()
        if not budget.tick():
            closed = False
            break
        # take every vertex with no remaining conflicts
        while True:
            rem = avail
            grabbed = False
            while rem:
                low = rem & -rem
                rem &= rem - 1
                v = low.bit_length() - 1
                if neighbor_masks[v] & avail == 0:
                    cur += weights[v]
                    chosen |= low
                    avail &= ~low
                    grabbed = True
            if not grabbed:
                break
        if cur > best:
            best = cur
            best_mask = chosen
        if not avail:
            continue
        if cur + upper(avail) <= best:
            continue
        # branch on the most conflicted available vertex
        rem = avail
        v = -1
        v_deg = -1
        while rem:
            low = rem & -rem
            rem &= rem - 1
            u = low.bit_length() - 1
            deg = (neighbor_masks[u] & avail).bit_count()
            if deg > v_deg:
                v, v_deg = u, deg
        bit = 1 << v
        # exclude first so the include branch is explored first (LIFO)
        stack.append((avail & ~bit, cur, chosen))
        stack.append((avail & ~(neighbor_masks[v] | bit), cur + weights[v], chosen | bit))
    return best, best_mask, closed


def ss_mis(
    abg: AmbiguousBreakpointGraph,
    k: int,
    budget_nodes: int = 1 << 22,
    budget_ms: Optional[float] = None,
) -> SolveResult:
    """Exact k-score maximum via maximum-weight independent set over the
    candidate components; finite k only."""
    k = check_k(k)
    if not isinstance(k, int):
        raise ValueError("ss_mis needs finite k")
    t0 = time.monotonic()
    cset = enumerate_candidates(abg, k)
    cands = sorted(cset.candidates, key=lambda c: (-c.weight2, c.vertices))
    n = len(cands)
    vert_touch = {}
    choice_touch = {}
    for i, c in enumerate(cands):
        for v in c.vertices:
            vert_touch.setdefault(v, []).append(i)
        for sq, bit in c.choices:
            choice_touch.setdefault((sq, bit), []).append(i)
    masks = [0] * n
    for group in vert_touch.values():
        for i in group:
            for j in group:
                if i != j:
                    masks[i] |= 1 << j
    for (sq, bit), group in choice_touch.items():
        other = choice_touch.get((sq, 1 - bit), ())
        for i in group:
            for j in other:
                if i != j:
                    masks[i] |= 1 << j
    budget = _SearchBudget(budget_nodes, budget_ms)
    weights = [c.weight2 for c in cands]
    best2x, best_mask, closed = _max_weight_independent_set(weights, masks, budget)

    choices = {}
    for i in range(n):
        if (best_mask >> i) & 1:
            choices.update(dict(cands[i].choices))
    tau = tuple(choices.get(i, 0) for i in range(abg.a_star))
    stats = SolveStats(
        nodes=budget.spent,
        candidates=n,
        wall_ms=(time.monotonic() - t0) * 1000.0,
    )
    result = _result(abg, tau, k, "mis", closed, stats)
    if closed:
        assert result.score == Fraction(best2x + cset.isolated_count, 2)
    return result


_ENGINES = {"naive": ss_naive, "mis": ss_mis}


def dd(
    s: Genome,
    d: Genome,
    k,
    engine: str = "naive",
    budget_nodes: Optional[int] = None,
    budget_ms: Optional[float] = None,
) -> SolveResult:
    """Double distance of a [1.2]-cognate pair via the requested engine."""
    check_k(k)
    if classify_pair(s, d) != PairClass.ONE_TWO_COGNATE or not s.is_singular():
        raise GenomeError("dd() needs a singular genome and its duplicated cognate")
    if engine == "greedy2":
        if k != 2:
            raise ValueError("greedy2 engine only computes k=2")
        value = dd_greedy_2(s, d)
        return SolveResult(
            score=2 * len(s.identities) - value,
            dd=value,
            tau=None,
            optimal=True,
            engine="greedy2",
            stats=SolveStats(),
        )
    if engine == "oracle":
        value = dd_definition_oracle(s, d, k)
        return SolveResult(
            score=2 * len(s.identities) - value,
            dd=value,
            tau=None,
            optimal=True,
            engine="oracle",
            stats=SolveStats(),
        )
    try:
        solve = _ENGINES[engine]
    except KeyError:
        raise ValueError("unknown engine %r" % (engine,))
    abg = build_abg(s, singularize(d))
    kwargs = {}
    if budget_nodes is not None:
        kwargs["budget_nodes"] = budget_nodes
    if engine == "mis" and budget_ms is not None:
        kwargs["budget_ms"] = budget_ms
    return solve(abg, k, **kwargs)


def dd_definition_oracle(s: Genome, d: Genome, k) -> Fraction:
    """Definitional double distance: minimize d_k over all resolved
    doublings of s against a fixed singularization of d."""
    check_k(k)
    if classify_pair(s, d) != PairClass.ONE_TWO_COGNATE or not s.is_singular():
        raise GenomeError("oracle needs a singular genome and its duplicated cognate")
    if s.n_star > 8:
        raise BudgetExceeded("dd_definition_oracle limited to n_star <= 8")
    d_check = singularize(d)
    return min(distance(b, d_check, k) for b in enumerate_resolved_doublings(s))


def dd_greedy_2(s: Genome, d: Genome) -> Fraction:
    """Linear-time breakpoint double distance from multiset intersections:
    2n - |A(2S) ^ A(D)| - |T(2S) ^ T(D)|/2."""
    if classify_pair(s, d) != PairClass.ONE_TWO_COGNATE or not s.is_singular():
        raise GenomeError("dd_greedy_2 needs a singular genome and its duplicated cognate")
    a2 = s.adjacencies + s.adjacencies
    t2 = s.telomeres + s.telomeres
    common_a = sum((a2 & d.adjacencies).values())
    common_t = sum((t2 & d.telomeres).values())
    return 2 * len(s.identities) - common_a - Fraction(common_t, 2)
