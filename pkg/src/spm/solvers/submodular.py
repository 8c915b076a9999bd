"""Solvers built on the dual transversal matroid.

2PPM asks for a dual-independent ``S`` maximising the coverage ``|N(S)|``,
a monotone submodular function, so matroid greedy and continuous greedy
both apply.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Callable, List, Sequence

import numpy as np

from ..errors import PreconditionError
from ..graph import (
    BipartiteInstance,
    Kind,
    Solution,
    degree_bounds,
    make_solution,
)
from ..matching import a_perfect_matching, max_matching_bipartite
from ..matroid import DualGreedyState, TransversalMatroidOracle, max_weight_dual_independent

DEFAULT_CG_STEPS = 50
DEFAULT_CG_SAMPLES = 64


def _tag(sol: Solution, strategy: str, guarantee: str, certificate=None) -> Solution:
    return Solution(
        sol.kind, sol.s_set, sol.w_set, sol.matching, sol.profit, strategy, guarantee, certificate
    )


def _require_perfect(inst: BipartiteInstance):
    m = a_perfect_matching(inst)
    if m is None:
        raise PreconditionError("instance has no A-perfect matching")
    return m


def solve_a2(inst: BipartiteInstance) -> Solution:
    """Exact 2PPM when every good has degree 2.

    Each good keeps its matched bidder outside S, so it has at most one
    neighbor in S and the coverage of S is the sum of its bidder degrees.
    """
    bad = [a for a in range(inst.n_a) if inst.deg_a(a) != 2]
    if bad:
        raise PreconditionError(f"good {bad[0]} has degree {inst.deg_a(bad[0])}, need 2")
    _require_perfect(inst)
    oracle = TransversalMatroidOracle(inst, cache_ranks=False)
    s = max_weight_dual_independent(oracle, [inst.deg_b(b) for b in range(inst.n_b)])
    sol = make_solution(inst, Kind.TWO_PPM, s, a_perfect_matching(inst, s))
    assert sol.profit == sum(inst.deg_b(b) for b in s)
    return _tag(sol, "a2", "exact")


def degree_gap_solution(inst: BipartiteInstance) -> Solution:
    """Any maximum-size feasible S, with the ``(1 - d_B/d_A) n_a`` lower bound attached."""
    m = _require_perfect(inst)
    matched = {b for _, b in m}
    s = [b for b in range(inst.n_b) if b not in matched]
    d_a, d_b = degree_bounds(inst)
    cert = (1 - Fraction(d_b, d_a)) * inst.n_a if d_a else Fraction(0)
    sol = make_solution(inst, Kind.TWO_PPM, s, m)
    assert sol.profit >= cert
    return _tag(sol, "gap", "1-dB/dA", cert)


def solve_greedy(inst: BipartiteInstance) -> Solution:
    """Greedy on marginal coverage subject to dual independence."""
    _require_perfect(inst)
    state = DualGreedyState(inst)
    nbrs = [set(x) for x in inst.adj_b]
    covered: set = set()
    dead: set = set()
    while True:
        cands = sorted(
            (b for b in range(inst.n_b) if b not in state.s and b not in dead),
            key=lambda b: (-len(nbrs[b] - covered), b),
        )
        picked = None
        for b in cands:
            if not nbrs[b] - covered:
                break
            # dependence is inherited by supersets, so a rejected bidder stays rejected
            if state.add(b):
                picked = b
                break
            dead.add(b)
        if picked is None:
            break
        covered |= nbrs[picked]
    for b in range(inst.n_b):
        if b not in dead:
            state.add(b)
    sol = make_solution(inst, Kind.TWO_PPM, state.s, state.matching())
    return _tag(sol, "greedy", "1/2-greedy")


def _max_weight_basis(inst: BipartiteInstance, weights: Sequence[float]) -> List[int]:
    state = DualGreedyState(inst)
    for b in sorted(range(inst.n_b), key=lambda x: (-weights[x], x)):
        state.add(b)
    return sorted(state.s)


def _is_dual_basis(inst: BipartiteInstance, s, size: int) -> bool:
    return len(s) == size and a_perfect_matching(inst, s) is not None


def swap_round(inst: BipartiteInstance, bases: List[List[int]], weights: List[float], rng) -> List[int]:
    """Merge a convex combination of dual bases into one basis by random swaps."""
    size = len(bases[0])
    cur = set(bases[0])
    beta = weights[0]
    for other, beta2 in zip(bases[1:], weights[1:]):
        other = set(other)
        while cur != other:
            i = min(cur - other)
            j = None
            for cand in sorted(other - cur):
                if _is_dual_basis(inst, (cur - {i}) | {cand}, size) and _is_dual_basis(
                    inst, (other - {cand}) | {i}, size
                ):
                    j = cand
                    break
            assert j is not None, "strong basis exchange must succeed"
            if rng.random() < beta / (beta + beta2):
                other = (other - {j}) | {i}
            else:
                cur = (cur - {i}) | {j}
        beta += beta2
    return sorted(cur)


def solve_continuous_greedy(
    inst: BipartiteInstance,
    steps: int = DEFAULT_CG_STEPS,
    samples: int = DEFAULT_CG_SAMPLES,
    seed: int = 0,
) -> Solution:
    """Sampled continuous greedy on the multilinear extension, then swap rounding.

    Marginal gains are estimated from ``samples`` random sets per step; the
    ``(1 - 1/e)`` guarantee of the exact method is not certified here.
    """
    if steps < 1 or samples < 1:
        raise ValueError("steps and samples must be >= 1")
    _require_perfect(inst)
    rng = np.random.default_rng(seed)
    inc = np.zeros((inst.n_b, inst.n_a))
    for b, nbrs in enumerate(inst.adj_b):
        inc[b, list(nbrs)] = 1.0
    x = np.zeros(inst.n_b)
    bases: List[List[int]] = []
    for _ in range(steps):
        draws = rng.random((samples, inst.n_b)) < x
        uncovered = (draws.astype(float) @ inc) == 0
        gains = inc @ uncovered.mean(axis=0)
        basis = _max_weight_basis(inst, gains.tolist())
        bases.append(basis)
        x[basis] += 1.0 / steps
    s = swap_round(inst, bases, [1.0 / steps] * steps, rng)
    sol = make_solution(inst, Kind.TWO_PPM, s, a_perfect_matching(inst, s))
    return _tag(sol, "cg", "cg-sampled")


def solve_via_matchable_goods(
    inst: BipartiteInstance, solver: Callable[[BipartiteInstance], Solution]
) -> Solution:
    """Turn a 2PPM solver into a 2PM heuristic.

    Restricts A to the goods covered by one maximum matching, which always
    admits a perfect matching, solves 2PPM there and maps the result back.
    """
    m = max_matching_bipartite(inst)
    goods = [a for a, _ in m]
    if len(goods) == inst.n_a:
        sub_sol, back = solver(inst), list(range(inst.n_a))
    else:
        index = {a: i for i, a in enumerate(goods)}
        sub = BipartiteInstance.from_edges(
            len(goods), inst.n_b, [(index[a], b) for a, b in inst.edges if a in index]
        )
        sub_sol, back = solver(sub), goods
    pairs = [(back[a], b) for a, b in sub_sol.matching]
    sol = make_solution(inst, Kind.TWO_PM, sub_sol.s_set, pairs)
    return _tag(sol, sub_sol.strategy, "heuristic")
