"""Exhaustive oracles for 2PPM and 2PM."""
from __future__ import annotations

from itertools import combinations
from math import comb

from ..errors import PreconditionError, SizeGuardError
from ..graph import BipartiteInstance, Kind, Solution, coverage_masks, make_solution
from ..matching import a_perfect_matching, hopcroft_karp

MAX_2PPM_CANDIDATES = 5_000_000
MAX_2PM_BIDDERS = 20


def brute_2ppm_candidates(inst: BipartiteInstance) -> int:
    return comb(inst.n_b, inst.n_b - inst.n_a) if inst.n_b >= inst.n_a else 0


def solve_brute_2ppm(inst: BipartiteInstance, limit: int = MAX_2PPM_CANDIDATES) -> Solution:
    """Optimal 2PPM solution by enumerating bidder sets of size ``n_b - n_a``.

    Coverage is monotone and every dual-independent set extends to one of that
    size, so enumerating the maximum-size sets suffices. Feasibility is only
    checked for candidates that would beat the incumbent.
    """
    if inst.n_b < inst.n_a:
        raise PreconditionError("2PPM needs n_b >= n_a")
    count = brute_2ppm_candidates(inst)
    if count > limit:
        raise SizeGuardError(f"2PPM brute force would enumerate {count} sets (limit {limit})")
    if a_perfect_matching(inst) is None:
        raise PreconditionError("instance has no A-perfect matching")
    masks = coverage_masks(inst)
    best_val, best_s, best_m = -1, None, None
    full = inst.n_a
    for s in combinations(range(inst.n_b), inst.n_b - inst.n_a):
        cov = 0
        for b in s:
            cov |= masks[b]
        val = bin(cov).count("1")
        if val <= best_val:
            continue
        m = a_perfect_matching(inst, s)
        if m is None:
            continue
        best_val, best_s, best_m = val, s, m
        if val == full:
            break
    sol = make_solution(inst, Kind.TWO_PPM, best_s, best_m)
    return Solution(sol.kind, sol.s_set, sol.w_set, sol.matching, sol.profit, "brute", "exact")


def best_w_for(inst: BipartiteInstance, s, cov_mask: int):
    """Matching maximising matched goods of ``N(S)``, extended to other goods.

    Left vertices matched in the first phase stay matched in the second, so
    the count of covered matched goods is maximum.
    """
    allowed = set(range(inst.n_b)).difference(s)
    covered = [a for a in range(inst.n_a) if cov_mask >> a & 1]
    first = hopcroft_karp(covered, inst.adj_a, allowed)
    return hopcroft_karp(range(inst.n_a), inst.adj_a, allowed, initial=first), len(first)


def solve_brute_2pm(inst: BipartiteInstance, max_bidders: int = MAX_2PM_BIDDERS) -> Solution:
    """Optimal 2PM solution over all ``S`` subsets of B."""
    if inst.n_b > max_bidders:
        raise SizeGuardError(f"2PM brute force needs n_b <= {max_bidders}, got {inst.n_b}")
    masks = coverage_masks(inst)
    best_val, best = -1, None
    for bits in range(1 << inst.n_b):
        cov = 0
        s = []
        for b in range(inst.n_b):
            if bits >> b & 1:
                cov |= masks[b]
                s.append(b)
        if bin(cov).count("1") <= best_val:
            continue
        mate, val = best_w_for(inst, s, cov)
        if val > best_val:
            best_val, best = val, (s, mate)
    s, mate = best
    sol = make_solution(inst, Kind.TWO_PM, s, mate.items())
    return Solution(sol.kind, sol.s_set, sol.w_set, sol.matching, sol.profit, "brute", "exact")
