from __future__ import annotations

from ..graph import BipartiteInstance, Kind, Solution
from ..matching import a_perfect_matching
from .regular import solve_32_regular, solve_d2_regular_d4
from .submodular import solve_a2, solve_greedy, solve_via_matchable_goods


def classify(inst: BipartiteInstance) -> str:
    """Strategy tag the dispatcher would pick for ``inst``."""
    left = inst.left_degrees()
    if inst.n_a and inst.n_b and inst.right_degrees() == {2} and len(left) == 1:
        d = next(iter(left))
        if d == 3:
            return "32regular"
        if d >= 4:
            return "d2regular"
    if inst.n_a and left == {2}:
        return "a2"
    return "greedy"


def solve_auto(inst: BipartiteInstance, kind: Kind = Kind.TWO_PPM) -> Solution:
    tag = classify(inst)
    if tag == "32regular":
        return solve_32_regular(inst, kind)
    if tag == "d2regular":
        return solve_d2_regular_d4(inst, kind)
    perfect = a_perfect_matching(inst) is not None
    if kind is Kind.TWO_PPM:
        return solve_a2(inst) if tag == "a2" else solve_greedy(inst)
    if tag == "a2" and perfect:
        return solve_via_matchable_goods(inst, solve_a2)
    return solve_via_matchable_goods(inst, solve_greedy)
