from .brute import solve_brute_2pm, solve_brute_2ppm
from .dispatch import classify, solve_auto
from .regular import (
    AuxiliaryGraph,
    Decomposition32,
    build_auxiliary_graph,
    decompose_32,
    solve_32_regular,
    solve_d2_regular_d4,
)
from .submodular import (
    degree_gap_solution,
    solve_a2,
    solve_continuous_greedy,
    solve_greedy,
    solve_via_matchable_goods,
    swap_round,
)

__all__ = [
    "AuxiliaryGraph",
    "Decomposition32",
    "build_auxiliary_graph",
    "classify",
    "decompose_32",
    "degree_gap_solution",
    "solve_32_regular",
    "solve_a2",
    "solve_auto",
    "solve_brute_2pm",
    "solve_brute_2ppm",
    "solve_continuous_greedy",
    "solve_d2_regular_d4",
    "solve_greedy",
    "solve_via_matchable_goods",
    "swap_round",
]
