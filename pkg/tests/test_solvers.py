import random
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spm.errors import PreconditionError, SizeGuardError
from spm.graph import BipartiteInstance, Kind, neighborhood, validate_solution
from spm.matching import matching_number
from spm.reductions import (
    complete_graph,
    gen_biregular,
    gen_left_regular,
    gen_random_instance,
    gen_tight_example,
    incidence_instance,
)
from spm.solvers import (
    build_auxiliary_graph,
    classify,
    decompose_32,
    degree_gap_solution,
    solve_a2,
    solve_auto,
    solve_brute_2pm,
    solve_brute_2ppm,
    solve_continuous_greedy,
    solve_d2_regular_d4,
    solve_greedy,
    solve_via_matchable_goods,
)
from spm.solvers.regular import solve_32_regular

import helpers


def _ok(inst, sol):
    assert validate_solution(inst, sol) is None, validate_solution(inst, sol)
    return sol.profit


# -- auxiliary graph ---------------------------------------------------------

def test_auxiliary_graph_of_gprime(gprime):
    aux = build_auxiliary_graph(gprime)
    assert aux.graph.n_v == 3
    assert sorted(tuple(sorted(e)) for e in aux.graph.edges) == [(0, 1), (0, 1), (0, 2), (1, 2)]
    assert matching_number(aux.graph) == 1
    for e, b in enumerate(aux.phi):
        assert tuple(sorted(aux.graph.edges[e])) == gprime.adj_b[b]


def test_auxiliary_graph_parallel_triple():
    aux = build_auxiliary_graph(helpers.complete(2, 3))
    assert aux.graph.n_e == 3 and aux.graph.n_v == 2


def test_auxiliary_graph_rejects_degree(fig2ppm):
    with pytest.raises(PreconditionError, match="bidder"):
        build_auxiliary_graph(fig2ppm)


# -- (3,2)-regular -------------------------------------------------------------

def test_32_two_goods():
    inst = helpers.complete(2, 3)
    assert _ok(inst, solve_32_regular(inst)) == 2


def test_32_tight_incidence():
    sol = solve_32_regular(incidence_instance(gen_tight_example(), 3))
    assert sol.profit == 9 and sol.guarantee == "exact"


def test_32_k4_incidence():
    inst = incidence_instance(complete_graph(4), 3)
    assert _ok(inst, solve_32_regular(inst)) == 4 == solve_brute_2ppm(inst).profit


def test_32_rejects_irregular(fig2ppm):
    with pytest.raises(PreconditionError):
        solve_32_regular(fig2ppm)


def test_32_decomposition_shape():
    for seed in range(40):
        inst = gen_biregular(10, 3, seed)
        decomp, pairs, s, nu = decompose_32(inst)
        assert len(decomp.b_prime) == nu
        # cycles and paths are vertex disjoint
        seen = set()
        for part in list(decomp.cycles) + list(decomp.paths):
            assert not seen & set(part)
            seen |= set(part)
        assert len(neighborhood(inst, s)) == inst.n_a // 2 + nu


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([4, 6, 8]), st.integers(0, 10**6))
def test_32_matches_brute(n_a, seed):
    inst = gen_biregular(n_a, 3, seed)
    sol = solve_32_regular(inst)
    nu = matching_number(build_auxiliary_graph(inst).graph)
    oracle = helpers.naive_opt_2ppm(inst) if n_a <= 6 else solve_brute_2ppm(inst).profit
    assert _ok(inst, sol) == n_a // 2 + nu == oracle


def test_32_no_set_beats_bound():
    # any feasible S covers at most n/2 + nu goods
    for seed in range(15):
        inst = gen_biregular(6, 3, seed)
        nu = matching_number(build_auxiliary_graph(inst).graph)
        for r in range(inst.n_b - inst.n_a + 1):
            for s in combinations(range(inst.n_b), r):
                if helpers.naive_feasible_2ppm(inst, s):
                    assert helpers.cover_size(inst, s) <= inst.n_a // 2 + nu


def test_32_2pm_guarantee():
    for seed in range(12):
        inst = gen_biregular(4, 3, seed)
        sol = solve_32_regular(inst, Kind.TWO_PM)
        assert sol.guarantee == "9/10" and sol.kind is Kind.TWO_PM
        assert 10 * _ok(inst, sol) >= 9 * solve_brute_2pm(inst).profit


# -- (d,2)-regular, d >= 4 ---------------------------------------------------

def test_d4_two_goods():
    inst = helpers.complete(2, 4)
    assert _ok(inst, solve_d2_regular_d4(inst)) == 2


def test_d4_figure_with_given_b_prime():
    inst = helpers.fig_gprimeprime()
    sol = solve_d2_regular_d4(inst, b_prime=[5])
    assert _ok(inst, sol) == 3
    assert 5 in sol.s_set


def test_d4_rejects_non_maximum_b_prime():
    with pytest.raises(PreconditionError):
        solve_d2_regular_d4(helpers.fig_gprimeprime(), b_prime=[])


@pytest.mark.parametrize("d", [4, 5, 6])
def test_d4_random(d):
    for seed in range(25):
        n_a = 8 if d % 2 == 0 else 6
        inst = gen_biregular(n_a, d, seed)
        sol = solve_d2_regular_d4(inst)
        assert _ok(inst, sol) == n_a
        assert len(sol.s_set) <= inst.n_b - inst.n_a


# -- deg(a) = 2 --------------------------------------------------------------

def test_a2_rejects(gprime):
    with pytest.raises(PreconditionError):
        solve_a2(gprime)


def test_a2_path():
    inst = helpers.one_based(2, 3, [(1, 1), (1, 2), (2, 2), (2, 3)])
    sol = solve_a2(inst)
    assert _ok(inst, sol) == 2 and sol.s_set == (1,)


def test_a2_square():
    inst = helpers.one_based(2, 2, [(1, 1), (1, 2), (2, 1), (2, 2)])
    assert _ok(inst, solve_a2(inst)) == 0


def test_a2_random_against_naive():
    for seed in range(40):
        n_b = random.Random(seed).randint(3, 8)
        inst = gen_left_regular(random.Random(seed + 1).randint(1, n_b), n_b, 2, seed)
        sol = solve_a2(inst)
        assert _ok(inst, sol) == helpers.naive_opt_2ppm(inst)
        assert sol.profit == sum(inst.deg_b(b) for b in sol.s_set)


# -- degree gap --------------------------------------------------------------

def test_gap_complete23():
    sol = degree_gap_solution(helpers.complete(2, 3))
    assert sol.certificate == Fraction(2, 3) and sol.profit == 2


def test_gap_equal_degrees():
    sol = degree_gap_solution(helpers.complete(2, 2))
    assert sol.certificate == 0


def test_gap_d4():
    inst = gen_biregular(8, 4, 1)
    sol = degree_gap_solution(inst)
    assert sol.certificate == 4 and _ok(inst, sol) >= 4


# -- greedy and continuous greedy ------------------------------------------------

def test_greedy_star_picks_hub():
    inst = helpers.star(4)
    sol = solve_greedy(inst)
    assert 0 in sol.s_set and _ok(inst, sol) == 4


def test_greedy_and_cg_complete23():
    inst = helpers.complete(2, 3)
    assert _ok(inst, solve_greedy(inst)) == 2
    for seed in range(5):
        assert _ok(inst, solve_continuous_greedy(inst, seed=seed)) == 2


def test_cg_degenerate_parameters(fig2ppm):
    _ok(fig2ppm, solve_continuous_greedy(fig2ppm, steps=1, samples=1, seed=0))
    with pytest.raises(ValueError):
        solve_continuous_greedy(fig2ppm, steps=0)


def test_cg_deterministic_given_seed(fig2ppm):
    a = solve_continuous_greedy(fig2ppm, steps=10, samples=8, seed=4)
    b = solve_continuous_greedy(fig2ppm, steps=10, samples=8, seed=4)
    assert a == b


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_half_floor_property(seed):
    rng = random.Random(seed)
    n_a = rng.randint(2, 5)
    inst = gen_random_instance(n_a, rng.randint(n_a, 9), 0.4, seed)
    opt = helpers.naive_opt_2ppm(inst)
    assert 2 * _ok(inst, solve_greedy(inst)) >= opt
    assert 2 * _ok(inst, solve_continuous_greedy(inst, steps=10, samples=16, seed=seed)) >= opt


# -- brute force -------------------------------------------------------------

def test_brute_fig(fig2ppm):
    sol = solve_brute_2ppm(fig2ppm)
    assert _ok(fig2ppm, sol) == 6 == helpers.naive_opt_2ppm(fig2ppm)


def test_brute_guards():
    with pytest.raises(SizeGuardError):
        solve_brute_2ppm(gen_random_instance(10, 30, 0.5, 0), limit=1000)
    with pytest.raises(SizeGuardError):
        solve_brute_2pm(helpers.complete(1, 21))
    with pytest.raises(PreconditionError):
        solve_brute_2ppm(helpers.complete(3, 2))


def test_brute_2pm_against_naive():
    for seed in range(40):
        rng = random.Random(seed)
        inst = gen_random_instance(rng.randint(1, 4), rng.randint(1, 6), 0.4, seed, require_perfect=False)
        sol = solve_brute_2pm(inst)
        assert _ok(inst, sol) == helpers.naive_opt_2pm(inst)


def test_2ppm_never_beats_2pm():
    for seed in range(30):
        inst = gen_random_instance(3, 6, 0.5, seed)
        assert solve_brute_2ppm(inst).profit <= solve_brute_2pm(inst).profit


# -- dispatch ----------------------------------------------------------------

def test_dispatch_tags():
    inst = gen_biregular(6, 3, 0)
    sol = solve_auto(inst, Kind.TWO_PM)
    assert (sol.strategy, sol.guarantee) == ("32regular", "9/10")
    sol = solve_auto(gen_biregular(6, 5, 0))
    assert (sol.strategy, sol.guarantee) == ("d2regular", "exact")
    assert solve_auto(helpers.fig_2ppm()).strategy == "greedy"
    assert classify(helpers.one_based(2, 3, [(1, 1), (1, 2), (2, 2), (2, 3)])) == "a2"


def test_dispatch_2pm_without_perfect_matching():
    # goods 0 and 1 are wanted only by bidder 0, so one stays unsold
    inst = BipartiteInstance.from_edges(3, 2, [(0, 0), (1, 0), (2, 1)])
    sol = solve_auto(inst, Kind.TWO_PM)
    assert sol.kind is Kind.TWO_PM and sol.guarantee == "heuristic"
    assert _ok(inst, sol) <= solve_brute_2pm(inst).profit


def test_matchable_wrapper_feasible():
    for seed in range(30):
        inst = gen_random_instance(4, 6, 0.35, seed, require_perfect=False)
        sol = solve_via_matchable_goods(inst, solve_greedy)
        assert _ok(inst, sol) <= solve_brute_2pm(inst).profit


@pytest.mark.parametrize("blobs", [(2, 2, 2), (2, 2, 8), (2, 4, 6), (4, 4, 4)])
def test_32_deficient_against_brute(blobs):
    for seed in range(2):
        inst = incidence_instance(helpers.deficient_cubic(blobs, seed), 3)
        sol = solve_32_regular(inst)
        assert _ok(inst, sol) == inst.n_a - 1 == solve_brute_2ppm(inst).profit


def test_32_large_mixed_instances():
    for seed in range(25):
        rng = random.Random(seed)
        parts = [helpers.deficient_cubic(tuple(rng.choice([2, 4, 6]) for _ in range(3)), seed)
                 for _ in range(rng.randint(1, 3))]
        h = gen_biregular(2 * rng.randint(1, 6), 3, seed)
        g = parts[0]
        for p in parts[1:]:
            g = g.disjoint_union(p)
        g = helpers.shuffled(g.disjoint_union(build_auxiliary_graph(h).graph), rng)
        inst = incidence_instance(g, 3)
        decomp, _, _, nu = decompose_32(inst)
        assert nu == g.n_v // 2 - len(parts)
        assert decomp.paths
        assert _ok(inst, solve_32_regular(inst)) == g.n_v // 2 + nu


def test_32_random_half_sets_respect_bound():
    # sampled sets T of size n/2 that admit an A-perfect matching
    from spm.matroid import TransversalMatroidOracle, random_dual_independent

    for seed in range(20):
        rng = random.Random(seed)
        inst = incidence_instance(helpers.deficient_cubic((2, 4, 4), seed), 3)
        nu = matching_number(build_auxiliary_graph(inst).graph)
        o = TransversalMatroidOracle(inst, cache_ranks=False)
        for _ in range(30):
            t = random_dual_independent(o, rng, keep=1.0)
            assert len(t) == inst.n_a // 2
            assert len(neighborhood(inst, t)) <= inst.n_a // 2 + nu
