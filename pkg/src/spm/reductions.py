"""Instance generators with certifiable optima.

Includes the Vertex-Cover and Max k-Cover gadgets, incidence lifts of regular
multigraphs, the 10-vertex tight example and random generators used in tests
and benchmarks.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import InputError, PreconditionError, SizeGuardError
from .graph import BipartiteInstance, Kind, Multigraph, Solution, make_solution, validate_solution
from .matching import a_perfect_matching
from .matroid import TransversalMatroidOracle, random_dual_independent
from .solvers.brute import MAX_2PPM_CANDIDATES, solve_brute_2ppm

BRUTE_MAX_VERTICES = 24
BRUTE_MAX_SETS = 24
GENERATOR_RETRIES = 100


# -- named source graphs -----------------------------------------------------

def complete_graph(n: int) -> Multigraph:
    return Multigraph.from_edges(n, combinations(range(n), 2))


def k33() -> Multigraph:
    return Multigraph.from_edges(6, [(u, v) for u in range(3) for v in range(3, 6)])


def prism() -> Multigraph:
    return Multigraph.from_edges(
        6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)]
    )


def petersen() -> Multigraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Multigraph.from_edges(10, outer + spokes + inner)


NAMED_SOURCES = {"k4": lambda: complete_graph(4), "k33": k33, "prism": prism, "petersen": petersen}


def gen_tight_example(copies: int = 1) -> Multigraph:
    """Disjoint copies of the 10-vertex 3-regular multigraph with matching number 4.

    A center joined to three hubs; each hub is joined to a pair of vertices
    that are linked by a double edge.
    """
    if copies < 1:
        raise InputError("copies must be >= 1")
    one = [(0, 1), (0, 2), (0, 3)]
    for hub, (x, y) in zip((1, 2, 3), ((4, 5), (6, 7), (8, 9))):
        one += [(hub, x), (hub, y), (x, y), (x, y)]
    edges = [(u + 10 * c, v + 10 * c) for c in range(copies) for u, v in one]
    return Multigraph.from_edges(10 * copies, edges)


# -- random generators -------------------------------------------------------

def gen_regular_multigraph(n_v: int, d: int, seed: int) -> Multigraph:
    """Configuration-model d-regular multigraph; loops rejected, parallels kept."""
    if n_v * d % 2:
        raise InputError("n_v * d must be even")
    if n_v < 2 and d > 0:
        raise InputError("need at least two vertices")
    rng = random.Random(seed)
    stubs = [v for v in range(n_v) for _ in range(d)]
    for _ in range(GENERATOR_RETRIES):
        rng.shuffle(stubs)
        pairs = list(zip(stubs[::2], stubs[1::2]))
        if all(u != v for u, v in pairs):
            return Multigraph.from_edges(n_v, pairs)
    raise PreconditionError(f"no loop-free pairing after {GENERATOR_RETRIES} attempts")


def gen_biregular(n_a: int, d: int, seed: int) -> BipartiteInstance:
    """Random (d,2)-regular instance: each bidder pairs two stubs of distinct goods."""
    return incidence_instance(gen_regular_multigraph(n_a, d, seed), d)


def gen_random_instance(
    n_a: int, n_b: int, p: float, seed: int, require_perfect: bool = True
) -> BipartiteInstance:
    """Erdos-Renyi bid graph, resampled until it admits an A-perfect matching."""
    rng = random.Random(seed)
    for _ in range(GENERATOR_RETRIES):
        edges = [(a, b) for a in range(n_a) for b in range(n_b) if rng.random() < p]
        inst = BipartiteInstance.from_edges(n_a, n_b, edges)
        if not require_perfect or a_perfect_matching(inst) is not None:
            return inst
    raise PreconditionError(f"no instance with an A-perfect matching after {GENERATOR_RETRIES} tries")


def gen_left_regular(n_a: int, n_b: int, d: int, seed: int) -> BipartiteInstance:
    """Every good bids-for by exactly ``d`` random bidders; A-perfect matching guaranteed."""
    if d > n_b:
        raise InputError("d cannot exceed n_b")
    rng = random.Random(seed)
    for _ in range(GENERATOR_RETRIES):
        edges = [(a, b) for a in range(n_a) for b in rng.sample(range(n_b), d)]
        inst = BipartiteInstance.from_edges(n_a, n_b, edges)
        if a_perfect_matching(inst) is not None:
            return inst
    raise PreconditionError(f"no instance with an A-perfect matching after {GENERATOR_RETRIES} tries")


def random_feasible_solution(inst: BipartiteInstance, rng: random.Random) -> Solution:
    """Random 2PPM solution: random dual-independent S with some A-perfect matching."""
    oracle = TransversalMatroidOracle(inst, cache_ranks=False)
    s = random_dual_independent(oracle, rng, keep=rng.random())
    return make_solution(inst, Kind.TWO_PPM, s, a_perfect_matching(inst, s))


# -- incidence lift ----------------------------------------------------------

def incidence_instance(h: Multigraph, d: int) -> BipartiteInstance:
    """Goods are the vertices of ``h`` and bidders its edges."""
    degs = h.degrees()
    bad = [v for v, x in enumerate(degs) if x != d]
    if bad:
        raise PreconditionError(f"vertex {bad[0]} has degree {degs[bad[0]]}, need {d}")
    return BipartiteInstance.from_edges(
        h.n_v, h.n_e, [(a, b) for b, (u, v) in enumerate(h.edges) for a in (u, v)]
    )


# -- exhaustive oracles ------------------------------------------------------

def brute_vertex_cover(g: Multigraph) -> Tuple[int, ...]:
    """A minimum vertex cover by enumeration in order of size."""
    if g.n_v > BRUTE_MAX_VERTICES:
        raise SizeGuardError(f"vertex cover brute force needs n_v <= {BRUTE_MAX_VERTICES}")
    edge_masks = [(1 << u) | (1 << v) for u, v in g.edges]
    for k in range(g.n_v + 1):
        for cover in combinations(range(g.n_v), k):
            mask = 0
            for v in cover:
                mask |= 1 << v
            if all(e & mask for e in edge_masks):
                return cover
    raise AssertionError("the full vertex set is always a cover")


def brute_max_k_cover(sets: Sequence[Iterable[int]], k: int) -> int:
    if len(sets) > BRUTE_MAX_SETS:
        raise SizeGuardError(f"max k-cover brute force needs m <= {BRUTE_MAX_SETS}")
    if not 0 <= k <= len(sets):
        raise InputError("need 0 <= k <= m")
    frozen = [frozenset(s) for s in sets]
    return max(len(frozenset().union(*pick)) for pick in combinations(frozen, k))


# -- vertex cover gadget -----------------------------------------------------

@dataclass(frozen=True)
class VcGadget:
    """Instance built from a 3-regular graph plus the index maps of its parts.

    Goods: ``a_e`` for each source edge, then ``a_v1, a_v2`` per vertex.
    Bidders: private ``b_e`` per edge, then ``b_v, b_v1, b_v2`` per vertex.
    """

    instance: BipartiteInstance
    source: Multigraph

    @property
    def m(self) -> int:
        return self.source.n_e

    def a_e(self, e: int) -> int:
        return e

    def b_e(self, e: int) -> int:
        return e

    def a_v1(self, v: int) -> int:
        return self.m + 2 * v

    def a_v2(self, v: int) -> int:
        return self.m + 2 * v + 1

    def b_v(self, v: int) -> int:
        return self.m + 3 * v

    def b_v1(self, v: int) -> int:
        return self.m + 3 * v + 1

    def b_v2(self, v: int) -> int:
        return self.m + 3 * v + 2


def vc_gadget(src: Multigraph) -> VcGadget:
    if not src.is_regular(3):
        raise PreconditionError("source graph must be 3-regular")
    if not src.is_simple():
        raise PreconditionError("source graph must be simple")
    n, m = src.n_v, src.n_e
    g = VcGadget(BipartiteInstance(0, 0, (), ()), src)
    edges = []
    for e, (u, v) in enumerate(src.edges):
        edges += [(g.a_e(e), g.b_e(e)), (g.a_e(e), g.b_v(u)), (g.a_e(e), g.b_v(v))]
    for v in range(n):
        edges += [
            (g.a_v1(v), g.b_v(v)),
            (g.a_v1(v), g.b_v1(v)),
            (g.a_v2(v), g.b_v1(v)),
            (g.a_v2(v), g.b_v2(v)),
        ]
    inst = BipartiteInstance.from_edges(m + 2 * n, m + 3 * n, edges)
    return VcGadget(inst, src)


def _uncovered_edge(src: Multigraph, cover: set) -> Optional[int]:
    for e, (u, v) in enumerate(src.edges):
        if u not in cover and v not in cover:
            return e
    return None


def construct_from_cover(g: VcGadget, cover: Iterable[int]) -> Solution:
    cover = set(cover)
    if any(not 0 <= v < g.source.n_v for v in cover):
        raise InputError("cover vertex out of range")
    e = _uncovered_edge(g.source, cover)
    if e is not None:
        raise InputError(f"not a vertex cover: edge {e} = {g.source.edges[e]} is uncovered")
    pairs = [(g.a_e(e), g.b_e(e)) for e in range(g.m)]
    for v in range(g.source.n_v):
        if v in cover:
            pairs += [(g.a_v1(v), g.b_v1(v)), (g.a_v2(v), g.b_v2(v))]
        else:
            pairs += [(g.a_v1(v), g.b_v(v)), (g.a_v2(v), g.b_v2(v))]
    used = {b for _, b in pairs}
    s = [b for b in range(g.instance.n_b) if b not in used]
    return make_solution(g.instance, Kind.TWO_PPM, s, pairs)


def extract_vertex_cover(g: VcGadget, sol: Solution) -> Tuple[Tuple[int, ...], Solution]:
    """Normalise a feasible solution into one encoding a vertex cover.

    Coverage never decreases. Returns the cover and the normalised solution,
    whose S is every unsaturated bidder.
    """
    if sol.kind is not Kind.TWO_PPM:
        raise InputError("expected a 2PPM solution")
    problem = validate_solution(g.instance, sol)
    if problem is not None:
        raise InputError(f"solution does not validate on this gadget: {problem}")
    n = g.source.n_v
    mate: Dict[int, int] = dict(sol.matching)

    for e in range(g.m):
        mate[g.a_e(e)] = g.b_e(e)
    for v in range(n):
        mate[g.a_v2(v)] = g.b_v2(v)

    def saturated(v: int) -> bool:
        return mate[g.a_v1(v)] == g.b_v(v)

    # edges are only ever unsaturated, so the second pass just confirms the fixpoint
    for passes in range(n + 1):
        changed = False
        for u, v in g.source.edges:
            if saturated(u) and saturated(v):
                mate[g.a_v1(min(u, v))] = g.b_v1(min(u, v))
                changed = True
        if not changed:
            break
    else:
        raise AssertionError("normalisation did not reach a fixpoint")

    used = set(mate.values())
    assert len(used) == len(mate), "normalised matching must stay a matching"
    s = [b for b in range(g.instance.n_b) if b not in used]
    sol2 = make_solution(g.instance, Kind.TWO_PPM, s, mate.items())
    cover = tuple(v for v in range(n) if not saturated(v))
    assert _uncovered_edge(g.source, set(cover)) is None
    assert len(cover) == 2 * n + g.m - sol2.profit
    return cover, sol2


@dataclass(frozen=True)
class IdentityReport:
    lhs: int
    rhs: int
    detail: Dict[str, int]
    passed: bool


def certify_vc_identity(g: VcGadget, limit: int = MAX_2PPM_CANDIDATES) -> IdentityReport:
    """Check ``OPT_2PPM + OPT_VC = 2n + m`` with both optima brute-forced."""
    opt = solve_brute_2ppm(g.instance, limit).profit
    vc = len(brute_vertex_cover(g.source))
    target = 2 * g.source.n_v + g.m
    return IdentityReport(
        opt + vc, target, {"opt_2ppm": opt, "opt_vc": vc, "n": g.source.n_v, "m": g.m},
        opt + vc == target,
    )


# -- max k-cover gadget ------------------------------------------------------

@dataclass(frozen=True)
class KcGadget:
    """Goods: N copies of the universe then ``m - k`` dummies.

    Bidders: a private bidder per copied element, then one per set.
    """

    instance: BipartiteInstance
    universe_n: int
    sets: Tuple[Tuple[int, ...], ...]
    k: int
    copies: int

    def element(self, copy: int, u: int) -> int:
        return copy * self.universe_n + u

    def private(self, copy: int, u: int) -> int:
        return copy * self.universe_n + u

    def dummy(self, t: int) -> int:
        return self.copies * self.universe_n + t

    def set_node(self, j: int) -> int:
        return self.copies * self.universe_n + j


def kcover_gadget(universe_n: int, sets: Sequence[Iterable[int]], k: int, copies: int) -> KcGadget:
    sets = tuple(tuple(sorted(set(s))) for s in sets)
    m = len(sets)
    if not 1 <= k <= m:
        raise InputError(f"need 1 <= k <= m = {m}, got k = {k}")
    if copies < 1:
        raise InputError("number of copies must be >= 1")
    for s in sets:
        if any(not 0 <= u < universe_n for u in s):
            raise InputError("set element out of range")
    g = KcGadget(BipartiteInstance(0, 0, (), ()), universe_n, sets, k, copies)
    edges = []
    for c in range(copies):
        for u in range(universe_n):
            edges.append((g.element(c, u), g.private(c, u)))
        for j, s in enumerate(sets):
            edges += [(g.element(c, u), g.set_node(j)) for u in s]
    for t in range(m - k):
        edges += [(g.dummy(t), g.set_node(j)) for j in range(m)]
    inst = BipartiteInstance.from_edges(copies * universe_n + m - k, copies * universe_n + m, edges)
    return KcGadget(inst, universe_n, sets, k, copies)


def certify_kcover_identity(g: KcGadget, limit: int = MAX_2PPM_CANDIDATES) -> IdentityReport:
    """Check ``OPT_2PPM = N * OPT_MC + (m - k)`` with both optima brute-forced."""
    m = len(g.sets)
    if comb(m, g.k) > limit:
        raise SizeGuardError("too many k-subsets")
    opt_mc = brute_max_k_cover(g.sets, g.k)
    opt = solve_brute_2ppm(g.instance, limit).profit
    rhs = g.copies * opt_mc + (m - g.k)
    return IdentityReport(
        opt, rhs, {"opt_2ppm": opt, "opt_mc": opt_mc, "N": g.copies, "m": m, "k": g.k}, opt == rhs
    )
