"""Fixture instances and deliberately naive oracles.

The oracles here share no code with the library's matching routines: they
decide matchability by plain backtracking.
"""
from __future__ import annotations

from itertools import combinations

from spm.graph import BipartiteInstance, Multigraph


def one_based(n_a, n_b, edges):
    return BipartiteInstance.from_edges(n_a, n_b, [(a - 1, b - 1) for a, b in edges])


def fig_2ppm() -> BipartiteInstance:
    """Six goods, nine bidders; the optimum S = {b4, b6, b7} earns 6."""
    edges = [(i, i) for i in range(1, 7)] + [
        (6, 8), (4, 8), (6, 9), (3, 7), (5, 9), (2, 1), (6, 5),
        (3, 4), (5, 7), (4, 7), (2, 4), (1, 4), (2, 5),
    ]
    return one_based(6, 9, edges)


def fig_gprime() -> BipartiteInstance:
    """Three goods; b1, b2 on {a1, a2}, b3 on {a1, a3}, b4 on {a2, a3}."""
    return one_based(3, 4, [(1, 1), (2, 1), (1, 2), (2, 2), (1, 3), (3, 3), (2, 4), (3, 4)])


def fig_gprimeprime() -> BipartiteInstance:
    """A (4,2)-regular instance on three goods and six bidders."""
    pairs = {1: (1, 2), 2: (1, 2), 3: (1, 3), 4: (2, 3), 5: (1, 3), 6: (2, 3)}
    return one_based(3, 6, [(a, b) for b, ab in pairs.items() for a in ab])


def complete(n_a, n_b) -> BipartiteInstance:
    return BipartiteInstance.from_edges(n_a, n_b, [(a, b) for a in range(n_a) for b in range(n_b)])


def star(n_a) -> BipartiteInstance:
    """Bidder 0 bids on every good; bidder a+1 bids only on good a."""
    edges = [(a, 0) for a in range(n_a)] + [(a, a + 1) for a in range(n_a)]
    return BipartiteInstance.from_edges(n_a, n_a + 1, edges)


def naive_matchable(inst: BipartiteInstance, goods, allowed) -> bool:
    """Can every good in ``goods`` get a distinct allowed bidder? (backtracking)"""
    goods = sorted(goods, key=lambda a: len(inst.adj_a[a]))
    used = set()

    def go(i):
        if i == len(goods):
            return True
        for b in inst.adj_a[goods[i]]:
            if b in allowed and b not in used:
                used.add(b)
                if go(i + 1):
                    return True
                used.discard(b)
        return False

    return go(0)


def cover_size(inst, s, goods=None):
    covered = set()
    for b in s:
        covered.update(inst.adj_b[b])
    if goods is not None:
        covered &= set(goods)
    return len(covered)


def naive_feasible_2ppm(inst, s) -> bool:
    allowed = set(range(inst.n_b)) - set(s)
    return naive_matchable(inst, range(inst.n_a), allowed)


def naive_opt_2ppm(inst) -> int:
    best = -1
    for r in range(inst.n_b + 1):
        for s in combinations(range(inst.n_b), r):
            if naive_feasible_2ppm(inst, s):
                best = max(best, cover_size(inst, s))
    return best


def naive_opt_2pm(inst) -> int:
    """Maximise over every S and every W matchable into B minus S."""
    best = 0
    for r in range(inst.n_b + 1):
        for s in combinations(range(inst.n_b), r):
            allowed = set(range(inst.n_b)) - set(s)
            for k in range(inst.n_a + 1):
                for w in combinations(range(inst.n_a), k):
                    if naive_matchable(inst, w, allowed):
                        best = max(best, cover_size(inst, s, w))
    return best


def naive_matching_number(g: Multigraph) -> int:
    """Largest set of pairwise vertex-disjoint edges, by enumeration."""
    edges = sorted({(min(u, v), max(u, v)) for u, v in g.edges})
    for k in range(g.n_v // 2, 0, -1):
        for pick in combinations(edges, k):
            ends = [x for e in pick for x in e]
            if len(set(ends)) == len(ends):
                return k
    return 0


def _multiplicity(g: Multigraph):
    mult = [[0] * g.n_v for _ in range(g.n_v)]
    for u, v in g.edges:
        mult[u][v] += 1
        mult[v][u] += 1
    return mult


def isomorphic(g: Multigraph, h: Multigraph) -> bool:
    """Exact multigraph isomorphism by degree-pruned backtracking."""
    if g.n_v != h.n_v or g.n_e != h.n_e:
        return False
    if sorted(g.degrees()) != sorted(h.degrees()):
        return False
    mg, mh = _multiplicity(g), _multiplicity(h)
    dg, dh = g.degrees(), h.degrees()
    n = g.n_v
    image = [-1] * n
    taken = [False] * n

    def go(v):
        if v == n:
            return True
        for w in range(n):
            if taken[w] or dg[v] != dh[w]:
                continue
            if all(mg[v][u] == mh[w][image[u]] for u in range(v)):
                image[v] = w
                taken[w] = True
                if go(v + 1):
                    return True
                taken[w] = False
        image[v] = -1
        return False

    return go(0)


def relabel(g: Multigraph, perm) -> Multigraph:
    return Multigraph.from_edges(g.n_v, [(perm[u], perm[v]) for u, v in g.edges])




def shuffled(g: Multigraph, rng) -> Multigraph:
    """Random vertex relabeling and edge order."""
    perm = list(range(g.n_v))
    rng.shuffle(perm)
    edges = [(perm[u], perm[v]) for u, v in g.edges]
    rng.shuffle(edges)
    return Multigraph.from_edges(g.n_v, edges)


def deficient_cubic(blob_sizes, seed) -> Multigraph:
    """Cubic multigraph without a perfect matching.

    A center is joined to three odd blobs. Each blob is a random cubic
    multigraph on an even number of vertices with one edge xy subdivided by a
    new vertex z, and z is joined to the center. Removing the center leaves
    three odd components, so nu = |V|/2 - 1.
    """
    import random

    from spm.reductions import gen_regular_multigraph

    rng = random.Random(seed)
    assert len(blob_sizes) == 3
    edges = []
    n = 1
    for size in blob_sizes:
        base = gen_regular_multigraph(size, 3, rng.randrange(10**9))
        cut = rng.randrange(base.n_e)
        x, y = base.edges[cut]
        z = n + size
        edges += [(n + u, n + v) for i, (u, v) in enumerate(base.edges) if i != cut]
        edges += [(n + x, z), (n + y, z), (0, z)]
        n = z + 1
    return shuffled(Multigraph.from_edges(n, edges), rng)
