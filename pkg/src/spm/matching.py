"""Maximum matchings: Edmonds' blossom algorithm for general multigraphs,
Hopcroft-Karp for bipartite graphs, and an exhaustive Tutte-Berge evaluator
used as an independent oracle in tests.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .errors import SizeGuardError
from .graph import BipartiteInstance, Multigraph, Pair

TUTTE_BERGE_MAX_VERTICES = 16


@dataclass(frozen=True)
class TutteBergeWitness:
    value: int
    witness_u: Tuple[int, ...]
    odd_components: int


def _edmonds(n: int, adj: Sequence[Sequence[int]]) -> list[int]:
    """Maximum cardinality matching of a simple graph; returns the mate array."""
    match = [-1] * n
    parent = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_path(root: int) -> int:
        used = [False] * n
        for i in range(n):
            parent[i] = -1
            base[i] = i
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to)
                    blossom = [False] * n
                    mark_path(v, cur, to, blossom)
                    mark_path(to, cur, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to
                    used[match[to]] = True
                    queue.append(match[to])
        return -1

    # greedy warm start keeps the number of phases small
    for v in range(n):
        if match[v] == -1:
            for to in adj[v]:
                if match[to] == -1:
                    match[v], match[to] = to, v
                    break
    for root in range(n):
        if match[root] != -1:
            continue
        v = find_path(root)
        while v != -1:
            pv = parent[v]
            nxt = match[pv]
            match[v], match[pv] = pv, v
            v = nxt
    return match


def max_matching_general(g: Multigraph) -> Tuple[int, ...]:
    """Edge ids of a maximum matching of ``g``, sorted ascending.

    Parallel edges are collapsed before the search; each matched pair is
    reported by the smallest edge id joining it.
    """
    rep: Dict[Pair, int] = {}
    for eid, (u, v) in enumerate(g.edges):
        key = (min(u, v), max(u, v))
        if key not in rep:
            rep[key] = eid
    adj: list[list[int]] = [[] for _ in range(g.n_v)]
    for u, v in rep:
        adj[u].append(v)
        adj[v].append(u)
    for x in adj:
        x.sort()
    mate = _edmonds(g.n_v, adj)
    return tuple(sorted(rep[(v, mate[v])] for v in range(g.n_v) if mate[v] > v))


def matching_number(g: Multigraph) -> int:
    return len(max_matching_general(g))


def hopcroft_karp(
    left: Iterable[int],
    adj: Mapping[int, Sequence[int]] | Sequence[Sequence[int]],
    allowed_right=None,
    initial: Optional[Mapping[int, int]] = None,
) -> Dict[int, int]:
    """Maximum bipartite matching from ``left`` into the right side.

    ``allowed_right`` (a container) restricts usable right vertices. An
    ``initial`` matching is extended, never shrunk: left vertices matched in
    it stay matched. Returns a ``left -> right`` dict.
    """
    left = list(left)
    mate_l: Dict[int, int] = dict(initial or {})
    mate_r: Dict[int, int] = {r: l for l, r in mate_l.items()}

    def nbrs(u: int):
        for r in adj[u]:
            if allowed_right is None or r in allowed_right:
                yield r

    inf = float("inf")
    while True:
        dist: Dict[int, float] = {}
        queue = deque()
        for u in left:
            if u not in mate_l:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = inf
        found = False
        while queue:
            u = queue.popleft()
            for r in nbrs(u):
                w = mate_r.get(r)
                if w is None:
                    found = True
                elif dist[w] == inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            break

        def dfs(u: int) -> bool:
            for r in nbrs(u):
                w = mate_r.get(r)
                if w is None or (dist[w] == dist[u] + 1 and dfs(w)):
                    mate_l[u] = r
                    mate_r[r] = u
                    return True
            dist[u] = inf
            return False

        for u in left:
            if u not in mate_l:
                dfs(u)
    return mate_l


def max_matching_bipartite(inst: BipartiteInstance, forbidden_b: Iterable[int] = ()) -> Tuple[Pair, ...]:
    """Maximum matching between A and ``B \\ forbidden_b`` as sorted ``(a, b)`` pairs."""
    forbidden = set(forbidden_b)
    allowed = [b for b in range(inst.n_b) if b not in forbidden]
    mate = hopcroft_karp(range(inst.n_a), inst.adj_a, set(allowed))
    return tuple(sorted(mate.items()))


def a_perfect_matching(inst: BipartiteInstance, forbidden_b: Iterable[int] = ()) -> Optional[Tuple[Pair, ...]]:
    """An A-saturating matching avoiding ``forbidden_b``, or ``None`` if none exists."""
    m = max_matching_bipartite(inst, forbidden_b)
    return m if len(m) == inst.n_a else None


def _odd_components(n: int, nbr_mask: Sequence[int], removed: int) -> int:
    remaining = ((1 << n) - 1) & ~removed
    odd = 0
    while remaining:
        low = remaining & -remaining
        comp = low
        frontier = low
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            grow = nbr_mask[bit.bit_length() - 1] & remaining & ~comp
            comp |= grow
            frontier |= grow
        remaining &= ~comp
        odd += bin(comp).count("1") & 1
    return odd


def tutte_berge_brute(g: Multigraph) -> TutteBergeWitness:
    """Minimise ``(|U| - odd(G - U) + |V|) / 2`` over all vertex subsets U."""
    n = g.n_v
    if n > TUTTE_BERGE_MAX_VERTICES:
        raise SizeGuardError(f"Tutte-Berge search needs n_v <= {TUTTE_BERGE_MAX_VERTICES}, got {n}")
    nbr_mask = [0] * n
    for u, v in g.edges:
        nbr_mask[u] |= 1 << v
        nbr_mask[v] |= 1 << u
    best = None
    for i in range(1 << n):
        u_mask = i ^ (i >> 1)
        size_u = bin(u_mask).count("1")
        odd = _odd_components(n, nbr_mask, u_mask)
        twice = size_u - odd + n
        if best is None or twice < best[0]:
            best = (twice, u_mask, odd)
    twice, u_mask, odd = best
    witness = tuple(v for v in range(n) if u_mask >> v & 1)
    return TutteBergeWitness(twice // 2, witness, odd)
