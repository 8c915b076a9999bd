"""Exact solvers for (d,2)-regular instances built on the auxiliary multigraph.

When every bidder bids on exactly two goods, bidder ``b`` becomes an edge
``e_b`` between its two goods. A maximum matching of that multigraph picks the
bidders ``B'`` whose neighborhoods are pairwise disjoint and as many as
possible; both solvers start from ``B'`` and augment it.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from ..errors import PreconditionError
from ..graph import BipartiteInstance, Kind, Multigraph, Solution, make_solution, neighborhood
from ..matching import a_perfect_matching, hopcroft_karp, max_matching_general

Node = Tuple[str, int]  # ("a", good) or ("b", bidder)


@dataclass(frozen=True)
class AuxiliaryGraph:
    graph: Multigraph
    phi: Tuple[int, ...]  # edge id -> bidder


@dataclass(frozen=True)
class Decomposition32:
    """Cycles and leaf-to-leaf paths covering every good of ``H``.

    Cycles are closed node sequences starting at a good; paths run from one
    bidder leaf to another.
    """

    b_prime: Tuple[int, ...]
    cycles: Tuple[Tuple[Node, ...], ...]
    paths: Tuple[Tuple[Node, ...], ...]
    dropped_endpoints: Tuple[int, ...]


def build_auxiliary_graph(inst: BipartiteInstance) -> AuxiliaryGraph:
    for b, nbrs in enumerate(inst.adj_b):
        if len(nbrs) != 2:
            raise PreconditionError(f"bidder {b} has degree {len(nbrs)}, need 2")
    graph = Multigraph(inst.n_a, tuple((nbrs[0], nbrs[1]) for nbrs in inst.adj_b))
    return AuxiliaryGraph(graph, tuple(range(inst.n_b)))


def _require_biregular(inst: BipartiteInstance, d_pred, label: str) -> int:
    degs = inst.left_degrees()
    if len(degs) != 1 or not d_pred(next(iter(degs))):
        raise PreconditionError(f"goods must all have degree {label}, found degrees {sorted(degs)}")
    bad = [b for b in range(inst.n_b) if inst.deg_b(b) != 2]
    if bad:
        raise PreconditionError(f"bidder {bad[0]} has degree {inst.deg_b(bad[0])}, need 2")
    return next(iter(degs))


def _max_disjoint_bidders(inst: BipartiteInstance) -> Tuple[AuxiliaryGraph, Tuple[int, ...]]:
    aux = build_auxiliary_graph(inst)
    return aux, tuple(sorted(aux.phi[e] for e in max_matching_general(aux.graph)))


# -- d = 3 -------------------------------------------------------------------

def _find_cycle(adj: Dict[Node, set]) -> Optional[List[Node]]:
    """Some cycle of the graph as a node list, or None when it is a forest."""
    visited: set = set()
    for root in sorted(adj):
        if root in visited or not adj[root]:
            continue
        visited.add(root)
        stack: List[Node] = [root]
        parent: Dict[Node, Optional[Node]] = {root: None}
        iters = {root: iter(sorted(adj[root]))}
        on_stack = {root: 0}
        while stack:
            v = stack[-1]
            w = next(iters[v], None)
            if w is None:
                stack.pop()
                del on_stack[v]
                continue
            if w == parent[v]:
                continue
            if w in on_stack:
                return stack[on_stack[w]:]
            if w in visited:
                continue
            visited.add(w)
            parent[w] = v
            on_stack[w] = len(stack)
            stack.append(w)
            iters[w] = iter(sorted(adj[w]))
    return None


def _remove_node(adj: Dict[Node, set], v: Node) -> None:
    for w in adj.pop(v):
        adj[w].discard(v)


def _tree_path(adj: Dict[Node, set], src: Node, leaves: Sequence[Node]) -> List[Node]:
    """Path from ``src`` to the smallest other leaf in its tree."""
    parent = {src: None}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        for w in sorted(adj[v]):
            if w not in parent:
                parent[w] = v
                queue.append(w)
    target = min(x for x in leaves if x in parent and x != src)
    path = [target]
    while path[-1] != src:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def decompose_32(inst: BipartiteInstance, b_prime: Optional[Iterable[int]] = None):
    """Run the d=3 construction; returns ``(Decomposition32, matching, S, nu)``.

    The structural claims the construction relies on are asserted as it runs.
    """
    n = inst.n_a
    aux, bp = _max_disjoint_bidders(inst)
    if b_prime is not None:
        bp = tuple(sorted(b_prime))
    nu = len(bp)
    bp_set = set(bp)
    covered = set(neighborhood(inst, bp))
    assert len(covered) == 2 * nu, "B' must have pairwise disjoint neighborhoods"

    adj: Dict[Node, set] = {("a", a): set() for a in range(n)}
    for b in range(inst.n_b):
        if b in bp_set:
            continue
        adj[("b", b)] = {("a", a) for a in inst.adj_b[b]}
        for a in inst.adj_b[b]:
            adj[("a", a)].add(("b", b))
    h_adj = {v: set(ws) for v, ws in adj.items()}
    for a in range(n):
        assert len(h_adj[("a", a)]) == (2 if a in covered else 3)

    # edge-disjoint cycles; with degrees <= 3 on goods and 2 on bidders they
    # are automatically vertex-disjoint
    cycles: List[Tuple[Node, ...]] = []
    in_cycle: set = set()
    while True:
        cyc = _find_cycle(adj)
        if cyc is None:
            break
        assert not in_cycle.intersection(cyc), "cycles must be vertex-disjoint"
        in_cycle.update(cyc)
        for i, v in enumerate(cyc):
            w = cyc[(i + 1) % len(cyc)]
            adj[v].discard(w)
            adj[w].discard(v)
        k = min(i for i, v in enumerate(cyc) if v[0] == "a")
        cycles.append(tuple(cyc[k:] + cyc[:k]))

    # forest F: its leaves are degree-3 goods of A \ N(B') lying on a cycle
    for v in [v for v, ws in adj.items() if len(ws) == 1]:
        assert v[0] == "a" and v[1] not in covered and v in in_cycle
        _remove_node(adj, v)

    paths: List[Tuple[Node, ...]] = []
    dropped: List[int] = []
    on_path: set = set()
    while any(adj.values()):
        leaves = sorted(v for v, ws in adj.items() if len(ws) == 1)
        for leaf in leaves:
            assert leaf[0] == "b", "leaves of the pruned forest are bidders"
            h_nbrs = [x[1] for x in h_adj[leaf]]
            assert sum(a not in covered for a in h_nbrs) == 1
            assert next(iter(adj[leaf]))[1] in covered
        path = _tree_path(adj, leaves[0], leaves)
        before = {v: len(ws) for v, ws in adj.items() if v[0] == "a" and v not in path}
        for v in path:
            _remove_node(adj, v)
        for v, deg in before.items():
            assert len(adj[v]) == deg, "removing a path must not change good degrees"
        on_path.update(path)
        paths.append(tuple(path))
        dropped.append(min(path[0][1], path[-1][1]))

    for a in range(n):
        assert (("a", a) in in_cycle) != (("a", a) in on_path), f"good {a} not covered exactly once"

    pairs: List[Tuple[int, int]] = []
    for cyc in cycles:
        a0 = min(cyc[i] for i in range(0, len(cyc), 2))
        i0 = cyc.index(a0)
        seq = list(cyc[i0:] + cyc[:i0])
        if seq[-1][1] < seq[1][1]:
            seq = [seq[0]] + seq[:0:-1]
        pairs.extend((seq[i][1], seq[i + 1][1]) for i in range(0, len(seq), 2))
    for path, drop in zip(paths, dropped):
        seq = list(path) if path[0][1] == drop else list(reversed(path))
        pairs.extend((seq[i + 1][1], seq[i + 2][1]) for i in range(0, len(seq) - 1, 2))

    matched_b = {b for _, b in pairs}
    s = sorted(bp_set | {b for b in range(inst.n_b) if b not in bp_set and b not in matched_b})
    extra = [b for b in s if b not in bp_set]
    for a in range(n):
        if a not in covered:
            assert sum(a in inst.adj_b[b] for b in extra) <= 1, (
                f"good {a} has two neighbors in S outside B'"
            )
    decomposition = Decomposition32(bp, tuple(cycles), tuple(paths), tuple(dropped))
    return decomposition, tuple(sorted(pairs)), tuple(s), nu


def solve_32_regular(inst: BipartiteInstance, kind: Kind = Kind.TWO_PPM) -> Solution:
    """Optimal 2PPM solution of a (3,2)-regular instance, profit ``n_a/2 + nu(G')``.

    For 2PM the same solution is returned with ``W = A``; it is within 9/10 of
    the 2PM optimum.
    """
    _require_biregular(inst, lambda d: d == 3, "3")
    _, pairs, s, nu = decompose_32(inst)
    sol = make_solution(inst, kind, s, pairs, w_set=range(inst.n_a))
    assert sol.profit == inst.n_a // 2 + nu
    guarantee = "exact" if kind is Kind.TWO_PPM else "9/10"
    return Solution(sol.kind, sol.s_set, sol.w_set, sol.matching, sol.profit, "32regular", guarantee)


# -- d >= 4 ------------------------------------------------------------------

def solve_d2_regular_d4(
    inst: BipartiteInstance,
    kind: Kind = Kind.TWO_PPM,
    b_prime: Optional[Iterable[int]] = None,
) -> Solution:
    """Solution covering all of A for a (d,2)-regular instance with d >= 4.

    ``b_prime`` overrides the maximum matching of the auxiliary graph; it must
    itself correspond to a maximum matching.
    """
    _require_biregular(inst, lambda d: d >= 4, ">= 4")
    aux, bp = _max_disjoint_bidders(inst)
    if b_prime is not None:
        given = tuple(sorted(set(b_prime)))
        if len(given) != len(bp) or len(neighborhood(inst, given)) != 2 * len(given):
            raise PreconditionError("b_prime is not a maximum matching of the auxiliary graph")
        bp = given
    bp_set = set(bp)
    covered = set(neighborhood(inst, bp))
    free = [a for a in range(inst.n_a) if a not in covered]

    # each remaining bidder sees at most one uncovered good, else B' was not maximum
    for b in range(inst.n_b):
        if b not in bp_set:
            assert sum(a not in covered for a in inst.adj_b[b]) <= 1

    # bipartite graph between uncovered and covered goods, one edge per shared bidder
    rep: Dict[Tuple[int, int], int] = {}
    g2: Dict[int, List[int]] = {a: [] for a in free}
    for b in range(inst.n_b):
        if b in bp_set:
            continue
        x, y = inst.adj_b[b]
        if (x in covered) == (y in covered):
            continue
        fa, ca = (x, y) if y in covered else (y, x)
        if (fa, ca) not in rep:
            rep[(fa, ca)] = b
            g2[fa].append(ca)
    mate = hopcroft_karp(free, g2)
    assert len(mate) == len(free), "Hall's condition must give a perfect matching of uncovered goods"

    s = sorted(bp_set | {rep[(fa, ca)] for fa, ca in mate.items()})
    pairs = a_perfect_matching(inst, s)
    assert pairs is not None
    sol = make_solution(inst, kind, s, pairs, w_set=range(inst.n_a))
    assert sol.profit == inst.n_a and len(s) <= inst.n_b - inst.n_a
    return Solution(sol.kind, sol.s_set, sol.w_set, sol.matching, sol.profit, "d2regular", "exact")
