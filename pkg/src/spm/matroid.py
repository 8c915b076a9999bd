"""Transversal matroid of the bid graph and its dual.

A set of bidders is independent in the transversal matroid when some matching
saturates all of it. ``S`` is independent in the dual matroid when ``B \\ S``
still spans, i.e. an A-perfect matching avoids ``S``: exactly 2PPM feasibility.
"""
from __future__ import annotations

import random
import threading
from collections import deque
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import PreconditionError
from .graph import BipartiteInstance
from .matching import a_perfect_matching, hopcroft_karp


class TransversalMatroidOracle:
    """Independence queries over one instance. Safe to share between threads."""

    def __init__(self, instance: BipartiteInstance, cache_ranks: bool = True):
        self.instance = instance
        self._rank_cache: Optional[Dict[frozenset, int]] = {} if cache_ranks else None
        self._lock = threading.Lock()

    def rank(self, subset: Iterable[int]) -> int:
        key = frozenset(subset)
        if self._rank_cache is not None:
            with self._lock:
                hit = self._rank_cache.get(key)
            if hit is not None:
                return hit
        inst = self.instance
        r = len(hopcroft_karp(sorted(key), inst.adj_b))
        if self._rank_cache is not None:
            with self._lock:
                self._rank_cache[key] = r
        return r

    def is_independent(self, i_set: Iterable[int]) -> bool:
        i_set = set(i_set)
        return self.rank(i_set) == len(i_set)

    def is_dual_independent(self, s_set: Iterable[int]) -> bool:
        return a_perfect_matching(self.instance, s_set) is not None

    def dual_rank_full(self) -> int:
        """Size of every dual basis, ``n_b - rank(B)``."""
        return self.instance.n_b - self.rank(range(self.instance.n_b))


class DualGreedyState:
    """An A-perfect matching avoiding a growing dual-independent set ``S``.

    Testing ``S + b`` only needs to reroute the good currently held by ``b``,
    which is one alternating-path search instead of a full matching.
    """

    def __init__(self, instance: BipartiteInstance, start: Iterable[int] = ()):
        self.instance = instance
        self.s: set[int] = set(start)
        m = a_perfect_matching(instance, self.s)
        if m is None:
            raise PreconditionError("no A-perfect matching avoids the starting set")
        self.mate_a = {a: b for a, b in m}
        self.mate_b = {b: a for a, b in m}

    def _reroute(self, b: int) -> Optional[list[Tuple[int, int]]]:
        """Alternating path freeing ``b``: list of new ``(a, b')`` pairs, or None."""
        inst = self.instance
        start = self.mate_b[b]
        blocked = self.s | {b}
        prev: Dict[int, int] = {}  # bidder -> good that reached it
        seen_a = {start}
        queue = deque([start])
        while queue:
            a = queue.popleft()
            for nb in inst.adj_a[a]:
                if nb in blocked or nb in prev or self.mate_a.get(a) == nb:
                    continue
                prev[nb] = a
                holder = self.mate_b.get(nb)
                if holder is None:
                    path = []
                    cur = nb
                    while True:
                        ga = prev[cur]
                        path.append((ga, cur))
                        if ga == start:
                            return path
                        cur = self.mate_a[ga]
                if holder not in seen_a:
                    seen_a.add(holder)
                    queue.append(holder)
        return None

    def can_add(self, b: int) -> bool:
        if b in self.s:
            return True
        if b not in self.mate_b:
            return True
        return self._reroute(b) is not None

    def add(self, b: int) -> bool:
        """Add ``b`` to S if that keeps S dual-independent; report success."""
        if b in self.s:
            return True
        if b in self.mate_b:
            path = self._reroute(b)
            if path is None:
                return False
            del self.mate_b[b]
            for a, nb in path:
                self.mate_a[a] = nb
                self.mate_b[nb] = a
        self.s.add(b)
        return True

    def matching(self) -> Tuple[Tuple[int, int], ...]:
        return tuple(sorted(self.mate_a.items()))


def max_weight_dual_independent(
    oracle: TransversalMatroidOracle, weights: Sequence[int]
) -> Tuple[int, ...]:
    """Matroid greedy: scan bidders by decreasing weight (ties ascending index)."""
    inst = oracle.instance
    if len(weights) != inst.n_b:
        raise ValueError("need one weight per bidder")
    if any(w < 0 for w in weights):
        raise ValueError("weights must be nonnegative")
    state = DualGreedyState(inst)
    for b in sorted(range(inst.n_b), key=lambda x: (-weights[x], x)):
        state.add(b)
    return tuple(sorted(state.s))


def random_dual_independent(
    oracle: TransversalMatroidOracle, rng: random.Random, keep: float = 0.5
) -> Tuple[int, ...]:
    """Random dual-independent set: shuffled scan, each feasible bidder kept with prob ``keep``."""
    inst = oracle.instance
    state = DualGreedyState(inst)
    order = list(range(inst.n_b))
    rng.shuffle(order)
    for b in order:
        if rng.random() < keep:
            state.add(b)
    return tuple(sorted(state.s))
