"""Graph types, neighborhoods, profit evaluation and solution validation."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Tuple

from .errors import InputError

Pair = Tuple[int, int]


class Kind(str, enum.Enum):
    TWO_PM = "2pm"
    TWO_PPM = "2ppm"


@dataclass(frozen=True)
class BipartiteInstance:
    """Bid graph with goods ``A = range(n_a)`` and bidders ``B = range(n_b)``.

    ``adj_a[a]`` lists the bidders of good ``a``; ``adj_b[b]`` the goods bidder
    ``b`` bids on. Both are sorted tuples. Use :meth:`from_edges` to build one.
    """

    n_a: int
    n_b: int
    adj_a: Tuple[Tuple[int, ...], ...]
    adj_b: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n_a < 0 or self.n_b < 0:
            raise InputError("vertex counts must be nonnegative")
        if len(self.adj_a) != self.n_a or len(self.adj_b) != self.n_b:
            raise InputError("adjacency length does not match vertex count")
        for a, nbrs in enumerate(self.adj_a):
            for i, b in enumerate(nbrs):
                if not 0 <= b < self.n_b:
                    raise InputError(f"good {a} has out-of-range bidder {b}")
                if i and nbrs[i - 1] >= b:
                    raise InputError(f"adjacency of good {a} is not strictly increasing")
        n_edges = 0
        for b, nbrs in enumerate(self.adj_b):
            for i, a in enumerate(nbrs):
                if not 0 <= a < self.n_a:
                    raise InputError(f"bidder {b} has out-of-range good {a}")
                if i and nbrs[i - 1] >= a:
                    raise InputError(f"adjacency of bidder {b} is not strictly increasing")
            n_edges += len(nbrs)
        if n_edges != sum(len(n) for n in self.adj_a):
            raise InputError("adjacency is not symmetric")
        for a, nbrs in enumerate(self.adj_a):
            for b in nbrs:
                if a not in self.adj_b[b]:
                    raise InputError(f"adjacency is not symmetric at ({a}, {b})")

    @classmethod
    def from_edges(cls, n_a: int, n_b: int, edges: Iterable[Pair]) -> "BipartiteInstance":
        """Build from ``(a, b)`` pairs (0-based). Duplicate pairs are rejected."""
        adj_a: list[list[int]] = [[] for _ in range(n_a)]
        adj_b: list[list[int]] = [[] for _ in range(n_b)]
        seen = set()
        for a, b in edges:
            if not (0 <= a < n_a and 0 <= b < n_b):
                raise InputError(f"edge ({a}, {b}) out of range for {n_a} goods, {n_b} bidders")
            if (a, b) in seen:
                raise InputError(f"duplicate edge ({a}, {b})")
            seen.add((a, b))
            adj_a[a].append(b)
            adj_b[b].append(a)
        return cls(
            n_a,
            n_b,
            tuple(tuple(sorted(x)) for x in adj_a),
            tuple(tuple(sorted(x)) for x in adj_b),
        )

    @property
    def edges(self) -> list[Pair]:
        return [(a, b) for a, nbrs in enumerate(self.adj_a) for b in nbrs]

    @property
    def n_edges(self) -> int:
        return sum(len(n) for n in self.adj_a)

    def deg_a(self, a: int) -> int:
        return len(self.adj_a[a])

    def deg_b(self, b: int) -> int:
        return len(self.adj_b[b])

    def left_degrees(self) -> set[int]:
        return {len(n) for n in self.adj_a}

    def right_degrees(self) -> set[int]:
        return {len(n) for n in self.adj_b}

    def is_biregular(self, d_left: int, d_right: int) -> bool:
        return all(len(n) == d_left for n in self.adj_a) and all(
            len(n) == d_right for n in self.adj_b
        )

    def has_edge(self, a: int, b: int) -> bool:
        return b in self.adj_a[a]


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph; the id of an edge is its position in ``edges``."""

    n_v: int
    edges: Tuple[Pair, ...]

    def __post_init__(self) -> None:
        for i, (u, v) in enumerate(self.edges):
            if not (0 <= u < self.n_v and 0 <= v < self.n_v):
                raise InputError(f"edge {i} = ({u}, {v}) out of range for {self.n_v} vertices")
            if u == v:
                raise InputError(f"edge {i} is a loop at vertex {u}")

    @classmethod
    def from_edges(cls, n_v: int, edges: Iterable[Pair]) -> "Multigraph":
        return cls(n_v, tuple((int(u), int(v)) for u, v in edges))

    @property
    def n_e(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n_v
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def is_regular(self, d: int) -> bool:
        return all(x == d for x in self.degrees())

    def is_simple(self) -> bool:
        keys = [(min(u, v), max(u, v)) for u, v in self.edges]
        return len(set(keys)) == len(keys)

    def neighbors(self) -> list[list[int]]:
        """Adjacency with multiplicity, sorted ascending."""
        adj: list[list[int]] = [[] for _ in range(self.n_v)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        for x in adj:
            x.sort()
        return adj

    def disjoint_union(self, other: "Multigraph") -> "Multigraph":
        shift = self.n_v
        return Multigraph(
            self.n_v + other.n_v,
            self.edges + tuple((u + shift, v + shift) for u, v in other.edges),
        )


@dataclass(frozen=True)
class Solution:
    """A 2PM/2PPM solution carrying its matching as a certificate.

    ``matching`` holds ``(a, b)`` pairs sorted by ``a``. ``strategy``,
    ``guarantee`` and ``certificate`` are report metadata and take no part in
    validation.
    """

    kind: Kind
    s_set: Tuple[int, ...]
    w_set: Tuple[int, ...]
    matching: Tuple[Pair, ...]
    profit: int
    strategy: str = field(default="", compare=False)
    guarantee: str = field(default="", compare=False)
    certificate: Optional[Fraction] = field(default=None, compare=False)


def _check_subset(values: Iterable[int], bound: int, what: str) -> None:
    for x in values:
        if not 0 <= x < bound:
            raise InputError(f"{what} index {x} out of range [0, {bound})")


def neighborhood(inst: BipartiteInstance, s: Iterable[int]) -> Tuple[int, ...]:
    """Sorted goods adjacent to at least one bidder of ``s``."""
    s = list(s)
    _check_subset(s, inst.n_b, "bidder")
    out: set[int] = set()
    for b in s:
        out.update(inst.adj_b[b])
    return tuple(sorted(out))


def make_solution(
    inst: BipartiteInstance,
    kind: Kind,
    s_set: Iterable[int],
    matching: Iterable[Pair],
    w_set: Optional[Iterable[int]] = None,
) -> Solution:
    """Assemble a Solution, deriving ``w_set`` from the matching when omitted.

    The profit is computed, not trusted; callers should still validate.
    """
    pairs = tuple(sorted((int(a), int(b)) for a, b in matching))
    s = tuple(sorted(set(s_set)))
    if w_set is None:
        w = tuple(range(inst.n_a)) if kind is Kind.TWO_PPM else tuple(a for a, _ in pairs)
    else:
        w = tuple(sorted(set(w_set)))
    covered = set(neighborhood(inst, s))
    return Solution(kind, s, w, pairs, sum(1 for a in w if a in covered))


def validate_solution(inst: BipartiteInstance, sol: Solution) -> Optional[str]:
    """Return ``None`` if ``sol`` is feasible for ``inst``, else the first violation."""
    if list(sol.s_set) != sorted(set(sol.s_set)):
        return "S not sorted/unique"
    if list(sol.w_set) != sorted(set(sol.w_set)):
        return "W not sorted/unique"
    if any(not 0 <= b < inst.n_b for b in sol.s_set):
        return "S index out of range"
    if any(not 0 <= a < inst.n_a for a in sol.w_set):
        return "W index out of range"
    mate_a: dict[int, int] = {}
    mate_b: dict[int, int] = {}
    for a, b in sol.matching:
        if not (0 <= a < inst.n_a and 0 <= b < inst.n_b):
            return f"matching pair ({a}, {b}) out of range"
        if not inst.has_edge(a, b):
            return f"matching pair ({a}, {b}) is not an edge"
        if a in mate_a or b in mate_b:
            return "matching endpoints not disjoint"
        mate_a[a] = b
        mate_b[b] = a
    s = set(sol.s_set)
    if any(b in s for b in mate_b):
        return "S meets matching"
    w = set(sol.w_set)
    if set(mate_a) != w:
        if not w <= set(mate_a):
            return "matching does not saturate W"
        return "matching touches goods outside W"
    if sol.kind is Kind.TWO_PPM:
        if len(w) != inst.n_a:
            return "not A-perfect"
        if len(s) > inst.n_b - inst.n_a:
            return "|S| exceeds n_b - n_a"
    covered = set(neighborhood(inst, sol.s_set))
    actual = sum(1 for a in sol.w_set if a in covered)
    if actual != sol.profit:
        return f"profit mismatch: recorded {sol.profit}, actual {actual}"
    return None


def profit(inst: BipartiteInstance, sol: Solution) -> int:
    """``|N(S) ∩ W|`` for a valid solution."""
    problem = validate_solution(inst, sol)
    if problem is not None:
        raise InputError(f"invalid solution: {problem}")
    covered = set(neighborhood(inst, sol.s_set))
    return sum(1 for a in sol.w_set if a in covered)


def coverage_masks(inst: BipartiteInstance) -> list[int]:
    """Bitmask of ``N(b)`` for each bidder, used by the exhaustive searches."""
    masks = []
    for nbrs in inst.adj_b:
        m = 0
        for a in nbrs:
            m |= 1 << a
        masks.append(m)
    return masks


def degree_bounds(inst: BipartiteInstance) -> Tuple[int, int]:
    """``(d_A, d_B)`` = (min good degree, max bidder degree)."""
    d_a = min((len(n) for n in inst.adj_a), default=0)
    d_b = max((len(n) for n in inst.adj_b), default=0)
    return d_a, d_b
