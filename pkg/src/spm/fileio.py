"""Text formats for instances, solutions, multigraphs and Max k-Cover inputs.

All indices are 1-based on disk and 0-based in memory. Lines starting with
``c`` are comments; blank lines are ignored.
"""
from __future__ import annotations

from typing import Dict, Iterator, List, Tuple

from .errors import InputError
from .graph import BipartiteInstance, Kind, Multigraph, Solution


def _lines(text: str) -> Iterator[Tuple[int, List[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        yield lineno, line.split()


def _ints(tokens: List[str], lineno: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise InputError(f"line {lineno}: expected integers, got {' '.join(tokens)!r}") from None


def _header(lines, tag: str, arity: int) -> List[int]:
    try:
        lineno, tok = next(lines)
    except StopIteration:
        raise InputError(f"missing 'p {tag}' header") from None
    if tok[:2] != ["p", tag] or len(tok) != 2 + arity:
        raise InputError(f"line {lineno}: expected 'p {tag}' header with {arity} fields")
    vals = _ints(tok[2:], lineno)
    if any(v < 0 for v in vals):
        raise InputError(f"line {lineno}: negative count in header")
    return vals


def parse_instance(text: str) -> BipartiteInstance:
    lines = _lines(text)
    n_a, n_b, n_edges = _header(lines, "spm", 3)
    edges = []
    seen = set()
    for lineno, tok in lines:
        if tok[0] != "e" or len(tok) != 3:
            raise InputError(f"line {lineno}: expected 'e <a> <b>'")
        a, b = _ints(tok[1:], lineno)
        if not (1 <= a <= n_a and 1 <= b <= n_b):
            raise InputError(f"line {lineno}: edge ({a}, {b}) out of range")
        if (a, b) in seen:
            raise InputError(f"line {lineno}: duplicate edge ({a}, {b})")
        seen.add((a, b))
        edges.append((a - 1, b - 1))
        if len(edges) > n_edges:
            raise InputError(f"line {lineno}: more than {n_edges} edge lines")
    if len(edges) != n_edges:
        raise InputError(f"header declares {n_edges} edges, found {len(edges)}")
    return BipartiteInstance.from_edges(n_a, n_b, edges)


def serialize_instance(inst: BipartiteInstance) -> str:
    out = [f"p spm {inst.n_a} {inst.n_b} {inst.n_edges}"]
    out.extend(f"e {a + 1} {b + 1}" for a, b in inst.edges)
    return "\n".join(out) + "\n"


def _index_line(tag: str, values) -> str:
    return " ".join([tag, *(str(v + 1) for v in values)])


def serialize_solution(sol: Solution) -> str:
    out = []
    if sol.strategy or sol.guarantee:
        out.append(f"c strategy={sol.strategy} guarantee={sol.guarantee}")
    out.append(f"s {sol.kind.value} {sol.profit}")
    out.append(_index_line("S", sol.s_set))
    out.append(_index_line("W", sol.w_set))
    out.extend(f"m {a + 1} {b + 1}" for a, b in sol.matching)
    return "\n".join(out) + "\n"


def _solution_meta(text: str) -> Dict[str, str]:
    for raw in text.splitlines():
        tok = raw.split()
        if tok and tok[0] == "c" and any(t.startswith("strategy=") for t in tok):
            return dict(t.split("=", 1) for t in tok[1:] if "=" in t)
    return {}


def parse_solution(text: str) -> Solution:
    meta = _solution_meta(text)
    lines = _lines(text)
    try:
        lineno, tok = next(lines)
    except StopIteration:
        raise InputError("missing 's' line") from None
    if tok[0] != "s" or len(tok) != 3:
        raise InputError(f"line {lineno}: expected 's <kind> <profit>'")
    try:
        kind = Kind(tok[1])
    except ValueError:
        raise InputError(f"line {lineno}: unknown kind {tok[1]!r}") from None
    (recorded,) = _ints(tok[2:], lineno)
    s_set: List[int] = []
    w_set: List[int] = []
    pairs = []
    seen_tags = set()
    for lineno, tok in lines:
        tag = tok[0]
        vals = [v - 1 for v in _ints(tok[1:], lineno)]
        if tag in ("S", "W"):
            if tag in seen_tags:
                raise InputError(f"line {lineno}: repeated '{tag}' line")
            seen_tags.add(tag)
            (s_set if tag == "S" else w_set).extend(vals)
        elif tag == "m" and len(vals) == 2:
            pairs.append((vals[0], vals[1]))
        else:
            raise InputError(f"line {lineno}: unrecognised solution line")
    return Solution(kind, tuple(s_set), tuple(w_set), tuple(pairs), recorded,
                    meta.get("strategy", ""), meta.get("guarantee", ""))


def parse_multigraph(text: str) -> Multigraph:
    lines = _lines(text)
    n_v, n_e = _header(lines, "mg", 2)
    edges = []
    for lineno, tok in lines:
        if tok[0] != "g" or len(tok) != 3:
            raise InputError(f"line {lineno}: expected 'g <u> <v>'")
        u, v = _ints(tok[1:], lineno)
        if not (1 <= u <= n_v and 1 <= v <= n_v):
            raise InputError(f"line {lineno}: edge ({u}, {v}) out of range")
        if u == v:
            raise InputError(f"line {lineno}: loop at vertex {u}")
        edges.append((u - 1, v - 1))
    if len(edges) != n_e:
        raise InputError(f"header declares {n_e} edges, found {len(edges)}")
    return Multigraph.from_edges(n_v, edges)


def serialize_multigraph(g: Multigraph) -> str:
    out = [f"p mg {g.n_v} {g.n_e}"]
    out.extend(f"g {u + 1} {v + 1}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def parse_max_k_cover(text: str) -> Tuple[int, List[Tuple[int, ...]], int]:
    """Return ``(universe_n, sets, k)`` from the ``p mkc`` format."""
    lines = _lines(text)
    n, m, k = _header(lines, "mkc", 3)
    sets: List[Tuple[int, ...]] = []
    for lineno, tok in lines:
        if tok[0] != "t":
            raise InputError(f"line {lineno}: expected 't <elements...>'")
        elems = _ints(tok[1:], lineno)
        if any(not 1 <= x <= n for x in elems):
            raise InputError(f"line {lineno}: element out of range [1, {n}]")
        if len(set(elems)) != len(elems):
            raise InputError(f"line {lineno}: repeated element")
        sets.append(tuple(sorted(x - 1 for x in elems)))
    if len(sets) != m:
        raise InputError(f"header declares {m} sets, found {len(sets)}")
    return n, sets, k


def serialize_max_k_cover(n: int, sets, k: int) -> str:
    out = [f"p mkc {n} {len(sets)} {k}"]
    out.extend(_index_line("t", s) for s in sets)
    return "\n".join(out) + "\n"
