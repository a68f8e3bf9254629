"""Cycle and path search plus the constructive path/cycle operations:
vertex insertion into a path, cycle expansion to all shorter lengths,
and the prefix/suffix neighbourhood profile of a vertex against a path."""

from __future__ import annotations

from typing import Dict, Optional

from .core import (
    Digraph,
    DigraphError,
    VertexSeq,
    _bits,
    _popcount,
    induced,
    strong_components,
)
from .conditions import semi_threshold  # noqa: F401  (re-exported convenience)


class PreconditionError(DigraphError):
    """A lemma-style operation was called outside its stated hypothesis."""


class SearchConsistencyError(RuntimeError):
    """Exhaustive search failed where a verified guarantee promised success.

    Raised instead of returning a soft failure: it means either the library
    is broken or a counterexample to a proved statement was found.
    """


def find_cycle(d: Digraph, k: int) -> Optional[VertexSeq]:
    """A directed cycle on exactly k distinct vertices, or None.

    Complete backtracking search.  Any cycle lies inside one strong
    component, so the search runs per component; within a component the
    anchor is the smallest vertex on the cycle, which kills rotational
    duplicates without losing completeness.
    """
    if not 2 <= k <= d.order:
        raise DigraphError("cycle length %r out of range [2, %d]" % (k, d.order))
    for comp in strong_components(d):
        if len(comp) < k:
            continue
        compmask = 0
        for v in comp:
            compmask |= 1 << v
        found = _cycle_in_mask(d, compmask, k)
        if found is not None:
            return found
    return None


def _cycle_in_mask(d: Digraph, allowed: int, k: int) -> Optional[VertexSeq]:
    rows = d.rows
    path = []

    for anchor in _bits(allowed):
        # only vertices above the anchor may appear later on the cycle
        sub = allowed & ~((2 << anchor) - 1)
        if _popcount(sub) < k - 1:
            break
        path.append(anchor)

        def rec(v: int, visited: int, depth: int) -> bool:
            if depth == k:
                return bool(rows[v] >> anchor & 1)
            for w in _bits(rows[v] & sub & ~visited):
                path.append(w)
                if rec(w, visited | 1 << w, depth + 1):
                    return True
                path.pop()
            return False

        if rec(anchor, 0, 1):
            return VertexSeq(tuple(path), "cycle")
        path.pop()
    return None


def is_hamiltonian(d: Digraph) -> bool:
    return hamiltonian_cycle(d) is not None


def hamiltonian_cycle(d: Digraph) -> Optional[VertexSeq]:
    """A Hamiltonian cycle witness, or None.

    Fast paths: a vertex with empty out- or in-neighbourhood, or a
    disconnected condensation, rules the cycle out before any search.
    """
    if any(r == 0 for r in d.rows):
        return None
    if any(d.in_row(v) == 0 for v in range(d.order)):
        return None
    if len(strong_components(d)) > 1:
        return None
    return find_cycle(d, d.order)


def cycle_spectrum(d: Digraph):
    """{k in [2, p] : d has a cycle of length k}."""
    return {k for k in range(2, d.order + 1) if find_cycle(d, k) is not None}


def is_pancyclic(d: Digraph) -> bool:
    """Cycles of every length 3..p (2-cycles show up in the spectrum only)."""
    return all(find_cycle(d, k) is not None for k in range(3, d.order + 1))


def longest_cycle(d: Digraph) -> Optional[VertexSeq]:
    comps = strong_components(d)
    top = max(len(c) for c in comps)
    for k in range(min(d.order, top), 1, -1):
        w = find_cycle(d, k)
        if w is not None:
            return w
    return None


# ---------------------------------------------------------------------------
# path/cycle constructions


def _check_off_path(d: Digraph, seq: VertexSeq, x: int) -> None:
    d._check_vertex(x)
    if x in seq.vertices:
        raise DigraphError("vertex %d lies on the given %s" % (x, seq.kind))
    seq.validate(d)


def insert_vertex(d: Digraph, path: VertexSeq, x: int) -> Optional[int]:
    """Smallest 1-based i with arcs x_i->x and x->x_{i+1}, or None."""
    if path.kind != "path" or len(path) < 2:
        raise DigraphError("insert_vertex needs a path of at least 2 vertices")
    _check_off_path(d, path, x)
    vs = path.vertices
    for i in range(len(vs) - 1):
        if d.rows[vs[i]] >> x & 1 and d.rows[x] >> vs[i + 1] & 1:
            return i + 1
    return None


def expand_cycle(d: Digraph, cycle: VertexSeq, x: int) -> Dict[int, VertexSeq]:
    """Witness cycles of every length 2..m+1 inside V(C) union {x}.

    Requires d(x, V(C)) >= m+1 where m = |C|; under that hypothesis the
    witnesses always exist, so a failed search aborts loudly.
    """
    if cycle.kind != "cycle":
        raise DigraphError("expand_cycle needs a cycle witness")
    _check_off_path(d, cycle, x)
    m = len(cycle)
    cmask = 0
    for v in cycle.vertices:
        cmask |= 1 << v
    deg = _popcount(d.rows[x] & cmask) + _popcount(d.in_row(x) & cmask)
    if deg < m + 1:
        raise PreconditionError(
            "expand_cycle needs d(x, V(C)) >= %d, got %d" % (m + 1, deg)
        )
    sub, mapping = induced(d, set(cycle.vertices) | {x})
    out = {}
    for k in range(2, m + 2):
        w = find_cycle(sub, k)
        if w is None:
            raise SearchConsistencyError(
                "no cycle of length %d on V(C)+{x} despite d(x,C) >= m+1" % k
            )
        out[k] = VertexSeq(tuple(mapping[v] for v in w.vertices), "cycle")
        out[k].validate(d)
    return out


def neighborhood_profile(d: Digraph, path: VertexSeq, x: int) -> Optional[int]:
    """The l with O(x, V(P)) = {x_1..x_l} and I(x, V(P)) = {x_l..x_m}.

    None if the out-neighbourhood is not exactly a prefix meeting the
    in-neighbourhood exactly in the suffix starting at the same index.
    """
    if path.kind != "path" or len(path) < 1:
        raise DigraphError("neighborhood_profile needs a path")
    _check_off_path(d, path, x)
    vs = path.vertices
    m = len(vs)
    inrow = d.in_row(x)
    out_idx = [i for i, v in enumerate(vs) if d.rows[x] >> v & 1]
    in_idx = [i for i, v in enumerate(vs) if inrow >> v & 1]
    if not out_idx:
        return None
    l = len(out_idx)
    if out_idx != list(range(l)):
        return None
    if in_idx != list(range(l - 1, m)):
        return None
    return l
