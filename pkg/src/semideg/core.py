"""Immutable small digraphs with bit-packed adjacency rows.

A digraph on p vertices (2 <= p <= 16) is stored as a tuple of p integers;
bit j of ``rows[i]`` is set iff the arc i->j exists.  Loops are forbidden.
All operations are pure, so values can be shared freely between workers.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

MAX_ORDER = 16
ISO_MAX_ORDER = 10


class DigraphError(ValueError):
    """Invalid digraph construction or malformed serialized form."""


class UnsupportedSizeError(DigraphError):
    """Operation not supported at this order."""


def _bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of mask, ascending."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Digraph:
    order: int
    rows: tuple  # rows[i] bit j == arc i->j

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_arcs(order: int, arcs: Iterable) -> "Digraph":
        if not 2 <= order <= MAX_ORDER:
            raise DigraphError("order must be in [2, %d], got %r" % (MAX_ORDER, order))
        rows = [0] * order
        for arc in arcs:
            i, j = arc
            if not (0 <= i < order and 0 <= j < order):
                raise DigraphError("arc (%r, %r) out of range for order %d" % (i, j, order))
            if i == j:
                raise DigraphError("loop arc (%d, %d) rejected" % (i, j))
            rows[i] |= 1 << j
        return Digraph(order, tuple(rows))

    @staticmethod
    def from_mask(order: int, mask: int) -> "Digraph":
        """Build from a p*p-bit row-major mask; bit i*p+j is arc i->j."""
        rows = []
        full = (1 << order) - 1
        for i in range(order):
            row = (mask >> (i * order)) & full
            if row >> i & 1:
                raise DigraphError("diagonal bit set at vertex %d" % i)
            rows.append(row)
        return Digraph(order, tuple(rows))

    # -- basic queries --------------------------------------------------

    def has_arc(self, i: int, j: int) -> bool:
        self._check_vertex(i)
        self._check_vertex(j)
        return bool(self.rows[i] >> j & 1)

    def arcs(self):
        return [(i, j) for i in range(self.order) for j in _bits(self.rows[i])]

    @property
    def arc_count(self) -> int:
        return sum(_popcount(r) for r in self.rows)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < self.order:
            raise DigraphError("vertex %r out of range for order %d" % (v, self.order))

    def in_row(self, v: int) -> int:
        """Bitmask of in-neighbours of v."""
        self._check_vertex(v)
        acc = 0
        for i in range(self.order):
            acc |= (self.rows[i] >> v & 1) << i
        return acc

    def mask(self) -> int:
        """Row-major p*p-bit adjacency mask (inverse of from_mask)."""
        acc = 0
        for i in range(self.order):
            acc |= self.rows[i] << (i * self.order)
        return acc


@dataclass(frozen=True)
class VertexSeq:
    """A path or cycle witness: distinct vertices in traversal order."""

    vertices: tuple
    kind: str  # "path" or "cycle"

    def __post_init__(self):
        if self.kind not in ("path", "cycle"):
            raise DigraphError("kind must be 'path' or 'cycle'")
        if len(set(self.vertices)) != len(self.vertices):
            raise DigraphError("vertices must be distinct")
        if self.kind == "cycle" and len(self.vertices) < 2:
            raise DigraphError("a cycle needs at least 2 vertices")
        if self.kind == "path" and len(self.vertices) < 1:
            raise DigraphError("a path needs at least 1 vertex")

    def __len__(self) -> int:
        return len(self.vertices)

    def validate(self, d: Digraph) -> None:
        """Check every consecutive (and closing, for cycles) arc exists in d."""
        vs = self.vertices
        for v in vs:
            d._check_vertex(v)
        for a, b in zip(vs, vs[1:]):
            if not d.rows[a] >> b & 1:
                raise DigraphError("missing arc %d->%d" % (a, b))
        if self.kind == "cycle" and not d.rows[vs[-1]] >> vs[0] & 1:
            raise DigraphError("missing closing arc %d->%d" % (vs[-1], vs[0]))

    def to_json(self):
        return list(self.vertices)


# ---------------------------------------------------------------------------
# construction / degrees


def build(order: int, arcs: Iterable) -> Digraph:
    """Digraph with exactly the given arcs (duplicates collapse)."""
    return Digraph.from_arcs(order, arcs)


def out_degree(d: Digraph, v: int) -> int:
    d._check_vertex(v)
    return _popcount(d.rows[v])


def in_degree(d: Digraph, v: int) -> int:
    return _popcount(d.in_row(v))


def degree(d: Digraph, v: int) -> int:
    return out_degree(d, v) + in_degree(d, v)


def degree_toward(d: Digraph, v: int, s: Iterable) -> int:
    """d(v, S) = arcs v->S plus arcs S->v; v itself is ignored if in S."""
    d._check_vertex(v)
    smask = 0
    for u in s:
        d._check_vertex(u)
        smask |= 1 << u
    smask &= ~(1 << v)
    return _popcount(d.rows[v] & smask) + _popcount(d.in_row(v) & smask)


# ---------------------------------------------------------------------------
# converse / induced


def converse(d: Digraph) -> Digraph:
    rows = [0] * d.order
    for i in range(d.order):
        r = d.rows[i]
        for j in _bits(r):
            rows[j] |= 1 << i
    return Digraph(d.order, tuple(rows))


def induced(d: Digraph, s: Iterable):
    """Subdigraph induced by S, relabeled 0..|S|-1.

    Returns (subdigraph, mapping) where mapping[new_label] == old_label.
    """
    verts = sorted(set(s))
    if not verts:
        raise DigraphError("induced subdigraph needs a nonempty vertex set")
    for v in verts:
        d._check_vertex(v)
    pos = {v: i for i, v in enumerate(verts)}
    rows = [0] * len(verts)
    for v in verts:
        for w in _bits(d.rows[v]):
            if w in pos:
                rows[pos[v]] |= 1 << pos[w]
    if len(verts) == 1:
        # order-1 values are not representable; callers never need them
        raise DigraphError("induced subdigraph must have at least 2 vertices")
    return Digraph(len(verts), tuple(rows)), tuple(verts)


# ---------------------------------------------------------------------------
# reachability / strong components


def _closure(d: Digraph):
    """reach[i] = bitmask of vertices reachable from i by a nonempty path."""
    reach = list(d.rows)
    changed = True
    while changed:
        changed = False
        for i in range(d.order):
            acc = reach[i]
            for j in _bits(reach[i]):
                acc |= reach[j]
            if acc != reach[i]:
                reach[i] = acc
                changed = True
    return reach


def is_strong(d: Digraph) -> bool:
    full = (1 << d.order) - 1
    return all(reach | (1 << i) == full for i, reach in enumerate(_closure(d)))


def strong_components(d: Digraph):
    """Strong components in condensation topological order.

    Arcs between components only go from earlier to later entries in the
    returned list; each component is a sorted tuple of vertices.
    """
    reach = _closure(d)
    seen = 0
    comps = []
    for i in range(d.order):
        if seen >> i & 1:
            continue
        comp = 1 << i
        for j in _bits(reach[i]):
            if reach[j] >> i & 1:
                comp |= 1 << j
        seen |= comp
        comps.append(comp)
    # if comp(x) has an arc to comp(y) then x's reachable set strictly
    # contains y's, so sorting by descending |reach| is a topological order
    def key(comp):
        v = next(_bits(comp))
        return (-_popcount(reach[v] | comp), v)

    comps.sort(key=key)
    return [tuple(_bits(c)) for c in comps]


# ---------------------------------------------------------------------------
# isomorphism


def _degree_pairs(d: Digraph):
    return [( _popcount(d.rows[v]), _popcount(d.in_row(v))) for v in range(d.order)]


def isomorphism(d1: Digraph, d2: Digraph):
    """One arc-preserving bijection d1 -> d2 as a tuple, or None."""
    for m in _iso_iter(d1, d2):
        return m
    return None


def are_isomorphic(d1: Digraph, d2: Digraph) -> bool:
    return isomorphism(d1, d2) is not None


def automorphism_count(d: Digraph) -> int:
    return sum(1 for _ in _iso_iter(d, d))


def _iso_iter(d1: Digraph, d2: Digraph):
    """Yield every bijection mapping arcs of d1 onto arcs of d2 exactly."""
    if d1.order > ISO_MAX_ORDER or d2.order > ISO_MAX_ORDER:
        raise UnsupportedSizeError("isomorphism search capped at order %d" % ISO_MAX_ORDER)
    if d1.order != d2.order:
        return
    p = d1.order
    pairs1 = _degree_pairs(d1)
    pairs2 = _degree_pairs(d2)
    if sorted(pairs1) != sorted(pairs2):
        return
    cands = [[t for t in range(p) if pairs2[t] == pairs1[u]] for u in range(p)]
    # assign the most constrained source vertices first
    order = sorted(range(p), key=lambda u: len(cands[u]))
    in1 = [d1.in_row(v) for v in range(p)]
    in2 = [d2.in_row(v) for v in range(p)]
    mapping = [-1] * p
    used = [False] * p

    def rec(idx: int):
        if idx == p:
            yield tuple(mapping)
            return
        u = order[idx]
        for t in cands[u]:
            if used[t]:
                continue
            ok = True
            for v in order[:idx]:
                s = mapping[v]
                if (d1.rows[u] >> v & 1) != (d2.rows[t] >> s & 1) or (
                    in1[u] >> v & 1
                ) != (in2[t] >> s & 1):
                    ok = False
                    break
            if ok:
                mapping[u] = t
                used[t] = True
                yield from rec(idx + 1)
                used[t] = False
                mapping[u] = -1

    yield from rec(0)


def relabel(d: Digraph, perm: Sequence) -> Digraph:
    """Digraph with vertex v renamed perm[v]."""
    rows = [0] * d.order
    for i in range(d.order):
        for j in _bits(d.rows[i]):
            rows[perm[i]] |= 1 << perm[j]
    return Digraph(d.order, tuple(rows))


# ---------------------------------------------------------------------------
# serialization

_ENC_RE = re.compile(r"\AD(\d+):([0-9A-Fa-f]+)\Z")


def encode(d: Digraph) -> str:
    """ASCII form D<p>:<hex> of the row-major adjacency bits.

    Bit (i, j) sits at position i*p+j counted from the most significant
    end; the tail is zero-padded to a whole number of hex digits.
    """
    p = d.order
    nbits = p * p
    ndigits = (nbits + 3) // 4
    val = 0
    for i in range(p):
        for j in range(p):
            val = (val << 1) | (d.rows[i] >> j & 1)
    val <<= ndigits * 4 - nbits
    return "D%d:%0*X" % (p, ndigits, val)


def decode(text: str) -> Digraph:
    m = _ENC_RE.match(text.strip())
    if not m:
        raise DigraphError("malformed digraph literal: %r" % (text,))
    p = int(m.group(1))
    if not 2 <= p <= MAX_ORDER:
        raise DigraphError("order %d out of range in %r" % (p, text))
    hexpart = m.group(2)
    nbits = p * p
    ndigits = (nbits + 3) // 4
    if len(hexpart) != ndigits:
        raise DigraphError(
            "wrong length: order %d needs %d hex digits, got %d" % (p, ndigits, len(hexpart))
        )
    val = int(hexpart, 16)
    pad = ndigits * 4 - nbits
    if val & ((1 << pad) - 1):
        raise DigraphError("nonzero padding bits in %r" % (text,))
    val >>= pad
    rows = [0] * p
    for i in range(p):
        for j in range(p):
            bit = val >> (nbits - 1 - (i * p + j)) & 1
            if bit:
                if i == j:
                    raise DigraphError("diagonal bit set at vertex %d" % i)
                rows[i] |= 1 << j
    return Digraph(p, tuple(rows))


def to_json(d: Digraph) -> dict:
    return {"order": d.order, "arcs": sorted([i, j] for (i, j) in d.arcs())}


def from_json(obj: dict) -> Digraph:
    try:
        order = obj["order"]
        arcs = obj["arcs"]
    except (KeyError, TypeError):
        raise DigraphError("digraph JSON needs 'order' and 'arcs' fields")
    return Digraph.from_arcs(order, [tuple(a) for a in arcs])
