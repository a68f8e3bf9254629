"""Degree-condition predicates: the degree/semi-degree hypothesis, the
minimum-degree-p condition, and the Ore-type condition for strong digraphs."""

from __future__ import annotations

from dataclasses import dataclass, asdict

from .core import Digraph, is_strong, _popcount


def semi_threshold(p: int) -> int:
    """Smallest integer >= p/2 - 1."""
    if p < 3:
        raise ValueError("semi_threshold needs p >= 3")
    return (p - 1) // 2


@dataclass(frozen=True)
class ConditionProfile:
    order: int
    min_degree: int
    min_out_degree: int
    min_in_degree: int
    is_strong: bool
    satisfies_ds: bool
    satisfies_gh: bool
    satisfies_ore: bool

    def to_json(self) -> dict:
        return asdict(self)


def profile(d: Digraph) -> ConditionProfile:
    p = d.order
    outs = [_popcount(r) for r in d.rows]
    ins = [_popcount(d.in_row(v)) for v in range(p)]
    degs = [o + i for o, i in zip(outs, ins)]
    min_deg = min(degs)
    min_out = min(outs)
    min_in = min(ins)
    strong = is_strong(d)
    ds = min_deg >= p - 1 and min(min_out, min_in) >= semi_threshold(p)
    gh = strong and min_deg >= p
    ore = strong and all(
        degs[x] + degs[y] >= 2 * p for x, y in nonadjacent_pairs(d)
    )
    return ConditionProfile(p, min_deg, min_out, min_in, strong, ds, gh, ore)


def satisfies_ds(d: Digraph) -> bool:
    """Min degree >= p-1 and min semi-degree >= semi_threshold(p)."""
    p = d.order
    t = semi_threshold(p)
    outs = [_popcount(r) for r in d.rows]
    if min(outs) < t:
        return False
    ins = [_popcount(d.in_row(v)) for v in range(p)]
    if min(ins) < t:
        return False
    return all(o + i >= p - 1 for o, i in zip(outs, ins))


def nonadjacent_pairs(d: Digraph):
    """Unordered pairs with no arc either way, sorted lexicographically."""
    out = []
    for x in range(d.order):
        for y in range(x + 1, d.order):
            if not (d.rows[x] >> y & 1 or d.rows[y] >> x & 1):
                out.append((x, y))
    return out
