"""Vectorized enumeration and sampling of labeled digraphs as packed
arc masks.

A digraph on p <= 8 vertices is a p*p-bit integer: bit i*p+j is the arc
i->j (same layout as core.Digraph.from_mask).  Enumeration walks the
p(p-1)-bit arc space one adjacency row at a time, cutting row choices
whose out-degree already violates the semi-degree threshold, and hands
out numpy uint64 blocks.  Orders 9..12 are sampled as (N, p) row arrays
instead, since their masks no longer fit one machine word.
"""

from __future__ import annotations

import functools
import itertools
from typing import Iterator, List, Optional

import numpy as np

from .conditions import semi_threshold

_POP8 = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint8)

RNG_ALGORITHM = "numpy-pcg64"
DEFAULT_SEED = 20240601


class SampleBudgetError(RuntimeError):
    """The sampler ran out of raw trials before reaching the target count."""


def _valid_rows(p: int, v: int, threshold: int) -> List[int]:
    """Row values for vertex v: no diagonal bit, out-degree >= threshold."""
    out = []
    for r in range(1 << p):
        if r >> v & 1:
            continue
        if bin(r).count("1") >= threshold:
            out.append(r)
    return out


def hypothesis_mask_blocks(
    p: int, part: int = 0, n_parts: int = 1, condition: str = "ds"
) -> Iterator[np.ndarray]:
    """Yield uint64 blocks of arc masks on p vertices.

    condition "ds" filters to the degree/semi-degree hypothesis;
    "all" yields the entire arc space (used by the oracle scans).
    Work is split across n_parts by the choice of vertex 0's row, so the
    concatenation over parts is a disjoint cover of the space.
    """
    if not 3 <= p <= 6:
        raise ValueError("exhaustive enumeration supports 3 <= p <= 6")
    if condition not in ("ds", "all"):
        raise ValueError("condition must be 'ds' or 'all'")
    t = semi_threshold(p) if condition == "ds" else 0
    inner = list(range(max(0, p - 3), p))
    outer = list(range(max(0, p - 3)))

    rows_inner = [_valid_rows(p, v, t) for v in inner]
    na, nb, nc = (len(r) for r in rows_inner)
    ra = np.repeat(np.array(rows_inner[0], dtype=np.uint64), nb * nc)
    rb = np.tile(np.repeat(np.array(rows_inner[1], dtype=np.uint64), nc), na)
    rc = np.tile(np.array(rows_inner[2], dtype=np.uint64), na * nb)
    shift = [np.uint64(v * p) for v in range(p)]
    inner_mask = (ra << shift[inner[0]]) | (rb << shift[inner[1]]) | (rc << shift[inner[2]])
    nbm = len(inner_mask)
    one = np.uint64(1)
    inner_col = np.empty((p, nbm), dtype=np.uint8)
    for j in range(p):
        js = np.uint64(j)
        inner_col[j] = ((ra >> js) & one) + ((rb >> js) & one) + ((rc >> js) & one)
    inner_od = {
        inner[0]: _POP8[ra.astype(np.int64)],
        inner[1]: _POP8[rb.astype(np.int64)],
        inner[2]: _POP8[rc.astype(np.int64)],
    }

    rows_outer = [_valid_rows(p, v, t) for v in outer]
    if not outer:
        if part % n_parts == 0:
            yield from _filter_block(
                p, t, condition, 0, [], [], inner_mask, inner_col, inner_od, inner
            )
        return

    first = [
        (idx, r) for idx, r in enumerate(rows_outer[0]) if idx % n_parts == part % n_parts
    ]
    rest = rows_outer[1:]
    for _, r0 in first:
        for combo in itertools.product(*rest):
            rows = (r0,) + combo
            base = 0
            for v, r in zip(outer, rows):
                base |= r << (v * p)
            ocol = [sum(r >> j & 1 for r in rows) for j in range(p)]
            ood = {v: bin(r).count("1") for v, r in zip(outer, rows)}
            yield from _filter_block(
                p, t, condition, base, ocol, ood, inner_mask, inner_col, inner_od, inner
            )


def _filter_block(p, t, condition, base, ocol, ood, inner_mask, inner_col, inner_od, inner):
    if condition == "all":
        yield np.uint64(base) | inner_mask
        return
    if not ocol:
        ocol = [0] * p
        ood = {}
    flags = np.ones(len(inner_mask), dtype=bool)
    for j in range(p):
        col = inner_col[j].astype(np.int16) + ocol[j]
        if j in ood:
            need = max(t, p - 1 - ood[j])
            np.logical_and(flags, col >= need, out=flags)
        else:
            np.logical_and(flags, col >= t, out=flags)
            np.logical_and(flags, col + inner_od[j] >= p - 1, out=flags)
    block = np.uint64(base) | inner_mask[flags]
    if len(block):
        yield block


def count_hypothesis(p: int, condition: str = "ds") -> int:
    return sum(len(b) for b in hypothesis_mask_blocks(p, condition=condition))


# ---------------------------------------------------------------------------
# degree and structure flags on mask arrays


def _row_slices(masks: np.ndarray, p: int):
    full = np.uint64((1 << p) - 1)
    for i in range(p):
        yield i, (masks >> np.uint64(i * p)) & full


def degree_arrays(masks: np.ndarray, p: int):
    """(out_degrees, in_degrees) as (p, N) uint8 arrays."""
    n = len(masks)
    od = np.empty((p, n), dtype=np.uint8)
    ind = np.zeros((p, n), dtype=np.uint8)
    one = np.uint64(1)
    for i, row in _row_slices(masks, p):
        od[i] = _POP8[row.astype(np.int64)]
        for j in range(p):
            ind[j] += ((row >> np.uint64(j)) & one).astype(np.uint8)
    return od, ind


def ds_flags(masks: np.ndarray, p: int) -> np.ndarray:
    t = semi_threshold(p)
    od, ind = degree_arrays(masks, p)
    flags = np.ones(len(masks), dtype=bool)
    for v in range(p):
        np.logical_and(flags, od[v] >= t, out=flags)
        np.logical_and(flags, ind[v] >= t, out=flags)
        np.logical_and(flags, od[v].astype(np.int16) + ind[v] >= p - 1, out=flags)
    return flags


def cycle_arc_masks(p: int, k: int) -> np.ndarray:
    """One uint64 arc mask per (k-subset, cyclic order) pair; a digraph
    mask contains a k-cycle iff it covers at least one of these."""
    out = []
    for subset in itertools.combinations(range(p), k):
        anchor = subset[0]
        for perm in itertools.permutations(subset[1:]):
            seq = (anchor,) + perm
            m = 0
            for u, v in zip(seq, seq[1:] + (anchor,)):
                m |= 1 << (u * p + v)
            out.append(m)
    return np.array(out, dtype=np.uint64)


def lacking_all(masks: np.ndarray, cyc_masks: np.ndarray, chunk: int = 8) -> np.ndarray:
    """Subarray of masks containing none of the given cycle masks."""
    cur = masks
    for start in range(0, len(cyc_masks), chunk):
        if not len(cur):
            break
        keep = np.ones(len(cur), dtype=bool)
        for c in cyc_masks[start : start + chunk]:
            np.logical_and(keep, (cur & c) != c, out=keep)
        cur = cur[keep]
    return cur


@functools.lru_cache(maxsize=None)
def _leak_masks(p: int) -> np.ndarray:
    """For each nonempty proper subset S: the OR of all arc bits S -> V\\S."""
    out = []
    for s in range(1, (1 << p) - 1):
        leak = 0
        for i in range(p):
            if s >> i & 1:
                for j in range(p):
                    if not (s >> j & 1):
                        leak |= 1 << (i * p + j)
        out.append(leak)
    return np.array(out, dtype=np.uint64)


def nonstrong_flags(masks: np.ndarray, p: int) -> np.ndarray:
    """True where the digraph is not strong: some nonempty proper vertex
    subset S has no arc leaving S."""
    flags = np.zeros(len(masks), dtype=bool)
    zero = np.uint64(0)
    for leak in _leak_masks(p):
        np.logical_or(flags, (masks & leak) == zero, out=flags)
    return flags


@functools.lru_cache(maxsize=None)
def _subset_link_masks(p: int) -> np.ndarray:
    """Arc-bit masks for every (B, x) with |B| >= (p+1)/2 and x outside B:
    one entry for the x->B arcs and one for the B->x arcs."""
    out = []
    least = (p + 2) // 2  # smallest integer >= (p+1)/2
    for size in range(least, p):
        for subset in itertools.combinations(range(p), size):
            bset = set(subset)
            for x in range(p):
                if x in bset:
                    continue
                fwd = 0
                back = 0
                for b in subset:
                    fwd |= 1 << (x * p + b)
                    back |= 1 << (b * p + x)
                out.append(fwd)
                out.append(back)
    return np.array(out, dtype=np.uint64)


def subset_link_violation_flags(masks: np.ndarray, p: int) -> np.ndarray:
    """True where some subset B with |B| >= (p+1)/2 and some x outside B
    lacks an arc x->B or an arc B->x."""
    flags = np.zeros(len(masks), dtype=bool)
    zero = np.uint64(0)
    for m in _subset_link_masks(p):
        np.logical_or(flags, (masks & m) == zero, out=flags)
    return flags


# ---------------------------------------------------------------------------
# samplers


def sample_hypothesis_masks(
    p: int,
    count: int,
    seed: int = DEFAULT_SEED,
    batch: int = 1 << 18,
    trial_budget: Optional[int] = None,
) -> np.ndarray:
    """Exactly count uniform hypothesis-satisfying arc masks, p <= 8."""
    if not 3 <= p <= 8:
        raise ValueError("mask sampling supports 3 <= p <= 8")
    if trial_budget is None:
        trial_budget = max(10_000_000, 2_000 * count)
    rng = np.random.Generator(np.random.PCG64(seed))
    diag = np.uint64(sum(1 << (i * p + i) for i in range(p)))
    space = np.uint64((1 << (p * p)) - 1) if p < 8 else np.uint64(2**64 - 1)
    keep: List[np.ndarray] = []
    have = 0
    spent = 0
    while have < count:
        if spent >= trial_budget:
            raise SampleBudgetError(
                "exhausted %d trials with %d/%d hits" % (spent, have, count)
            )
        n = min(batch, trial_budget - spent)
        spent += n
        if p == 8:
            raw = rng.integers(0, 2**64, size=n, dtype=np.uint64, endpoint=False)
        else:
            raw = rng.integers(0, int(space) + 1, size=n, dtype=np.uint64, endpoint=False)
        raw &= ~diag
        hit = raw[ds_flags(raw, p)]
        keep.append(hit)
        have += len(hit)
    return np.concatenate(keep)[:count]


def sample_hypothesis_rows(
    p: int,
    count: int,
    seed: int = DEFAULT_SEED,
    batch: int = 1 << 16,
    trial_budget: Optional[int] = None,
) -> np.ndarray:
    """Exactly count uniform hypothesis digraphs as an (N, p) uint16 row
    array, for 3 <= p <= 12."""
    if not 3 <= p <= 12:
        raise ValueError("row sampling supports 3 <= p <= 12")
    if trial_budget is None:
        trial_budget = max(10_000_000, 2_000 * count)
    t = semi_threshold(p)
    rng = np.random.Generator(np.random.PCG64(seed))
    diag = np.array([~np.uint16(1 << i) for i in range(p)], dtype=np.uint16)
    pop16 = _POP8[: 1 << 8]
    keep: List[np.ndarray] = []
    have = 0
    spent = 0
    while have < count:
        if spent >= trial_budget:
            raise SampleBudgetError(
                "exhausted %d trials with %d/%d hits" % (spent, have, count)
            )
        n = min(batch, trial_budget - spent)
        spent += n
        rows = rng.integers(0, 1 << p, size=(n, p), dtype=np.uint16)
        rows &= diag[np.newaxis, :]
        od = (pop16[rows & 0xFF] + pop16[rows >> 8]).astype(np.int16)
        ind = np.zeros((n, p), dtype=np.int16)
        for j in range(p):
            ind[:, j] = ((rows >> j) & 1).sum(axis=1)
        ok = np.ones(n, dtype=bool)
        np.logical_and(ok, (od >= t).all(axis=1), out=ok)
        np.logical_and(ok, (ind >= t).all(axis=1), out=ok)
        np.logical_and(ok, (od + ind >= p - 1).all(axis=1), out=ok)
        hit = rows[ok]
        keep.append(hit)
        have += len(hit)
    return np.concatenate(keep)[:count]
