"""Verification harness: enumerate (or sample) every digraph meeting the
degree/semi-degree hypothesis, test the relevant conclusion, classify
each violator into the exception families, and report counterexamples
(expected: none)."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

import numpy as np

from .core import Digraph, DigraphError, are_isomorphic, encode
from .families import FamilyTag, classify, gen_knn_star
from .enumeration import (
    DEFAULT_SEED,
    RNG_ALGORITHM,
    cycle_arc_masks,
    degree_arrays,
    hypothesis_mask_blocks,
    lacking_all,
    nonstrong_flags,
    sample_hypothesis_masks,
    sample_hypothesis_rows,
    subset_link_violation_flags,
)
from .cycles import find_cycle, is_pancyclic

DEFAULT_CAP = 100


@dataclass
class VerificationReport:
    theorem: str
    order: int
    mode: str  # "exhaustive" | "sampled"
    total_candidates: int
    conclusion_holds: int
    exceptions: Dict[str, int] = field(default_factory=dict)
    counterexamples: List[str] = field(default_factory=list)
    counterexample_total: int = 0
    counterexample_cap: int = DEFAULT_CAP
    wall_time: float = 0.0
    workers: int = 1
    seed: Optional[int] = None
    sample_count: Optional[int] = None
    rng_algorithm: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.counterexample_total == 0

    @property
    def accounting_ok(self) -> bool:
        return (
            self.total_candidates
            == self.conclusion_holds
            + sum(self.exceptions.values())
            + self.counterexample_total
        )

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "order": self.order,
            "mode": self.mode,
            "total_candidates": self.total_candidates,
            "conclusion_holds": self.conclusion_holds,
            "exceptions": dict(self.exceptions),
            "counterexamples": list(self.counterexamples),
            "counterexample_total": self.counterexample_total,
            "counterexample_cap": self.counterexample_cap,
            "wall_time": self.wall_time,
            "workers": self.workers,
            "seed": self.seed,
            "sample_count": self.sample_count,
            "rng_algorithm": self.rng_algorithm,
        }

    def to_table(self) -> str:
        lines = [
            "%s  p=%d  mode=%s" % (self.theorem, self.order, self.mode),
            "  total_candidates    %d" % self.total_candidates,
            "  conclusion_holds    %d" % self.conclusion_holds,
        ]
        if self.mode == "sampled":
            lines.insert(
                1,
                "  seed=%s samples=%s rng=%s"
                % (self.seed, self.sample_count, self.rng_algorithm),
            )
        if self.exceptions:
            lines.append("  exceptions:")
            for tag in sorted(self.exceptions):
                lines.append("    %-18s%d" % (tag, self.exceptions[tag]))
        lines.append("  counterexamples     %d" % self.counterexample_total)
        for enc in self.counterexamples:
            lines.append("    %s" % enc)
        lines.append("  wall_time           %.2fs" % self.wall_time)
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# exhaustive engine


def _sweep_part(args) -> dict:
    """Worker job: enumerate one partition and collect conclusion violators.

    Returns plain ints/lists so the payload pickles cheaply.
    """
    task, p, part, n_parts = args
    total = 0
    if task == "theorem3":
        cyc3 = cycle_arc_masks(p, 3)
        cyc4 = cycle_arc_masks(p, 4)
        no3: List[int] = []
        no4: List[int] = []
        for block in hypothesis_mask_blocks(p, part, n_parts):
            total += len(block)
            no3.extend(int(m) for m in lacking_all(block, cyc3))
            no4.extend(int(m) for m in lacking_all(block, cyc4))
        return {"total": total, "no3": no3, "no4": no4}
    if task == "lemma4":
        nonstrong: List[int] = []
        linkviol: List[int] = []
        for block in hypothesis_mask_blocks(p, part, n_parts):
            total += len(block)
            ns = nonstrong_flags(block, p)
            nonstrong.extend(int(m) for m in block[ns])
            lv = subset_link_violation_flags(block, p)
            linkviol.extend(int(m) for m in block[lv])
        return {"total": total, "nonstrong": nonstrong, "linkviol": linkviol}
    k = p - 1 if task == "theorem1" else p
    cyc = cycle_arc_masks(p, k)
    violators: List[int] = []
    for block in hypothesis_mask_blocks(p, part, n_parts):
        total += len(block)
        violators.extend(int(m) for m in lacking_all(block, cyc))
    return {"total": total, "violators": violators}


def _run_parts(task: str, p: int, workers: int) -> List[dict]:
    args = [(task, p, part, workers) for part in range(workers)]
    if workers == 1:
        return [_sweep_part(args[0])]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_part, args))


def _classify_masks(
    p: int, masks: List[int], context: str, cap: int
) -> Tuple[Dict[str, int], List[str], int]:
    exceptions: Dict[str, int] = {}
    counterexamples: List[str] = []
    cex_total = 0
    for m in sorted(masks):
        d = Digraph.from_mask(p, m)
        label = classify(d, context)
        if label.tag is FamilyTag.NONE:
            cex_total += 1
            if len(counterexamples) < cap:
                counterexamples.append(encode(d))
        else:
            key = label.tag.value
            exceptions[key] = exceptions.get(key, 0) + 1
    return exceptions, counterexamples, cex_total


def _finish(report: VerificationReport, start: float) -> VerificationReport:
    report.wall_time = time.perf_counter() - start
    return report


def _theorem_report(
    name: str,
    p: int,
    mode: str,
    total: int,
    violators: List[int],
    context: str,
    cap: int,
    workers: int,
    seed: Optional[int],
    samples: Optional[int],
) -> VerificationReport:
    exceptions, cex, cex_total = _classify_masks(p, violators, context, cap)
    return VerificationReport(
        theorem=name,
        order=p,
        mode=mode,
        total_candidates=total,
        conclusion_holds=total - len(violators),
        exceptions=exceptions,
        counterexamples=cex,
        counterexample_total=cex_total,
        counterexample_cap=cap,
        workers=workers,
        seed=seed if mode == "sampled" else None,
        sample_count=samples if mode == "sampled" else None,
        rng_algorithm=RNG_ALGORITHM if mode == "sampled" else None,
    )


def _check_exhaustive(p: int) -> None:
    if p > 6:
        raise DigraphError("exhaustive verification reaches p <= 6 only")


def verify_theorem1(
    p: int,
    mode: str = "exhaustive",
    seed: int = DEFAULT_SEED,
    samples: int = 10**6,
    workers: int = 1,
    cap: int = DEFAULT_CAP,
) -> VerificationReport:
    """Every hypothesis digraph has a (p-1)-cycle or classifies into the
    first exception list."""
    if p < 5:
        raise DigraphError("verify_theorem1 needs p >= 5")
    start = time.perf_counter()
    if mode == "exhaustive":
        _check_exhaustive(p)
        parts = _run_parts("theorem1", p, workers)
        total = sum(r["total"] for r in parts)
        violators = [m for r in parts for m in r["violators"]]
        rep = _theorem_report(
            "theorem1", p, mode, total, violators, "theorem1", cap, workers, None, None
        )
    else:
        masks = sample_hypothesis_masks(p, samples, seed)
        cyc = cycle_arc_masks(p, p - 1)
        violators = [int(m) for m in lacking_all(masks, cyc)]
        rep = _theorem_report(
            "theorem1", p, mode, samples, violators, "theorem1", cap, workers, seed, samples
        )
    return _finish(rep, start)


def verify_theorem2(
    p: int,
    mode: str = "exhaustive",
    seed: int = DEFAULT_SEED,
    samples: int = 10**6,
    workers: int = 1,
    cap: int = DEFAULT_CAP,
) -> VerificationReport:
    """Every hypothesis digraph on even p >= 6 is Hamiltonian or classifies
    into the second exception list."""
    if p < 6 or p % 2:
        raise DigraphError("verify_theorem2 needs even p >= 6")
    start = time.perf_counter()
    if mode == "exhaustive":
        _check_exhaustive(p)
        parts = _run_parts("theorem2", p, workers)
        total = sum(r["total"] for r in parts)
        violators = [m for r in parts for m in r["violators"]]
        rep = _theorem_report(
            "theorem2", p, mode, total, violators, "theorem2", cap, workers, None, None
        )
    else:
        masks = sample_hypothesis_masks(p, samples, seed)
        cyc = cycle_arc_masks(p, p)
        violators = [int(m) for m in lacking_all(masks, cyc)]
        rep = _theorem_report(
            "theorem2", p, mode, samples, violators, "theorem2", cap, workers, seed, samples
        )
    return _finish(rep, start)


def verify_theorem3(
    p: int,
    mode: str = "exhaustive",
    seed: int = DEFAULT_SEED,
    samples: int = 10**6,
    workers: int = 1,
    cap: int = DEFAULT_CAP,
) -> Tuple[VerificationReport, VerificationReport]:
    """Pair of reports: the 3-cycle statement and the 4-cycle statement."""
    if p < 5:
        raise DigraphError("verify_theorem3 needs p >= 5")
    start = time.perf_counter()
    if mode == "exhaustive":
        _check_exhaustive(p)
        parts = _run_parts("theorem3", p, workers)
        total = sum(r["total"] for r in parts)
        no3 = [m for r in parts for m in r["no3"]]
        no4 = [m for r in parts for m in r["no4"]]
        seed_used: Optional[int] = None
        nsamples: Optional[int] = None
    else:
        masks = sample_hypothesis_masks(p, samples, seed)
        total = samples
        no3 = [int(m) for m in lacking_all(masks, cycle_arc_masks(p, 3))]
        no4 = [int(m) for m in lacking_all(masks, cycle_arc_masks(p, 4))]
        seed_used, nsamples = seed, samples
    rep3 = _theorem_report(
        "theorem3_c3", p, mode, total, no3, "theorem3_c3", cap, workers, seed_used, nsamples
    )
    rep4 = _theorem_report(
        "theorem3_c4", p, mode, total, no4, "theorem3_c4", cap, workers, seed_used, nsamples
    )
    return _finish(rep3, start), _finish(rep4, start)


def verify_lemma4(
    p: int,
    mode: str = "exhaustive",
    seed: int = DEFAULT_SEED,
    samples: int = 10**6,
    workers: int = 1,
    cap: int = DEFAULT_CAP,
) -> VerificationReport:
    """(i) every hypothesis digraph is strong or is a two-block member;
    (ii) every large subset B and outside vertex x have arcs both ways."""
    if p < 3:
        raise DigraphError("verify_lemma4 needs p >= 3")
    start = time.perf_counter()
    if mode == "exhaustive":
        _check_exhaustive(p)
        parts = _run_parts("lemma4", p, workers)
        total = sum(r["total"] for r in parts)
        nonstrong = [m for r in parts for m in r["nonstrong"]]
        linkviol = set(m for r in parts for m in r["linkviol"])
        seed_used: Optional[int] = None
        nsamples: Optional[int] = None
    else:
        masks = sample_hypothesis_masks(p, samples, seed)
        total = samples
        nonstrong = [int(m) for m in masks[nonstrong_flags(masks, p)]]
        linkviol = set(int(m) for m in masks[subset_link_violation_flags(masks, p)])
        seed_used, nsamples = seed, samples
    exceptions: Dict[str, int] = {}
    counterexamples: List[str] = []
    cex_total = 0
    bad = set(linkviol)
    for m in sorted(set(nonstrong) | bad):
        d = Digraph.from_mask(p, m)
        ok_family = False
        if m not in bad:
            label = classify(d, "theorem2") if p % 2 == 0 else None
            if label is not None and label.tag is FamilyTag.HNN:
                ok_family = True
        if ok_family:
            exceptions[FamilyTag.HNN.value] = exceptions.get(FamilyTag.HNN.value, 0) + 1
        else:
            cex_total += 1
            if len(counterexamples) < cap:
                counterexamples.append(encode(d))
    rep = VerificationReport(
        theorem="lemma4",
        order=p,
        mode=mode,
        total_candidates=total,
        conclusion_holds=total - len(set(nonstrong) | bad),
        exceptions=exceptions,
        counterexamples=counterexamples,
        counterexample_total=cex_total,
        counterexample_cap=cap,
        workers=workers,
        seed=seed_used,
        sample_count=nsamples,
        rng_algorithm=RNG_ALGORITHM if mode == "sampled" else None,
    )
    return _finish(rep, start)


# ---------------------------------------------------------------------------
# oracle scans (full arc space, no hypothesis filter)


def _oracle_part(args) -> dict:
    p, part, n_parts = args
    gh_total = 0
    ore_total = 0
    gh_viol: List[int] = []
    ore_nonpan: List[int] = []
    cycles_by_k = {k: cycle_arc_masks(p, k) for k in range(3, p + 1)}
    pairbits = {}
    for x in range(p):
        for y in range(x + 1, p):
            pairbits[(x, y)] = np.uint64((1 << (x * p + y)) | (1 << (y * p + x)))
    zero = np.uint64(0)
    for block in hypothesis_mask_blocks(p, part, n_parts, condition="all"):
        od, ind = degree_arrays(block, p)
        deg = od.astype(np.int16) + ind
        # minimum-degree-p condition
        ghf = np.ones(len(block), dtype=bool)
        for v in range(p):
            np.logical_and(ghf, deg[v] >= p, out=ghf)
        gh = block[ghf]
        gh = gh[~nonstrong_flags(gh, p)]
        gh_total += len(gh)
        gh_viol.extend(int(m) for m in lacking_all(gh, cycles_by_k[p]))
        # Ore-type condition: nonadjacent pairs have degree sum >= 2p
        oref = np.ones(len(block), dtype=bool)
        for (x, y), bits in pairbits.items():
            okpair = ((block & bits) != zero) | (deg[x] + deg[y] >= 2 * p)
            np.logical_and(oref, okpair, out=oref)
        ore = block[oref]
        ore = ore[~nonstrong_flags(ore, p)]
        ore_total += len(ore)
        nonpan = set()
        for k in range(3, p + 1):
            nonpan.update(int(m) for m in lacking_all(ore, cycles_by_k[k]))
        ore_nonpan.extend(sorted(nonpan))
    return {
        "gh_total": gh_total,
        "ore_total": ore_total,
        "gh_viol": gh_viol,
        "ore_nonpan": ore_nonpan,
    }


def verify_oracles(
    p: int, workers: int = 1, cap: int = DEFAULT_CAP
) -> VerificationReport:
    """Exhaustively check the two background statements the main proofs
    lean on: strong + min degree >= p implies Hamiltonian, and the
    Ore-type condition implies pancyclic with the balanced complete
    bipartite escape at even p."""
    if not 3 <= p <= 6:
        raise DigraphError("verify_oracles supports 3 <= p <= 6")
    start = time.perf_counter()
    args = [(p, part, workers) for part in range(workers)]
    if workers == 1:
        results = [_oracle_part(args[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_oracle_part, args))
    gh_total = sum(r["gh_total"] for r in results)
    ore_total = sum(r["ore_total"] for r in results)
    counterexamples: List[str] = []
    cex_total = 0
    for m in sorted(m for r in results for m in r["gh_viol"]):
        cex_total += 1
        if len(counterexamples) < cap:
            counterexamples.append(encode(Digraph.from_mask(p, m)))
    escape = 0
    knn = gen_knn_star(p // 2, p - p // 2) if p % 2 == 0 else None
    for m in sorted(m for r in results for m in r["ore_nonpan"]):
        d = Digraph.from_mask(p, m)
        if knn is not None and are_isomorphic(d, knn):
            escape += 1
        else:
            cex_total += 1
            if len(counterexamples) < cap:
                counterexamples.append(encode(d))
    exceptions = {FamilyTag.KNN1_STAR.value: escape} if escape else {}
    rep = VerificationReport(
        theorem="oracles",
        order=p,
        mode="exhaustive",
        total_candidates=gh_total + ore_total,
        conclusion_holds=gh_total + ore_total - escape - cex_total,
        exceptions=exceptions,
        counterexamples=counterexamples,
        counterexample_total=cex_total,
        counterexample_cap=cap,
        workers=workers,
    )
    return _finish(rep, start)


# ---------------------------------------------------------------------------
# sampled pancyclicity at p >= 10


def sample_pancyclicity(
    p: int = 10,
    count: int = 10**5,
    seed: int = DEFAULT_SEED,
    cap: int = DEFAULT_CAP,
) -> VerificationReport:
    """Sampled check of the pancyclicity statement for p >= 10: every
    sampled hypothesis digraph is pancyclic or classifies into the
    stated exception families."""
    if not 10 <= p <= 12:
        raise DigraphError("sample_pancyclicity supports 10 <= p <= 12")
    start = time.perf_counter()
    rows = sample_hypothesis_rows(p, count, seed)
    exceptions: Dict[str, int] = {}
    counterexamples: List[str] = []
    cex_total = 0
    holds = 0
    for vec in rows:
        d = Digraph(p, tuple(int(r) for r in vec))
        if is_pancyclic(d):
            holds += 1
            continue
        label = classify(d, "pancyclic")
        if label.tag is FamilyTag.NONE:
            cex_total += 1
            if len(counterexamples) < cap:
                counterexamples.append(encode(d))
        else:
            key = label.tag.value
            exceptions[key] = exceptions.get(key, 0) + 1
    rep = VerificationReport(
        theorem="pancyclic-sample",
        order=p,
        mode="sampled",
        total_candidates=count,
        conclusion_holds=holds,
        exceptions=exceptions,
        counterexamples=counterexamples,
        counterexample_total=cex_total,
        counterexample_cap=cap,
        seed=seed,
        sample_count=count,
        rng_algorithm=RNG_ALGORITHM,
    )
    return _finish(rep, start)


# ---------------------------------------------------------------------------
# digraph stream


def enumerate_condition_digraphs(
    p: int,
    mode: str = "exhaustive",
    seed: int = DEFAULT_SEED,
    count: Optional[int] = None,
) -> Iterator[Digraph]:
    """Stream the hypothesis-satisfying digraphs on p vertices.

    Exhaustive mode (p <= 6) covers them all in a deterministic order;
    sampled mode (p <= 12) draws uniformly until count is reached.
    """
    if mode == "exhaustive":
        if not 3 <= p <= 6:
            raise DigraphError("exhaustive stream supports 3 <= p <= 6")
        for block in hypothesis_mask_blocks(p):
            for m in block:
                yield Digraph.from_mask(p, int(m))
    elif mode == "sampled":
        if count is None:
            raise DigraphError("sampled stream needs a count")
        if p <= 8:
            for m in sample_hypothesis_masks(p, count, seed):
                yield Digraph.from_mask(p, int(m))
        elif p <= 12:
            for vec in sample_hypothesis_rows(p, count, seed):
                yield Digraph(p, tuple(int(r) for r in vec))
        else:
            raise DigraphError("sampled stream supports p <= 12")
    else:
        raise DigraphError("mode must be 'exhaustive' or 'sampled'")


def report_to_json_str(rep: VerificationReport) -> str:
    return json.dumps(rep.to_json(), indent=2, sort_keys=True)
