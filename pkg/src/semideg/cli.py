"""Command-line front end: family generation, classification, cycle
queries, serialization, and verification runs."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional

from . import core
from .core import Digraph, DigraphError
from .families import (
    FamilyTag,
    classify,
    gen_c5_star,
    gen_c6_star_1,
    gen_d6,
    gen_h2n,
    gen_h6_double_prime,
    gen_h6_prime,
    gen_hn_n1_1,
    gen_hnn,
    gen_join_knknk1,
    gen_knn_star,
)
from .cycles import cycle_spectrum, find_cycle, hamiltonian_cycle
from .enumeration import DEFAULT_SEED
from . import verify as verify_mod


def _load_digraph(token: str) -> Digraph:
    """Accept a D<p>:<hex> literal or a path to a JSON file."""
    if token.startswith("D") and ":" in token:
        return core.decode(token)
    if os.path.exists(token):
        with open(token) as fh:
            return core.from_json(json.load(fh))
    raise DigraphError("not a digraph literal or readable JSON file: %r" % (token,))


def _parse_pairs(text: str):
    """Parse "0-3,1-4" into [(0, 3), (1, 4)]."""
    pairs = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        try:
            a, b = item.split("-")
            pairs.append((int(a), int(b)))
        except ValueError:
            raise DigraphError("bad arc token %r (expected i-j)" % (item,))
    return pairs


def _gen(args) -> Digraph:
    fam = args.family
    n, m = args.n, args.m
    def need_n():
        if n is None:
            raise DigraphError("family %r needs -n" % (fam,))
        return n

    if fam == "d6":
        return gen_d6(False)
    if fam == "d6-prime":
        return gen_d6(True)
    if fam == "c5-star":
        return gen_c5_star()
    if fam == "c6-star-1":
        return gen_c6_star_1()
    if fam == "h6-prime":
        return gen_h6_prime()
    if fam == "h6-double-prime":
        return gen_h6_double_prime()
    if fam == "h-nn":
        cross = _parse_pairs(args.cross) if args.cross else None
        return gen_hnn(need_n(), cross)
    if fam == "h-n-n1-1":
        sub = _parse_pairs(args.b_subgraph) if args.b_subgraph else None
        return gen_hn_n1_1(need_n(), args.orientation, sub)
    if fam == "h-2n":
        return gen_h2n(need_n(), False)
    if fam == "h-2n-prime":
        return gen_h2n(need_n(), True)
    if fam == "join-kn-kn-k1":
        return gen_join_knknk1(need_n())
    if fam == "knn-star":
        if m is None:
            raise DigraphError("knn-star needs -n and -m")
        return gen_knn_star(need_n(), m)
    raise DigraphError("unknown family %r" % (fam,))


def _pick_format(args) -> str:
    if args.format:
        return args.format
    return "table" if sys.stdout.isatty() else "json"


def _emit(text: str, args) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _cmd_gen(args) -> int:
    d = _gen(args)
    if _pick_format(args) == "json":
        _emit(json.dumps(core.to_json(d)), args)
    else:
        _emit(core.encode(d), args)
    return 0


def _cmd_classify(args) -> int:
    d = _load_digraph(args.digraph)
    label = classify(d, args.context)
    if _pick_format(args) == "json":
        _emit(json.dumps({"tag": label.tag.value, "witness": label.witness}), args)
    else:
        _emit(label.tag.value, args)
    return 0


def _cmd_cycles(args) -> int:
    d = _load_digraph(args.digraph)
    if args.spectrum:
        _emit(json.dumps(sorted(cycle_spectrum(d))), args)
    elif args.hamiltonian:
        w = hamiltonian_cycle(d)
        if _pick_format(args) == "json":
            _emit(
                json.dumps({"hamiltonian": w is not None, "witness": w.to_json() if w else None}),
                args,
            )
        else:
            _emit("true" if w is not None else "false", args)
    elif args.length is not None:
        w = find_cycle(d, args.length)
        _emit(json.dumps(w.to_json() if w else None), args)
    else:
        raise DigraphError("cycles needs one of --length, --spectrum, --hamiltonian")
    return 0


def _cmd_encode(args) -> int:
    token = args.digraph
    if os.path.exists(token):
        with open(token) as fh:
            d = core.from_json(json.load(fh))
    else:
        d = core.from_json(json.loads(token))
    _emit(core.encode(d), args)
    return 0


def _cmd_decode(args) -> int:
    d = core.decode(args.digraph)
    _emit(json.dumps(core.to_json(d)), args)
    return 0


def _cmd_verify(args) -> int:
    target = args.target
    workers = args.workers if args.workers else (os.cpu_count() or 1)
    workers = max(1, int(workers))
    kwargs = dict(mode=args.mode, workers=workers, cap=args.cap)
    if args.mode == "sampled":
        kwargs["seed"] = args.seed
        kwargs["samples"] = args.samples
    reports = []
    if target == "theorem1":
        reports = [verify_mod.verify_theorem1(args.order, **kwargs)]
    elif target == "theorem2":
        reports = [verify_mod.verify_theorem2(args.order, **kwargs)]
    elif target == "theorem3":
        reports = list(verify_mod.verify_theorem3(args.order, **kwargs))
    elif target == "lemma4":
        reports = [verify_mod.verify_lemma4(args.order, **kwargs)]
    elif target == "oracles":
        reports = [verify_mod.verify_oracles(args.order, workers=workers, cap=args.cap)]
    elif target == "pancyclic-sample":
        reports = [
            verify_mod.sample_pancyclicity(
                args.order, count=args.samples, seed=args.seed, cap=args.cap
            )
        ]
    else:
        raise DigraphError("unknown verification target %r" % (target,))
    if _pick_format(args) == "json":
        payload = [r.to_json() for r in reports]
        text = json.dumps(payload[0] if len(payload) == 1 else payload, indent=2, sort_keys=True)
    else:
        text = "\n\n".join(r.to_table() for r in reports)
    _emit(text, args)
    return 1 if any(not r.ok for r in reports) else 0


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="semideg")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--format", choices=["json", "table"], default=None)
        p.add_argument("-o", "--output", default=None)

    g = sub.add_parser("gen", help="print a family member")
    g.add_argument("family")
    g.add_argument("-n", type=int, default=None)
    g.add_argument("-m", type=int, default=None)
    g.add_argument("--orientation", choices=["in", "out"], default="out")
    g.add_argument("--cross", default=None, help="A->B arcs as i-j,i-j")
    g.add_argument("--b-subgraph", dest="b_subgraph", default=None)
    add_common(g)
    g.set_defaults(fn=_cmd_gen)

    c = sub.add_parser("classify", help="family classification of a digraph")
    c.add_argument("digraph")
    c.add_argument(
        "--context",
        required=True,
        choices=["theorem1", "theorem2", "theorem3-c3", "theorem3-c4", "pancyclic"],
    )
    add_common(c)
    c.set_defaults(fn=_cmd_classify)

    y = sub.add_parser("cycles", help="cycle queries")
    y.add_argument("digraph")
    y.add_argument("--length", type=int, default=None)
    y.add_argument("--spectrum", action="store_true")
    y.add_argument("--hamiltonian", action="store_true")
    add_common(y)
    y.set_defaults(fn=_cmd_cycles)

    e = sub.add_parser("encode", help="JSON digraph -> literal")
    e.add_argument("digraph", help="JSON text or path")
    add_common(e)
    e.set_defaults(fn=_cmd_encode)

    de = sub.add_parser("decode", help="literal -> JSON digraph")
    de.add_argument("digraph")
    add_common(de)
    de.set_defaults(fn=_cmd_decode)

    v = sub.add_parser("verify", help="run a verification")
    v.add_argument(
        "target",
        choices=["theorem1", "theorem2", "theorem3", "lemma4", "oracles", "pancyclic-sample"],
    )
    v.add_argument("-p", "--order", type=int, required=True)
    v.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    v.add_argument("--seed", type=int, default=DEFAULT_SEED)
    v.add_argument("--samples", type=int, default=10**5)
    v.add_argument("--workers", type=int, default=None)
    v.add_argument("--cap", type=int, default=verify_mod.DEFAULT_CAP)
    add_common(v)
    v.set_defaults(fn=_cmd_verify)
    return ap


def main(argv: Optional[list] = None) -> int:
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except DigraphError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
