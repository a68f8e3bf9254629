import itertools
import random

import numpy as np
import pytest

from semideg.core import (
    Digraph,
    DigraphError,
    UnsupportedSizeError,
    are_isomorphic,
    automorphism_count,
    build,
    converse,
    decode,
    degree,
    degree_toward,
    encode,
    from_json,
    in_degree,
    induced,
    is_strong,
    isomorphism,
    out_degree,
    relabel,
    strong_components,
    to_json,
)
from semideg.families import gen_c5_star, gen_d6, gen_h2n

from conftest import random_digraph


def k_star(n):
    return build(n, [(i, j) for i in range(n) for j in range(n) if i != j])


class TestBuild:
    def test_k2_star(self):
        d = build(2, [(0, 1), (1, 0)])
        assert d.arc_count == 2
        assert d.has_arc(0, 1) and d.has_arc(1, 0)

    def test_d6_arc_count(self):
        assert gen_d6(False).arc_count == 15

    def test_loop_rejected(self):
        with pytest.raises(DigraphError):
            build(3, [(0, 0)])

    def test_out_of_range_rejected(self):
        with pytest.raises(DigraphError):
            build(3, [(0, 3)])

    def test_duplicates_collapse(self):
        assert build(2, [(0, 1), (0, 1)]).arc_count == 1

    def test_order_bounds(self):
        with pytest.raises(DigraphError):
            build(1, [])
        with pytest.raises(DigraphError):
            build(17, [])


class TestDegrees:
    def test_d6_special_vertex(self):
        # the last vertex dominates the first three and is dominated by two
        d = gen_d6(False)
        assert out_degree(d, 5) == 3
        assert in_degree(d, 5) == 2
        assert degree(d, 5) == 5

    def test_k2_star(self):
        d = k_star(2)
        assert degree(d, 0) == 2 and degree(d, 1) == 2

    def test_empty(self):
        d = build(3, [])
        assert all(degree(d, v) == 0 for v in range(3))

    def test_degree_sum_equals_arcs(self, rng):
        for _ in range(50):
            p = rng.randrange(2, 9)
            d = random_digraph(rng, p)
            assert sum(out_degree(d, v) for v in range(p)) == d.arc_count
            assert sum(in_degree(d, v) for v in range(p)) == d.arc_count

    def test_degree_toward(self):
        d = build(4, [(0, 1), (1, 0), (2, 0), (0, 3)])
        assert degree_toward(d, 0, {1, 2}) == 3
        assert degree_toward(d, 0, {3}) == 1
        # v inside S is ignored
        assert degree_toward(d, 0, {0, 1}) == 2


class TestConverse:
    def test_symmetric_fixed_point(self):
        d = k_star(2)
        assert converse(d) == d

    def test_single_arc(self):
        assert converse(build(2, [(0, 1)])) == build(2, [(1, 0)])

    def test_involution_and_degree_swap(self, rng):
        for _ in range(50):
            d = random_digraph(rng, rng.randrange(2, 9))
            c = converse(d)
            assert converse(c) == d
            for v in range(d.order):
                assert out_degree(d, v) == in_degree(c, v)
                assert in_degree(d, v) == out_degree(c, v)


class TestInduced:
    def test_k3_to_k2(self):
        sub, mapping = induced(k_star(3), {0, 1})
        assert sub == k_star(2)
        assert mapping == (0, 1)

    def test_identity(self):
        d = gen_d6(False)
        sub, mapping = induced(d, range(6))
        assert sub == d and mapping == tuple(range(6))

    def test_h2n_block_is_complete(self):
        # the first block of the 6-vertex member induces K*2
        d = gen_h2n(3, False)
        sub, _ = induced(d, {0, 1})
        assert sub == k_star(2)

    def test_empty_rejected(self):
        with pytest.raises(DigraphError):
            induced(k_star(3), set())


class TestStrong:
    def test_k3(self):
        d = k_star(3)
        assert is_strong(d)
        assert strong_components(d) == [(0, 1, 2)]

    def test_single_arc_order(self):
        assert strong_components(build(2, [(0, 1)])) == [(0,), (1,)]
        assert strong_components(build(2, [(1, 0)])) == [(1,), (0,)]

    def test_component_order_no_back_arcs(self, rng):
        for _ in range(200):
            d = random_digraph(rng, rng.randrange(2, 9), density=0.3)
            comps = strong_components(d)
            assert sorted(v for c in comps for v in c) == list(range(d.order))
            for i in range(len(comps)):
                for j in range(i):
                    # no arc from a later component back to an earlier one
                    for u in comps[i]:
                        for v in comps[j]:
                            assert not d.has_arc(u, v)

    def test_matrix_power_oracle(self, rng):
        # reachability via boolean adjacency powers, orders <= 6
        for _ in range(300):
            p = rng.randrange(2, 7)
            d = random_digraph(rng, p, density=rng.random())
            a = np.zeros((p, p), dtype=bool)
            for i, j in d.arcs():
                a[i, j] = True
            reach = a.copy()
            for _k in range(p):
                reach = reach | (reach @ a)
            np.fill_diagonal(reach, True)
            assert is_strong(d) == bool(reach.all())


class TestIsomorphism:
    def test_self(self):
        d = gen_d6(False)
        assert are_isomorphic(d, d)

    def test_d6_vs_d6_prime(self):
        assert not are_isomorphic(gen_d6(False), gen_d6(True))

    def test_relabelings_of_c5_star(self, rng):
        d = gen_c5_star()
        perm = list(range(5))
        rng.shuffle(perm)
        assert are_isomorphic(d, relabel(d, perm))

    def test_mapping_is_valid(self, rng):
        for _ in range(30):
            d = random_digraph(rng, rng.randrange(2, 7))
            perm = list(range(d.order))
            rng.shuffle(perm)
            g = relabel(d, perm)
            m = isomorphism(d, g)
            assert m is not None
            assert relabel(d, m) == g

    def test_equivalence_relation_sample(self, rng):
        for _ in range(40):
            p = rng.randrange(2, 6)
            a = random_digraph(rng, p)
            perm = list(range(p))
            rng.shuffle(perm)
            b = relabel(a, perm)
            c = random_digraph(rng, p)
            assert are_isomorphic(a, a)
            assert are_isomorphic(a, b) == are_isomorphic(b, a)
            if are_isomorphic(a, b) and are_isomorphic(b, c):
                assert are_isomorphic(a, c)

    def test_order_cap(self):
        big = build(11, [(0, 1)])
        with pytest.raises(UnsupportedSizeError):
            are_isomorphic(big, big)

    def test_automorphism_counts(self):
        assert automorphism_count(gen_c5_star()) == 10
        assert automorphism_count(gen_d6(False)) == 1


class TestSerialization:
    def test_k2_literal(self):
        assert encode(build(2, [(0, 1), (1, 0)])) == "D2:6"
        assert decode("D2:6") == build(2, [(0, 1), (1, 0)])

    def test_d6_roundtrip(self):
        d = gen_d6(False)
        assert decode(encode(d)) == d

    def test_diagonal_bit_rejected(self):
        with pytest.raises(DigraphError):
            decode("D2:F")

    def test_malformed(self):
        for bad in ["", "D2", "D2:", "2:6", "D2:66", "D0:0", "D17:" + "0" * 73,
                    "D2:G", "D3:FFF"]:
            with pytest.raises(DigraphError):
                decode(bad)

    def test_nonzero_padding_rejected(self):
        # order 3 uses 9 bits in 12; the low 3 padding bits must be zero
        with pytest.raises(DigraphError):
            decode("D3:001")

    def test_random_roundtrips_all_orders(self):
        rng = random.Random(20240601)
        # 10^5 round trips spread over orders 2..8
        per_order = 100_000 // 7
        for p in range(2, 9):
            for _ in range(per_order):
                d = random_digraph(rng, p)
                assert decode(encode(d)) == d

    def test_json_roundtrip(self, rng):
        for _ in range(100):
            d = random_digraph(rng, rng.randrange(2, 9))
            j = to_json(d)
            assert j["arcs"] == sorted(j["arcs"])
            assert from_json(j) == d

    def test_mask_roundtrip(self, rng):
        for _ in range(100):
            d = random_digraph(rng, rng.randrange(2, 9))
            assert Digraph.from_mask(d.order, d.mask()) == d
