"""Symmetric-group combinatorics: permutations, Bruhat order, partitions,
Young subgroup data, coset representatives, standard tableaux, RSK."""

import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cellkit.coxeter import (
    Partition,
    Perm,
    StdTableau,
    all_partitions,
    bruhat_leq,
    bruhat_lower_set,
    canonical_tableau,
    coset_decompose,
    coset_reps,
    d_of_tableau,
    dominance_leq,
    elements_by_length,
    rsk,
    rsk_inverse,
    std_tableaux,
    young_data,
)
from cellkit.laurent import Laurent

from oracles import hook_length_count, inversion_count, multinomial

perms5 = st.permutations(list(range(1, 6))).map(lambda p: Perm(tuple(p)))


class TestPerm:
    def test_constructors(self):
        assert Perm.identity(3).images == (1, 2, 3)
        assert Perm.transposition(4, 2).images == (1, 3, 2, 4)
        assert Perm.longest(4).images == (4, 3, 2, 1)
        with pytest.raises(ValueError):
            Perm((1, 1, 2))
        with pytest.raises(ValueError):
            Perm.transposition(3, 3)

    def test_word_and_parse(self):
        w = Perm.from_word("s1 s2 s1", 4)
        assert w.images == (3, 2, 1, 4)
        assert Perm.from_word([1, 2, 1], 4) == w
        assert Perm.parse("[3,2,1,4]") == w
        assert Perm.parse("s1 s2 s1", 4) == w
        assert Perm.parse("e", 4) == Perm.identity(4)
        with pytest.raises(ValueError):
            Perm.parse("s1 s2")  # word form needs the rank

    def test_product_convention(self):
        # (w*u)(k) = w(u(k)): s2*s3 sends 4 -> 3 -> 2? no: s3 first.
        s2, s3 = Perm.transposition(4, 2), Perm.transposition(4, 3)
        assert (s2 * s3).images == (1, 3, 4, 2)

    def test_length_is_inversion_count(self):
        for w in elements_by_length(4):
            assert w.length == inversion_count(w.images)
            assert w.length == len(w.reduced_word())

    @given(perms5)
    def test_inverse(self, w):
        assert w * w.inverse() == Perm.identity(5)
        assert w.inverse().length == w.length

    @given(perms5, perms5, perms5)
    def test_associativity(self, a, b, c):
        assert (a * b) * c == a * (b * c)

    def test_descents(self):
        for w in elements_by_length(4):
            for i in (1, 2, 3):
                s = Perm.transposition(4, i)
                assert (i in w.right_descents()) == ((w * s).length < w.length)
                assert (i in w.left_descents()) == ((s * w).length < w.length)

    def test_reduced_word_reconstructs(self):
        for w in elements_by_length(4):
            assert Perm.from_word(w.reduced_word(), 4) == w

    def test_sign_and_involutions(self):
        w0 = Perm.longest(4)
        assert w0.sign == 1 and w0.length == 6
        assert w0.is_involution()
        assert Perm.from_word("s1 s2", 3).sign == 1
        assert Perm.transposition(3, 1).sign == -1
        assert sum(1 for w in elements_by_length(4) if w.is_involution()) == 10

    def test_cycle_type(self):
        assert Perm((2, 3, 1, 4)).cycle_type() == Partition((3, 1))
        assert Perm.identity(4).cycle_type() == Partition((1, 1, 1, 1))

    def test_renderings(self):
        w = Perm.from_word("s2 s3", 4)
        assert w.one_line_str() == "[1,3,4,2]"
        assert w.word_str() == "s2 s3"
        assert Perm.identity(3).word_str() == "e"

    def test_elements_by_length_order(self):
        elems = elements_by_length(4)
        assert len(elems) == 24
        assert elems[0] == Perm.identity(4)
        assert elems[-1] == Perm.longest(4)
        lengths = [w.length for w in elems]
        assert lengths == sorted(lengths)


class TestBruhat:
    def test_examples(self):
        s1 = Perm.from_word("s1", 3)
        s1s2 = Perm.from_word("s1 s2", 3)
        assert bruhat_leq(s1, s1s2)
        assert not bruhat_leq(s1s2, s1)
        assert bruhat_leq(s1, Perm.longest(3))

    def test_matches_subword_oracle(self):
        # Tableau criterion against the subword-product lower set, all of S_4.
        elems = elements_by_length(4)
        for w in elems:
            lower = bruhat_lower_set(w)
            for y in elems:
                assert bruhat_leq(y, w) == (y in lower)

    def test_order_axioms(self):
        elems = elements_by_length(3)
        for y, w in itertools.product(elems, elems):
            if bruhat_leq(y, w) and bruhat_leq(w, y):
                assert y == w
            if bruhat_leq(y, w) and y != w:
                assert y.length < w.length


class TestPartitions:
    def test_parse_render(self):
        lam = Partition.parse("3,1")
        assert lam.parts == (3, 1) and lam.size == 4
        assert lam.render() == "3,1"
        with pytest.raises(ValueError):
            Partition((1, 3))

    def test_counts(self):
        # p(n) for n = 1..6
        assert [len(all_partitions(n)) for n in range(1, 7)] == [1, 2, 3, 5, 7, 11]
        ps = all_partitions(4)
        assert ps[0] == Partition((4,)) and ps[-1] == Partition((1, 1, 1, 1))

    def test_conjugate(self):
        assert Partition((3, 1)).conjugate() == Partition((2, 1, 1))
        for n in range(1, 7):
            for lam in all_partitions(n):
                assert lam.conjugate().conjugate() == lam
                assert lam.conjugate().size == n

    def test_dominance_examples(self):
        assert dominance_leq(Partition((2, 2)), Partition((3, 1)))
        assert not dominance_leq(Partition((3, 1)), Partition((2, 2)))
        assert dominance_leq(Partition((2, 1, 1)), Partition((2, 2)))
        with pytest.raises(ValueError):
            dominance_leq(Partition((2,)), Partition((3,)))

    def test_conjugation_reverses_dominance(self):
        for n in range(2, 7):
            parts = all_partitions(n)
            for lam, mu in itertools.product(parts, parts):
                assert dominance_leq(lam, mu) == dominance_leq(
                    mu.conjugate(), lam.conjugate()
                )


class TestYoungData:
    def test_example_3_1(self):
        yd = young_data(Partition((3, 1)))
        assert sorted(yd.generator_indices) == [1, 2]
        assert yd.w_lambda.images == (3, 2, 1, 4)
        assert yd.poincare == Laurent.parse("1 + 2v^2 + 2v^4 + v^6")

    def test_w_lambda(self):
        for n in range(2, 7):
            for lam in all_partitions(n):
                w = young_data(lam).w_lambda
                assert w.is_involution()
                assert w.length == sum(p * (p - 1) // 2 for p in lam.parts)

    def test_poincare_brute_force(self):
        q = Laurent.monomial(2)
        for n in (3, 4):
            for lam in all_partitions(n):
                yd = young_data(lam)
                blocks, start = [], 1
                for p in lam.parts:
                    blocks.append(set(range(start, start + p)))
                    start += p
                total = Laurent.zero()
                for w in elements_by_length(n):
                    pos = 0
                    ok = True
                    for b in blocks:
                        if set(w.images[pos : pos + len(b)]) != b:
                            ok = False
                            break
                        pos += len(b)
                    if ok:
                        total = total + q**w.length
                assert total == yd.poincare
                # value at v=1 is the subgroup order
                assert yd.poincare.specialize(1) == math.prod(
                    math.factorial(p) for p in lam.parts
                )


class TestCosets:
    def test_representatives_3_1(self):
        reps = coset_reps(Partition((3, 1)))
        assert [x.word_str() for x in reps] == ["e", "s3", "s2 s3", "s1 s2 s3"]

    def test_sizes(self):
        for n in range(2, 6):
            for lam in all_partitions(n):
                assert len(coset_reps(lam)) == multinomial(n, lam.parts)

    def test_decompose_example(self):
        w = Perm.from_word("s2 s3 s1 s2 s1", 4)
        x, u = coset_decompose(w, Partition((3, 1)))
        assert x.word_str() == "s2 s3" and u.word_str() == "s1 s2 s1"

    def test_decompose_everywhere(self):
        for n in (3, 4):
            for lam in all_partitions(n):
                reps = set(coset_reps(lam))
                gens = young_data(lam).generator_indices
                for x in reps:
                    assert not (x.right_descents() & gens)
                for w in elements_by_length(n):
                    x, u = coset_decompose(w, lam)
                    assert x * u == w
                    assert x.length + u.length == w.length
                    assert x in reps


class TestTableaux:
    def test_validation(self):
        with pytest.raises(ValueError):
            StdTableau(((2, 1),))
        with pytest.raises(ValueError):
            StdTableau(((1, 2), (3, 4), (5, 6, 7)))
        with pytest.raises(ValueError):
            StdTableau(((2, 3), (1, 4)))

    def test_canonical_order_3_1(self):
        ts = std_tableaux(Partition((3, 1)))
        assert [t.render() for t in ts] == [
            "[[1,2,3],[4]]",
            "[[1,2,4],[3]]",
            "[[1,3,4],[2]]",
        ]
        assert [d_of_tableau(t).word_str() for t in ts] == ["e", "s3", "s2 s3"]

    def test_canonical_order_2_2(self):
        ts = std_tableaux(Partition((2, 2)))
        assert [t.render() for t in ts] == ["[[1,2],[3,4]]", "[[1,3],[2,4]]"]

    def test_first_is_canonical(self):
        for n in range(1, 7):
            for lam in all_partitions(n):
                ts = std_tableaux(lam)
                assert ts[0] == canonical_tableau(lam)
                assert d_of_tableau(ts[0]) == Perm.identity(n)

    def test_hook_length_oracle(self):
        for n in range(1, 7):
            for lam in all_partitions(n):
                assert len(std_tableaux(lam)) == hook_length_count(lam.parts)

    def test_sum_of_squares(self):
        for n in range(1, 7):
            total = sum(len(std_tableaux(lam)) ** 2 for lam in all_partitions(n))
            assert total == math.factorial(n)

    def test_d_values_are_coset_reps(self):
        for n in (3, 4, 5):
            for lam in all_partitions(n):
                reps = set(coset_reps(lam))
                for t in std_tableaux(lam):
                    d = d_of_tableau(t)
                    assert d in reps

    def test_transpose(self):
        t = StdTableau(((1, 3, 4), (2,)))
        assert t.transpose().render() == "[[1,2],[3],[4]]"
        for lam in all_partitions(5):
            for t in std_tableaux(lam):
                assert t.transpose().shape == t.shape.conjugate()
                assert t.transpose().transpose() == t

    def test_parse_roundtrip(self):
        t = StdTableau(((1, 2, 5), (3, 4)))
        assert StdTableau.parse(t.render()) == t


class TestRSK:
    def test_example(self):
        r = rsk(Perm((2, 1, 3)))
        assert r.p.render() == "[[1,3],[2]]"
        assert r.q.render() == "[[1,3],[2]]"
        assert r.shape == Partition((2, 1))

    def test_extremes(self):
        assert rsk(Perm.longest(4)).shape == Partition((1, 1, 1, 1))
        assert rsk(Perm.identity(4)).shape == Partition((4,))

    def test_roundtrip(self):
        for n in range(1, 7):
            for images in itertools.permutations(range(1, n + 1)):
                w = Perm(images)
                r = rsk(w)
                assert r.p.shape == r.q.shape == r.shape
                assert rsk_inverse(r.p, r.q) == w

    def test_inverse_swaps_tableaux(self):
        for n in range(1, 6):
            for images in itertools.permutations(range(1, n + 1)):
                w = Perm(images)
                r, ri = rsk(w), rsk(w.inverse())
                assert (ri.p, ri.q) == (r.q, r.p)

    def test_longest_young_element(self):
        # the longest element of each row stabilizer inserts to the transposed
        # canonical tableau, in both coordinates
        for n in range(2, 6):
            for lam in all_partitions(n):
                r = rsk(young_data(lam).w_lambda)
                expected = canonical_tableau(lam).transpose()
                assert r.p == r.q == expected
                assert r.shape == lam.conjugate()

    def test_bijectivity(self):
        seen = set()
        for images in itertools.permutations(range(1, 6)):
            r = rsk(Perm(images))
            seen.add((r.p, r.q))
        assert len(seen) == 120
