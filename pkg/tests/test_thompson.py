"""Tree-pair arithmetic: frozen leaf maps, group axioms, parity, canonical forms."""

import itertools
from random import Random

import pytest

from quotkit import thompson as T
from quotkit.thompson import (
    EPSILON,
    GenWord,
    VnElement,
    complete_tree,
    d_element,
    generator,
    involution_word,
    parse_address,
    pull_up,
    pull_up2,
    random_element,
    sym_word,
    transposition_element,
    transposition_word,
)


def elem(n, text_pairs):
    return VnElement.from_map(
        n, {parse_address(a): parse_address(b) for a, b in text_pairs}
    )


# leaf maps of the four standard involutions for arity 3, frozen
B1_MAP = [
    ("00", "22"), ("01", "21"), ("02", "20"),
    ("10", "12"), ("11", "11"), ("12", "10"),
    ("20", "02"), ("21", "01"), ("22", "00"),
]
B2_MAP = [
    ("00", "00"), ("01", "22"), ("02", "21"),
    ("10", "20"), ("11", "12"), ("12", "11"),
    ("20", "10"), ("21", "02"), ("22", "01"),
]
B3_MAP = [
    ("00", "01"), ("01", "00"), ("02", "02"),
    ("10", "10"), ("11", "11"), ("12", "12"),
    ("20", "20"), ("21", "21"), ("22", "22"),
]
B4_MAP = [("00", "1"), ("01", "01"), ("02", "02"), ("1", "00"), ("2", "2")]

NINE_CYCLE = [
    ("00", "01"), ("01", "02"), ("02", "10"),
    ("10", "11"), ("11", "12"), ("12", "20"),
    ("20", "21"), ("21", "22"), ("22", "00"),
]


class TestGenerators:
    def test_frozen_maps(self):
        assert generator(3, 1) == elem(3, B1_MAP)
        assert generator(3, 2) == elem(3, B2_MAP)
        assert generator(3, 3) == elem(3, B3_MAP)
        assert generator(3, 4) == elem(3, B4_MAP)

    def test_b3_b4_canonical_leaves(self):
        b3 = generator(3, 3)
        assert b3.to_text() == "n=3; dom=[00,01,02,1,2]; map=[01,00,02,1,2]"
        b4 = generator(3, 4)
        assert b4.to_text() == "n=3; dom=[00,01,02,1,2]; map=[1,01,02,00,2]"

    def test_involutions(self):
        for n in (3, 4, 5):
            for i in (1, 2, 3, 4):
                b = generator(n, i)
                assert b * b == VnElement.identity(n)
                # canonical involutions are bit-for-bit self-inverse
                assert b.inverse().dom == b.dom and b.inverse().img == b.img

    def test_nine_cycle(self):
        c = generator(3, 1) * generator(3, 2)
        assert c == elem(3, NINE_CYCLE)
        assert c.order(10) == 9

    def test_arity_two_rejected(self):
        with pytest.raises(ValueError):
            generator(2, 1)
        with pytest.raises(ValueError):
            pull_up(2)


class TestCompose:
    def test_b3_squares_to_identity(self):
        b3 = generator(3, 3)
        assert (b3 * b3).is_identity()

    def test_inverse_law(self):
        rng = Random(7)
        for n in (2, 3, 4):
            for _ in range(25):
                x = random_element(rng, n, 20)
                assert (x * x.inverse()).is_identity()
                assert (x.inverse() * x).is_identity()

    def test_invert_nine_cycle(self):
        c = generator(3, 1) * generator(3, 2)
        reverse = elem(3, [(b, a) for a, b in NINE_CYCLE])
        assert c.inverse() == reverse

    def test_arity_mismatch(self):
        with pytest.raises(T.ArityMismatch):
            generator(3, 1) * generator(4, 1)

    def test_group_axioms_random(self):
        rng = Random(1234)
        for n in (2, 3, 4, 5):
            e = VnElement.identity(n)
            for _ in range(40):
                x = random_element(rng, n, 30)
                y = random_element(rng, n, 30)
                z = random_element(rng, n, 30)
                assert (x * y) * z == x * (y * z)
                assert x * e == x and e * x == x
                assert x * x.inverse() == e


class TestCanonical:
    def test_block_lift_collapses(self):
        # a depth-1 permutation and its digit-preserving depth-2 lift agree
        n = 3
        images = (2, 0, 1)
        lift = {(i, j): (images[i], j) for i in range(n) for j in range(n)}
        direct = VnElement.from_map(n, {(i,): (images[i],) for i in range(n)})
        lifted = VnElement.from_map(n, lift)
        assert not lifted.is_canonical
        assert lifted.canonical().num_leaves == 3
        assert lifted == direct

    def test_expand_identity(self):
        e = VnElement.identity(3)
        assert e.expand(EPSILON).canonical() == e

    def test_expand_round_trip(self):
        # the 9-leaf representative of the 00/01 swap expands at leaf 10
        rep = elem(3, B3_MAP)
        x = rep.expand(parse_address("10"))
        assert x.num_leaves == 11
        assert x.canonical() == generator(3, 3)
        b4 = generator(3, 4)
        y = b4.expand(parse_address("2"))
        assert y.canonical() == b4

    def test_expand_missing_leaf(self):
        with pytest.raises(ValueError):
            generator(3, 4).expand(parse_address("10"))

    def test_random_expansion_confluence(self):
        rng = Random(99)
        for n in (2, 3, 4):
            for _ in range(30):
                x = random_element(rng, n, 15).canonical()
                y = x
                for _ in range(rng.randrange(1, 5)):
                    leaf = y.dom[rng.randrange(y.num_leaves)]
                    y = y.expand(leaf)
                # collapse order does not matter: canonical form identical
                c = y.canonical()
                assert c.dom == x.dom and c.img == x.img

    def test_canonical_involution_equal_trees(self):
        rng = Random(5)
        for n in (3, 4):
            for _ in range(20):
                x = random_element(rng, n, 12)
                w = (x.inverse() * generator(n, 3) * x).canonical()
                assert w * w == VnElement.identity(n)
                assert w.dom == tuple(sorted(w.img))


class TestParity:
    def test_depth1_swap_is_odd(self):
        swap = transposition_element(3, (0,), (1,))
        assert swap.parity() == "odd"
        assert swap.class_parity() == "odd"

    def test_identity_even(self):
        assert VnElement.identity(3).class_parity() == "even"

    def test_b1_even_b3_odd(self):
        # brute inversion count for b1: all 36 pairs of distinct leaves invert
        b1 = elem(3, B1_MAP)
        inv = sum(
            1
            for i, j in itertools.combinations(range(9), 2)
            if b1.img[i] > b1.img[j]
        )
        assert inv == 36
        assert b1.class_parity() == "even"
        assert generator(3, 3).class_parity() == "odd"

    def test_disjoint_transpositions_even(self):
        x = transposition_element(3, (0, 0), (0, 1)) * transposition_element(
            3, (1, 0), (1, 1)
        )
        assert x.class_parity() == "even"

    def test_even_arity_rejected(self):
        with pytest.raises(ValueError):
            VnElement.identity(4).class_parity()

    def test_class_invariance_odd_arity(self):
        rng = Random(31)
        for n in (3, 5):
            for _ in range(30):
                x = random_element(rng, n, 12)
                p = x.parity()
                for leaf in x.dom:
                    assert x.expand(leaf).parity() == p

    def test_parity_homomorphism_odd_arity(self):
        rng = Random(8)
        signs = {"even": 0, "odd": 1}
        for n in (3, 5):
            for _ in range(25):
                x = random_element(rng, n, 12)
                y = random_element(rng, n, 12)
                assert signs[(x * y).class_parity()] == (
                    signs[x.class_parity()] + signs[y.class_parity()]
                ) % 2

    def test_parity_not_invariant_arity4(self):
        # exhaustive witness search at the smallest size
        n = 4
        found = None
        leaves = [(i,) for i in range(n)]
        for images in itertools.permutations(range(n)):
            x = VnElement.from_map(n, {(i,): (images[i],) for i in range(n)})
            for leaf in leaves:
                if x.expand(leaf).parity() != x.parity():
                    found = (images, leaf)
                    break
            if found:
                break
        assert found is not None


class TestSpecialElements:
    def test_pull_up_map(self):
        up = pull_up(3)
        assert up.apply(parse_address("00")) == parse_address("0")
        assert up.apply(parse_address("01")) == parse_address("10")
        assert (up * up.inverse()).is_identity()

    def test_pull_up_composition(self):
        # up = b4, then the level-1 swap of 0 and 1, then the swap of 10 and 11
        for n in (3, 4):
            comp = (
                generator(n, 4)
                * transposition_element(n, (0,), (1,))
                * transposition_element(n, (1, 0), (1, 1))
            )
            assert comp == pull_up(n)

    def test_pull_up2_map(self):
        up2 = pull_up2(3)
        assert up2.apply(parse_address("02")) == parse_address("20")
        assert (up2 * up2.inverse()).is_identity()

    def test_pull_up2_composition(self):
        for n in (3, 4):
            c = transposition_element(n, (1,), (2,))
            comp = (
                c
                * generator(n, 4)
                * c
                * transposition_element(n, (0,), (2,))
                * transposition_element(n, (2, 0), (2, 2))
            )
            assert comp == pull_up2(n)

    def test_d_element(self):
        assert d_element(3, 2, 0) == generator(3, 4)
        up2 = pull_up2(3)
        assert d_element(3, 3, 0) == up2 * generator(3, 4) * up2.inverse()
        assert d_element(3, 1, 1) == generator(3, 3)

    def test_transposition_element(self):
        assert transposition_element(3, (0, 0), (0, 1)) == generator(3, 3)
        with pytest.raises(ValueError):
            transposition_element(3, (0, 1), (0, 1))
        with pytest.raises(ValueError):
            transposition_element(3, (0,), (0, 1))

    def test_mixed_depth_transposition_fixed_points(self):
        t = transposition_element(3, (0, 0, 0), (2, 1))
        # brute evaluation on every leaf of the support tree
        for leaf in t.dom:
            expected = (
                (2, 1)
                if leaf == (0, 0, 0)
                else (0, 0, 0) if leaf == (2, 1) else leaf
            )
            assert t.apply(leaf) == expected
        assert t.num_leaves == 9

    def test_element_order(self):
        assert generator(3, 3).order(10) == 2
        assert VnElement.identity(3).order(1) == 1
        assert (generator(3, 1) * generator(3, 2)).order(8) == "exceeds-bound"
        assert pull_up(3).order(40) == "exceeds-bound"


class TestWords:
    def test_sym_word_level1(self):
        perm = {(i,): (i,) for i in range(3)}
        perm[(0,)], perm[(1,)] = (1,), (0,)
        w = sym_word(3, 1, perm)
        assert w.evaluate() == transposition_element(3, (0,), (1,))

    def test_sym_word_identity_empty(self):
        perm = {leaf: leaf for leaf in complete_tree(3, 2)}
        w = sym_word(3, 2, perm)
        assert len(w) == 0
        assert w.evaluate().is_identity()

    def test_sym_word_depth3(self):
        leaves = complete_tree(3, 3)
        perm = {leaf: leaf for leaf in leaves}
        perm[(0, 0, 0)], perm[(0, 0, 1)] = (0, 0, 1), (0, 0, 0)
        w = sym_word(3, 3, perm)
        assert w.evaluate() == transposition_element(3, (0, 0, 0), (0, 0, 1))

    def test_sym_word_random_perm(self):
        rng = Random(17)
        for n, k in ((3, 2), (4, 2), (3, 3)):
            leaves = list(complete_tree(n, k))
            images = leaves[:]
            rng.shuffle(images)
            perm = dict(zip(leaves, images))
            assert sym_word(n, k, perm).evaluate() == VnElement.from_map(n, perm)

    def test_transposition_word_oracle(self):
        cases = [
            (3, "00", "01"),
            (3, "0", "1"),
            (3, "012", "20"),
            (3, "000", "21"),
            (4, "012", "3"),
            (4, "00", "23"),
        ]
        for n, a, b in cases:
            aa, bb = parse_address(a), parse_address(b)
            w = transposition_word(n, aa, bb)
            assert w.evaluate() == transposition_element(n, aa, bb)

    def test_transposition_word_d_family(self):
        for m in (1, 2, 3):
            w = transposition_word(3, (0,) * m, (1,))
            assert w.evaluate() == d_element(3, m, 0)

    def test_d_word(self):
        for m in (1, 2, 3, 4):
            for p in (0, 1, 2):
                assert T.d_word(3, m, p).evaluate() == d_element(3, m, p)

    def test_involution_words(self):
        for i in (1, 2, 3, 4):
            b = generator(3, i)
            assert involution_word(b).evaluate() == b
        assert len(involution_word(VnElement.identity(3))) == 0

    def test_involution_word_rejects_non_involution(self):
        with pytest.raises(ValueError):
            involution_word(generator(3, 1) * generator(3, 2))

    def test_word_inverse_is_reverse(self):
        w = GenWord(3, (1, 2, 3, 4, 2))
        assert (w * w.inverse()).evaluate().is_identity()


class TestSerialization:
    def test_round_trip(self):
        rng = Random(3)
        for n in (2, 3, 5):
            for _ in range(10):
                x = random_element(rng, n, 14)
                assert VnElement.from_text(x.to_text()) == x

    def test_identity_text(self):
        assert VnElement.identity(3).to_text() == "n=3; dom=[e]; map=[e]"

    def test_bad_text(self):
        with pytest.raises(ValueError):
            VnElement.from_text("nope")

    def test_parse_element_word(self):
        x = T.parse_element_word(3, "b1 b2")
        assert x == elem(3, NINE_CYCLE)
        y = T.parse_element_word(3, "up d(2,0) up2 t(00,01)")
        expected = (
            pull_up(3) * d_element(3, 2, 0) * pull_up2(3) * generator(3, 3)
        )
        assert y == expected
        with pytest.raises(ValueError):
            T.parse_element_word(3, "b5")


class TestValidation:
    def test_not_a_tree(self):
        with pytest.raises(T.NotATree):
            VnElement(2, ((0,),), ((0,),))

    def test_digit_range(self):
        with pytest.raises(T.NotATree):
            VnElement(2, ((0,), (1,), (2,)), ((0,), (1,), (2,)))

    def test_non_injective(self):
        with pytest.raises(ValueError):
            VnElement(2, ((0,), (1,)), ((0,), (0,)))


def test_generation_report_smoke():
    r = T.generation_report(3, max_depth=3, m_max=3, p_max=2, word_samples=6)
    assert r["all_passed"]
    names = [c["claim"] for c in r["claims"]]
    assert "transposition-pattern" in names and "d-shifted" in names
