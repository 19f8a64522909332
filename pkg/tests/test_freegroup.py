import random

import pytest

from torelli.errors import GenusMismatch, InvalidAutomorphism, InvalidWord
from torelli.freegroup import (
    SurfaceAutomorphism,
    Word,
    abelianize,
    apply,
    automorphisms_equal,
    commutator,
    compose,
    format_automorphism,
    format_word,
    generator,
    identity_automorphism,
    lcs_class2,
    parse_automorphism,
    parse_word,
    preserves_relator,
    reduce,
    relator,
    x,
    y,
)
from torelli.symplectic import wedge2_of


def random_word(rng, genus, length):
    return Word(
        tuple(rng.choice([1, -1]) * rng.randrange(1, 2 * genus + 1) for _ in range(length))
    )


class TestReduce:
    def test_free_cancellation(self):
        assert reduce([1, -1]).is_identity()

    def test_inner_cancellation(self):
        assert reduce([1, 2, -2, 3]).letters == (1, 3)

    def test_already_reduced(self):
        w = commutator(x(1), y(1))
        assert reduce(w.letters).letters == w.letters

    def test_idempotent_and_nonincreasing(self):
        rng = random.Random(0)
        for _ in range(200):
            raw = tuple(rng.choice([1, -1, 2, -2, 3, -3]) for _ in range(rng.randrange(0, 40)))
            once = reduce(raw)
            assert len(once) <= len(raw)
            assert reduce(once.letters).letters == once.letters


class TestWordStrings:
    def test_round_trip(self):
        w = parse_word("x1*y1*x1^-1*y1^-1")
        assert w.letters == (1, 2, -1, -2)
        assert format_word(w) == "x1*y1*x1^-1*y1^-1"

    def test_identity_serializes_as_one(self):
        assert format_word(Word(())) == "1"
        assert parse_word("1").is_identity()

    def test_powers_in_input(self):
        assert parse_word("x1^3*y2^-2").letters == (1, 1, 1, -4, -4)

    def test_bad_tokens(self):
        for bad in ("z1", "x0*y1", "x1^a"):
            with pytest.raises(InvalidWord):
                parse_word(bad)


class TestAbelianize:
    def test_commutator_dies(self):
        assert abelianize(commutator(x(1), y(1)), 2) == (0, 0, 0, 0)

    def test_exponent_count(self):
        w = parse_word("x1^2*y3^-1")
        assert abelianize(w, 3) == (2, 0, 0, 0, 0, -1)

    def test_relator_dies(self):
        for g in (2, 3):
            assert abelianize(relator(g), g) == (0,) * (2 * g)

    def test_homomorphism(self):
        rng = random.Random(1)
        for _ in range(100):
            u = random_word(rng, 2, rng.randrange(0, 15))
            v = random_word(rng, 2, rng.randrange(0, 15))
            left = abelianize(u * v, 2)
            right = tuple(a + b for a, b in zip(abelianize(u, 2), abelianize(v, 2)))
            assert left == right


class TestLcsClass2:
    def test_basic_commutator(self):
        w2 = lcs_class2(commutator(x(1), y(1)), 2)
        assert str(w2) == "a1^b1"

    def test_inverse_letter(self):
        w2 = lcs_class2(commutator(x(2), x(3).inverse()), 3)
        assert str(w2) == "-a2^a3"

    def test_depth3_vanishes(self):
        w = commutator(commutator(x(1), y(1)), x(2))
        assert lcs_class2(w, 2).is_zero()

    def test_requires_trivial_abelianization(self):
        with pytest.raises(InvalidWord):
            lcs_class2(x(1), 2)

    def test_commutator_oracle(self):
        # the class of [u, v] is the wedge of the abelianizations
        rng = random.Random(2)
        for _ in range(200):
            u = random_word(rng, 3, rng.randrange(1, 10))
            v = random_word(rng, 3, rng.randrange(1, 10))
            got = lcs_class2(commutator(u, v), 3)
            want = wedge2_of(abelianize(u, 3), abelianize(v, 3))
            assert got.coeffs == want.coeffs

    def test_additive_on_commutator_subgroup(self):
        rng = random.Random(3)
        gens = [1, 2, 3, 4, 5, 6]
        for _ in range(50):
            basics = []
            for _ in range(2):
                i, j = rng.sample(gens, 2)
                basics.append(commutator(generator(i), generator(j)))
            u, v = basics
            got = lcs_class2(u * v, 3)
            want = lcs_class2(u, 3) + lcs_class2(v, 3)
            assert got.coeffs == want.coeffs


def twist_alpha1(genus=2):
    imgs = [generator(k) for k in range(1, 2 * genus + 1)]
    invs = [generator(k) for k in range(1, 2 * genus + 1)]
    imgs[1] = y(1) * x(1).inverse()
    invs[1] = y(1) * x(1)
    return SurfaceAutomorphism(genus, tuple(imgs), tuple(invs))


class TestAutomorphisms:
    def test_identity_applies_trivially(self):
        ida = identity_automorphism(2)
        w = parse_word("x1*y2^-1*x2")
        assert apply(ida, w).letters == w.letters

    def test_substitution_of_inverse_letter(self):
        aut = twist_alpha1()
        # y1 -> y1 x1^-1 forces y1^-1 -> x1 y1^-1
        assert apply(aut, y(1).inverse()).letters == (1, -2)

    def test_inverse_round_trip(self):
        aut = twist_alpha1()
        rng = random.Random(4)
        for _ in range(100):
            w = random_word(rng, 2, rng.randrange(0, 25))
            assert apply(aut, apply(aut.inverse(), w)).letters == w.letters

    def test_validation_rejects_bad_inverse(self):
        imgs = [generator(k) for k in range(1, 5)]
        invs = [generator(k) for k in range(1, 5)]
        imgs[1] = y(1) * x(1).inverse()
        invs[1] = y(1)  # wrong
        with pytest.raises(InvalidAutomorphism):
            SurfaceAutomorphism(2, tuple(imgs), tuple(invs))

    def test_validation_rejects_relator_breakage(self):
        # x1 -> x1 y1 with correct inverse but declared fixes-relator: the
        # twist formula with the wrong insertion side moves the relator
        imgs = [generator(k) for k in range(1, 5)]
        invs = [generator(k) for k in range(1, 5)]
        imgs[0] = y(1) * x(1)
        invs[0] = y(1).inverse() * x(1)
        with pytest.raises(InvalidAutomorphism):
            SurfaceAutomorphism(2, tuple(imgs), tuple(invs))

    def test_genus_mismatch(self):
        aut = twist_alpha1()
        with pytest.raises(GenusMismatch):
            apply(aut, parse_word("x3"))

    def test_compose_identity_and_inverse(self):
        aut = twist_alpha1()
        ida = identity_automorphism(2)
        assert automorphisms_equal(compose(aut, ida), aut)
        assert automorphisms_equal(compose(aut, aut.inverse()), ida)

    def test_apply_preserves_commutator_subgroup(self):
        aut = twist_alpha1()
        rng = random.Random(5)
        for _ in range(50):
            u = random_word(rng, 2, 8)
            v = random_word(rng, 2, 8)
            w = commutator(u, v)
            assert abelianize(apply(aut, w), 2) == (0, 0, 0, 0)

    def test_serialization_round_trip(self):
        aut = twist_alpha1()
        text = format_automorphism(aut)
        back = parse_automorphism(text)
        assert automorphisms_equal(aut, back)
        assert back.boundary_mode == aut.boundary_mode


class TestPreservesRelator:
    def test_identity_fixed(self):
        assert preserves_relator(identity_automorphism(3)) == "fixed"

    def test_inner_is_conjugate(self):
        g = 2
        conj = SurfaceAutomorphism(
            g,
            tuple(x(1) * generator(k) * x(1).inverse() for k in range(1, 5)),
            tuple(x(1).inverse() * generator(k) * x(1) for k in range(1, 5)),
            boundary_mode="preserves-relator-conjugacy",
        )
        assert preserves_relator(conj) == "conjugate"

    def test_non_geometric_endomorphism(self):
        images = (x(1) * x(1), y(1), x(2), y(2))
        assert preserves_relator(2, images) == "no"
