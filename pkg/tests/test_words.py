"""Tests for free words, Fox calculus and presentations (polytope_invariants/words.py)."""

import unittest

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from sympy import ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_form

from polytope_invariants.errors import InputError, UnsupportedError, ValidationError
from polytope_invariants.lattice import hull
from polytope_invariants.words import (
    ONE,
    ZERO,
    AbelianizationMap,
    FreeWord,
    FreeWordSum,
    abelianize_fibers,
    cyclic_reduce,
    fox_derivative,
    generator_minus_one,
    is_cyclically_reduced,
    is_proper_power,
    newton_polytope,
    parse_letters,
    parse_word,
    parse_word_sum,
    validate,
    walk_trace,
)
from tests.strategies import LETTERS, free_words

X_MINUS_1 = generator_minus_one("x")
Y_MINUS_1 = generator_minus_one("y")


class ParserTests(unittest.TestCase):
    def test_letters_and_inverses(self):
        self.assertEqual(str(parse_word("xyXY")), "xyXY")
        self.assertEqual(str(parse_word("x^-2 y")), "XXy")
        self.assertEqual(str(parse_word("x^+3")), "xxx")

    def test_groups_and_identity(self):
        self.assertEqual(str(parse_word("(xy)^3")), "xyxyxy")
        self.assertEqual(str(parse_word("(xy)^-1")), "YX")
        self.assertEqual(str(parse_word("x 1 X")), "1")
        self.assertEqual(parse_word("((x)(y))"), parse_word("xy"))

    def test_literal_letters_are_not_reduced(self):
        self.assertEqual(parse_letters("xX"), [("x", 1), ("x", -1)])

    def test_syntax_errors_carry_position(self):
        with self.assertRaises(InputError) as ctx:
            parse_word("xz")
        self.assertEqual(ctx.exception.code, "unknown_generator")
        self.assertEqual(ctx.exception.detail["position"], 1)
        for bad in ("x^", "(xy", "^2", "xy)"):
            with self.assertRaises(InputError, msg=bad):
                parse_word(bad)


class FreeWordTests(unittest.TestCase):
    def test_reduction_and_products(self):
        w = parse_word("xy")
        self.assertEqual(w * w.inverse(), FreeWord())
        self.assertEqual(str(w ** 2), "xyxy")
        self.assertEqual(str(w ** -1), "YX")
        self.assertEqual(w.exponent_vector(), (1, 1))

    def test_shortlex(self):
        words = [parse_word(s) for s in ("y", "X", "xx", "x", "1")]
        self.assertEqual([str(w) for w in sorted(words, key=FreeWord.sort_key)], ["1", "x", "X", "y", "xx"])

    def test_cyclic_reduction(self):
        self.assertEqual(str(cyclic_reduce(parse_word("Xyx"))), "y")
        self.assertEqual(str(cyclic_reduce(parse_word("yx"))), "xy")
        self.assertFalse(is_cyclically_reduced(parse_word("xyX")))
        self.assertTrue(is_cyclically_reduced(parse_word("xyXY")))

    def test_proper_power(self):
        self.assertTrue(is_proper_power(parse_word("xyxy")))
        self.assertFalse(is_proper_power(parse_word("xyXY")))
        with self.assertRaises(InputError):
            is_proper_power(FreeWord())


class WordSumTests(unittest.TestCase):
    def test_parse_and_print(self):
        self.assertEqual(str(parse_word_sum("1 + xy - xyxYX")), "1 + xy - xyxYX")
        self.assertEqual(str(parse_word_sum("2*x^2 - y")), "-y + 2*xx")
        self.assertEqual(str(Y_MINUS_1), "-1 + y")
        self.assertEqual(parse_word_sum("0"), ZERO)
        self.assertEqual(str(ZERO), "0")

    def test_parse_errors(self):
        for bad in ("x - - y", "x +", "x + + y"):
            with self.assertRaises(InputError, msg=bad):
                parse_word_sum(bad)

    def test_ring_operations(self):
        f = parse_word_sum("x - 1")
        self.assertEqual(f - f, ZERO)
        self.assertEqual(f * ONE, f)
        self.assertEqual(f * 3, parse_word_sum("3x - 3"))
        self.assertEqual(parse_word("y") * f, parse_word_sum("yx - y"))
        self.assertEqual(X_MINUS_1 * Y_MINUS_1, parse_word_sum("xy - x - y + 1"))


class FoxTests(unittest.TestCase):
    def test_trefoil(self):
        self.assertEqual(fox_derivative(parse_word("xyxYXY"), "x"), parse_word_sum("1 + xy - xyxYX"))

    def test_baumslag_solitar(self):
        self.assertEqual(fox_derivative(parse_word("yxYXX"), "x"), parse_word_sum("y - yxYX - yxYXX"))

    def test_generators(self):
        self.assertEqual(fox_derivative(parse_word("x"), "x"), ONE)
        self.assertEqual(fox_derivative(parse_word("X"), "x"), parse_word_sum("-X"))
        self.assertEqual(fox_derivative(parse_word("y"), "x"), ZERO)

    def test_linear_on_sums(self):
        f = parse_word_sum("xy - 2yx")
        self.assertEqual(fox_derivative(f, "x"), parse_word_sum("1 - 2y"))


class TestFoxIdentities:
    @settings(max_examples=500, deadline=None)
    @given(free_words(), free_words())
    def test_product_rule_and_fundamental_identity(self, u, v):
        for gen in ("x", "y"):
            assert fox_derivative(u * v, gen) == fox_derivative(u, gen) + u * fox_derivative(v, gen)
        lhs = FreeWordSum.of(u) - ONE
        rhs = fox_derivative(u, "x") * X_MINUS_1 + fox_derivative(u, "y") * Y_MINUS_1
        assert lhs == rhs


raw_letters = st.lists(LETTERS, max_size=12)


def spelled(letters) -> str:
    return "".join(g if s > 0 else g.upper() for g, s in letters) or "1"


class TestFreeReduction:
    @settings(max_examples=300, deadline=None)
    @given(raw_letters, raw_letters, st.sampled_from(["x", "y"]))
    def test_reduction_is_confluent(self, a, b, gen):
        whole = FreeWord(tuple(a + b))
        assert FreeWord(tuple(a)) * FreeWord(tuple(b)) == whole
        assert parse_word(f"({spelled(a)})({spelled(b)})") == whole
        assert parse_word(spelled(a + b)) == whole
        assert FreeWord(tuple(a + [(gen, 1), (gen, -1)] + b)) == whole
        assert FreeWord(tuple(a + [(gen, -1), (gen, 1)] + b)) == whole

    @settings(max_examples=300, deadline=None)
    @given(raw_letters.filter(bool), st.integers(min_value=0, max_value=11))
    def test_cyclic_reduction_ignores_rotation(self, letters, shift):
        k = shift % len(letters)
        rotated = letters[k:] + letters[:k]
        assert cyclic_reduce(FreeWord(tuple(rotated))) == cyclic_reduce(FreeWord(tuple(letters)))


class AbelianizationTests(unittest.TestCase):
    def test_from_relations(self):
        self.assertEqual(AbelianizationMap.from_relations([(0, 0)]).matrix, ((1, 0), (0, 1)))
        self.assertEqual(AbelianizationMap.from_relations([(1, -1)]).matrix, ((1, 1),))
        self.assertEqual(AbelianizationMap.from_relations([(-1, 0)]).matrix, ((0, 1),))
        self.assertEqual(AbelianizationMap.from_relations([(2, 4)]).matrix, ((2, -1),))
        self.assertEqual(AbelianizationMap.from_relations([(1, 0), (0, 1)]).rank, 0)

    def test_fibers_and_newton_polytope(self):
        A = AbelianizationMap.identity()
        f = fox_derivative(parse_word("xyXY"), "y")
        fibers = abelianize_fibers(f, A)
        self.assertEqual(sorted(fibers), [(0, 0), (1, 0)])
        self.assertEqual(newton_polytope(f, A), hull([(0, 0), (1, 0)]))

    def test_distinct_words_in_one_fiber_do_not_cancel(self):
        f = parse_word_sum("xy - yx")
        A = AbelianizationMap.identity()
        self.assertEqual(list(abelianize_fibers(f, A)), [(1, 1)])
        self.assertEqual(newton_polytope(f, A), hull([(1, 1)]))

    def test_newton_polytope_errors(self):
        with self.assertRaises(UnsupportedError):
            newton_polytope(ONE, AbelianizationMap(()))
        with self.assertRaises(InputError):
            newton_polytope(ZERO, AbelianizationMap.identity())

    def test_walk_trace(self):
        self.assertEqual(
            walk_trace(parse_word("xyXY")),
            [(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)],
        )


class PresentationTests(unittest.TestCase):
    def test_commutator_is_nice(self):
        p = validate("<x,y|xyXY>")
        self.assertTrue(p.nice)
        self.assertEqual(p.b1, 2)
        self.assertFalse(p.proper_power)

    def test_trefoil_has_b1_one(self):
        p = validate("xyxYXY")
        self.assertEqual(p.b1, 1)
        self.assertEqual(p.abelianization.matrix, ((1, 1),))
        with self.assertRaises(ValidationError) as ctx:
            p.require_nice()
        self.assertEqual(ctx.exception.code, "not_nice")

    def test_flags(self):
        self.assertFalse(validate("xxXy").reduced)
        self.assertFalse(validate("xyX").cyclically_reduced)
        self.assertFalse(validate("xX").nonempty)
        self.assertTrue(validate("xyXYxyXY").proper_power)
        with self.assertRaises(ValidationError) as ctx:
            validate("xyX").require_cyclically_reduced()
        self.assertEqual(ctx.exception.code, "not_reduced")

    def test_malformed(self):
        with self.assertRaises(InputError) as ctx:
            validate("")
        self.assertEqual(ctx.exception.code, "empty_relator")
        with self.assertRaises(InputError):
            validate("<x,y,z|xyz>")
        with self.assertRaises(InputError):
            validate("<x,y|xy")


class TestBettiOracle:
    @settings(max_examples=200, deadline=None)
    @given(free_words(max_size=14))
    def test_b1_matches_smith_normal_form(self, w):
        assume(len(w) > 0)
        p = validate(str(w))
        snf = smith_normal_form(Matrix([list(w.exponent_vector())]), domain=ZZ)
        rank = sum(1 for i in range(min(snf.shape)) if snf[i, i] != 0)
        assert p.b1 == 2 - rank


if __name__ == "__main__":
    pytest.main([__file__])
