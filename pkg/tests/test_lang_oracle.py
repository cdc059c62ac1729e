"""
Unit tests for the bounded language oracle
"""

import itertools
import math
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings

sys.path.insert(0, str(Path(__file__).parent.parent))

from core.errors import OracleCapError
from core.lang_oracle import (BoundedLang, as_word, bounded_language,
                              left_quotient, make_language, member_bruteforce,
                              quotient_by_word, shuffle_languages, shuffle_words,
                              union_languages, words_up_to)
from core.syntax import EMPTY, EPS, Alphabet, shuffle, star
from tests.strategies import exprs
from utils.expr_parser import parse


class TestWords:
    """Word helpers and the shuffle of words"""

    def test_as_word(self):
        assert as_word("a1a2b") == ("a1", "a2", "b")
        assert as_word("") == ()
        assert as_word(["a", "b"]) == ("a", "b")

    def test_as_word_rejects_garbage(self):
        with pytest.raises(ValueError):
            as_word("a-b")

    def test_shuffle_words(self):
        assert shuffle_words(("a", "b"), ("c",)) == {
            ("a", "b", "c"), ("a", "c", "b"), ("c", "a", "b")}

    def test_shuffle_with_empty(self):
        assert shuffle_words(("a", "b"), ()) == {("a", "b")}
        assert shuffle_words((), ()) == {()}

    def test_shuffle_count(self):
        # C(6, 3) interleavings of distinct letters
        assert len(shuffle_words(tuple("abc"), tuple("def"))) == 20

    def test_shuffle_count_disjoint(self):
        for i, j in itertools.product(range(6), repeat=2):
            x, y = tuple("abcde"[:i]), tuple("fghij"[:j])
            assert len(shuffle_words(x, y)) == math.comb(i + j, i)

    def test_shuffle_count_shared(self):
        words = list(words_up_to(Alphabet.standard(2), 4))
        for x, y in itertools.product(words, repeat=2):
            assert len(shuffle_words(x, y)) <= math.comb(len(x) + len(y), len(x))

    def test_shuffle_commutative(self):
        words = list(words_up_to(Alphabet.standard(2), 3))
        for x, y in itertools.product(words, repeat=2):
            assert shuffle_words(x, y) == shuffle_words(y, x)

    def test_shuffle_associative(self):
        words = list(words_up_to(Alphabet.standard(2), 2))
        for x, y, z in itertools.product(words, repeat=3):
            left = set().union(*(shuffle_words(w, z) for w in shuffle_words(x, y)))
            right = set().union(*(shuffle_words(x, w) for w in shuffle_words(y, z)))
            assert left == right

    def test_words_up_to(self):
        words = list(words_up_to(Alphabet.standard(2), 2))
        assert words == [(), ("a",), ("b",), ("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")]


class TestBoundedLanguage:
    """L(e) truncated at a length"""

    def test_base_cases(self):
        assert bounded_language(EMPTY, 3).words == frozenset()
        assert bounded_language(EPS, 3).words == {()}
        assert bounded_language(parse("a"), 0).words == frozenset()

    def test_shuffle(self):
        assert bounded_language(parse("a # b"), 2).words == {("a", "b"), ("b", "a")}

    def test_star(self):
        assert len(bounded_language(parse("a*"), 3)) == 4
        assert len(bounded_language(parse("(a + b)*"), 3)) == 15

    def test_concat_and_union(self):
        lang = bounded_language(parse("a . b + c"), 2)
        assert lang.words == {("a", "b"), ("c",)}

    def test_shuffle_star(self):
        lang = bounded_language(parse("(a . b)* # c"), 3)
        assert lang.words == {("c",), ("a", "b", "c"), ("a", "c", "b"), ("c", "a", "b")}

    def test_length_cap(self):
        with pytest.raises(OracleCapError):
            bounded_language(parse("a"), 13)
        assert len(bounded_language(parse("a*"), 13, max_length=13)) == 14

    def test_word_guard(self):
        with pytest.raises(OracleCapError):
            bounded_language(parse("(a + b)*"), 10, max_words=100)

    @settings(max_examples=60, deadline=None)
    @given(exprs, exprs)
    def test_nullable_shuffle_contains_left(self, alpha, beta):
        if not beta.nullable:
            beta = star(beta)
        lang = bounded_language(alpha, 5).words
        assert lang <= bounded_language(shuffle(alpha, beta), 5).words

    def test_member(self):
        assert member_bruteforce(parse("a # b"), "ba")
        assert not member_bruteforce(parse("a . b"), "ba")


class TestQuotients:
    """Left quotients"""

    def test_left_quotient(self):
        lang = make_language(["ab", "ac", "b"], 2)
        assert left_quotient(lang, "a").words == {("b",), ("c",)}
        assert left_quotient(lang, "a").limit == 1

    def test_quotient_needs_length(self):
        with pytest.raises(ValueError):
            left_quotient(BoundedLang(0, frozenset()), "a")

    def test_quotient_by_word(self):
        lang = bounded_language(parse("a . b . c"), 3)
        assert quotient_by_word(lang, "ab").words == {("c",)}
        assert quotient_by_word(lang, "") == lang

    def test_shuffle_quotient_identity(self):
        l1 = bounded_language(parse("a* . b"), 5)
        l2 = bounded_language(parse("c # a"), 5)
        lhs = left_quotient(shuffle_languages(l1, l2, 5), "a")
        rhs = union_languages(
            shuffle_languages(left_quotient(l1, "a"), l2, 4),
            shuffle_languages(l1, left_quotient(l2, "a"), 4),
        )
        assert lhs == rhs


class TestBoundedLang:
    """Value object checks"""

    def test_rejects_long_word(self):
        with pytest.raises(ValueError):
            BoundedLang(1, frozenset([("a", "b")]))

    def test_restrict(self):
        lang = bounded_language(parse("a*"), 4).restrict(2)
        assert lang.words == {(), ("a",), ("a", "a")}


if __name__ == "__main__":
    pytest.main([__file__, "-v"])
