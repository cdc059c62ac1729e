"""
Language Oracle - bounded-length language semantics
Brute-force ground truth: L(e) ∩ Σ^{≤ℓ} by structural recursion, truncating
at every node.
"""

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Iterator, Optional, Tuple

from core.errors import OracleCapError
from core.syntax import Alphabet, Expr, ExprSet, Op, SYMBOL_PATTERN, Symbol
from utils.config import setting

Word = Tuple[str, ...]
EMPTY_WORD: Word = ()


@dataclass(frozen=True)
class BoundedLang:
    """A language truncated to words of length <= limit"""
    limit: int
    words: FrozenSet[Word]

    def __post_init__(self):
        if self.limit < 0:
            raise ValueError(f"Negative length limit: {self.limit}")
        too_long = [w for w in self.words if len(w) > self.limit]
        if too_long:
            raise ValueError(f"Word {word_to_str(too_long[0])!r} longer than limit {self.limit}")

    def __contains__(self, word) -> bool:
        return as_word(word) in self.words

    def __len__(self) -> int:
        return len(self.words)

    def restrict(self, limit: int) -> "BoundedLang":
        """Same language, truncated further"""
        limit = min(limit, self.limit)
        return BoundedLang(limit, frozenset(w for w in self.words if len(w) <= limit))

    def sorted_words(self):
        return sorted(self.words, key=lambda w: (len(w), w))

    def __str__(self) -> str:
        shown = ", ".join(word_to_str(w) or 'ε' for w in self.sorted_words())
        return f"{{{shown}}} (≤{self.limit})"


def as_word(word) -> Word:
    """
    Normalise a word

    Accepts a tuple/list of symbol names or Symbols, or a string of
    concatenated symbol tokens ("a1a2b" -> ('a1', 'a2', 'b')).
    """
    if isinstance(word, str):
        tokens = SYMBOL_PATTERN.findall(word)
        if "".join(tokens) != word:
            raise ValueError(f"Not a word over [a-z][0-9]* symbols: {word!r}")
        return tuple(tokens)
    return tuple(s.name if isinstance(s, Symbol) else s for s in word)


def word_to_str(word: Word) -> str:
    return "".join(word)


def _max_words(max_words: Optional[int]) -> int:
    return setting('oracle', 'max_words', max_words)


def _guard(count: int, max_words: int):
    if count > max_words:
        raise OracleCapError("bounded language size", max_words)


@lru_cache(maxsize=1 << 16)
def shuffle_words(x: Word, y: Word) -> FrozenSet[Word]:
    """
    All interleavings of two words

    x ⧢ ε = ε ⧢ x = {x};  ax ⧢ by = a(x ⧢ by) ∪ b(ax ⧢ y)
    """
    x, y = as_word(x), as_word(y)
    if not x:
        return frozenset([y])
    if not y:
        return frozenset([x])
    left = {x[:1] + z for z in shuffle_words(x[1:], y)}
    right = {y[:1] + z for z in shuffle_words(x, y[1:])}
    return frozenset(left | right)


def union_languages(l1: BoundedLang, l2: BoundedLang) -> BoundedLang:
    limit = min(l1.limit, l2.limit)
    return BoundedLang(limit, frozenset(w for w in l1.words | l2.words if len(w) <= limit))


def concat_languages(l1: BoundedLang, l2: BoundedLang, limit: int,
                     max_words: Optional[int] = None) -> BoundedLang:
    """L1·L2 truncated to limit"""
    cap = _max_words(max_words)
    result = set()
    for x in l1.words:
        room = limit - len(x)
        if room < 0:
            continue
        for y in l2.words:
            if len(y) <= room:
                result.add(x + y)
        _guard(len(result), cap)
    return BoundedLang(limit, frozenset(result))


def shuffle_languages(l1: BoundedLang, l2: BoundedLang, limit: int,
                      max_words: Optional[int] = None) -> BoundedLang:
    """L1 ⧢ L2 truncated to limit"""
    cap = _max_words(max_words)
    result = set()
    for x in l1.words:
        room = limit - len(x)
        if room < 0:
            continue
        for y in l2.words:
            if len(y) <= room:
                result |= shuffle_words(x, y)
        _guard(len(result), cap)
    return BoundedLang(limit, frozenset(result))


def star_language(base: BoundedLang, limit: int,
                  max_words: Optional[int] = None) -> BoundedLang:
    """L* truncated to limit, iterated until no new word appears"""
    cap = _max_words(max_words)
    steps = [w for w in base.words if w and len(w) <= limit]
    result = {EMPTY_WORD}
    frontier = {EMPTY_WORD}
    while frontier:
        fresh = set()
        for x in frontier:
            for y in steps:
                if len(x) + len(y) <= limit:
                    w = x + y
                    if w not in result:
                        fresh.add(w)
        result |= fresh
        _guard(len(result), cap)
        frontier = fresh
    return BoundedLang(limit, frozenset(result))


def bounded_language(e: Expr, limit: int, max_length: Optional[int] = None,
                     max_words: Optional[int] = None) -> BoundedLang:
    """
    L(e) ∩ Σ^{≤limit}

    Args:
        e: Expression
        limit: Maximum word length
        max_length: Override of the configured hard cap on limit
        max_words: Override of the configured word-set guard

    Returns:
        The truncated language

    Raises:
        OracleCapError: limit above the cap, or a word set above the guard
    """
    cap = setting('oracle', 'max_length', max_length)
    if limit < 0:
        raise ValueError(f"Negative length limit: {limit}")
    if limit > cap:
        raise OracleCapError("word length", cap, f"requested {limit}")
    words_cap = _max_words(max_words)
    memo: Dict[Expr, BoundedLang] = {}

    def lang(node: Expr) -> BoundedLang:
        cached = memo.get(node)
        if cached is not None:
            return cached

        if node.op is Op.EMPTY:
            result = BoundedLang(limit, frozenset())
        elif node.op is Op.EPS:
            result = BoundedLang(limit, frozenset([EMPTY_WORD]))
        elif node.op is Op.SYM:
            words = [(node.symbol,)] if limit >= 1 else []
            result = BoundedLang(limit, frozenset(words))
        elif node.op is Op.UNION:
            result = union_languages(lang(node.left), lang(node.right))
            _guard(len(result), words_cap)
        elif node.op is Op.CONCAT:
            result = concat_languages(lang(node.left), lang(node.right), limit, words_cap)
        elif node.op is Op.SHUFFLE:
            result = shuffle_languages(lang(node.left), lang(node.right), limit, words_cap)
        else:
            result = star_language(lang(node.left), limit, words_cap)

        memo[node] = result
        return result

    return lang(e)


def language_of_set(exprs: ExprSet, limit: int, max_length: Optional[int] = None,
                    max_words: Optional[int] = None) -> BoundedLang:
    """L(S) = ⋃ L(τ) for τ in S, truncated"""
    words = set()
    for e in exprs:
        words |= bounded_language(e, limit, max_length, max_words).words
    return BoundedLang(limit, frozenset(words))


def left_quotient(language: BoundedLang, a) -> BoundedLang:
    """
    a⁻¹L = { x | ax ∈ L }

    The result is exact up to limit - 1.
    """
    if language.limit < 1:
        raise ValueError("Left quotient needs a language with limit >= 1")
    name = a.name if isinstance(a, Symbol) else a
    words = frozenset(w[1:] for w in language.words if w and w[0] == name)
    return BoundedLang(language.limit - 1, words)


def quotient_by_word(language: BoundedLang, word) -> BoundedLang:
    """x⁻¹L, with ε⁻¹L = L and (xa)⁻¹L = a⁻¹(x⁻¹L)"""
    for a in as_word(word):
        language = left_quotient(language, a)
    return language


def member_bruteforce(e: Expr, word, max_length: Optional[int] = None) -> bool:
    """True iff word ∈ L(e), decided by enumerating L(e) up to |word|"""
    w = as_word(word)
    return w in bounded_language(e, len(w), max_length).words


def words_up_to(alphabet: Alphabet, limit: int) -> Iterator[Word]:
    """Every word of length <= limit, shortest first then in alphabet order"""
    names = alphabet.names
    for length in range(limit + 1):
        for word in itertools.product(names, repeat=length):
            yield word


def make_language(words: Iterable, limit: int) -> BoundedLang:
    """Build a BoundedLang from word literals"""
    return BoundedLang(limit, frozenset(as_word(w) for w in words))
