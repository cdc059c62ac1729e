"""
Syntax of regular expressions with shuffle
Hash-consed abstract syntax, size metrics, nullability and the set-level
constructors shared by the π function and by partial derivatives.
"""

import re
import threading
import weakref
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

from core.errors import ExprError

SYMBOL_PATTERN = re.compile(r'[a-z][0-9]*')


class Op(Enum):
    """Node kinds of grammar (2), plus ∅ at top level"""
    EMPTY = "empty"
    EPS = "eps"
    SYM = "sym"
    UNION = "union"
    CONCAT = "concat"
    SHUFFLE = "shuffle"
    STAR = "star"


BINARY_OPS = (Op.UNION, Op.CONCAT, Op.SHUFFLE)


def _symbol_key(name: str) -> Tuple[str, int]:
    # a2 sorts before a10
    return (name[0], int(name[1:]) if len(name) > 1 else -1)


@dataclass(frozen=True, order=False)
class Symbol:
    """A letter of the alphabet, compared by name"""
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not SYMBOL_PATTERN.fullmatch(self.name):
            raise ExprError(f"Invalid symbol name: {self.name!r}")

    def __lt__(self, other: "Symbol") -> bool:
        return _symbol_key(self.name) < _symbol_key(other.name)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Alphabet:
    """Ordered, duplicate-free list of symbols"""
    symbols: Tuple[Symbol, ...]

    def __post_init__(self):
        names = [s.name for s in self.symbols]
        if not names:
            raise ExprError("Alphabet must contain at least one symbol")
        if len(set(names)) != len(names):
            raise ExprError(f"Duplicate symbols in alphabet: {names}")

    @property
    def k(self) -> int:
        return len(self.symbols)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(s.name for s in self.symbols)

    def __contains__(self, item) -> bool:
        name = item.name if isinstance(item, Symbol) else item
        return name in self.names

    def __iter__(self) -> Iterator[Symbol]:
        return iter(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "Alphabet":
        return cls(tuple(Symbol(n) for n in names))

    @classmethod
    def standard(cls, k: int) -> "Alphabet":
        """
        First k symbols in the fixed order

        Args:
            k: Alphabet size (positive)

        Returns:
            a, b, c, ... for k <= 26, otherwise a1 ... ak
        """
        if k < 1:
            raise ExprError(f"Alphabet size must be positive, got {k}")
        if k <= 26:
            return cls.from_names(chr(ord('a') + i) for i in range(k))
        return cls.from_names(f"a{i}" for i in range(1, k + 1))

    @classmethod
    def of(cls, *exprs: "Expr") -> "Alphabet":
        """
        Sorted alphabet of every symbol occurring in exprs

        Letter-free expressions (ε, ∅ and their stars and combinations) get
        Alphabet.standard(1).
        """
        names: Set[str] = set()
        for e in exprs:
            names |= symbols_of(e)
        if not names:
            return cls.standard(1)
        return cls.from_names(sorted(names, key=_symbol_key))

    def union(self, other: "Alphabet") -> "Alphabet":
        names = set(self.names) | set(other.names)
        return Alphabet.from_names(sorted(names, key=_symbol_key))


class Expr:
    """
    Immutable, hash-consed expression node

    Never instantiate directly: use the factories below, which guarantee
    that structurally equal expressions are the same object. Equality and
    hashing are therefore identity-based. size, width and nullable are
    computed once at construction.
    """

    __slots__ = ('op', 'symbol', 'left', 'right',
                 'size', 'width', 'nullable', '__weakref__')

    def __init__(self, op: Op, symbol: Optional[str], left: Optional["Expr"],
                 right: Optional["Expr"], size: int, width: int, nullable: bool):
        object.__setattr__(self, 'op', op)
        object.__setattr__(self, 'symbol', symbol)
        object.__setattr__(self, 'left', left)
        object.__setattr__(self, 'right', right)
        object.__setattr__(self, 'size', size)
        object.__setattr__(self, 'width', width)
        object.__setattr__(self, 'nullable', nullable)

    def __setattr__(self, name, value):
        raise AttributeError("Expr is immutable")

    def __reduce__(self):
        # Re-intern on unpickling so identity equality survives process pools
        return (_rebuild, (self.op, self.symbol, self.left, self.right))

    def __repr__(self) -> str:
        return f"Expr({str(self)!r})"

    def __str__(self) -> str:
        from utils.expr_parser import pretty_print
        return pretty_print(self)

    @property
    def children(self) -> Tuple["Expr", ...]:
        if self.op in BINARY_OPS:
            return (self.left, self.right)
        if self.op is Op.STAR:
            return (self.left,)
        return ()


_TABLE: "weakref.WeakValueDictionary[tuple, Expr]" = weakref.WeakValueDictionary()
_TABLE_LOCK = threading.Lock()


def _intern(op: Op, symbol: Optional[str], left: Optional[Expr],
            right: Optional[Expr], size: int, width: int, nullable: bool) -> Expr:
    # Children are interned and kept alive by their parent, so their ids are stable keys
    key = (op, symbol, id(left) if left is not None else None,
           id(right) if right is not None else None)
    with _TABLE_LOCK:
        node = _TABLE.get(key)
        if node is None:
            node = Expr(op, symbol, left, right, size, width, nullable)
            _TABLE[key] = node
        return node


def _check_child(e: Expr, parent: Op):
    if not isinstance(e, Expr):
        raise ExprError(f"Expected an expression, got {type(e).__name__}")
    if e.op is Op.EMPTY:
        raise ExprError(f"∅ cannot occur inside a {parent.value} node")


def empty() -> Expr:
    return _intern(Op.EMPTY, None, None, None, 1, 0, False)


def eps() -> Expr:
    return _intern(Op.EPS, None, None, None, 1, 0, True)


def sym(name) -> Expr:
    name = name.name if isinstance(name, Symbol) else Symbol(name).name
    return _intern(Op.SYM, name, None, None, 1, 1, False)


def union(a: Expr, b: Expr) -> Expr:
    _check_child(a, Op.UNION)
    _check_child(b, Op.UNION)
    return _intern(Op.UNION, None, a, b, a.size + b.size + 1,
                   a.width + b.width, a.nullable or b.nullable)


def concat(a: Expr, b: Expr) -> Expr:
    _check_child(a, Op.CONCAT)
    _check_child(b, Op.CONCAT)
    return _intern(Op.CONCAT, None, a, b, a.size + b.size + 1,
                   a.width + b.width, a.nullable and b.nullable)


def shuffle(a: Expr, b: Expr) -> Expr:
    _check_child(a, Op.SHUFFLE)
    _check_child(b, Op.SHUFFLE)
    return _intern(Op.SHUFFLE, None, a, b, a.size + b.size + 1,
                   a.width + b.width, a.nullable and b.nullable)


def star(a: Expr) -> Expr:
    _check_child(a, Op.STAR)
    return _intern(Op.STAR, None, a, None, a.size + 1, a.width, True)


_BINARY_FACTORIES = {Op.UNION: union, Op.CONCAT: concat, Op.SHUFFLE: shuffle}


def binary(op: Op, a: Expr, b: Expr) -> Expr:
    return _BINARY_FACTORIES[op](a, b)


def _rebuild(op: Op, symbol: Optional[str], left: Optional[Expr],
             right: Optional[Expr]) -> Expr:
    if op is Op.EMPTY:
        return empty()
    if op is Op.EPS:
        return eps()
    if op is Op.SYM:
        return sym(symbol)
    if op is Op.STAR:
        return star(left)
    return binary(op, left, right)


EMPTY = empty()
EPS = eps()


def size(e: Expr) -> int:
    """Number of symbols, parentheses not counted"""
    return e.size


def alphabetic_width(e: Expr) -> int:
    """Number of letter occurrences |e|_Σ"""
    return e.width


def nullable(e: Expr) -> bool:
    """ε(e): True iff the empty word belongs to L(e)"""
    return e.nullable


def nullable_recursive(e: Expr) -> bool:
    """ε(e) by the defining recursion, without the cached flag"""
    if e.op in (Op.EMPTY, Op.SYM):
        return False
    if e.op in (Op.EPS, Op.STAR):
        return True
    if e.op is Op.UNION:
        return nullable_recursive(e.left) or nullable_recursive(e.right)
    return nullable_recursive(e.left) and nullable_recursive(e.right)


def subterms(e: Expr) -> Iterator[Expr]:
    """Distinct subterms in post-order (children before parents)"""
    seen: Set[int] = set()
    stack: List[Tuple[Expr, bool]] = [(e, False)]
    while stack:
        node, expanded = stack.pop()
        if id(node) in seen:
            continue
        if expanded:
            seen.add(id(node))
            yield node
            continue
        stack.append((node, True))
        for child in reversed(node.children):
            stack.append((child, False))


def symbols_of(e: Expr) -> Set[str]:
    return {t.symbol for t in subterms(e) if t.op is Op.SYM}


def worst_case_family(n: int) -> Expr:
    """a1 ⧢ a2 ⧢ ... ⧢ an, left-associated"""
    if n < 1:
        raise ExprError(f"n must be positive, got {n}")
    expr = sym("a1")
    for i in range(2, n + 1):
        expr = shuffle(expr, sym(f"a{i}"))
    return expr


class ExprSet:
    """
    Finite set of expressions

    Deduplicated by (hash-consed) identity; iteration follows insertion
    order so every build of the same set iterates the same way.
    """

    __slots__ = ('_items',)

    def __init__(self, items: Iterable[Expr] = ()):
        self._items: Dict[Expr, None] = dict.fromkeys(items)

    def __iter__(self) -> Iterator[Expr]:
        return iter(self._items)

    def __len__(self) -> int:
        return len(self._items)

    def __bool__(self) -> bool:
        return bool(self._items)

    def __contains__(self, item) -> bool:
        return item in self._items

    def __eq__(self, other) -> bool:
        if isinstance(other, ExprSet):
            return self._items.keys() == other._items.keys()
        if isinstance(other, (set, frozenset)):
            return set(self._items) == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._items))

    def __or__(self, other: "ExprSet") -> "ExprSet":
        merged = ExprSet()
        merged._items = {**self._items, **other._items}
        return merged

    def __le__(self, other: "ExprSet") -> bool:
        return all(e in other for e in self._items)

    def issubset(self, other: "ExprSet") -> bool:
        return self <= other

    def sorted(self) -> List[Expr]:
        """Members in a presentation order (size, then text)"""
        return sorted(self._items, key=lambda e: (e.size, str(e)))

    def __repr__(self) -> str:
        return "{" + ", ".join(str(e) for e in self.sorted()) + "}"

    @staticmethod
    def union_all(sets: Iterable["ExprSet"]) -> "ExprSet":
        merged = ExprSet()
        for s in sets:
            merged._items.update(s._items)
        return merged


def concat_unit(a: Expr, b: Expr) -> Expr:
    """αβ with εβ = β and αε = α"""
    if a.op is Op.EPS:
        return b
    if b.op is Op.EPS:
        return a
    return concat(a, b)


def shuffle_unit(a: Expr, b: Expr) -> Expr:
    """α ⧢ β with ε ⧢ β = β and α ⧢ ε = α"""
    if a.op is Op.EPS:
        return b
    if b.op is Op.EPS:
        return a
    return shuffle(a, b)


def mk_concat(s: ExprSet, beta: Expr) -> ExprSet:
    """
    Sβ = { αβ | α ∈ S }

    Unit rules: Sε = S, S∅ = ∅, and {ε}β = {β}.
    """
    if beta.op is Op.EMPTY:
        return ExprSet()
    if beta.op is Op.EPS:
        return s
    return ExprSet(concat_unit(a, beta) for a in s if a.op is not Op.EMPTY)


def mk_shuffle_sets(s: ExprSet, t: ExprSet) -> ExprSet:
    """S ⧢ T = { α ⧢ β | α ∈ S, β ∈ T } with {ε} ⧢ S = S ⧢ {ε} = S"""
    return ExprSet(shuffle_unit(a, b) for a in s for b in t
                   if a.op is not Op.EMPTY and b.op is not Op.EMPTY)


def mk_shuffle_right(s: ExprSet, beta: Expr) -> ExprSet:
    """S ⧢ {β}"""
    return mk_shuffle_sets(s, ExprSet([beta]))


def mk_shuffle_left(alpha: Expr, t: ExprSet) -> ExprSet:
    """{α} ⧢ T"""
    return mk_shuffle_sets(ExprSet([alpha]), t)
