"""
Expression Parser for shuffle regular expressions
Concrete syntax (see docs/GRAMMAR.md):
    @ = ε, $ = ∅, # = shuffle, + = union, . = concatenation (optional,
    juxtaposition also concatenates), * = postfix star.
Precedence, tightest first: *, concatenation, #, +. Binary operators
associate to the left.
"""

import re
from dataclasses import dataclass
from typing import List, Optional

from core.errors import (EmptyInsideError, ExprSyntaxError, LexicalError,
                         UnknownSymbolError)
from core.syntax import (Alphabet, Expr, Op, concat, empty, eps, shuffle,
                         star, sym, union)

TOKEN_SPEC = [
    ('SYMBOL', r'[a-z][0-9]*'),
    ('EPS', r'@'),
    ('EMPTY', r'\$'),
    ('SHUFFLE', r'#'),
    ('UNION', r'\+'),
    ('CONCAT', r'\.'),
    ('STAR', r'\*'),
    ('LPAREN', r'\('),
    ('RPAREN', r'\)'),
    ('SKIP', r'\s+'),
]
TOKEN_RE = re.compile('|'.join(f'(?P<{name}>{pattern})' for name, pattern in TOKEN_SPEC))

ATOM_START = {'SYMBOL', 'EPS', 'EMPTY', 'LPAREN'}

# Binding strength used by the printer
LEVEL = {
    Op.UNION: 1,
    Op.SHUFFLE: 2,
    Op.CONCAT: 3,
    Op.STAR: 4,
    Op.SYM: 5,
    Op.EPS: 5,
    Op.EMPTY: 5,
}
SEPARATOR = {Op.UNION: ' + ', Op.SHUFFLE: ' # ', Op.CONCAT: ' . '}


@dataclass
class Token:
    """A lexeme with its source position"""
    kind: str
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    """
    Split text into tokens

    Raises:
        LexicalError: on any character outside the grammar
    """
    tokens = []
    position = 0
    while position < len(text):
        match = TOKEN_RE.match(text, position)
        if not match:
            raise LexicalError(f"Unexpected character {text[position]!r}", position)
        if match.lastgroup != 'SKIP':
            tokens.append(Token(match.lastgroup, match.group(), position))
        position = match.end()
    tokens.append(Token('END', '', len(text)))
    return tokens


class ExprParser:
    """Recursive-descent parser for the concrete grammar"""

    def __init__(self, alphabet: Optional[Alphabet] = None):
        """
        Args:
            alphabet: Symbols allowed in the text; any symbol if None
        """
        self.alphabet = alphabet
        self.tokens: List[Token] = []
        self.index = 0
        self._empty_position: Optional[int] = None

    def parse(self, text: str) -> Expr:
        """
        Parse one expression

        Args:
            text: Source in the concrete syntax

        Returns:
            The hash-consed expression
        """
        self.tokens = tokenize(text)
        self.index = 0
        self._empty_position = None

        if self._peek().kind == 'END':
            raise ExprSyntaxError("Empty expression", 0)

        expr = self._parse_union()
        token = self._peek()
        if token.kind != 'END':
            raise ExprSyntaxError(f"Unexpected {token.text!r}", token.position)
        return expr

    def _peek(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _combine(self, factory, *children: Expr) -> Expr:
        for child in children:
            if child.op is Op.EMPTY:
                raise EmptyInsideError("∅ inside expression", self._empty_position)
        return factory(*children)

    def _parse_union(self) -> Expr:
        expr = self._parse_shuffle()
        while self._peek().kind == 'UNION':
            self._advance()
            expr = self._combine(union, expr, self._parse_shuffle())
        return expr

    def _parse_shuffle(self) -> Expr:
        expr = self._parse_concat()
        while self._peek().kind == 'SHUFFLE':
            self._advance()
            expr = self._combine(shuffle, expr, self._parse_concat())
        return expr

    def _parse_concat(self) -> Expr:
        expr = self._parse_postfix()
        while True:
            kind = self._peek().kind
            if kind == 'CONCAT':
                self._advance()
            elif kind not in ATOM_START:
                return expr
            expr = self._combine(concat, expr, self._parse_postfix())

    def _parse_postfix(self) -> Expr:
        expr = self._parse_atom()
        while self._peek().kind == 'STAR':
            self._advance()
            expr = self._combine(star, expr)
        return expr

    def _parse_atom(self) -> Expr:
        token = self._advance()

        if token.kind == 'SYMBOL':
            if self.alphabet is not None and token.text not in self.alphabet:
                raise UnknownSymbolError(f"Unknown symbol {token.text!r}", token.position)
            return sym(token.text)

        if token.kind == 'EPS':
            return eps()

        if token.kind == 'EMPTY':
            if self._empty_position is None:
                self._empty_position = token.position
            return empty()

        if token.kind == 'LPAREN':
            expr = self._parse_union()
            closing = self._advance()
            if closing.kind != 'RPAREN':
                raise ExprSyntaxError(
                    f"Expected ')' but found {closing.text or 'end of input'!r}",
                    closing.position
                )
            return expr

        found = token.text or 'end of input'
        raise ExprSyntaxError(f"Expected an operand but found {found!r}", token.position)


def parse(text: str, alphabet: Optional[Alphabet] = None) -> Expr:
    """Parse text into an expression (see ExprParser)"""
    return ExprParser(alphabet).parse(text)


def pretty_print(e: Expr) -> str:
    """
    Render an expression with minimal parentheses

    parse(pretty_print(e)) is e for every expression.
    """
    return _render(e, 0)


def _render(e: Expr, context: int) -> str:
    level = LEVEL[e.op]

    if e.op is Op.SYM:
        text = e.symbol
    elif e.op is Op.EPS:
        text = '@'
    elif e.op is Op.EMPTY:
        text = '$'
    elif e.op is Op.STAR:
        text = _render(e.left, LEVEL[Op.STAR]) + '*'
    else:
        # left-associative: the right operand must bind strictly tighter
        text = (_render(e.left, level) + SEPARATOR[e.op]
                + _render(e.right, level + 1))

    if level < context:
        return f"({text})"
    return text
