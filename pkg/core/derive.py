"""
Partial derivatives and the π support function
π(τ), ∂_a(τ), ∂_x(τ), the closures ∂(τ) / ∂⁺(τ), the linear equation system
of a prebase, and the p(α) upper bound on |π(α)|.
"""

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional

from core.errors import StateBudgetError
from core.lang_oracle import (BoundedLang, as_word, bounded_language,
                              language_of_set)
from core.syntax import (EPS, Alphabet, Expr, ExprSet, Op, Symbol, mk_concat,
                         mk_shuffle_left, mk_shuffle_right, mk_shuffle_sets)
from utils.config import setting
from utils.logger import logger, run_logger


def pi(e: Expr) -> ExprSet:
    """
    The support π(e)

        π(∅) = π(ε) = ∅            π(α+β) = π(α) ∪ π(β)
        π(a) = {ε}                 π(αβ)  = π(α)β ∪ π(β)
        π(α*) = π(α)α*             π(α⧢β) = π(α)⧢π(β) ∪ π(α)⧢{β} ∪ {α}⧢π(β)
    """
    memo: Dict[Expr, ExprSet] = {}

    def walk(node: Expr) -> ExprSet:
        cached = memo.get(node)
        if cached is not None:
            return cached

        if node.op in (Op.EMPTY, Op.EPS):
            result = ExprSet()
        elif node.op is Op.SYM:
            result = ExprSet([EPS])
        elif node.op is Op.STAR:
            result = mk_concat(walk(node.left), node)
        elif node.op is Op.UNION:
            result = walk(node.left) | walk(node.right)
        elif node.op is Op.CONCAT:
            result = mk_concat(walk(node.left), node.right) | walk(node.right)
        else:
            left, right = walk(node.left), walk(node.right)
            result = ExprSet.union_all([
                mk_shuffle_sets(left, right),
                mk_shuffle_right(left, node.right),
                mk_shuffle_left(node.left, right),
            ])

        memo[node] = result
        return result

    return walk(e)


def _name(a) -> str:
    return a.name if isinstance(a, Symbol) else a


def partial_derivative(e: Expr, a) -> ExprSet:
    """
    ∂_a(e)

        ∂_a(∅) = ∂_a(ε) = ∅        ∂_a(α+β) = ∂_a(α) ∪ ∂_a(β)
        ∂_a(b) = {ε} if b = a      ∂_a(αβ)  = ∂_a(α)β ∪ ε(α)∂_a(β)
        ∂_a(α*) = ∂_a(α)α*         ∂_a(α⧢β) = ∂_a(α)⧢{β} ∪ {α}⧢∂_a(β)
    """
    name = _name(a)
    memo: Dict[Expr, ExprSet] = {}

    def walk(node: Expr) -> ExprSet:
        cached = memo.get(node)
        if cached is not None:
            return cached

        if node.op in (Op.EMPTY, Op.EPS):
            result = ExprSet()
        elif node.op is Op.SYM:
            result = ExprSet([EPS]) if node.symbol == name else ExprSet()
        elif node.op is Op.STAR:
            result = mk_concat(walk(node.left), node)
        elif node.op is Op.UNION:
            result = walk(node.left) | walk(node.right)
        elif node.op is Op.CONCAT:
            result = mk_concat(walk(node.left), node.right)
            if node.left.nullable:
                result = result | walk(node.right)
        else:
            result = (mk_shuffle_right(walk(node.left), node.right)
                      | mk_shuffle_left(node.left, walk(node.right)))

        memo[node] = result
        return result

    return walk(e)


def partial_derivative_set(exprs: ExprSet, a) -> ExprSet:
    """∂_a(S) = ⋃ ∂_a(τ) for τ in S"""
    return ExprSet.union_all(partial_derivative(e, a) for e in exprs)


def derivative_by_word(e: Expr, word) -> ExprSet:
    """∂_x(e), with ∂_ε(e) = {e} and ∂_{xa}(e) = ∂_a(∂_x(e))"""
    current = ExprSet([e])
    for a in as_word(word):
        current = partial_derivative_set(current, a)
    return current


@dataclass
class DerivClosure:
    """∂(origin) and ∂⁺(origin)"""
    origin: Expr
    all: ExprSet
    proper: ExprSet
    transitions: Dict[Expr, Dict[str, ExprSet]] = field(default_factory=dict, repr=False)

    @property
    def origin_is_proper(self) -> bool:
        return self.origin in self.proper


def closure(e: Expr, alphabet: Optional[Alphabet] = None,
            budget: Optional[int] = None) -> DerivClosure:
    """
    Saturate {e} under ∂_a for every letter a

    Args:
        e: Origin expression
        alphabet: Letters to derive by (default: the symbols of e; other
            letters only ever give empty derivatives)
        budget: Maximum number of distinct derivatives (default from config)

    Returns:
        DerivClosure with all = ∂(e) and proper = ∂⁺(e)

    Raises:
        StateBudgetError: the closure grows past the budget
    """
    alphabet = alphabet or Alphabet.of(e)
    limit = setting('derive', 'state_budget', budget)

    seen: Dict[Expr, None] = {e: None}
    proper: Dict[Expr, None] = {}
    transitions: Dict[Expr, Dict[str, ExprSet]] = {}
    queue = deque([e])

    while queue:
        state = queue.popleft()
        row = transitions[state] = {}
        for a in alphabet.names:
            targets = partial_derivative(state, a)
            row[a] = targets
            for target in targets:
                proper[target] = None
                if target not in seen:
                    seen[target] = None
                    if len(seen) > limit:
                        run_logger.log_budget_exceeded("closure states", limit)
                        raise StateBudgetError("closure states", limit, str(e))
                    queue.append(target)

    logger.debug(f"closure of {e}: {len(seen)} states, {len(proper)} proper")
    return DerivClosure(origin=e, all=ExprSet(seen), proper=ExprSet(proper),
                        transitions=transitions)


def p_upper(e: Expr) -> int:
    """
    p(e), the disjoint-union upper bound on |π(e)|

        p(ε) = 0, p(a) = 1, p(α*) = p(α),
        p(α+β) = p(αβ) = p(α) + p(β),
        p(α⧢β) = p(α)p(β) + p(α) + p(β)
    """
    memo: Dict[Expr, int] = {}

    def walk(node: Expr) -> int:
        if node in memo:
            return memo[node]
        if node.op in (Op.EMPTY, Op.EPS):
            value = 0
        elif node.op is Op.SYM:
            value = 1
        elif node.op is Op.STAR:
            value = walk(node.left)
        elif node.op in (Op.UNION, Op.CONCAT):
            value = walk(node.left) + walk(node.right)
        else:
            p, q = walk(node.left), walk(node.right)
            value = p * q + p + q
        memo[node] = value
        return value

    return walk(e)


def prebase(e: Expr) -> ExprSet:
    """{e} ∪ π(e), with e first"""
    return ExprSet([e]) | pi(e)


@dataclass
class Equation:
    """γ = a1·(∂_a1 γ) + ... + ak·(∂_ak γ) + ε(γ)"""
    lhs: Expr
    rhs: Dict[str, ExprSet]
    nullable: bool

    def render(self) -> str:
        terms = []
        for a, targets in self.rhs.items():
            if not targets:
                continue
            inner = " + ".join(str(t) for t in targets.sorted())
            terms.append(f"{a}·({inner})" if len(targets) > 1 else f"{a}·{inner}")
        if self.nullable:
            terms.append("ε")
        return f"{self.lhs} = " + (" + ".join(terms) if terms else "∅")


def equation_system(e: Expr, alphabet: Optional[Alphabet] = None) -> List[Equation]:
    """
    The linear system of the prebase {e} ∪ π(e)

    Each right-hand side sums derivatives, which by ∂⁺ = π are sums of
    elements of π(e).
    """
    alphabet = alphabet or Alphabet.of(e)
    return [
        Equation(lhs=gamma,
                 rhs={a: partial_derivative(gamma, a) for a in alphabet.names},
                 nullable=gamma.nullable)
        for gamma in prebase(e)
    ]


def _equation_language(equation: Equation, limit: int) -> BoundedLang:
    words = {()} if equation.nullable else set()
    if limit >= 1:
        for a, targets in equation.rhs.items():
            tail = language_of_set(targets, limit - 1)
            words |= {(a,) + w for w in tail.words}
    return BoundedLang(limit, frozenset(words))


def check_support(e: Expr, limit: int, alphabet: Optional[Alphabet] = None) -> bool:
    """
    Verify the equation system of {e} ∪ π(e) on languages up to limit

    For every γ in the prebase:
        L(γ) = ⋃_a a·L(∂_a γ) ∪ ε(γ)   (compared on words of length <= limit)

    Raises:
        OracleCapError: limit above the oracle cap
    """
    support = pi(e)
    for equation in equation_system(e, alphabet):
        expected = bounded_language(equation.lhs, limit)
        if _equation_language(equation, limit).words != expected.words:
            run_logger.log_check("support equation", False, equation.render())
            return False
        for targets in equation.rhs.values():
            if not targets.issubset(support):
                run_logger.log_check("support membership", False, equation.render())
                return False
    return True
