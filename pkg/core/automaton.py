"""
Partial Derivative Automaton
A_pd(τ) = ⟨∂(τ), Σ, {τ}, δ, F⟩ with δ(γ, a) = ∂_a(γ) and F the nullable
states; membership by subset propagation, bounded equivalence by a
breadth-first product walk, and DOT / JSON export.
"""

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

import graphviz

from core.derive import closure
from core.errors import OracleCapError
from core.lang_oracle import Word, as_word, bounded_language
from core.syntax import Alphabet, Expr
from utils.config import setting
from utils.expr_parser import parse
from utils.logger import logger

StateSet = FrozenSet[int]


@dataclass(frozen=True)
class Nfa:
    """ε-free NFA whose states are labelled by expressions"""
    states: Tuple[Expr, ...]
    alphabet: Alphabet
    initial: StateSet
    final: StateSet
    transitions: Dict[Tuple[int, str], StateSet] = field(hash=False)

    def __post_init__(self):
        count = len(self.states)
        endpoints = set(self.initial) | set(self.final)
        for (source, a), targets in self.transitions.items():
            endpoints.add(source)
            endpoints |= targets
            if a not in self.alphabet:
                raise ValueError(f"Transition on {a!r} outside the alphabet")
        bad = [s for s in endpoints if not 0 <= s < count]
        if bad:
            raise ValueError(f"State index {bad[0]} out of range (0..{count - 1})")

    @property
    def state_count(self) -> int:
        return len(self.states)

    @property
    def transition_count(self) -> int:
        return sum(len(t) for t in self.transitions.values())

    def label(self, state: int) -> Expr:
        return self.states[state]

    def successors(self, state: int, a: str) -> StateSet:
        return self.transitions.get((state, a), frozenset())

    def step(self, states: Iterable[int], a: str) -> StateSet:
        """δ(X, a) = ⋃ δ(s, a) for s in X"""
        result: Set[int] = set()
        for s in states:
            result |= self.successors(s, a)
        return frozenset(result)

    def run(self, word, start: Optional[Iterable[int]] = None) -> StateSet:
        """δ(S₀, x) by subset propagation"""
        current = frozenset(self.initial if start is None else start)
        for a in as_word(word):
            if not current:
                break
            current = self.step(current, a)
        return current

    def accepts_from(self, states: StateSet) -> bool:
        return bool(states & self.final)


def build_apd(e: Expr, alphabet: Optional[Alphabet] = None,
              budget: Optional[int] = None) -> Nfa:
    """
    Build the partial derivative automaton of e

    Args:
        e: Expression
        alphabet: Automaton alphabet (default: symbols of e)
        budget: State budget override

    Returns:
        Nfa with state 0 = e, states = ∂(e) in discovery order
    """
    alphabet = alphabet or Alphabet.of(e)
    derivs = closure(e, alphabet, budget)
    states = tuple(derivs.all)
    index = {state: i for i, state in enumerate(states)}

    transitions: Dict[Tuple[int, str], StateSet] = {}
    for state, row in derivs.transitions.items():
        for a, targets in row.items():
            if targets:
                transitions[(index[state], a)] = frozenset(index[t] for t in targets)

    final = frozenset(i for i, state in enumerate(states) if state.nullable)
    nfa = Nfa(states=states, alphabet=alphabet, initial=frozenset([0]),
              final=final, transitions=transitions)
    logger.debug(f"A_pd({e}): {nfa.state_count} states, {nfa.transition_count} transitions")
    return nfa


def nfa_member(nfa: Nfa, word) -> bool:
    """True iff δ(S₀, word) ∩ F ≠ ∅"""
    w = as_word(word)
    unknown = [a for a in w if a not in nfa.alphabet]
    if unknown:
        # letters outside the alphabet have no transitions
        return False
    return nfa.accepts_from(nfa.run(w))


def accepted_words(nfa: Nfa, limit: int, start: Optional[Iterable[int]] = None) -> FrozenSet[Word]:
    """Every word of length <= limit accepted from start (default: S₀)"""
    accepted: Set[Word] = set()
    frontier: List[Tuple[Word, StateSet]] = [((), frozenset(nfa.initial if start is None else start))]
    for length in range(limit + 1):
        next_frontier = []
        for word, states in frontier:
            if nfa.accepts_from(states):
                accepted.add(word)
            if length == limit:
                continue
            for a in nfa.alphabet.names:
                targets = nfa.step(states, a)
                if targets:
                    next_frontier.append((word + (a,), targets))
        frontier = next_frontier
    return frozenset(accepted)


def right_language_check(nfa: Nfa, state: int, limit: int,
                         max_length: Optional[int] = None) -> bool:
    """
    Check that the right language of a state is L(label)

    Compares words of length <= limit accepted from {state} with the
    oracle's bounded language of the state's expression.
    """
    cap = setting('oracle', 'max_length', max_length)
    if limit > cap:
        raise OracleCapError("word length", cap, f"requested {limit}")
    expected = bounded_language(nfa.label(state), limit, max_length)
    return accepted_words(nfa, limit, [state]) == expected.words


def equivalence_witness(e1: Expr, e2: Expr, limit: int,
                        max_length: Optional[int] = None,
                        budget: Optional[int] = None) -> Optional[Word]:
    """
    Shortest word of length <= limit accepted by exactly one automaton

    Breadth-first walk over pairs of state sets; at equal length the
    alphabetically least witness is returned. None if the automata agree
    on all words up to limit.
    """
    cap = setting('oracle', 'max_length', max_length)
    if limit > cap:
        raise OracleCapError("word length", cap, f"requested {limit}")

    alphabet = Alphabet.of(e1).union(Alphabet.of(e2))
    a1 = build_apd(e1, alphabet, budget)
    a2 = build_apd(e2, alphabet, budget)

    start = (frozenset(a1.initial), frozenset(a2.initial))
    visited = {start}
    queue = deque([(start, ())])
    while queue:
        (x, y), word = queue.popleft()
        if a1.accepts_from(x) != a2.accepts_from(y):
            return word
        if len(word) == limit:
            continue
        for a in alphabet.names:
            pair = (a1.step(x, a), a2.step(y, a))
            if pair in visited or not (pair[0] or pair[1]):
                continue
            visited.add(pair)
            queue.append((pair, word + (a,)))
    return None


def bounded_equiv(e1: Expr, e2: Expr, limit: int,
                  max_length: Optional[int] = None,
                  budget: Optional[int] = None) -> bool:
    """True iff A_pd(e1) and A_pd(e2) accept the same words up to limit"""
    return equivalence_witness(e1, e2, limit, max_length, budget) is None


def _sorted_transitions(nfa: Nfa) -> List[Tuple[int, str, int]]:
    order = {a: i for i, a in enumerate(nfa.alphabet.names)}
    triples = [(s, a, t) for (s, a), targets in nfa.transitions.items() for t in targets]
    return sorted(triples, key=lambda x: (x[0], order[x[1]], x[2]))


def export_json(nfa: Nfa) -> str:
    """Serialise with the documented schema, in a stable order"""
    payload = {
        "alphabet": list(nfa.alphabet.names),
        "states": [str(s) for s in nfa.states],
        "initial": sorted(nfa.initial),
        "final": sorted(nfa.final),
        "transitions": [list(t) for t in _sorted_transitions(nfa)],
    }
    return json.dumps(payload, ensure_ascii=False)


def import_json(text: str) -> Nfa:
    """Inverse of export_json; state labels are re-parsed"""
    payload = json.loads(text)
    alphabet = Alphabet.from_names(payload["alphabet"])
    states = tuple(parse(label) for label in payload["states"])

    transitions: Dict[Tuple[int, str], Set[int]] = {}
    for source, a, target in payload["transitions"]:
        transitions.setdefault((int(source), a), set()).add(int(target))

    return Nfa(
        states=states,
        alphabet=alphabet,
        initial=frozenset(payload["initial"]),
        final=frozenset(payload["final"]),
        transitions={key: frozenset(v) for key, v in transitions.items()},
    )


def export_dot(nfa: Nfa, name: str = "A_pd") -> str:
    """DOT source: one node per state, double circles for finals"""
    g = graphviz.Digraph(name)
    g.attr(rankdir="LR")
    g.attr('node', shape='circle')

    for i in sorted(nfa.initial):
        g.node(f"init{i}", label="", shape="none", width="0")
        g.edge(f"init{i}", str(i))
    for i, state in enumerate(nfa.states):
        shape = 'doublecircle' if i in nfa.final else 'circle'
        g.node(str(i), label=str(state), shape=shape)

    grouped: Dict[Tuple[int, int], List[str]] = {}
    for source, a, target in _sorted_transitions(nfa):
        grouped.setdefault((source, target), []).append(a)
    for (source, target), letters in grouped.items():
        g.edge(str(source), str(target), label=", ".join(letters))

    return g.source


def describe(nfa: Nfa) -> str:
    """Human-readable listing (states, finals, transitions)"""
    lines = [f"states: {nfa.state_count}, transitions: {nfa.transition_count}"]
    for i, state in enumerate(nfa.states):
        marks = ("→" if i in nfa.initial else " ") + ("*" if i in nfa.final else " ")
        lines.append(f"  {marks} {i}: {state}")
    for source, a, target in _sorted_transitions(nfa):
        lines.append(f"  {source} --{a}--> {target}")
    return "\n".join(lines)
