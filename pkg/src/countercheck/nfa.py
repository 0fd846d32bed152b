"""Classical NFAs: construction from regular expressions, product, emptiness.

One NFA type serves two jobs: word-level automata for regular expressions
(built by the Thompson construction, with silent edges), and automata over a
counter-check automaton's state set used by the emptiness pipeline (always
silent-free).  State labels are arbitrary hashables; every public operation
iterates in a deterministic order.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Optional

from .expr import RAlt, RCat, REmpty, RSym, RegExpr

State = Hashable
Label = Optional[Hashable]  # None is the silent label


def _key(x) -> str:
    return repr(x)


@dataclass(frozen=True)
class NFA:
    states: frozenset
    alphabet: frozenset
    transitions: frozenset  # (source, label-or-None, target)
    initial: State
    finals: frozenset

    def __post_init__(self):
        if self.initial not in self.states:
            raise ValueError("initial state missing from state set")
        if not self.finals <= self.states:
            raise ValueError("final states missing from state set")
        for source, label, target in self.transitions:
            if source not in self.states or target not in self.states:
                raise ValueError(f"transition {(source, label, target)} references unknown states")
            if label is not None and label not in self.alphabet:
                raise ValueError(f"transition label {label!r} outside the alphabet")

    @property
    def has_silent_edges(self) -> bool:
        return any(label is None for _, label, _ in self.transitions)

    def adjacency(self) -> dict:
        out = {s: [] for s in self.states}
        for source, label, target in self.transitions:
            out[source].append((label, target))
        return {
            s: tuple(sorted(ts, key=lambda lt: (lt[0] is not None, _key(lt[0]), _key(lt[1]))))
            for s, ts in out.items()
        }


# --------------------------------------------------------------------------
# Thompson construction

def thompson(regex: RegExpr, alphabet: frozenset, fresh: Callable[[], str]) -> NFA:
    """Linear-size NFA with silent edges for a regular expression.

    ``fresh`` supplies globally unique state names, so the result can be
    spliced into larger automata without renaming.
    """
    states: set = set()
    transitions: set = set()

    def new() -> str:
        s = fresh()
        states.add(s)
        return s

    def build(e: RegExpr) -> tuple[str, str]:
        if isinstance(e, REmpty):
            return new(), new()
        if isinstance(e, RSym):
            start, end = new(), new()
            transitions.add((start, e.letter, end))
            return start, end
        if isinstance(e, RCat):
            ls, le = build(e.left)
            rs, re = build(e.right)
            transitions.add((le, None, rs))
            return ls, re
        if isinstance(e, RAlt):
            start, end = new(), new()
            ls, le = build(e.left)
            rs, re = build(e.right)
            transitions.update({(start, None, ls), (start, None, rs), (le, None, end), (re, None, end)})
            return start, end
        start, end = new(), new()
        bs, be = build(e.body)
        transitions.update({(start, None, bs), (be, None, end), (start, None, end), (be, None, bs)})
        return start, end

    initial, final = build(regex)
    return NFA(
        states=frozenset(states),
        alphabet=alphabet,
        transitions=frozenset(transitions),
        initial=initial,
        finals=frozenset({final}),
    )


# --------------------------------------------------------------------------
# membership (subset simulation with silent closure)

def _closure(adjacency: dict, seeds: frozenset) -> frozenset:
    result = set(seeds)
    stack = list(seeds)
    while stack:
        s = stack.pop()
        for label, target in adjacency[s]:
            if label is None and target not in result:
                result.add(target)
                stack.append(target)
    return frozenset(result)


def accepts(n: NFA, word) -> bool:
    adjacency = n.adjacency()
    frontier = _closure(adjacency, frozenset({n.initial}))
    for letter in word:
        frontier = _closure(
            adjacency,
            frozenset(t for s in frontier for lab, t in adjacency[s] if lab == letter),
        )
        if not frontier:
            return False
    return bool(frontier & n.finals)


def accepts_extension(n: NFA, word) -> bool:
    """True when ``word`` is a prefix of some accepted word."""
    adjacency = n.adjacency()
    productive = _coreachable(n)
    frontier = _closure(adjacency, frozenset({n.initial}))
    for letter in word:
        frontier = _closure(
            adjacency,
            frozenset(t for s in frontier for lab, t in adjacency[s] if lab == letter),
        )
        if not frontier:
            return False
    return bool(frontier & productive)


def _coreachable(n: NFA) -> frozenset:
    incoming: dict = {s: [] for s in n.states}
    for source, _, target in n.transitions:
        incoming[target].append(source)
    result = set(n.finals)
    stack = list(n.finals)
    while stack:
        s = stack.pop()
        for p in incoming[s]:
            if p not in result:
                result.add(p)
                stack.append(p)
    return frozenset(result)


# --------------------------------------------------------------------------
# product and emptiness

def intersect(n1: NFA, n2: NFA) -> NFA:
    """Synchronous product; both operands must be silent-free and share an
    alphabet.  The state set is the full Cartesian product."""
    if n1.alphabet != n2.alphabet:
        raise ValueError("product requires identical alphabets")
    if n1.has_silent_edges or n2.has_silent_edges:
        raise ValueError("product requires silent-free automata")
    by_letter: dict = {}
    for source, label, target in n2.transitions:
        by_letter.setdefault(label, []).append((source, target))
    transitions = set()
    for source, label, target in n1.transitions:
        for s2, t2 in by_letter.get(label, ()):
            transitions.add(((source, s2), label, (target, t2)))
    return NFA(
        states=frozenset((p, q) for p in n1.states for q in n2.states),
        alphabet=n1.alphabet,
        transitions=frozenset(transitions),
        initial=(n1.initial, n2.initial),
        finals=frozenset((p, q) for p in n1.finals for q in n2.finals),
    )


def shortest_accepting_run(n: NFA) -> Optional[tuple[tuple, tuple]]:
    """Breadth-first (word, state path) to some final state, or None.

    Ties resolve by sorted labels then targets, so results are reproducible
    across runs.  Silent-free automata only.
    """
    if n.has_silent_edges:
        raise ValueError("shortest-run search requires a silent-free automaton")
    adjacency = n.adjacency()
    parents: dict = {n.initial: None}
    queue = deque([n.initial])
    goal = n.initial if n.initial in n.finals else None
    while queue and goal is None:
        here = queue.popleft()
        for label, target in adjacency[here]:
            if target in parents:
                continue
            parents[target] = (here, label)
            if target in n.finals:
                goal = target
                break
            queue.append(target)
    if goal is None:
        return None
    word: list = []
    path = [goal]
    node = goal
    while parents[node] is not None:
        node, label = parents[node]
        word.append(label)
        path.append(node)
    word.reverse()
    path.reverse()
    return tuple(word), tuple(path)


def nonempty_witness(n: NFA) -> Optional[tuple]:
    """A shortest accepted word, or None when the language is empty."""
    run = shortest_accepting_run(n)
    return None if run is None else run[0]
