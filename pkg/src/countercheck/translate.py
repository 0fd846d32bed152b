"""Compiling omega expressions into counter-check automata.

The compiler is compositional: every sub-expression yields a *set* of
automata, each with a distinguished final state whose only outgoing
transition is its silent counter-1 increment self-loop.  Counter 1 of every
automaton is the block counter: under the loop-back closure (``hat``) its
check transitions delimit the finite blocks an accepted infinite word is
split into, and the split words are exactly the block language of the
expression.

Counter budget per rule: atoms use 1 counter, concatenation and the
sequence mix use N + N' + 1, finite repetition N + 1, the recurring-size
repetition N + 2.  Operand automata are renamed apart at every use, so no
state name is ever shared between two automata of a compilation.

Full language equality between an expression and its automaton is a limit
property that no finite run can certify; the test suite probes it instead
(per-block shapes of witness splits, emptiness agreement over random
expressions, run-prefix membership against the star relaxation).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import expr as ex
from .cca import CCA, CHECK, INC, NO_OP, Transition, hat, satisfies_final_contract, shift
from .nfa import thompson


class FreshNames:
    """Monotone supply of state names; one instance per compilation."""

    def __init__(self, prefix: str = "s"):
        self.prefix = prefix
        self.counter = 0

    def __call__(self) -> str:
        name = f"{self.prefix}{self.counter}"
        self.counter += 1
        return name


def rename_apart(a: CCA, names: FreshNames) -> CCA:
    mapping = {s: names() for s in sorted(a.states)}
    return CCA(
        states=frozenset(mapping.values()),
        alphabet=a.alphabet,
        initial=mapping[a.initial],
        counters=a.counters,
        transitions=frozenset(
            Transition(mapping[t.source], t.label, mapping[t.target], t.counter, t.op)
            for t in a.transitions
        ),
        final=None if a.final is None else mapping[a.final],
    )


@dataclass(frozen=True)
class AutomatonSet:
    expression: object  # the compiled (sub-)expression
    automata: tuple[CCA, ...]

    def __post_init__(self):
        if not self.automata:
            raise ValueError("an automaton set is never empty")
        seen: set[str] = set()
        for a in self.automata:
            if seen & a.states:
                raise ValueError("automaton set members must be state-disjoint")
            seen |= a.states


def _require_contract(a: CCA) -> CCA:
    assert satisfies_final_contract(a), "compiler produced a bad final state"
    return a


# --------------------------------------------------------------------------
# block-expression rules

def _atom_empty(alphabet: frozenset[str], names: FreshNames) -> CCA:
    s0, sf = names(), names()
    return CCA(frozenset({s0, sf}), alphabet, s0, 1, frozenset(), sf)


def _atom_symbol(letter: str, alphabet: frozenset[str], names: FreshNames) -> CCA:
    s0, sf = names(), names()
    return CCA(
        frozenset({s0, sf}),
        alphabet,
        s0,
        1,
        frozenset({Transition(s0, letter, sf, 1, NO_OP), Transition(sf, None, sf, 1, INC)}),
        sf,
    )


def _concat_pair(a: CCA, b: CCA, names: FreshNames) -> CCA:
    n, n2 = a.counters, b.counters
    left = shift(a, 1)
    right = shift(b, n + 1)
    final = names()
    glue = {
        Transition(a.final, None, b.initial, 2, CHECK),
        Transition(b.final, None, final, n + 2, CHECK),
        Transition(final, None, final, 1, INC),
    }
    return CCA(
        states=left.states | right.states | {final},
        alphabet=a.alphabet,
        initial=left.initial,
        counters=n + n2 + 1,
        transitions=left.transitions | right.transitions | glue,
        final=final,
    )


def _own_range_loops(state: str, low: int, high: int) -> set[Transition]:
    return {
        Transition(state, None, state, k, op)
        for k in range(low, high + 1)
        for op in (INC, CHECK)
    }


def _mix_triple(a: CCA, b: CCA, names: FreshNames) -> list[CCA]:
    """The three automata of the sequence-mix rule.

    Each starts with a silent choice between fresh copies of the two
    operands; the variants differ only in which operand's final state gets
    extra self-loops over a counter range, letting a run keep the idle
    side's counters alive.
    """
    n, n2 = a.counters, b.counters
    total = n + n2 + 1
    extras = [
        lambda fa, fb: _own_range_loops(fa, n + 2, total),
        lambda fa, fb: _own_range_loops(fb, 2, n + 1),
        lambda fa, fb: _own_range_loops(fa, 2, n + 1) | _own_range_loops(fb, n + 2, total),
    ]
    variants = []
    for extra in extras:
        ca = rename_apart(a, names)
        cb = rename_apart(b, names)
        aa = shift(ca, 1)
        bb = shift(cb, n + 1)
        start, final = names(), names()
        core = {
            Transition(start, None, aa.initial, 1, NO_OP),
            Transition(start, None, bb.initial, 1, NO_OP),
            Transition(ca.final, None, final, 2, CHECK),
            Transition(cb.final, None, final, n + 2, CHECK),
            Transition(final, None, final, 1, INC),
        }
        variants.append(
            CCA(
                states=aa.states | bb.states | {start, final},
                alphabet=a.alphabet,
                initial=start,
                counters=total,
                transitions=aa.transitions | bb.transitions | core | extra(ca.final, cb.final),
                final=final,
            )
        )
    return variants


def _star_member(a: CCA, names: FreshNames) -> CCA:
    lifted = shift(a, 1)
    final = names()
    glue = {
        Transition(a.final, None, a.initial, 1, NO_OP),
        Transition(a.final, None, final, 2, CHECK),
        Transition(final, None, final, 1, INC),
    }
    return CCA(
        states=lifted.states | {final},
        alphabet=a.alphabet,
        initial=lifted.initial,
        counters=a.counters + 1,
        transitions=lifted.transitions | glue,
        final=final,
    )


def _recur_member(a: CCA, names: FreshNames) -> CCA:
    """Repetition whose block sizes must recur unboundedly often.

    Counter 2 counts the blocks of the current size batch and is checked on
    exit; counter 3 (the operand's lifted block counter) may additionally be
    checked on the operand's final state.
    """
    lifted = shift(a, 2)
    final = names()
    glue = {
        Transition(a.final, None, a.initial, 2, INC),
        Transition(a.final, None, final, 2, CHECK),
        Transition(a.final, None, a.final, 3, CHECK),
        Transition(final, None, final, 1, INC),
    }
    return CCA(
        states=lifted.states | {final},
        alphabet=a.alphabet,
        initial=lifted.initial,
        counters=a.counters + 2,
        transitions=lifted.transitions | glue,
        final=final,
    )


def compile_t(
    e: ex.TExpr,
    alphabet: frozenset[str],
    names: Optional[FreshNames] = None,
    trace: "Optional[Trace]" = None,
) -> AutomatonSet:
    """Structural compilation of a block expression into an automaton set."""
    if names is None:
        names = FreshNames()
    if isinstance(e, ex.Empty):
        members = [_atom_empty(alphabet, names)]
    elif isinstance(e, ex.Sym):
        if e.letter not in alphabet:
            raise ValueError(f"letter {e.letter!r} outside the alphabet")
        members = [_atom_symbol(e.letter, alphabet, names)]
    elif isinstance(e, ex.Cat):
        left = compile_t(e.left, alphabet, names, trace)
        right = compile_t(e.right, alphabet, names, trace)
        members = [
            _concat_pair(rename_apart(a, names), rename_apart(b, names), names)
            for a in left.automata
            for b in right.automata
        ]
    elif isinstance(e, ex.Sum):
        left = compile_t(e.left, alphabet, names, trace)
        right = compile_t(e.right, alphabet, names, trace)
        members = [
            m
            for a in left.automata
            for b in right.automata
            for m in _mix_triple(a, b, names)
        ]
    elif isinstance(e, ex.Star):
        inner = compile_t(e.body, alphabet, names, trace)
        members = [_star_member(rename_apart(a, names), names) for a in inner.automata]
    elif isinstance(e, ex.T):
        inner = compile_t(e.body, alphabet, names, trace)
        members = [_recur_member(rename_apart(a, names), names) for a in inner.automata]
    else:
        raise TypeError(f"not a block expression: {e!r}")
    for m in members:
        _require_contract(m)
    result = AutomatonSet(e, tuple(members))
    if trace is not None:
        trace.append((ex.pretty(e), result))
    return result


def expected_counters(e: ex.TExpr) -> int:
    """Counter count the rules assign, recomputed from the tree shape."""
    if isinstance(e, (ex.Empty, ex.Sym)):
        return 1
    if isinstance(e, (ex.Cat, ex.Sum)):
        return expected_counters(e.left) + expected_counters(e.right) + 1
    if isinstance(e, ex.Star):
        return expected_counters(e.body) + 1
    return expected_counters(e.body) + 2


# --------------------------------------------------------------------------
# omega-level rules

def _prepend_regex(r: ex.RegExpr, a: CCA, alphabet: frozenset[str], names: FreshNames) -> CCA:
    word_nfa = thompson(r, alphabet, names)
    copies = {
        Transition(source, label, target, 1, NO_OP)
        for source, label, target in word_nfa.transitions
    }
    links = {Transition(f, None, a.initial, 1, NO_OP) for f in word_nfa.finals}
    return CCA(
        states=a.states | word_nfa.states,
        alphabet=alphabet,
        initial=word_nfa.initial,
        counters=a.counters,
        transitions=a.transitions | copies | links,
        final=a.final,
    )


Trace = list[tuple[str, AutomatonSet]]


def compile_omega(
    e: ex.OmegaTExpr,
    alphabet: frozenset[str],
    names: Optional[FreshNames] = None,
    trace: Optional[Trace] = None,
) -> AutomatonSet:
    if names is None:
        names = FreshNames()
    if isinstance(e, ex.Union):
        left = compile_omega(e.left, alphabet, names, trace)
        right = compile_omega(e.right, alphabet, names, trace)
        result = AutomatonSet(e, left.automata + right.automata)
    elif isinstance(e, ex.Prefix):
        tail = compile_omega(e.tail, alphabet, names, trace)
        result = AutomatonSet(
            e, tuple(_prepend_regex(e.prefix, a, alphabet, names) for a in tail.automata)
        )
    elif isinstance(e, ex.Omega):
        inner = compile_t(e.body, alphabet, names, trace)
        result = AutomatonSet(e, tuple(hat(a) for a in inner.automata))
    else:
        raise TypeError(f"not an omega expression: {e!r}")
    if trace is not None:
        trace.append((ex.pretty(e), result))
    return result


def merge(auto_set: AutomatonSet, names: Optional[FreshNames] = None) -> CCA:
    """Glue an automaton set into one automaton behind a fresh silent-choice
    root; members with fewer counters get idle-counter self-loops on their
    entry state so padding counters stay checkable."""
    if names is None:
        names = FreshNames("m")
    members = auto_set.automata
    top = max(a.counters for a in members)
    root = names()
    while any(root in a.states for a in members):
        root = names()
    states = {root}
    transitions = set()
    alphabet = members[0].alphabet
    for a in members:
        states |= a.states
        transitions |= set(a.transitions)
        transitions |= _own_range_loops(a.initial, a.counters + 1, top)
        transitions.add(Transition(root, None, a.initial, 1, NO_OP))
    return CCA(
        states=frozenset(states),
        alphabet=alphabet,
        initial=root,
        counters=top,
        transitions=frozenset(transitions),
        final=None,
    )


def compile_expression(
    e: ex.OmegaTExpr, alphabet: frozenset[str] | set[str] | str, trace: Optional[Trace] = None
) -> CCA:
    """Compile a top-level omega expression into a single automaton."""
    sigma = frozenset(alphabet)
    names = FreshNames()
    return merge(compile_omega(e, sigma, names, trace), names)
