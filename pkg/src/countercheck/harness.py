"""Randomized cross-validation of the emptiness pipeline.

Seeded generators produce simple automata and expressions; every automaton
is decided twice, by the NFA pipeline and by the bounded path search, and
any mismatch (or invalid certificate) is shrunk by greedy transition and
state deletion before being reported.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Optional

from . import expr as ex
from .cca import CCA, CHECK, INC, NO_OP, Transition, is_simple
from .emptiness import (
    AcceptingWitness,
    InternalCheckError,
    brute_force_witness,
    decide,
    verify_witness,
    witness_nfa_state_bound,
)
from .logic import (
    And,
    Bounding,
    ExistsFO,
    ExistsFin,
    ExistsOmega,
    ExistsSO,
    ForAllFO,
    Implies,
    InP,
    InX,
    Not,
    Or,
    Unbounding,
    Var,
)


# --------------------------------------------------------------------------
# generators

def random_simple_cca(
    rng: random.Random,
    max_states: int = 8,
    max_counters: int = 2,
    alphabet: tuple[str, ...] = ("a", "b"),
    max_transitions: int = 14,
) -> CCA:
    """A random simple automaton over a ring backbone.

    A couple of silent choice hubs add shortcut edges, which is what makes
    pump loops that dodge a counter's check states possible at all; each
    counter usually gets an increment and a check somewhere on the ring.
    Stuck states and missing operations are injected so a healthy share of
    the output is empty-language.
    """
    counters = rng.randint(1, max_counters)
    n = rng.randint(5, max_states)
    names = [f"q{i}" for i in range(n)]
    hubs = sorted(rng.sample(range(n), rng.randint(1, 2)))
    singles = [i for i in range(n) if i not in hubs]
    # pump-back gadgets: a hub neighbour whose single transition increments
    # some counter and returns to the hub, giving a check-free loop
    gadget_return: dict[int, int] = {}
    pool = list(singles)
    rng.shuffle(pool)
    for hub in hubs:
        for k in range(1, counters + 1):
            if pool and rng.random() < 0.8:
                gadget_return[pool.pop()] = hub
    rest = [i for i in pool]
    rng.shuffle(rest)
    wanted = []
    for k in range(1, counters + 1):
        if rng.random() < 0.9:
            wanted.append((CHECK, k))
        if rng.random() < 0.5:
            wanted.append((INC, k))
    assignment = dict(zip(rest, wanted))

    transitions: list[Transition] = []
    for i in range(n):
        if i in hubs:
            targets = {(i + 1) % n} | {g for g, h in gadget_return.items() if h == i}
            while len(targets) < 2 and rng.random() < 0.5:
                targets.add(rng.randrange(n))
            for j in sorted(targets):
                transitions.append(Transition(names[i], None, names[j], 1, NO_OP))
            continue
        if i in gadget_return:
            k = rng.randint(1, counters)
            label = rng.choice(alphabet) if rng.random() < 0.4 else None
            transitions.append(Transition(names[i], label, names[gadget_return[i]], k, INC))
            continue
        if rng.random() < 0.1:
            continue  # stuck state
        if i in assignment:
            op, k = assignment[i]
        else:
            op = rng.choice((NO_OP, NO_OP, INC, CHECK))
            k = 1 if op == NO_OP else rng.randint(1, counters)
        label = rng.choice(alphabet) if rng.random() < 0.5 else None
        target = (i + 1) % n if rng.random() < 0.8 else rng.randrange(n)
        transitions.append(Transition(names[i], label, names[target], k, op))

    while len(transitions) > max_transitions:
        by_source: dict[str, int] = {}
        for t in transitions:
            by_source[t.source] = by_source.get(t.source, 0) + 1
        busiest = max(sorted(by_source), key=lambda s: by_source[s])
        victims = [t for t in transitions if t.source == busiest]
        transitions.remove(victims[-1])
    a = CCA(
        states=frozenset(names),
        alphabet=frozenset(alphabet),
        initial=names[0],
        counters=counters,
        transitions=frozenset(transitions),
    )
    assert is_simple(a)
    return a


def random_regex(rng: random.Random, depth: int, alphabet=("a", "b"), allow_empty=True) -> ex.RegExpr:
    if depth <= 0 or rng.random() < 0.4:
        if allow_empty and rng.random() < 0.12:
            return ex.REmpty()
        return ex.RSym(rng.choice(alphabet))
    kind = rng.choice(("cat", "alt", "star"))
    if kind == "cat":
        return ex.RCat(
            random_regex(rng, depth - 1, alphabet, allow_empty),
            random_regex(rng, depth - 1, alphabet, allow_empty),
        )
    if kind == "alt":
        return ex.RAlt(
            random_regex(rng, depth - 1, alphabet, allow_empty),
            random_regex(rng, depth - 1, alphabet, allow_empty),
        )
    return ex.RStar(random_regex(rng, depth - 1, alphabet, allow_empty))


def random_texpr(rng: random.Random, depth: int, alphabet=("a", "b"), allow_empty=True) -> ex.TExpr:
    if depth <= 0 or rng.random() < 0.4:
        if allow_empty and rng.random() < 0.12:
            return ex.Empty()
        return ex.Sym(rng.choice(alphabet))
    kind = rng.choice(("cat", "sum", "star", "t"))
    if kind == "cat":
        return ex.Cat(
            random_texpr(rng, depth - 1, alphabet, allow_empty),
            random_texpr(rng, depth - 1, alphabet, allow_empty),
        )
    if kind == "sum":
        return ex.Sum(
            random_texpr(rng, depth - 1, alphabet, allow_empty),
            random_texpr(rng, depth - 1, alphabet, allow_empty),
        )
    if kind == "star":
        return ex.Star(random_texpr(rng, depth - 1, alphabet, allow_empty))
    return ex.T(random_texpr(rng, depth - 1, alphabet, allow_empty))


def random_omega_expr(
    rng: random.Random, depth: int, alphabet=("a", "b"), allow_empty=True
) -> ex.OmegaTExpr:
    if depth <= 0 or rng.random() < 0.5:
        return ex.Omega(random_texpr(rng, max(depth - 1, 0), alphabet, allow_empty))
    kind = rng.choice(("union", "prefix"))
    if kind == "union":
        return ex.Union(
            random_omega_expr(rng, depth - 1, alphabet, allow_empty),
            random_omega_expr(rng, depth - 1, alphabet, allow_empty),
        )
    return ex.Prefix(
        random_regex(rng, depth - 1, alphabet, allow_empty),
        random_omega_expr(rng, depth - 1, alphabet, allow_empty),
    )


def member_count(e: ex.TExpr) -> int:
    """How many automata the compiler will produce for a block expression."""
    if isinstance(e, (ex.Empty, ex.Sym)):
        return 1
    if isinstance(e, ex.Cat):
        return member_count(e.left) * member_count(e.right)
    if isinstance(e, ex.Sum):
        return 3 * member_count(e.left) * member_count(e.right)
    return member_count(e.body)


def omega_member_count(e: ex.OmegaTExpr) -> int:
    if isinstance(e, ex.Union):
        return omega_member_count(e.left) + omega_member_count(e.right)
    if isinstance(e, ex.Prefix):
        return omega_member_count(e.tail)
    return member_count(e.body)


def random_formula(rng: random.Random, depth: int) -> object:
    fo = ("x", "y", "z")
    so = ("X", "Y", "Z")
    if depth <= 0 or rng.random() < 0.35:
        if rng.random() < 0.5:
            return InP(Var(rng.choice(fo)), rng.choice(("a", "b")))
        return InX(Var(rng.choice(fo)), rng.choice(so))
    kind = rng.choice(
        ("not", "or", "and", "implies", "existsfo", "forallfo", "existsso",
         "unbounding", "bounding", "existsfin", "existsomega")
    )
    if kind == "not":
        return Not(random_formula(rng, depth - 1))
    if kind in ("or", "and", "implies"):
        cls = {"or": Or, "and": And, "implies": Implies}[kind]
        return cls(random_formula(rng, depth - 1), random_formula(rng, depth - 1))
    if kind in ("existsfo", "forallfo", "existsomega"):
        cls = {"existsfo": ExistsFO, "forallfo": ForAllFO, "existsomega": ExistsOmega}[kind]
        return cls(rng.choice(fo), random_formula(rng, depth - 1))
    cls = {
        "existsso": ExistsSO,
        "unbounding": Unbounding,
        "bounding": Bounding,
        "existsfin": ExistsFin,
    }[kind]
    return cls(rng.choice(so), random_formula(rng, depth - 1))


# --------------------------------------------------------------------------
# the agreement property

@dataclass
class CaseOutcome:
    empty: bool
    witness: Optional[AcceptingWitness]
    bound_ok: bool
    failure: Optional[str]
    simple: Optional[CCA] = None


def examine(a: CCA, depth: int = 40) -> CaseOutcome:
    """Decide one simple automaton both ways and compare.

    Checks, in both directions: a bounded-search witness forces a nonempty
    pipeline answer; a nonempty pipeline answer with a witness of path
    length L forces a bounded-search hit at depth >= L; an empty answer
    forbids any bounded-search hit.  Also re-verifies certificates and the
    structure-NFA size bound.
    """
    try:
        report = decide(a)
    except InternalCheckError as err:
        return CaseOutcome(False, None, False, f"internal check failed: {err}")
    bound_ok = report.structure_nfa_states <= witness_nfa_state_bound(report.simple)
    failure = None
    if not bound_ok:
        failure = "structure NFA exceeded its size bound"
    found = brute_force_witness(a, depth)
    if found is not None and not verify_witness(a, found):
        failure = "bounded search produced an invalid witness"
    elif found is not None and report.empty:
        failure = "bounded search found a witness but the pipeline says empty"
    elif not report.empty:
        again = brute_force_witness(a, max(depth, len(report.witness.path)))
        if again is None:
            failure = "pipeline is nonempty but the bounded search finds nothing"
    return CaseOutcome(report.empty, report.witness, bound_ok, failure, report.simple)


def _fails(a: CCA, depth: int) -> bool:
    return examine(a, depth).failure is not None


def shrink_failure(a: CCA, depth: int = 40) -> CCA:
    """Greedy transition, then state, deletion preserving the failure."""
    changed = True
    while changed:
        changed = False
        for t in sorted(a.transitions, key=Transition.sort_key):
            candidate = CCA(
                a.states, a.alphabet, a.initial, a.counters, a.transitions - {t}, a.final
            )
            if _fails(candidate, depth):
                a = candidate
                changed = True
                break
        if changed:
            continue
        touched = {a.initial} | {s for t in a.transitions for s in (t.source, t.target)}
        if a.final:
            touched.add(a.final)
        for s in sorted(a.states - touched):
            candidate = CCA(
                a.states - {s}, a.alphabet, a.initial, a.counters, a.transitions, a.final
            )
            if _fails(candidate, depth):
                a = candidate
                changed = True
                break
    return a


@dataclass
class FuzzReport:
    cases: int
    nonempty: int
    failures: list[tuple[int, CCA, str]]


def run_fuzz(
    seed: int,
    cases: int,
    depth: int = 40,
    log: Optional[Callable[[str], None]] = None,
    **generator_options,
) -> FuzzReport:
    nonempty = 0
    failures = []
    for index in range(cases):
        rng = random.Random(seed * 1_000_003 + index)
        a = random_simple_cca(rng, **generator_options)
        outcome = examine(a, depth)
        if not outcome.empty:
            nonempty += 1
        if outcome.failure is not None:
            small = shrink_failure(a, depth)
            failures.append((index, small, outcome.failure))
            if log:
                log(f"case {index}: {outcome.failure}")
    return FuzzReport(cases, nonempty, failures)
