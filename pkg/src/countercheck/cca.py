"""Counter-check automata: model, simulation, normal form, serialization.

A counter-check automaton is a finite automaton with N counters.  Every
transition touches exactly one counter with one of three operations:
``no_op`` (which is restricted to counter 1), ``inc``, or ``check`` (reset
to zero).  No operation ever disables a transition, so a sequence of states
is realizable exactly when consecutive states are connected in the
transition graph; counter vectors along a path are determined by the path.

Acceptance of infinite words asks every counter to have infinitely many
distinct values at its check points.  That limit condition is never
evaluated by simulation here; the emptiness module decides it through
finite witnesses.
"""
from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

NO_OP = "no_op"
INC = "inc"
CHECK = "check"
_OPS = (NO_OP, INC, CHECK)


class CCAError(ValueError):
    pass


@dataclass(frozen=True)
class Transition:
    source: str
    label: Optional[str]  # None is the silent label
    target: str
    counter: int
    op: str

    def sort_key(self):
        return (self.source, self.label is not None, self.label or "", self.target, self.counter, self.op)


@dataclass(frozen=True)
class CCA:
    states: frozenset[str]
    alphabet: frozenset[str]
    initial: str
    counters: int
    transitions: frozenset[Transition]
    final: Optional[str] = None

    def __post_init__(self):
        if not self.alphabet:
            raise CCAError("alphabet must be nonempty")
        if self.counters < 1:
            raise CCAError("need at least one counter")
        if self.initial not in self.states:
            raise CCAError(f"initial state {self.initial!r} not among states")
        if self.final is not None and self.final not in self.states:
            raise CCAError(f"final state {self.final!r} not among states")
        for t in self.transitions:
            if t.source not in self.states or t.target not in self.states:
                raise CCAError(f"transition {t} references unknown states")
            if t.label is not None and t.label not in self.alphabet:
                raise CCAError(f"transition {t} reads a letter outside the alphabet")
            if not 1 <= t.counter <= self.counters:
                raise CCAError(f"transition {t} touches counter {t.counter} of {self.counters}")
            if t.op not in _OPS:
                raise CCAError(f"transition {t} has unknown operation {t.op!r}")
            if t.op == NO_OP and t.counter != 1:
                raise CCAError(f"no_op transitions must use counter 1: {t}")

    def outgoing(self, state: str) -> tuple[Transition, ...]:
        return tuple(sorted((t for t in self.transitions if t.source == state), key=Transition.sort_key))

    def adjacency(self) -> dict[str, tuple[Transition, ...]]:
        out: dict[str, list[Transition]] = {s: [] for s in self.states}
        for t in self.transitions:
            out[t.source].append(t)
        return {s: tuple(sorted(ts, key=Transition.sort_key)) for s, ts in out.items()}


@dataclass(frozen=True)
class Configuration:
    state: str
    counters: tuple[int, ...]


def initial_configuration(a: CCA) -> Configuration:
    return Configuration(a.initial, (0,) * a.counters)


def step(a: CCA, config: Configuration, t: Transition) -> Configuration:
    """Fire ``t`` at ``config``; transitions are never disabled by counter values."""
    if t not in a.transitions:
        raise CCAError(f"{t} is not a transition of this automaton")
    if t.source != config.state:
        raise CCAError(f"{t} does not start at state {config.state!r}")
    values = list(config.counters)
    k = t.counter - 1
    if t.op == INC:
        values[k] += 1
    elif t.op == CHECK:
        values[k] = 0
    return Configuration(t.target, tuple(values))


# --------------------------------------------------------------------------
# simple automata and the four-way state partition

def is_simple(a: CCA) -> bool:
    """Each state either fires exactly one transition, or only silent
    no-op choices (possibly none)."""
    adjacency = a.adjacency()
    for s in a.states:
        out = adjacency[s]
        if len(out) == 1:
            continue
        if all(t.label is None and t.op == NO_OP and t.counter == 1 for t in out):
            continue
        return False
    return True


@dataclass(frozen=True)
class StateKind:
    kind: str  # "check" | "inc" | "sym" | "choice" | "stuck"
    counter: Optional[int] = None


def classify_state(a: CCA, state: str) -> StateKind:
    """Partition slot of a state of a simple automaton."""
    if not is_simple(a):
        raise CCAError("state classification requires a simple automaton")
    out = a.outgoing(state)
    if not out:
        return StateKind("stuck")
    if len(out) == 1:
        t = out[0]
        if t.op == CHECK:
            return StateKind("check", t.counter)
        if t.op == INC:
            return StateKind("inc", t.counter)
        if t.label is not None:
            return StateKind("sym")
        return StateKind("choice")
    return StateKind("choice")


def state_kinds(a: CCA) -> dict[str, StateKind]:
    if not is_simple(a):
        raise CCAError("state classification requires a simple automaton")
    kinds = {}
    for s in a.states:
        out = a.outgoing(s)
        if not out:
            kinds[s] = StateKind("stuck")
        elif len(out) == 1:
            t = out[0]
            if t.op == CHECK:
                kinds[s] = StateKind("check", t.counter)
            elif t.op == INC:
                kinds[s] = StateKind("inc", t.counter)
            elif t.label is not None:
                kinds[s] = StateKind("sym")
            else:
                kinds[s] = StateKind("choice")
        else:
            kinds[s] = StateKind("choice")
    return kinds


def _fresh_name(base: str, taken: set[str]) -> str:
    i = 0
    while f"{base}.{i}" in taken:
        i += 1
    name = f"{base}.{i}"
    taken.add(name)
    return name


def simplify(a: CCA) -> CCA:
    """Split every offending state into a silent choice over one fresh
    carrier state per original transition.  Adds at most one state per
    transition and preserves which words admit a run prefix."""
    if is_simple(a):
        return a
    taken = set(a.states)
    states = set(a.states)
    transitions = set()
    adjacency = a.adjacency()
    for s in sorted(a.states):
        out = adjacency[s]
        if len(out) == 1 or all(
            t.label is None and t.op == NO_OP and t.counter == 1 for t in out
        ):
            transitions.update(out)
            continue
        for t in out:
            carrier = _fresh_name(s, taken)
            states.add(carrier)
            transitions.add(Transition(s, None, carrier, 1, NO_OP))
            transitions.add(Transition(carrier, t.label, t.target, t.counter, t.op))
    return CCA(
        states=frozenset(states),
        alphabet=a.alphabet,
        initial=a.initial,
        counters=a.counters,
        transitions=frozenset(transitions),
        final=a.final,
    )


# --------------------------------------------------------------------------
# compiler building blocks

def hat(a: CCA) -> CCA:
    """Add the silent loop-back from the final state that checks counter 1."""
    if a.final is None:
        raise CCAError("loop-back closure needs a final state")
    loop = Transition(a.final, None, a.initial, 1, CHECK)
    return CCA(a.states, a.alphabet, a.initial, a.counters, a.transitions | {loop}, a.final)


def shift(a: CCA, offset: int) -> CCA:
    """Renumber counters upward by ``offset``; silent bookkeeping no-ops stay
    on counter 1 (their counter is immaterial and must remain 1)."""
    if offset < 0:
        raise CCAError("shift offset must be nonnegative")
    moved = frozenset(
        t if t.op == NO_OP else Transition(t.source, t.label, t.target, t.counter + offset, t.op)
        for t in a.transitions
    )
    return CCA(a.states, a.alphabet, a.initial, a.counters + offset, moved, a.final)


def satisfies_final_contract(a: CCA) -> bool:
    """Every transition leaving the final state is its silent counter-1
    increment self-loop."""
    if a.final is None:
        return False
    return all(
        t == Transition(a.final, None, a.final, 1, INC)
        for t in a.transitions
        if t.source == a.final
    )


# --------------------------------------------------------------------------
# finite simulation

@dataclass(frozen=True)
class RunPrefix:
    configurations: tuple[Configuration, ...]
    steps: tuple[Transition, ...] = field(default=())

    def word(self) -> str:
        return "".join(t.label for t in self.steps if t.label is not None)


def default_eps_budget(a: CCA) -> int:
    return len(a.states) * (a.counters + 2)


def has_run_prefix(a: CCA, word: str, eps_budget: Optional[int] = None) -> Optional[RunPrefix]:
    """Search for a run prefix consuming exactly ``word``, with at most
    ``eps_budget`` silent steps before each letter and none after the last.

    Counter values never gate transitions, so the search runs over
    (state, position, silent-steps) triples; the returned configurations are
    replayed from the discovered transition sequence.
    """
    if eps_budget is None:
        eps_budget = default_eps_budget(a)
    if eps_budget < 0:
        raise CCAError("silent-step budget must be nonnegative")
    for letter in word:
        if letter not in a.alphabet:
            raise CCAError(f"letter {letter!r} outside the alphabet")

    adjacency = a.adjacency()
    start = (a.initial, 0, 0)
    parents: dict[tuple, tuple[tuple, Transition]] = {}
    seen = {start}
    queue = deque([start])
    goal = None
    if not word:
        goal = start
    while queue and goal is None:
        node = queue.popleft()
        state, pos, eps_used = node
        for t in adjacency[state]:
            if t.label is None:
                if eps_used >= eps_budget or pos >= len(word):
                    continue
                nxt = (t.target, pos, eps_used + 1)
            elif pos < len(word) and t.label == word[pos]:
                nxt = (t.target, pos + 1, 0)
            else:
                continue
            if nxt in seen:
                continue
            seen.add(nxt)
            parents[nxt] = (node, t)
            if nxt[1] == len(word):
                goal = nxt
                break
            queue.append(nxt)

    if goal is None:
        return None
    fired: list[Transition] = []
    node = goal
    while node != start:
        node, t = parents[node]
        fired.append(t)
    fired.reverse()
    configs = [initial_configuration(a)]
    for t in fired:
        configs.append(step(a, configs[-1], t))
    return RunPrefix(tuple(configs), tuple(fired))


def replay(a: CCA, state_path: Sequence[str]) -> RunPrefix:
    """Reconstruct the run prefix of a simple automaton along a state path.

    On a simple automaton the fired transition is determined by its source
    and target, so the path alone fixes every counter vector.
    """
    if not state_path or state_path[0] != a.initial:
        raise CCAError("paths start at the initial state")
    adjacency = a.adjacency()
    configs = [initial_configuration(a)]
    fired = []
    for here, there in zip(state_path, state_path[1:]):
        options = [t for t in adjacency[here] if t.target == there]
        if not options:
            raise CCAError(f"no transition from {here!r} to {there!r}")
        fired.append(options[0])
        configs.append(step(a, configs[-1], fired[-1]))
    return RunPrefix(tuple(configs), tuple(fired))


def split_by_checks(a: CCA, prefix: RunPrefix) -> list[str]:
    """Cut the letters of a run prefix at counter-1 check transitions.

    Returns the completed blocks (delimiters included); letters after the
    last counter-1 check are a partial block, available via
    ``split_with_residue``.
    """
    blocks, _ = split_with_residue(a, prefix)
    return blocks


def split_with_residue(a: CCA, prefix: RunPrefix) -> tuple[list[str], str]:
    if len(prefix.configurations) != len(prefix.steps) + 1:
        raise CCAError("malformed run prefix")
    if prefix.configurations[0] != initial_configuration(a):
        raise CCAError("run prefixes start at the initial configuration")
    current = prefix.configurations[0]
    blocks: list[str] = []
    buf: list[str] = []
    for t, expected in zip(prefix.steps, prefix.configurations[1:]):
        if step(a, current, t) != expected:
            raise CCAError("run prefix steps do not replay")
        current = expected
        if t.label is not None:
            buf.append(t.label)
        if t.counter == 1 and t.op == CHECK:
            blocks.append("".join(buf))
            buf = []
    return blocks, "".join(buf)


# --------------------------------------------------------------------------
# serialization

def to_json_dict(a: CCA) -> dict:
    return {
        "states": sorted(a.states),
        "alphabet": sorted(a.alphabet),
        "initial": a.initial,
        "final": a.final,
        "counters": a.counters,
        "transitions": [
            {
                "from": t.source,
                "label": "eps" if t.label is None else t.label,
                "to": t.target,
                "counter": t.counter,
                "op": t.op,
            }
            for t in sorted(a.transitions, key=Transition.sort_key)
        ],
    }


def from_json_dict(data: dict) -> CCA:
    try:
        transitions = frozenset(
            Transition(
                d["from"],
                None if d["label"] == "eps" else d["label"],
                d["to"],
                int(d["counter"]),
                d["op"],
            )
            for d in data["transitions"]
        )
        return CCA(
            states=frozenset(data["states"]),
            alphabet=frozenset(data["alphabet"]),
            initial=data["initial"],
            counters=int(data["counters"]),
            transitions=transitions,
            final=data.get("final"),
        )
    except (KeyError, TypeError) as err:
        raise CCAError(f"malformed automaton JSON: {err}") from None


def to_dot(a: CCA) -> str:
    lines = ["digraph cca {", "  rankdir=LR;", '  __start [shape=point, label=""];']
    for s in sorted(a.states):
        shape = "doublecircle" if s == a.final else "circle"
        lines.append(f'  "{s}" [shape={shape}];')
    lines.append(f'  __start -> "{a.initial}";')
    for t in sorted(a.transitions, key=Transition.sort_key):
        label = "ε" if t.label is None else t.label
        lines.append(f'  "{t.source}" -> "{t.target}" [label="{label}/{t.counter}:{t.op}"];')
    lines.append("}")
    return "\n".join(lines)


def export(a: CCA, format: str) -> str:
    """Deterministic textual form; ``format`` is ``json`` or ``dot``."""
    if format == "json":
        return json.dumps(to_json_dict(a), indent=2)
    if format == "dot":
        return to_dot(a)
    raise CCAError(f"unknown export format {format!r}")


def import_json(text: str) -> CCA:
    return from_json_dict(json.loads(text))
