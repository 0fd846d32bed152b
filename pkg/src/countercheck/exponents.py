"""Symbolic exponent-sequence generators.

A generator denotes an infinite sequence of positive block sizes (the sizes
of consecutive maximal repetition blocks in an omega-word).  The interesting
limit questions about such a sequence -- is it bounded?  does any value
recur forever?  do infinitely many values recur forever? -- are undecidable
for black-box functions, so the DSL is closed: every constructor carries a
closed-form description of which values occur infinitely often and which
occur only finitely often.

``classify`` answers the three limit questions symbolically;
``decompose_prefix`` splits a finite prefix into the two index streams that
witness how any repetition schedule factors into a bounded-or-recurring part
and a diverging part.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union as TUnion


@dataclass(frozen=True)
class Constant:
    value: int

    def __post_init__(self):
        if self.value < 1:
            raise ValueError("block sizes must be positive")


@dataclass(frozen=True)
class Ramp:
    start: int
    step: int

    def __post_init__(self):
        if self.start < 1 or self.step < 1:
            raise ValueError("start and step must be positive")


@dataclass(frozen=True)
class Staircase:
    """1; 1,2; 1,2,3; ... -- every positive size recurs forever."""


@dataclass(frozen=True)
class PeriodicList:
    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values or any(v < 1 for v in self.values):
            raise ValueError("need a nonempty list of positive sizes")


@dataclass(frozen=True)
class Interleave:
    first: "ExponentGen"
    second: "ExponentGen"


ExponentGen = TUnion[Constant, Ramp, Staircase, PeriodicList, Interleave]


def sample(gen: ExponentGen, i: int) -> int:
    """The i-th element of the generated sequence, i >= 1."""
    if i < 1:
        raise ValueError("indexes start at 1")
    if isinstance(gen, Constant):
        return gen.value
    if isinstance(gen, Ramp):
        return gen.start + (i - 1) * gen.step
    if isinstance(gen, Staircase):
        # walk i-1 positions into the triangle 1; 1,2; 1,2,3; ...
        k = i - 1
        block = 1
        while k >= block:
            k -= block
            block += 1
        return k + 1
    if isinstance(gen, PeriodicList):
        return gen.values[(i - 1) % len(gen.values)]
    if i % 2 == 1:
        return sample(gen.first, (i + 1) // 2)
    return sample(gen.second, i // 2)


# --------------------------------------------------------------------------
# closed-form value sets
#
# A ValueSet denotes  singles  union  (union of ramps  minus  removed),
# where a ramp (a, d) is the arithmetic progression {a, a+d, a+2d, ...}.
# The only ramp the infinitely-recurring side ever carries is (1, 1) (from
# Staircase), which keeps set difference inside the representation.

@dataclass(frozen=True)
class ValueSet:
    singles: frozenset[int] = frozenset()
    ramps: tuple[tuple[int, int], ...] = ()
    removed: frozenset[int] = frozenset()

    def __contains__(self, v: int) -> bool:
        if v in self.singles:
            return True
        if v in self.removed:
            return False
        return any(v >= a and (v - a) % d == 0 for a, d in self.ramps)

    @property
    def is_empty(self) -> bool:
        return not self.singles and not self.ramps

    @property
    def is_infinite(self) -> bool:
        return bool(self.ramps)


def _union(x: ValueSet, y: ValueSet) -> ValueSet:
    dropped = frozenset(v for v in (x.removed | y.removed) if v not in x and v not in y)
    return ValueSet(x.singles | y.singles, x.ramps + y.ramps, dropped)


def _difference(x: ValueSet, y: ValueSet) -> ValueSet:
    if y.ramps:
        # y is cofinite here: its ramps all cover every positive size
        assert all(r == (1, 1) for r in y.ramps), "unexpected ramp in recurring set"
        hole = frozenset(v for v in y.removed if v not in y.singles)
        return ValueSet(frozenset(v for v in hole if v in x))
    return ValueSet(
        frozenset(v for v in x.singles if v not in y.singles),
        x.ramps,
        x.removed | y.singles,
    )


def recurring_values(gen: ExponentGen) -> ValueSet:
    """Sizes occurring infinitely often in the sequence."""
    if isinstance(gen, Constant):
        return ValueSet(frozenset({gen.value}))
    if isinstance(gen, Ramp):
        return ValueSet()
    if isinstance(gen, Staircase):
        return ValueSet(ramps=((1, 1),))
    if isinstance(gen, PeriodicList):
        return ValueSet(frozenset(gen.values))
    return _union(recurring_values(gen.first), recurring_values(gen.second))


def vanishing_values(gen: ExponentGen) -> ValueSet:
    """Sizes occurring at least once but only finitely often."""
    if isinstance(gen, (Constant, Staircase, PeriodicList)):
        return ValueSet()
    if isinstance(gen, Ramp):
        return ValueSet(ramps=((gen.start, gen.step),))
    raw = _union(vanishing_values(gen.first), vanishing_values(gen.second))
    return _difference(raw, _union(recurring_values(gen.first), recurring_values(gen.second)))


def is_bounded(gen: ExponentGen) -> bool:
    if isinstance(gen, (Constant, PeriodicList)):
        return True
    if isinstance(gen, (Ramp, Staircase)):
        return False
    return is_bounded(gen.first) and is_bounded(gen.second)


@dataclass(frozen=True)
class ClassFlags:
    bounded: bool
    strictly_unbounded: bool
    t_holds: bool


def classify(gen: ExponentGen) -> ClassFlags:
    """The three limit properties of the generated sequence.

    bounded: some size bounds the whole sequence.  strictly_unbounded: no
    size recurs forever (over positive integers this forces divergence).
    t_holds: infinitely many distinct sizes each recur forever.
    """
    recurring = recurring_values(gen)
    return ClassFlags(
        bounded=is_bounded(gen),
        strictly_unbounded=recurring.is_empty and not is_bounded(gen),
        t_holds=recurring.is_infinite,
    )


@dataclass(frozen=True)
class PrefixDecomposition:
    """Index labels for a sequence prefix.

    ``labels[j]`` is ``"S"`` when the (j+1)-th size occurs only finitely
    often in the whole sequence (the diverging stream), else ``"BT"``.
    ``recurring_kind`` tags the BT stream: ``"B"`` when only finitely many
    sizes recur forever, ``"T"`` when infinitely many do.
    """

    labels: tuple[str, ...]
    recurring_kind: str

    def stream(self, label: str) -> tuple[int, ...]:
        return tuple(j + 1 for j, lab in enumerate(self.labels) if lab == label)


def decompose_prefix(gen: ExponentGen, prefix_len: int) -> PrefixDecomposition:
    """Split indexes 1..prefix_len by whether their size eventually vanishes."""
    if prefix_len < 1:
        raise ValueError("prefix_len must be at least 1")
    vanishing = vanishing_values(gen)
    labels = tuple(
        "S" if sample(gen, j) in vanishing else "BT" for j in range(1, prefix_len + 1)
    )
    kind = "T" if recurring_values(gen).is_infinite else "B"
    return PrefixDecomposition(labels, kind)


# --------------------------------------------------------------------------
# textual generator specs (CLI)

def parse_generator(text: str) -> ExponentGen:
    """Parse specs like ``staircase``, ``const:5``, ``ramp:1:1``,
    ``periodic:1,2,3`` and ``interleave(const:1,ramp:2:1)``."""
    spec = text.strip()
    if spec == "staircase":
        return Staircase()
    if spec.startswith("const:"):
        return Constant(_int(spec[6:], text))
    if spec.startswith("ramp:"):
        parts = spec[5:].split(":")
        if len(parts) != 2:
            raise ValueError(f"bad generator spec {text!r}: ramp needs start:step")
        return Ramp(_int(parts[0], text), _int(parts[1], text))
    if spec.startswith("periodic:"):
        return PeriodicList(tuple(_int(p, text) for p in spec[9:].split(",")))
    if spec.startswith("interleave(") and spec.endswith(")"):
        inner = spec[len("interleave(") : -1]
        depth = 0
        for i, c in enumerate(inner):
            if c == "(":
                depth += 1
            elif c == ")":
                depth -= 1
            elif c == "," and depth == 0:
                return Interleave(parse_generator(inner[:i]), parse_generator(inner[i + 1 :]))
        raise ValueError(f"bad generator spec {text!r}: interleave needs two parts")
    raise ValueError(f"bad generator spec {text!r}")


def _int(s: str, full: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise ValueError(f"bad generator spec {full!r}: {s!r} is not an integer") from None
