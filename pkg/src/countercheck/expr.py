"""Expression ASTs and the surface parser.

Three expression layers share one concrete syntax:

* regular expressions over finite words (``REmpty``, ``RSym``, ``RCat``,
  ``RAlt``, ``RStar``) -- used for finite prefixes;
* block expressions denoting languages of infinite *sequences* of finite
  words (``Empty``, ``Sym``, ``Cat``, ``Sum``, ``Star``, ``T``) -- the
  operand layer of the omega constructor.  ``Sum`` is a pointwise mix of
  two sequence languages, not a union, and is never rewritten into one;
* top-level omega expressions (``Union``, ``Prefix``, ``Omega``).

Concrete syntax (whitespace ignored)::

    0        empty language
    a..z     letters
    e f      concatenation (also ``e.f``)
    e+f      union (top level / prefixes) or sequence mix (under ``^w``)
    e*       finite repetition
    e^T      repetition whose block sizes recur unboundedly often
    e^w      omega closure (top level only)

``^T`` is only legal underneath some ``^w``; ``^w`` cannot be nested.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union as TUnion


class ParseError(ValueError):
    """Raised on malformed expression text; carries a 0-based position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# --------------------------------------------------------------------------
# regular expressions (finite words)

@dataclass(frozen=True)
class REmpty:
    pass


@dataclass(frozen=True)
class RSym:
    letter: str


@dataclass(frozen=True)
class RCat:
    left: "RegExpr"
    right: "RegExpr"


@dataclass(frozen=True)
class RAlt:
    left: "RegExpr"
    right: "RegExpr"


@dataclass(frozen=True)
class RStar:
    body: "RegExpr"


RegExpr = TUnion[REmpty, RSym, RCat, RAlt, RStar]


# --------------------------------------------------------------------------
# block expressions (languages of infinite sequences of finite words)

@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Sym:
    letter: str


@dataclass(frozen=True)
class Cat:
    left: "TExpr"
    right: "TExpr"


@dataclass(frozen=True)
class Sum:
    left: "TExpr"
    right: "TExpr"


@dataclass(frozen=True)
class Star:
    body: "TExpr"


@dataclass(frozen=True)
class T:
    body: "TExpr"


TExpr = TUnion[Empty, Sym, Cat, Sum, Star, T]


# --------------------------------------------------------------------------
# omega expressions (languages of infinite words)

@dataclass(frozen=True)
class Union:
    left: "OmegaTExpr"
    right: "OmegaTExpr"


@dataclass(frozen=True)
class Prefix:
    prefix: RegExpr
    tail: "OmegaTExpr"


@dataclass(frozen=True)
class Omega:
    body: TExpr


OmegaTExpr = TUnion[Union, Prefix, Omega]


# --------------------------------------------------------------------------
# raw parse tree (context-free; stratified afterwards)

@dataclass(frozen=True)
class _Raw:
    kind: str  # empty | sym | cat | plus | star | t | omega
    pos: int
    letter: str = ""
    left: "_Raw | None" = None
    right: "_Raw | None" = None


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def _skip_ws(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def peek(self) -> tuple[str, int]:
        """Return (token, position); token '' at end of input."""
        self._skip_ws()
        if self.i >= len(self.text):
            return "", self.i
        c = self.text[self.i]
        if c == "^":
            if self.i + 1 < len(self.text) and self.text[self.i + 1] in "Tw":
                return self.text[self.i : self.i + 2], self.i
            raise ParseError("'^' must be followed by 'T' or 'w'", self.i)
        if c in "()*+.0" or c.islower():
            return c, self.i
        raise ParseError(f"unexpected character {c!r}", self.i)

    def advance(self, token: str) -> None:
        self.i += len(token)


def _parse_raw(lexer: _Lexer) -> _Raw:
    node = _parse_cat(lexer)
    while True:
        tok, pos = lexer.peek()
        if tok == "+":
            lexer.advance(tok)
            right = _parse_cat(lexer)
            node = _Raw("plus", pos, left=node, right=right)
        else:
            return node


def _parse_cat(lexer: _Lexer) -> _Raw:
    node = _parse_postfix(lexer)
    while True:
        tok, pos = lexer.peek()
        if tok == ".":
            lexer.advance(tok)
            right = _parse_postfix(lexer)
            node = _Raw("cat", pos, left=node, right=right)
        elif tok == "(" or tok == "0" or (len(tok) == 1 and tok.islower()):
            right = _parse_postfix(lexer)
            node = _Raw("cat", pos, left=node, right=right)
        else:
            return node


def _parse_postfix(lexer: _Lexer) -> _Raw:
    node = _parse_atom(lexer)
    while True:
        tok, pos = lexer.peek()
        if tok == "*":
            lexer.advance(tok)
            node = _Raw("star", pos, left=node)
        elif tok == "^T":
            lexer.advance(tok)
            node = _Raw("t", pos, left=node)
        elif tok == "^w":
            lexer.advance(tok)
            node = _Raw("omega", pos, left=node)
        else:
            return node


def _parse_atom(lexer: _Lexer) -> _Raw:
    tok, pos = lexer.peek()
    if tok == "":
        raise ParseError("unexpected end of input", pos)
    if tok == "0":
        lexer.advance(tok)
        return _Raw("empty", pos)
    if len(tok) == 1 and tok.islower():
        lexer.advance(tok)
        return _Raw("sym", pos, letter=tok)
    if tok == "(":
        lexer.advance(tok)
        inner = _parse_raw(lexer)
        closing, cpos = lexer.peek()
        if closing != ")":
            raise ParseError("expected ')'", cpos)
        lexer.advance(closing)
        return inner
    raise ParseError(f"unexpected token {tok!r}", pos)


# --------------------------------------------------------------------------
# stratification: raw tree -> typed layers

def _check_letter(raw: _Raw, alphabet: frozenset[str]) -> str:
    if raw.letter not in alphabet:
        raise ParseError(f"letter {raw.letter!r} is not in the alphabet", raw.pos)
    return raw.letter


def _to_regex(raw: _Raw, alphabet: frozenset[str]) -> RegExpr:
    if raw.kind == "empty":
        return REmpty()
    if raw.kind == "sym":
        return RSym(_check_letter(raw, alphabet))
    if raw.kind == "cat":
        return RCat(_to_regex(raw.left, alphabet), _to_regex(raw.right, alphabet))
    if raw.kind == "plus":
        return RAlt(_to_regex(raw.left, alphabet), _to_regex(raw.right, alphabet))
    if raw.kind == "star":
        return RStar(_to_regex(raw.left, alphabet))
    if raw.kind == "t":
        raise ParseError("'^T' is only allowed underneath '^w'", raw.pos)
    raise ParseError("'^w' cannot appear inside a finite prefix; it must end the branch", raw.pos)


def _to_texpr(raw: _Raw, alphabet: frozenset[str]) -> TExpr:
    if raw.kind == "empty":
        return Empty()
    if raw.kind == "sym":
        return Sym(_check_letter(raw, alphabet))
    if raw.kind == "cat":
        return Cat(_to_texpr(raw.left, alphabet), _to_texpr(raw.right, alphabet))
    if raw.kind == "plus":
        return Sum(_to_texpr(raw.left, alphabet), _to_texpr(raw.right, alphabet))
    if raw.kind == "star":
        return Star(_to_texpr(raw.left, alphabet))
    if raw.kind == "t":
        return T(_to_texpr(raw.left, alphabet))
    raise ParseError("'^w' cannot be nested", raw.pos)


def _to_omega(raw: _Raw, alphabet: frozenset[str]) -> OmegaTExpr:
    if raw.kind == "plus":
        return Union(_to_omega(raw.left, alphabet), _to_omega(raw.right, alphabet))
    if raw.kind == "cat":
        # the omega part lives in the rightmost factor; everything to its
        # left must be a plain regular expression
        return Prefix(_to_regex(raw.left, alphabet), _to_omega(raw.right, alphabet))
    if raw.kind == "omega":
        return Omega(_to_texpr(raw.left, alphabet))
    if raw.kind == "t":
        raise ParseError("'^T' needs an enclosing '^w'", raw.pos)
    raise ParseError("missing omega closure: every branch needs '^w'", raw.pos)


def parse_omega_t(text: str, alphabet: frozenset[str] | set[str] | str) -> OmegaTExpr:
    """Parse ``text`` into a top-level omega expression.

    ``alphabet`` may be given as a string of letters.  Raises ParseError on
    syntax errors, letters outside the alphabet, misplaced ``^T`` (legal only
    underneath ``^w``) and misplaced or missing ``^w``.
    """
    sigma = frozenset(alphabet)
    lexer = _Lexer(text)
    raw = _parse_raw(lexer)
    trailing, tpos = lexer.peek()
    if trailing != "":
        raise ParseError(f"unexpected trailing input {trailing!r}", tpos)
    return _to_omega(raw, sigma)


def parse_regex(text: str, alphabet: frozenset[str] | set[str] | str) -> RegExpr:
    """Parse a plain regular expression (no ``^T``/``^w``)."""
    sigma = frozenset(alphabet)
    lexer = _Lexer(text)
    raw = _parse_raw(lexer)
    trailing, tpos = lexer.peek()
    if trailing != "":
        raise ParseError(f"unexpected trailing input {trailing!r}", tpos)
    return _to_regex(raw, sigma)


# --------------------------------------------------------------------------
# pretty-printing (parse . pretty == identity, structurally)

# precedence: 1 = +, 2 = concatenation, 3 = postfix/atoms
def _wrap(text: str, level: int, required: int) -> str:
    return f"({text})" if level < required else text


def _pp_reg(e: RegExpr) -> tuple[str, int]:
    if isinstance(e, REmpty):
        return "0", 3
    if isinstance(e, RSym):
        return e.letter, 3
    if isinstance(e, RCat):
        lt, ll = _pp_reg(e.left)
        rt, rl = _pp_reg(e.right)
        return f"{_wrap(lt, ll, 2)} {_wrap(rt, rl, 3)}", 2
    if isinstance(e, RAlt):
        lt, ll = _pp_reg(e.left)
        rt, rl = _pp_reg(e.right)
        return f"{_wrap(lt, ll, 1)} + {_wrap(rt, rl, 2)}", 1
    lt, ll = _pp_reg(e.body)
    return f"{_wrap(lt, ll, 3)}*", 3


def _pp_t(e: TExpr) -> tuple[str, int]:
    if isinstance(e, Empty):
        return "0", 3
    if isinstance(e, Sym):
        return e.letter, 3
    if isinstance(e, Cat):
        lt, ll = _pp_t(e.left)
        rt, rl = _pp_t(e.right)
        return f"{_wrap(lt, ll, 2)} {_wrap(rt, rl, 3)}", 2
    if isinstance(e, Sum):
        lt, ll = _pp_t(e.left)
        rt, rl = _pp_t(e.right)
        return f"{_wrap(lt, ll, 1)} + {_wrap(rt, rl, 2)}", 1
    if isinstance(e, Star):
        lt, ll = _pp_t(e.body)
        return f"{_wrap(lt, ll, 3)}*", 3
    lt, ll = _pp_t(e.body)
    return f"{_wrap(lt, ll, 3)}^T", 3


def _pp_omega(e: OmegaTExpr) -> tuple[str, int]:
    if isinstance(e, Union):
        lt, ll = _pp_omega(e.left)
        rt, rl = _pp_omega(e.right)
        return f"{_wrap(lt, ll, 1)} + {_wrap(rt, rl, 2)}", 1
    if isinstance(e, Prefix):
        lt, ll = _pp_reg(e.prefix)
        rt, rl = _pp_omega(e.tail)
        return f"{_wrap(lt, ll, 2)} {_wrap(rt, rl, 3)}", 2
    bt, bl = _pp_t(e.body)
    return f"{_wrap(bt, bl, 3)}^w", 3


def pretty(e: "RegExpr | TExpr | OmegaTExpr") -> str:
    """Render an expression back to concrete syntax with minimal parentheses."""
    if isinstance(e, (Union, Prefix, Omega)):
        return _pp_omega(e)[0]
    if isinstance(e, (Empty, Sym, Cat, Sum, Star, T)):
        return _pp_t(e)[0]
    return _pp_reg(e)[0]


# --------------------------------------------------------------------------
# structural helpers

def substitute_t_with_star(e: OmegaTExpr) -> OmegaTExpr:
    """Replace every ``^T`` node by ``*``; the result has no T nodes."""

    def on_t(x: TExpr) -> TExpr:
        if isinstance(x, (Empty, Sym)):
            return x
        if isinstance(x, Cat):
            return Cat(on_t(x.left), on_t(x.right))
        if isinstance(x, Sum):
            return Sum(on_t(x.left), on_t(x.right))
        if isinstance(x, Star):
            return Star(on_t(x.body))
        return Star(on_t(x.body))

    if isinstance(e, Union):
        return Union(substitute_t_with_star(e.left), substitute_t_with_star(e.right))
    if isinstance(e, Prefix):
        return Prefix(e.prefix, substitute_t_with_star(e.tail))
    return Omega(on_t(e.body))


def erase_to_regex(e: TExpr) -> RegExpr:
    """Flatten a block expression into its per-block word-level shape.

    ``Sum`` becomes a union, ``T`` a plain star (any single block shows some
    finite repetition count); ``Cat``/``Star`` keep their word-level
    meaning.
    """
    if isinstance(e, Empty):
        return REmpty()
    if isinstance(e, Sym):
        return RSym(e.letter)
    if isinstance(e, Cat):
        return RCat(erase_to_regex(e.left), erase_to_regex(e.right))
    if isinstance(e, Sum):
        return RAlt(erase_to_regex(e.left), erase_to_regex(e.right))
    return RStar(erase_to_regex(e.body))


def t_subexpressions(e: OmegaTExpr) -> list[TExpr]:
    """Bodies of all ``^T`` nodes in document order."""

    def walk_t(x: TExpr, acc: list[TExpr]) -> None:
        if isinstance(x, (Cat, Sum)):
            walk_t(x.left, acc)
            walk_t(x.right, acc)
        elif isinstance(x, Star):
            walk_t(x.body, acc)
        elif isinstance(x, T):
            acc.append(x.body)
            walk_t(x.body, acc)

    acc: list[TExpr] = []

    def walk(x: OmegaTExpr) -> None:
        if isinstance(x, Union):
            walk(x.left)
            walk(x.right)
        elif isinstance(x, Prefix):
            walk(x.tail)
        else:
            walk_t(x.body, acc)

    walk(e)
    return acc


def contains_empty_leaf(e: "RegExpr | TExpr | OmegaTExpr") -> bool:
    if isinstance(e, (REmpty, Empty)):
        return True
    if isinstance(e, (RSym, Sym)):
        return False
    if isinstance(e, (RCat, RAlt, Cat, Sum, Union)):
        return contains_empty_leaf(e.left) or contains_empty_leaf(e.right)
    if isinstance(e, (RStar, Star, T)):
        return contains_empty_leaf(e.body)
    if isinstance(e, Prefix):
        return contains_empty_leaf(e.prefix) or contains_empty_leaf(e.tail)
    return contains_empty_leaf(e.body)


def letters(e: "RegExpr | TExpr | OmegaTExpr") -> frozenset[str]:
    """All letters occurring in the expression."""

    def walk(x) -> Iterator[str]:
        if isinstance(x, (RSym, Sym)):
            yield x.letter
        elif isinstance(x, (RCat, RAlt, Cat, Sum, Union)):
            yield from walk(x.left)
            yield from walk(x.right)
        elif isinstance(x, (RStar, Star, T, Omega)):
            yield from walk(x.body)
        elif isinstance(x, Prefix):
            yield from walk(x.prefix)
            yield from walk(x.tail)

    return frozenset(walk(e))
